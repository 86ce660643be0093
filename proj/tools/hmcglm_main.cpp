// Command-line runner: fit a configured model and persist samples, summaries,
// diagnostics and plot data; or recompute those from an existing samples.csv.
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "hmcglm/diagnostics.hpp"
#include "hmcglm/errors.hpp"
#include "hmcglm/experiment.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitSampling = 3;
constexpr int kExitIo = 4;

void print_summary(std::ostream& out, const hmcglm::SummaryTable& table) {
  out << "param";
  for (double p : table.probs) out << ',' << p;
  out << ",rhat\n";
  for (std::size_t i = 0; i < table.names.size(); ++i) {
    out << table.names[i];
    for (Eigen::Index q = 0; q < table.quantiles.cols(); ++q)
      out << ',' << table.quantiles(static_cast<Eigen::Index>(i), q);
    out << ',' << table.rhat[static_cast<Eigen::Index>(i)] << '\n';
  }
}

// Derive u/lambda columns when the samples carry a tau1..taun + xi block.
std::pair<std::vector<hmcglm::ChainResult>, std::vector<std::string>> maybe_augment(
    const hmcglm::LoadedSamples& loaded) {
  const auto& names = loaded.param_names;
  int tau_begin = -1, tau_count = 0;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == "tau1") tau_begin = static_cast<int>(i);
    if (names[i].rfind("tau", 0) == 0 && tau_begin >= 0) ++tau_count;
  }
  const bool has_xi = tau_begin >= 0 &&
                      static_cast<std::size_t>(tau_begin + tau_count) < names.size() &&
                      names[static_cast<std::size_t>(tau_begin + tau_count)] == "xi";
  if (!has_xi) return {loaded.chains, names};
  std::vector<std::string> plot_names = names;
  auto chains = hmcglm::with_glmm_derived_columns(loaded.chains, tau_begin, tau_count, plot_names);
  return {std::move(chains), std::move(plot_names)};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gradient-based MCMC for Bayesian regression models"};
  app.require_subcommand(1);

  std::string config_path, out_dir = "out", samples_path, out_path, compare_path;
  int burnin = 0, bins = 40;
  bool parallel = false;
  std::optional<std::uint64_t> seed_override;

  auto* fit = app.add_subcommand("fit", "Run a configured experiment");
  fit->add_option("--config", config_path, "Experiment config JSON")->required();
  fit->add_option("--out", out_dir, "Output directory");
  fit->add_flag("--parallel", parallel, "Run chains concurrently");
  fit->add_option("--seed", seed_override, "Override the config seed");

  auto* summarize = app.add_subcommand("summarize", "Posterior quantiles from a samples.csv");
  summarize->add_option("--samples", samples_path, "Path to samples.csv")->required();
  summarize->add_option("--burnin", burnin, "Rows to drop per chain")->required();
  summarize->add_option("--out", out_path, "Write CSV here instead of stdout");

  auto* diagnose = app.add_subcommand("diagnose", "Acceptance rates and split R-hat");
  diagnose->add_option("--samples", samples_path, "Path to samples.csv")->required();
  diagnose->add_option("--burnin", burnin, "Rows to drop per chain")->required();
  diagnose->add_option("--out", out_path, "Write JSON here instead of stdout");

  auto* plotdata = app.add_subcommand("plot-data", "Histogram and trace data");
  plotdata->add_option("--samples", samples_path, "Path to samples.csv")->required();
  plotdata->add_option("--burnin", burnin, "Rows to drop per chain")->required();
  plotdata->add_option("--bins", bins, "Histogram bin count");
  plotdata->add_option("--compare", compare_path, "JSON file of per-parameter reference values");
  plotdata->add_option("--out", out_path, "Write JSON here instead of stdout");

  CLI11_PARSE(app, argc, argv);

  try {
    if (fit->parsed()) {
      hmcglm::ExperimentConfig config = hmcglm::ExperimentConfig::from_json_file(config_path);
      if (parallel) config.parallel = true;
      if (seed_override) config.seed = *seed_override;
      const hmcglm::RunManifest manifest = hmcglm::run_experiment(config, out_dir);
      std::cerr << "wrote " << manifest.files.size() << " files to " << out_dir << " in "
                << manifest.wall_time_seconds << "s";
      std::cerr << "; acceptance:";
      for (double a : manifest.acceptance_rate_per_chain) std::cerr << ' ' << a;
      std::cerr << '\n';
      return 0;
    }

    const hmcglm::LoadedSamples loaded = hmcglm::read_samples_csv(samples_path);

    if (summarize->parsed()) {
      const auto table = hmcglm::quantile_summary(loaded.chains, burnin, loaded.param_names);
      if (out_path.empty()) {
        print_summary(std::cout, table);
      } else {
        hmcglm::write_summary_csv(out_path, table);
      }
      return 0;
    }

    if (diagnose->parsed()) {
      nlohmann::json j;
      j["burnin"] = burnin;
      nlohmann::json acc = nlohmann::json::array(), div = nlohmann::json::array();
      for (const auto& c : loaded.chains) acc.push_back(hmcglm::acceptance_rate(c));
      j["acceptance_rate_per_chain"] = std::move(acc);
      const auto rhat = hmcglm::split_rhat(loaded.chains, burnin);
      nlohmann::json rj = nlohmann::json::object();
      for (std::size_t i = 0; i < loaded.param_names.size(); ++i)
        rj[loaded.param_names[i]] = rhat[static_cast<Eigen::Index>(i)];
      j["split_rhat"] = std::move(rj);
      if (out_path.empty()) {
        std::cout << j.dump(2) << '\n';
      } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw std::ios_base::failure("cannot write " + out_path);
        out << j.dump(2) << '\n';
      }
      return 0;
    }

    // plot-data
    auto [chains, plot_names] = maybe_augment(loaded);
    std::vector<double> comparisons;
    if (!compare_path.empty()) {
      std::ifstream in(compare_path);
      if (!in) throw std::ios_base::failure("cannot open " + compare_path);
      nlohmann::json cj;
      in >> cj;
      comparisons.assign(plot_names.size(), std::numeric_limits<double>::quiet_NaN());
      for (std::size_t i = 0; i < plot_names.size(); ++i)
        if (cj.contains(plot_names[i])) comparisons[i] = cj[plot_names[i]].get<double>();
    }
    const auto pd = hmcglm::export_plot_data(chains, burnin, bins, plot_names,
                                             comparisons.empty() ? nullptr : &comparisons);
    nlohmann::json j;
    j["burnin"] = pd.burnin;
    j["bins"] = pd.bins;
    j["params"] = nlohmann::json::array();
    for (const auto& p : pd.params) {
      nlohmann::json e;
      e["name"] = p.name;
      e["histogram"] = {{"bin_edges", p.bin_edges}, {"counts", p.counts}};
      e["trace"] = {{"chain", p.trace_chain}, {"iteration", p.trace_iteration}, {"value", p.trace_value}};
      if (p.comparison) e["comparison"] = *p.comparison;
      j["params"].push_back(std::move(e));
    }
    if (out_path.empty()) {
      std::cout << j.dump() << '\n';
    } else {
      std::ofstream out(out_path, std::ios::binary);
      if (!out) throw std::ios_base::failure("cannot write " + out_path);
      out << j.dump() << '\n';
    }
    return 0;
  } catch (const hmcglm::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const hmcglm::DataError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const hmcglm::DimensionError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const hmcglm::SamplingError& e) {
    std::cerr << "sampling error: " << e.what() << '\n';
    return kExitSampling;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
