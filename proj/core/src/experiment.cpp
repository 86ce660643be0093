#include "hmcglm/experiment.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>

#include <nlohmann/json.hpp>

#include "hmcglm/design.hpp"
#include "hmcglm/errors.hpp"
#include "hmcglm/formula.hpp"
#include "hmcglm/models/linear.hpp"
#include "hmcglm/models/logistic.hpp"
#include "hmcglm/models/poisson_glmm.hpp"
#include "hmcglm/qr.hpp"
#include "hmcglm/table.hpp"

namespace hmcglm {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

ModelKind model_from_string(const std::string& s) {
  if (s == "linear") return ModelKind::Linear;
  if (s == "logistic") return ModelKind::Logistic;
  if (s == "poisson_glmm") return ModelKind::PoissonGlmm;
  if (s == "gaussian_demo") return ModelKind::GaussianDemo;
  throw ConfigError("unknown model: " + s);
}

std::string model_to_string(ModelKind m) {
  switch (m) {
    case ModelKind::Linear: return "linear";
    case ModelKind::Logistic: return "logistic";
    case ModelKind::PoissonGlmm: return "poisson_glmm";
    case ModelKind::GaussianDemo: return "gaussian_demo";
  }
  return "?";
}

}  // namespace

std::string resolve_data_path(const std::string& path, const std::string& base_dir) {
  if (path.empty() || fs::path(path).is_absolute()) return path;
  if (const char* env = std::getenv("HMCGLM_DATA_DIR"); env && *env)
    return (fs::path(env) / path).string();
  return (fs::path(base_dir) / path).string();
}

ExperimentConfig ExperimentConfig::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config: " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }

  ExperimentConfig cfg;
  try {
    cfg.model = model_from_string(doc.at("model").get<std::string>());
    const std::string base = fs::path(path).parent_path().string();
    if (doc.contains("data")) {
      cfg.data_csv = resolve_data_path(doc["data"].value("csv", ""), base);
      cfg.data_config = resolve_data_path(doc["data"].value("config", ""), base);
    }
    cfg.formula = doc.value("formula", "");
    if (doc.contains("random_intercept"))
      cfg.random_intercept = doc["random_intercept"].get<std::string>();

    if (doc.contains("hyperparameters")) {
      const auto& h = doc["hyperparameters"];
      cfg.a = h.value("a", cfg.a);
      cfg.b = h.value("b", cfg.b);
      cfg.sig2beta = h.value("sig2beta", cfg.sig2beta);
      cfg.nu_xi = h.value("nu_xi", cfg.nu_xi);
      cfg.A_xi = h.value("A_xi", cfg.A_xi);
      cfg.gaussian_dim = h.value("dim", cfg.gaussian_dim);
    }

    const std::string sampler = doc.value("sampler", "hmc");
    if (sampler == "hmc")
      cfg.sampler = SamplerKind::Hmc;
    else if (sampler == "mh")
      cfg.sampler = SamplerKind::Mh;
    else
      throw ConfigError("unknown sampler: " + sampler);

    cfg.n_samples = doc.at("n_samples").get<int>();
    cfg.burnin = doc.value("burnin", 0);
    cfg.chains = doc.value("chains", 1);
    cfg.seed = doc.value("seed", std::uint64_t{0});
    if (doc.at("eps").is_array())
      cfg.eps = doc["eps"].get<std::vector<double>>();
    else
      cfg.eps = {doc["eps"].get<double>()};
    cfg.L = doc.value("L", 10);
    cfg.jitter_eps = doc.value("jitter_eps", false);
    cfg.jitter_steps = doc.value("jitter_steps", false);
    if (doc.contains("mass_diag")) cfg.mass_diag = doc["mass_diag"].get<std::vector<double>>();
    const std::string edge = doc.value("trajectory_edge", "full");
    if (edge == "full")
      cfg.trajectory_edge = FinalKick::Full;
    else if (edge == "omit_final_kick")
      cfg.trajectory_edge = FinalKick::Omit;
    else
      throw ConfigError("trajectory_edge must be \"full\" or \"omit_final_kick\"");
    cfg.qr = doc.value("qr", false);
    if (doc.contains("theta_init") && !doc["theta_init"].is_string())
      cfg.theta_init = doc["theta_init"].get<std::vector<double>>();
    else if (doc.contains("theta_init") && doc["theta_init"].get<std::string>() != "zeros")
      throw ConfigError("theta_init must be an array or \"zeros\"");
    if (doc.contains("gamma_init")) cfg.gamma_init = doc["gamma_init"].get<double>();
    cfg.parallel = doc.value("parallel", false);
    cfg.plot_bins = doc.value("plot_bins", 40);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config error: ") + e.what());
  }

  if (cfg.n_samples < 1) throw ConfigError("n_samples must be >= 1");
  if (cfg.burnin < 0 || cfg.burnin >= cfg.n_samples) throw ConfigError("burnin must be in [0, n_samples)");
  if (cfg.chains < 1) throw ConfigError("chains must be >= 1");
  if (cfg.L < 1) throw ConfigError("L must be >= 1");
  for (double e : cfg.eps)
    if (!(e > 0)) throw ConfigError("eps entries must be positive");
  if (cfg.model != ModelKind::GaussianDemo && (cfg.data_csv.empty() || cfg.formula.empty()))
    throw ConfigError("model requires data.csv and formula");
  if (cfg.model == ModelKind::PoissonGlmm && !cfg.random_intercept)
    throw ConfigError("poisson_glmm requires random_intercept");
  if (cfg.qr && cfg.model != ModelKind::Linear)
    throw ConfigError("qr reparameterization is only supported for the linear model");
  return cfg;
}

PreparedModel prepare_model(const ExperimentConfig& config) {
  PreparedModel pm;

  if (config.model == ModelKind::GaussianDemo) {
    const int k = config.gaussian_dim;
    if (k < 1) throw ConfigError("gaussian_demo dim must be >= 1");
    pm.target.dim = k;
    pm.target.log_density = [](const VectorXd& t) { return -0.5 * t.squaredNorm(); };
    pm.target.grad_log_density = [](const VectorXd& t) { return VectorXd(-t); };
    for (int i = 1; i <= k; ++i) pm.param_names.push_back("theta" + std::to_string(i));
  } else {
    DatasetConfig dcfg;
    const DatasetConfig* dcfg_ptr = nullptr;
    if (!config.data_config.empty()) {
      dcfg = DatasetConfig::from_json_file(config.data_config);
      dcfg_ptr = &dcfg;
    }
    const DataTable table = DataTable::from_csv(config.data_csv, dcfg_ptr);
    const FormulaAst ast = parse_formula(config.formula);
    DesignMatrix dm = build_design(table, ast);
    const VectorXd y = table.numeric_values(ast.response);

    switch (config.model) {
      case ModelKind::Linear: {
        auto data = std::make_shared<LinearModelData>();
        data->y = y;
        data->a = config.a;
        data->b = config.b;
        data->sig2beta = config.sig2beta;
        if (config.qr) {
          QrResult qr = qr_reparameterize(dm.X);
          data->X = std::move(qr.Q);
          pm.qr_R = std::move(qr.R);
          pm.target = make_linear_qr_target(std::move(data), *pm.qr_R);
        } else {
          data->X = std::move(dm.X);
          pm.target = make_linear_target(std::move(data));
        }
        pm.param_names = dm.names;
        pm.param_names.push_back("log_sigma_sq");
        break;
      }
      case ModelKind::Logistic: {
        auto data = std::make_shared<LogisticModelData>();
        data->y = y;
        data->X = std::move(dm.X);
        data->sig2beta = config.sig2beta;
        pm.target = make_logistic_target(std::move(data));
        pm.param_names = dm.names;
        break;
      }
      case ModelKind::PoissonGlmm: {
        RandomIntercept ri = build_random_intercept(table, *config.random_intercept);
        auto data = std::make_shared<PoissonGlmmData>();
        data->y = y;
        data->X = std::move(dm.X);
        data->n_groups = static_cast<int>(ri.group_levels.size());
        data->Z = std::move(ri.Z);
        data->sig2beta = config.sig2beta;
        data->nu_xi = config.nu_xi;
        data->A_xi = config.A_xi;
        const int p = static_cast<int>(dm.names.size());
        pm.tau_range = {p, data->n_groups};
        pm.target = make_glmm_target(std::move(data));
        pm.param_names = dm.names;
        for (int i = 1; i <= pm.tau_range->second; ++i)
          pm.param_names.push_back("tau" + std::to_string(i));
        pm.param_names.push_back("xi");
        break;
      }
      default:
        break;
    }
  }

  const Eigen::Index k = pm.target.dim;
  if (config.theta_init) {
    if (static_cast<Eigen::Index>(config.theta_init->size()) != k)
      throw ConfigError("theta_init length " + std::to_string(config.theta_init->size()) +
                        " differs from parameter dimension " + std::to_string(k));
    pm.theta_init = Eigen::Map<const VectorXd>(config.theta_init->data(), k);
  } else {
    pm.theta_init = VectorXd::Zero(k);
  }
  if (config.gamma_init) {
    if (config.model != ModelKind::Linear) throw ConfigError("gamma_init applies to the linear model only");
    pm.theta_init[k - 1] = *config.gamma_init;
  }
  // QR runs take theta_init in the original basis; map the coefficient block.
  if (pm.qr_R) {
    const Eigen::Index p = pm.qr_R->cols();
    pm.theta_init.head(p) = (*pm.qr_R) * pm.theta_init.head(p);
  }
  return pm;
}

namespace {

HmcConfig to_sampler_config(const ExperimentConfig& config, const PreparedModel& pm) {
  HmcConfig sc;
  sc.n_samples = config.n_samples;
  sc.theta_init = pm.theta_init;
  const Eigen::Index k = pm.target.dim;
  if (config.eps.size() == 1) {
    sc.leapfrog.eps = VectorXd::Constant(k, config.eps[0]);
  } else {
    if (static_cast<Eigen::Index>(config.eps.size()) != k)
      throw ConfigError("eps list length " + std::to_string(config.eps.size()) +
                        " differs from parameter dimension " + std::to_string(k));
    sc.leapfrog.eps = Eigen::Map<const VectorXd>(config.eps.data(), k);
  }
  sc.leapfrog.steps = config.L;
  sc.leapfrog.jitter_eps = config.jitter_eps;
  sc.leapfrog.jitter_steps = config.jitter_steps;
  if (config.mass_diag) {
    if (static_cast<Eigen::Index>(config.mass_diag->size()) != k)
      throw ConfigError("mass_diag length differs from parameter dimension");
    sc.mass.diag = Eigen::Map<const VectorXd>(config.mass_diag->data(), k);
  } else {
    sc.mass = MassSpec::identity(k);
  }
  sc.chains = config.chains;
  sc.seed = config.seed;
  sc.parallel = config.parallel;
  sc.final_kick = config.trajectory_edge;
  return sc;
}

json config_to_json(const ExperimentConfig& c) {
  json j;
  j["model"] = model_to_string(c.model);
  if (!c.data_csv.empty()) j["data"] = {{"csv", c.data_csv}, {"config", c.data_config}};
  if (!c.formula.empty()) j["formula"] = c.formula;
  if (c.random_intercept) j["random_intercept"] = *c.random_intercept;
  j["sampler"] = c.sampler == SamplerKind::Hmc ? "hmc" : "mh";
  j["n_samples"] = c.n_samples;
  j["burnin"] = c.burnin;
  j["chains"] = c.chains;
  j["seed"] = c.seed;
  j["eps"] = c.eps;
  j["L"] = c.L;
  j["jitter_eps"] = c.jitter_eps;
  j["jitter_steps"] = c.jitter_steps;
  j["trajectory_edge"] = c.trajectory_edge == FinalKick::Omit ? "omit_final_kick" : "full";
  j["qr"] = c.qr;
  j["parallel"] = c.parallel;
  j["hyperparameters"] = {{"a", c.a},       {"b", c.b},       {"sig2beta", c.sig2beta},
                          {"nu_xi", c.nu_xi}, {"A_xi", c.A_xi}, {"dim", c.gaussian_dim}};
  return j;
}

}  // namespace

void write_samples_csv(const std::string& path, std::span<const ChainResult> chains,
                       const std::vector<std::string>& param_names) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::ios_base::failure("cannot write " + path);
  out << "chain,iter";
  for (const auto& n : param_names) out << ',' << n;
  out << ",accept,log_post\n";
  for (const auto& chain : chains) {
    for (Eigen::Index t = 0; t < chain.samples.rows(); ++t) {
      out << chain.chain_id << ',' << (t + 1);
      for (Eigen::Index j = 0; j < chain.samples.cols(); ++j)
        out << ',' << format_double(chain.samples(t, j));
      out << ',' << static_cast<int>(chain.accepted[static_cast<std::size_t>(t)]) << ','
          << format_double(chain.log_post_trace[t]) << '\n';
    }
  }
  if (!out) throw std::ios_base::failure("failed writing " + path);
}

LoadedSamples read_samples_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw DataError(path + ": empty file");
  while (!line.empty() && (line.back() == '\n' || line.back() == '\r')) line.pop_back();

  std::vector<std::string> header;
  std::size_t pos = 0;
  while (pos <= line.size()) {
    const auto comma = line.find(',', pos);
    header.push_back(line.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (header.size() < 5 || header[0] != "chain" || header[1] != "iter" ||
      header[header.size() - 2] != "accept" || header.back() != "log_post")
    throw DataError(path + ": not a samples.csv layout");

  LoadedSamples loaded;
  loaded.param_names.assign(header.begin() + 2, header.end() - 2);
  const std::size_t k = loaded.param_names.size();

  struct Raw {
    std::vector<double> values;
    std::vector<std::uint8_t> accepted;
    std::vector<double> log_post;
  };
  std::map<int, Raw> by_chain;
  std::vector<double> fields(header.size());
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const char* p = line.c_str();
    char* end = nullptr;
    for (std::size_t f = 0; f < header.size(); ++f) {
      fields[f] = std::strtod(p, &end);
      if (end == p) throw DataError(path + ": malformed row");
      p = (*end == ',') ? end + 1 : end;
    }
    Raw& raw = by_chain[static_cast<int>(fields[0])];
    for (std::size_t j = 0; j < k; ++j) raw.values.push_back(fields[2 + j]);
    raw.accepted.push_back(fields[header.size() - 2] != 0.0 ? 1 : 0);
    raw.log_post.push_back(fields[header.size() - 1]);
  }

  for (auto& [id, raw] : by_chain) {
    ChainResult c;
    c.chain_id = id;
    const auto n = static_cast<Eigen::Index>(raw.accepted.size());
    c.samples.resize(n, static_cast<Eigen::Index>(k));
    for (Eigen::Index t = 0; t < n; ++t)
      for (std::size_t j = 0; j < k; ++j)
        c.samples(t, static_cast<Eigen::Index>(j)) = raw.values[static_cast<std::size_t>(t) * k + j];
    c.accepted = std::move(raw.accepted);
    c.log_post_trace = Eigen::Map<const VectorXd>(raw.log_post.data(), n);
    c.acceptance_rate = acceptance_rate(c);
    loaded.chains.push_back(std::move(c));
  }
  return loaded;
}

void write_summary_csv(const std::string& path, const SummaryTable& table) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::ios_base::failure("cannot write " + path);
  out << "param";
  for (double p : table.probs) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", p);
    out << ',' << buf;
  }
  out << ",rhat\n";
  for (std::size_t i = 0; i < table.names.size(); ++i) {
    out << table.names[i];
    for (Eigen::Index q = 0; q < table.quantiles.cols(); ++q)
      out << ',' << format_double(table.quantiles(static_cast<Eigen::Index>(i), q));
    out << ',' << format_double(table.rhat[static_cast<Eigen::Index>(i)]) << '\n';
  }
  if (!out) throw std::ios_base::failure("failed writing " + path);
}

std::vector<ChainResult> with_glmm_derived_columns(std::span<const ChainResult> chains,
                                                   int tau_begin, int tau_count,
                                                   std::vector<std::string>& param_names) {
  std::vector<ChainResult> augmented;
  for (const auto& chain : chains) {
    ChainResult c = chain;
    const MatrixXd tau = chain.samples.middleCols(tau_begin, tau_count);
    const VectorXd xi = chain.samples.col(tau_begin + tau_count);
    const MatrixXd extra = u_from_tau_xi(tau, xi);
    MatrixXd joined(chain.samples.rows(), chain.samples.cols() + extra.cols());
    joined << chain.samples, extra;
    c.samples = std::move(joined);
    augmented.push_back(std::move(c));
  }
  for (int i = 1; i <= tau_count; ++i) param_names.push_back("u" + std::to_string(i));
  param_names.push_back("lambda");
  return augmented;
}

namespace {

json plotdata_to_json(const PlotData& pd) {
  json j;
  j["burnin"] = pd.burnin;
  j["bins"] = pd.bins;
  j["params"] = json::array();
  for (const auto& p : pd.params) {
    json e;
    e["name"] = p.name;
    e["histogram"] = {{"bin_edges", p.bin_edges}, {"counts", p.counts}};
    e["trace"] = {{"chain", p.trace_chain}, {"iteration", p.trace_iteration}, {"value", p.trace_value}};
    if (p.comparison) e["comparison"] = *p.comparison;
    j["params"].push_back(std::move(e));
  }
  return j;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::ios_base::failure("cannot write " + path);
  out << content;
  if (!out) throw std::ios_base::failure("failed writing " + path);
}

}  // namespace

RunManifest run_experiment(const ExperimentConfig& config, const std::string& out_dir) {
  const auto start = std::chrono::steady_clock::now();

  PreparedModel pm = prepare_model(config);
  const HmcConfig sc = to_sampler_config(config, pm);

  std::vector<ChainResult> chains = run_chains(pm.target, sc, config.sampler);

  // QR runs sample eta = R beta; report everything in the original basis.
  if (pm.qr_R) {
    const Eigen::Index p = pm.qr_R->cols();
    for (auto& chain : chains)
      chain.samples.leftCols(p) = qr_back_transform(chain.samples.leftCols(p), *pm.qr_R);
  }

  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw std::ios_base::failure("cannot create output directory " + out_dir);

  RunManifest manifest;
  manifest.param_names = pm.param_names;
  for (const auto& chain : chains) {
    manifest.acceptance_rate_per_chain.push_back(chain.acceptance_rate);
    manifest.divergences_per_chain.push_back(chain.divergences);
  }

  const std::string samples_path = (fs::path(out_dir) / "samples.csv").string();
  write_samples_csv(samples_path, chains, pm.param_names);
  manifest.files.push_back("samples.csv");

  const SummaryTable table = quantile_summary(chains, config.burnin, pm.param_names);
  write_summary_csv((fs::path(out_dir) / "summary.csv").string(), table);
  manifest.files.push_back("summary.csv");

  json diag;
  diag["burnin"] = config.burnin;
  diag["n_samples"] = config.n_samples;
  diag["chains"] = config.chains;
  diag["acceptance_rate_per_chain"] = manifest.acceptance_rate_per_chain;
  diag["divergences_per_chain"] = manifest.divergences_per_chain;
  json rhat = json::object();
  for (std::size_t i = 0; i < pm.param_names.size(); ++i)
    rhat[pm.param_names[i]] = table.rhat[static_cast<Eigen::Index>(i)];
  diag["split_rhat"] = std::move(rhat);
  // structured form of summary.csv
  json summary = json::array();
  for (std::size_t i = 0; i < table.names.size(); ++i) {
    json row;
    row["param"] = table.names[i];
    json qs = json::object();
    for (std::size_t q = 0; q < table.probs.size(); ++q) {
      char key[32];
      std::snprintf(key, sizeof(key), "%g", table.probs[q]);
      qs[key] = table.quantiles(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(q));
    }
    row["quantiles"] = std::move(qs);
    row["rhat"] = table.rhat[static_cast<Eigen::Index>(i)];
    summary.push_back(std::move(row));
  }
  diag["summary"] = std::move(summary);
  write_text_file((fs::path(out_dir) / "diagnostics.json").string(), diag.dump(2) + "\n");
  manifest.files.push_back("diagnostics.json");

  std::vector<std::string> plot_names = pm.param_names;
  std::vector<ChainResult> plot_chains;
  std::span<const ChainResult> plot_span(chains);
  if (pm.tau_range) {
    plot_chains = with_glmm_derived_columns(chains, pm.tau_range->first, pm.tau_range->second, plot_names);
    plot_span = plot_chains;
  }
  const PlotData pd = export_plot_data(plot_span, config.burnin, config.plot_bins, plot_names);
  write_text_file((fs::path(out_dir) / "plotdata.json").string(), plotdata_to_json(pd).dump() + "\n");
  manifest.files.push_back("plotdata.json");

  manifest.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  json mj;
  mj["config"] = config_to_json(config);
  mj["seed"] = config.seed;
  mj["param_names"] = pm.param_names;
  mj["acceptance_rate_per_chain"] = manifest.acceptance_rate_per_chain;
  mj["divergences_per_chain"] = manifest.divergences_per_chain;
  mj["wall_time_seconds"] = manifest.wall_time_seconds;
  mj["files"] = manifest.files;
  write_text_file((fs::path(out_dir) / "manifest.json").string(), mj.dump(2) + "\n");
  manifest.files.push_back("manifest.json");

  return manifest;
}

}  // namespace hmcglm
