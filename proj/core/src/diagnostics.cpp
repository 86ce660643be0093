#include "hmcglm/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "hmcglm/errors.hpp"

namespace hmcglm {

double acceptance_rate(const ChainResult& chain) {
  if (chain.accepted.empty()) throw DimensionError("empty chain");
  std::int64_t n = 0;
  for (auto a : chain.accepted) n += a;
  return static_cast<double>(n) / static_cast<double>(chain.accepted.size());
}

double empirical_quantile(std::vector<double> values, double prob) {
  if (values.empty()) throw DimensionError("quantile of empty sample");
  if (prob < 0.0 || prob > 1.0) throw DimensionError("quantile probability outside [0,1]");
  std::sort(values.begin(), values.end());
  const auto m = values.size();
  const double h = static_cast<double>(m - 1) * prob;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const auto hi = std::min(lo + 1, m - 1);
  return values[lo] + (h - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

namespace {

void check_burnin(std::span<const ChainResult> chains, int burnin) {
  if (chains.empty()) throw DimensionError("no chains");
  for (const auto& c : chains)
    if (burnin < 0 || burnin >= c.samples.rows())
      throw DimensionError("burnin must be in [0, N)");
}

std::vector<double> pooled_column(std::span<const ChainResult> chains, int burnin, Eigen::Index j) {
  std::vector<double> out;
  for (const auto& c : chains)
    for (Eigen::Index t = burnin; t < c.samples.rows(); ++t) out.push_back(c.samples(t, j));
  return out;
}

}  // namespace

VectorXd split_rhat(std::span<const ChainResult> chains, int burnin) {
  check_burnin(chains, burnin);
  const Eigen::Index k = chains[0].samples.cols();
  Eigen::Index m = std::numeric_limits<Eigen::Index>::max();
  for (const auto& c : chains) m = std::min(m, (c.samples.rows() - burnin) / 2);
  if (m < 2) throw DimensionError("post-burnin length must be >= 4 for split R-hat");

  VectorXd rhat(k);
  for (Eigen::Index j = 0; j < k; ++j) {
    std::vector<double> means, vars;
    for (const auto& c : chains) {
      for (int half = 0; half < 2; ++half) {
        const Eigen::Index start = burnin + half * m;
        const auto seg = c.samples.col(j).segment(start, m);
        const double mean = seg.mean();
        const double var = (seg.array() - mean).square().sum() / static_cast<double>(m - 1);
        means.push_back(mean);
        vars.push_back(var);
      }
    }
    const double W = std::accumulate(vars.begin(), vars.end(), 0.0) / static_cast<double>(vars.size());
    const double grand = std::accumulate(means.begin(), means.end(), 0.0) / static_cast<double>(means.size());
    double B = 0.0;
    for (double mu : means) B += (mu - grand) * (mu - grand);
    B *= static_cast<double>(m) / static_cast<double>(means.size() - 1);
    const double md = static_cast<double>(m);
    rhat[j] = (W == 0.0) ? 1.0 : std::sqrt((md - 1.0) / md + B / (md * W));
  }
  return rhat;
}

SummaryTable quantile_summary(std::span<const ChainResult> chains, int burnin,
                              const std::vector<std::string>& param_names,
                              const std::vector<double>& probs) {
  check_burnin(chains, burnin);
  const Eigen::Index k = chains[0].samples.cols();
  if (static_cast<Eigen::Index>(param_names.size()) != k)
    throw DimensionError("parameter name count differs from sample width");

  SummaryTable table;
  table.names = param_names;
  table.probs = probs;
  table.quantiles.resize(k, static_cast<Eigen::Index>(probs.size()));
  for (Eigen::Index j = 0; j < k; ++j) {
    auto pooled = pooled_column(chains, burnin, j);
    for (std::size_t q = 0; q < probs.size(); ++q)
      table.quantiles(j, static_cast<Eigen::Index>(q)) = empirical_quantile(pooled, probs[q]);
  }
  table.rhat = split_rhat(chains, burnin);
  return table;
}

PlotData export_plot_data(std::span<const ChainResult> chains, int burnin, int bins,
                          const std::vector<std::string>& param_names,
                          const std::vector<double>* comparisons) {
  check_burnin(chains, burnin);
  if (bins < 1) throw DimensionError("bins must be >= 1");
  const Eigen::Index k = chains[0].samples.cols();

  PlotData pd;
  pd.burnin = burnin;
  pd.bins = bins;
  for (Eigen::Index j = 0; j < k; ++j) {
    ParamPlotData p;
    p.name = param_names[static_cast<std::size_t>(j)];

    auto pooled = pooled_column(chains, burnin, j);
    const auto [mn_it, mx_it] = std::minmax_element(pooled.begin(), pooled.end());
    double lo = *mn_it, hi = *mx_it;
    if (lo == hi) hi = lo + 1.0;  // constant samples: single occupied bin
    const double width = (hi - lo) / bins;
    p.bin_edges.resize(static_cast<std::size_t>(bins) + 1);
    for (int b = 0; b <= bins; ++b) p.bin_edges[static_cast<std::size_t>(b)] = lo + width * b;
    p.counts.assign(static_cast<std::size_t>(bins), 0);
    for (double v : pooled) {
      auto b = static_cast<std::int64_t>((v - lo) / width);
      b = std::clamp<std::int64_t>(b, 0, bins - 1);
      ++p.counts[static_cast<std::size_t>(b)];
    }

    // Thin the trace to at most ~1000 points per chain.
    for (const auto& c : chains) {
      const Eigen::Index len = c.samples.rows() - burnin;
      const Eigen::Index stride = std::max<Eigen::Index>(1, len / 1000);
      for (Eigen::Index t = burnin; t < c.samples.rows(); t += stride) {
        p.trace_chain.push_back(c.chain_id);
        p.trace_iteration.push_back(static_cast<int>(t) + 1);
        p.trace_value.push_back(c.samples(t, j));
      }
    }

    if (comparisons && j < static_cast<Eigen::Index>(comparisons->size()) &&
        std::isfinite((*comparisons)[static_cast<std::size_t>(j)]))
      p.comparison = (*comparisons)[static_cast<std::size_t>(j)];
    pd.params.push_back(std::move(p));
  }
  return pd;
}

}  // namespace hmcglm
