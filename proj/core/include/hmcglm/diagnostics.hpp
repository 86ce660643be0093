#ifndef HMCGLM_DIAGNOSTICS_HPP
#define HMCGLM_DIAGNOSTICS_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hmcglm/sampler.hpp"

namespace hmcglm {

/// Default summary probabilities, mirroring the reported quantile tables.
inline const std::vector<double> kDefaultProbs = {0.025, 0.05, 0.25, 0.50, 0.75, 0.95, 0.975};

struct SummaryTable {
  std::vector<std::string> names;   // one row per parameter
  std::vector<double> probs;
  MatrixXd quantiles;               // names.size() x probs.size()
  VectorXd rhat;
};

double acceptance_rate(const ChainResult& chain);

/// Empirical quantile with linear interpolation: for sorted x_1..x_m and
/// probability p, h = (m-1)p + 1 and the value interpolates between x_floor(h)
/// and the next order statistic.
double empirical_quantile(std::vector<double> values, double prob);

/// Pools all chains after dropping the first `burnin` rows of each, then
/// computes the quantiles above plus split R-hat per parameter.
SummaryTable quantile_summary(std::span<const ChainResult> chains, int burnin,
                              const std::vector<std::string>& param_names,
                              const std::vector<double>& probs = kDefaultProbs);

/// Split-chain Gelman-Rubin: each post-burnin chain is halved, giving 2C
/// sequences of length m; W = mean within-sequence variance, B = m * variance
/// of sequence means, R-hat = sqrt((m-1)/m + B/(mW)), with 1.0 when W = 0.
VectorXd split_rhat(std::span<const ChainResult> chains, int burnin);

struct ParamPlotData {
  std::string name;
  std::vector<double> bin_edges;       // bins + 1 edges, equal width
  std::vector<std::int64_t> counts;
  std::vector<int> trace_chain;        // thinned trace points
  std::vector<int> trace_iteration;
  std::vector<double> trace_value;
  std::optional<double> comparison;    // e.g. a frequentist point estimate
};

struct PlotData {
  int burnin = 0;
  int bins = 0;
  std::vector<ParamPlotData> params;
};

/// Histogram + thinned trace per parameter over the pooled post-burnin draws;
/// `comparisons` (when given) attaches one vertical reference value per
/// parameter, NaN entries meaning none.
PlotData export_plot_data(std::span<const ChainResult> chains, int burnin, int bins,
                          const std::vector<std::string>& param_names,
                          const std::vector<double>* comparisons = nullptr);

}  // namespace hmcglm

#endif  // HMCGLM_DIAGNOSTICS_HPP
