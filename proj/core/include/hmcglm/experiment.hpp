#ifndef HMCGLM_EXPERIMENT_HPP
#define HMCGLM_EXPERIMENT_HPP

#include <optional>
#include <string>
#include <vector>

#include "hmcglm/diagnostics.hpp"
#include "hmcglm/sampler.hpp"

namespace hmcglm {

enum class ModelKind { Linear, Logistic, PoissonGlmm, GaussianDemo };

/// A config-file driven run: which model on which dataset, sampler settings,
/// and output controls. Loaded from a single JSON document (schema in the
/// repository README).
struct ExperimentConfig {
  ModelKind model = ModelKind::GaussianDemo;
  std::string data_csv;            // dataset fixture (empty for gaussian_demo)
  std::string data_config;         // dataset sidecar declaring column types/levels
  std::string formula;             // model formula, e.g. "breaks ~ wool*tension"
  std::optional<std::string> random_intercept;  // grouping column (poisson_glmm)

  // hyperparameters (model-specific subset is used)
  double a = 1e-4, b = 1e-4;
  double sig2beta = 1e3;
  double nu_xi = 1.0, A_xi = 25.0;
  int gaussian_dim = 5;

  SamplerKind sampler = SamplerKind::Hmc;
  int n_samples = 0;
  int burnin = 0;
  int chains = 1;
  std::uint64_t seed = 0;
  std::vector<double> eps;         // scalar configs are stored as one entry
  int L = 10;
  bool jitter_eps = false;
  bool jitter_steps = false;
  std::optional<std::vector<double>> mass_diag;
  // "full" (exact integrator, default) or "omit_final_kick" (the trajectory-edge
  // variant the bundled example acceptance windows are tuned against).
  FinalKick trajectory_edge = FinalKick::Full;
  bool qr = false;
  std::optional<std::vector<double>> theta_init;  // absent = zeros
  std::optional<double> gamma_init;               // linear model: initial gamma
  bool parallel = false;
  int plot_bins = 40;

  /// Parse and validate; throws ConfigError on schema violations.
  static ExperimentConfig from_json_file(const std::string& path);
};

/// What run_experiment produced; serialized as manifest.json.
struct RunManifest {
  std::vector<std::string> param_names;
  std::vector<double> acceptance_rate_per_chain;
  std::vector<std::int64_t> divergences_per_chain;
  double wall_time_seconds = 0.0;
  std::vector<std::string> files;
};

/// Prepared target plus reporting metadata, shared by run_experiment and tests.
struct PreparedModel {
  TargetDensity target;
  std::vector<std::string> param_names;
  VectorXd theta_init;
  // QR runs: back-transform matrix for the leading coefficient block.
  std::optional<MatrixXd> qr_R;
  // poisson_glmm: index ranges for the tau block and xi, used for plot data.
  std::optional<std::pair<int, int>> tau_range;
};

PreparedModel prepare_model(const ExperimentConfig& config);

/// Run the chains and persist samples.csv, summary.csv, diagnostics.json,
/// plotdata.json and manifest.json under out_dir.
RunManifest run_experiment(const ExperimentConfig& config, const std::string& out_dir);

// --- samples.csv round trip (layout: chain,iter,<params...>,accept,log_post) ---
void write_samples_csv(const std::string& path, std::span<const ChainResult> chains,
                       const std::vector<std::string>& param_names);
struct LoadedSamples {
  std::vector<ChainResult> chains;
  std::vector<std::string> param_names;
};
LoadedSamples read_samples_csv(const std::string& path);

void write_summary_csv(const std::string& path, const SummaryTable& table);

/// Derived u/lambda columns appended to GLMM chains for plot data.
std::vector<ChainResult> with_glmm_derived_columns(std::span<const ChainResult> chains,
                                                   int tau_begin, int tau_count,
                                                   std::vector<std::string>& param_names);

/// Resolve a fixture path: absolute paths pass through; otherwise the
/// HMCGLM_DATA_DIR environment variable (when set) or `base_dir` is prepended.
std::string resolve_data_path(const std::string& path, const std::string& base_dir);

}  // namespace hmcglm

#endif  // HMCGLM_EXPERIMENT_HPP
