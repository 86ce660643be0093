#ifndef HMCGLM_SAMPLER_HPP
#define HMCGLM_SAMPLER_HPP

#include <cstdint>
#include <vector>

#include "hmcglm/rng.hpp"
#include "hmcglm/target.hpp"

namespace hmcglm {

/// Leapfrog tuning: per-coordinate step sizes, step count, optional jitter.
struct LeapfrogConfig {
  VectorXd eps;          // strictly positive, length k (broadcast from a scalar)
  int steps = 10;        // L >= 1
  bool jitter_steps = false;  // L_t ~ uniform on {ceil(0.8L), ..., floor(1.2L)}
  bool jitter_eps = false;    // eps scaled by a uniform factor in [0.9, 1.1]

  static LeapfrogConfig scalar(double eps_value, Eigen::Index k, int steps);
  void validate(Eigen::Index k) const;
};

/// Whether a trajectory applies the closing momentum half-step of its final
/// leapfrog step. `Omit` reproduces the accept/reject behaviour the bundled
/// example configurations are tuned against; `Full` is the exact integrator
/// and the default. All integrator property guarantees (reversibility,
/// volume preservation) refer to `Full`.
enum class FinalKick { Full, Omit };

/// Full run specification for one or more chains.
struct HmcConfig {
  int n_samples = 0;
  VectorXd theta_init;
  LeapfrogConfig leapfrog;
  MassSpec mass;
  int chains = 1;
  std::uint64_t seed = 0;
  bool parallel = false;
  FinalKick final_kick = FinalKick::Full;
};

/// One chain's output: samples row t is theta^(t), t = 1..N (the initial
/// point is not emitted). Rejected iterations repeat the previous row.
struct ChainResult {
  MatrixXd samples;                   // N x k
  std::vector<std::uint8_t> accepted; // length N
  VectorXd log_post_trace;            // length N
  int chain_id = 0;
  double acceptance_rate = 0.0;
  std::int64_t divergences = 0;
};

enum class SamplerKind { Hmc, Mh };

/// H(theta, p) = -log f(theta) + 1/2 sum_i p_i^2 / M_ii.
double hamiltonian(const PhaseState& state, const TargetDensity& target, const MassSpec& mass);

/// Draw p with independent coordinates p_i ~ Normal(0, M_ii).
VectorXd sample_momentum(const MassSpec& mass, Rng& rng);

/// One leapfrog step: half-kick, drift, half-kick, applied coordinate-wise
/// with per-coordinate step sizes. Throws DivergenceError if the gradient or
/// the new position is non-finite.
PhaseState leapfrog_step(const PhaseState& state, const TargetDensity& target,
                         const VectorXd& eps, const MassSpec& mass);

struct TrajectoryResult {
  PhaseState state;
  int steps_taken = 0;
};

/// Composition of L leapfrog steps. Jitter draws (step count first, then the
/// eps factor) are consumed from `rng` only when the corresponding flag is
/// set. Divergence errors propagate.
TrajectoryResult leapfrog_trajectory(const PhaseState& state, const TargetDensity& target,
                                     const LeapfrogConfig& cfg, const MassSpec& mass, Rng& rng,
                                     FinalKick final_kick = FinalKick::Full);

struct StepResult {
  VectorXd theta;
  bool accepted = false;
  double log_post = 0.0;
  bool divergent = false;
};

/// One HMC iteration: momentum refresh, trajectory, momentum negation, and
/// the log-space Metropolis test log(u) <= min(0, log alpha). Divergent
/// trajectories are treated as log f = -inf (automatic rejection).
StepResult hmc_step(const VectorXd& theta_prev, double log_post_prev, const TargetDensity& target,
                    const LeapfrogConfig& cfg, const MassSpec& mass, Rng& rng,
                    FinalKick final_kick = FinalKick::Full);

/// One random-walk Metropolis iteration with proposal
/// theta_prev + proposal_scale .* z, z ~ N(0, I); symmetric acceptance
/// log alpha = log f(prop) - log f(prev), accept iff log(u) <= min(0, log alpha).
StepResult mh_step(const VectorXd& theta_prev, double log_post_prev, const TargetDensity& target,
                   const VectorXd& proposal_scale, Rng& rng);

/// N iterations of hmc_step from theta_init; deterministic given (seed, chain_id).
ChainResult run_hmc_chain(const TargetDensity& target, const HmcConfig& config, int chain_id, Rng& rng);

/// As run_hmc_chain with mh_step inside; leapfrog.eps is the proposal scale.
ChainResult run_mh_chain(const TargetDensity& target, const HmcConfig& config, int chain_id, Rng& rng);

/// Run config.chains chains, each seeded from (config.seed, chain_id).
/// Results are ordered by chain_id and identical whether or not the chains
/// execute concurrently.
std::vector<ChainResult> run_chains(const TargetDensity& target, const HmcConfig& config,
                                    SamplerKind kind = SamplerKind::Hmc);

}  // namespace hmcglm

#endif  // HMCGLM_SAMPLER_HPP
