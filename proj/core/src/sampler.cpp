#include "hmcglm/sampler.hpp"

#include <cmath>
#include <future>
#include <thread>

#include "hmcglm/errors.hpp"

namespace hmcglm {

LeapfrogConfig LeapfrogConfig::scalar(double eps_value, Eigen::Index k, int steps) {
  LeapfrogConfig cfg;
  cfg.eps = VectorXd::Constant(k, eps_value);
  cfg.steps = steps;
  return cfg;
}

void LeapfrogConfig::validate(Eigen::Index k) const {
  if (eps.size() != k)
    throw DimensionError("eps has length " + std::to_string(eps.size()) + ", expected " + std::to_string(k));
  for (Eigen::Index i = 0; i < eps.size(); ++i)
    if (!(eps[i] > 0.0) || !std::isfinite(eps[i]))
      throw DimensionError("eps entry " + std::to_string(i) + " not positive and finite");
  if (steps < 1) throw DimensionError("leapfrog steps must be >= 1");
}

double hamiltonian(const PhaseState& state, const TargetDensity& target, const MassSpec& mass) {
  state.check();
  target.check_point(state.theta);
  if (mass.diag.size() != target.dim) throw DimensionError("mass diagonal length mismatch");
  const double lp = target.log_density(state.theta);
  const double kinetic = 0.5 * (state.momentum.array().square() / mass.diag.array()).sum();
  if (std::isinf(lp) && lp < 0) return std::numeric_limits<double>::infinity();
  return -lp + kinetic;
}

VectorXd sample_momentum(const MassSpec& mass, Rng& rng) {
  mass.validate();
  VectorXd p(mass.diag.size());
  for (Eigen::Index i = 0; i < p.size(); ++i) p[i] = std::sqrt(mass.diag[i]) * rng.normal();
  return p;
}

namespace {

VectorXd checked_gradient(const TargetDensity& target, const VectorXd& theta) {
  VectorXd g = target.grad_log_density(theta);
  if (g.size() != target.dim) throw DimensionError("gradient length differs from target dimension");
  if (!g.allFinite()) throw DivergenceError("non-finite gradient", theta);
  return g;
}

// Shared body for leapfrog_step / leapfrog_trajectory; `closing_kick` controls
// the final momentum half-step of this single step.
PhaseState leapfrog_step_impl(const PhaseState& state, const TargetDensity& target,
                              const VectorXd& eps, const MassSpec& mass, bool closing_kick) {
  const VectorXd g = checked_gradient(target, state.theta);
  PhaseState next;
  next.momentum = state.momentum + 0.5 * eps.cwiseProduct(g);
  next.theta = state.theta + eps.cwiseProduct(next.momentum).cwiseQuotient(mass.diag);
  if (!next.theta.allFinite()) throw DivergenceError("non-finite position", next.theta);
  if (closing_kick) {
    const VectorXd g2 = checked_gradient(target, next.theta);
    next.momentum += 0.5 * eps.cwiseProduct(g2);
  }
  return next;
}

}  // namespace

PhaseState leapfrog_step(const PhaseState& state, const TargetDensity& target,
                         const VectorXd& eps, const MassSpec& mass) {
  state.check();
  target.check_point(state.theta);
  if (eps.size() != target.dim || mass.diag.size() != target.dim)
    throw DimensionError("leapfrog_step: eps/mass dimension mismatch");
  return leapfrog_step_impl(state, target, eps, mass, true);
}

TrajectoryResult leapfrog_trajectory(const PhaseState& state, const TargetDensity& target,
                                     const LeapfrogConfig& cfg, const MassSpec& mass, Rng& rng,
                                     FinalKick final_kick) {
  state.check();
  target.check_point(state.theta);
  cfg.validate(target.dim);

  int steps = cfg.steps;
  if (cfg.jitter_steps) {
    const auto lo = static_cast<std::int64_t>(std::ceil(0.8 * cfg.steps));
    const auto hi = static_cast<std::int64_t>(std::floor(1.2 * cfg.steps));
    steps = static_cast<int>(rng.uniform_int(std::max<std::int64_t>(1, lo), std::max<std::int64_t>(1, hi)));
  }
  VectorXd eps = cfg.eps;
  if (cfg.jitter_eps) eps *= 0.9 + 0.2 * rng.uniform();

  TrajectoryResult result;
  result.state = state;
  for (int i = 0; i < steps; ++i) {
    const bool closing = (final_kick == FinalKick::Full) || (i + 1 < steps);
    result.state = leapfrog_step_impl(result.state, target, eps, mass, closing);
  }
  result.steps_taken = steps;
  return result;
}

StepResult hmc_step(const VectorXd& theta_prev, double log_post_prev, const TargetDensity& target,
                    const LeapfrogConfig& cfg, const MassSpec& mass, Rng& rng,
                    FinalKick final_kick) {
  StepResult out;
  PhaseState start{theta_prev, sample_momentum(mass, rng)};
  const double kinetic0 = 0.5 * (start.momentum.array().square() / mass.diag.array()).sum();

  PhaseState prop;
  bool divergent = false;
  try {
    prop = leapfrog_trajectory(start, target, cfg, mass, rng, final_kick).state;
  } catch (const DivergenceError&) {
    divergent = true;
  }

  const double u = rng.uniform_open();
  if (!divergent) {
    prop.momentum = -prop.momentum;  // negate for reversibility
    const double log_post_prop = target.log_density(prop.theta);
    if (std::isfinite(log_post_prop)) {
      const double kinetic1 = 0.5 * (prop.momentum.array().square() / mass.diag.array()).sum();
      const double log_alpha = std::min(0.0, (log_post_prop - kinetic1) - (log_post_prev - kinetic0));
      if (std::log(u) <= log_alpha) {
        out.theta = prop.theta;
        out.accepted = true;
        out.log_post = log_post_prop;
        return out;
      }
    } else {
      divergent = true;
    }
  }
  out.theta = theta_prev;
  out.accepted = false;
  out.log_post = log_post_prev;
  out.divergent = divergent;
  return out;
}

StepResult mh_step(const VectorXd& theta_prev, double log_post_prev, const TargetDensity& target,
                   const VectorXd& proposal_scale, Rng& rng) {
  if (proposal_scale.size() != target.dim) throw DimensionError("proposal scale dimension mismatch");
  VectorXd z(target.dim);
  for (Eigen::Index i = 0; i < z.size(); ++i) z[i] = rng.normal();
  const VectorXd prop = theta_prev + proposal_scale.cwiseProduct(z);
  const double log_post_prop = target.log_density(prop);
  const double u = rng.uniform_open();

  StepResult out;
  if (std::isfinite(log_post_prop)) {
    const double log_alpha = std::min(0.0, log_post_prop - log_post_prev);
    if (std::log(u) <= log_alpha) {
      out.theta = prop;
      out.accepted = true;
      out.log_post = log_post_prop;
      return out;
    }
  }
  out.theta = theta_prev;
  out.accepted = false;
  out.log_post = log_post_prev;
  return out;
}

namespace {

ChainResult run_chain_impl(const TargetDensity& target, const HmcConfig& config, int chain_id,
                           Rng& rng, SamplerKind kind) {
  if (config.n_samples < 1) throw ConfigError("n_samples must be >= 1");
  if (config.theta_init.size() != target.dim) throw ConfigError("theta_init length differs from target dimension");
  config.leapfrog.validate(target.dim);
  config.mass.validate();
  if (config.mass.diag.size() != target.dim) throw ConfigError("mass diagonal length differs from target dimension");

  double log_post = target.log_density(config.theta_init);
  if (!std::isfinite(log_post))
    throw ConfigError("log density not finite at theta_init");

  const int n = config.n_samples;
  ChainResult result;
  result.chain_id = chain_id;
  result.samples.resize(n, target.dim);
  result.accepted.resize(n);
  result.log_post_trace.resize(n);

  VectorXd theta = config.theta_init;
  std::int64_t n_accept = 0;
  for (int t = 0; t < n; ++t) {
    StepResult step = (kind == SamplerKind::Hmc)
                          ? hmc_step(theta, log_post, target, config.leapfrog, config.mass, rng,
                                     config.final_kick)
                          : mh_step(theta, log_post, target, config.leapfrog.eps, rng);
    theta = std::move(step.theta);
    log_post = step.log_post;
    result.samples.row(t) = theta.transpose();
    result.accepted[t] = step.accepted ? 1 : 0;
    result.log_post_trace[t] = log_post;
    n_accept += step.accepted ? 1 : 0;
    result.divergences += step.divergent ? 1 : 0;
  }
  result.acceptance_rate = static_cast<double>(n_accept) / static_cast<double>(n);
  return result;
}

}  // namespace

ChainResult run_hmc_chain(const TargetDensity& target, const HmcConfig& config, int chain_id, Rng& rng) {
  return run_chain_impl(target, config, chain_id, rng, SamplerKind::Hmc);
}

ChainResult run_mh_chain(const TargetDensity& target, const HmcConfig& config, int chain_id, Rng& rng) {
  return run_chain_impl(target, config, chain_id, rng, SamplerKind::Mh);
}

std::vector<ChainResult> run_chains(const TargetDensity& target, const HmcConfig& config, SamplerKind kind) {
  if (config.chains < 1) throw ConfigError("chains must be >= 1");

  auto run_one = [&](int c) {
    try {
      Rng rng = Rng::for_chain(config.seed, c);
      return run_chain_impl(target, config, c, rng, kind);
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      throw SamplingError("chain " + std::to_string(c) + ": " + e.what(), c);
    }
  };

  std::vector<ChainResult> results;
  results.reserve(config.chains);
  if (config.parallel && config.chains > 1) {
    std::vector<std::future<ChainResult>> futures;
    futures.reserve(config.chains);
    for (int c = 0; c < config.chains; ++c)
      futures.push_back(std::async(std::launch::async, run_one, c));
    for (auto& f : futures) results.push_back(f.get());  // collected in chain-id order
  } else {
    for (int c = 0; c < config.chains; ++c) results.push_back(run_one(c));
  }
  return results;
}

}  // namespace hmcglm
