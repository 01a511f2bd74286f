#include "obisect/learner.hpp"

#include <cmath>
#include <string>

#include "obisect/errors.hpp"

namespace obisect {

LearnerState new_learner(int D, int d, std::int64_t T, Basis basis,
                         NoiseModel noise) {
  if (d < 1 || d > D)
    throw UsageError("new_learner: need 1 <= d <= D");
  if (T < 2)
    throw UsageError("new_learner: T must be at least 2 (log T must be positive)");
  if (basis.ambient_dimension() != D || basis.dimension() != d)
    throw UsageError("new_learner: basis shape does not match (D, d)");

  LearnerState state;
  state.hc = initial(D, d, std::move(basis));
  state.n_plus.setZero(d);
  state.n_minus.setZero(d);
  state.phi = 2.0 * std::asin(1.0 / (64.0 * std::sqrt(static_cast<double>(d))));
  state.cos_phi = std::cos(state.phi);
  state.total_queries = T;
  state.ambient_dim = D;
  state.subspace_dim = d;
  state.noise = noise;
  state.log_t = std::log(static_cast<double>(T));
  state.stop_side = state.log_t / std::sqrt(static_cast<double>(T) * d);
  state.coeff_buf.resize(d);
  return state;
}

double critical_count(double log_t, double delta_p_value) {
  if (!(delta_p_value > 0.0))
    throw DegenerateInputError(
        "critical_count: noise window probability is zero; the quota diverges");
  return 30.0 * log_t / (delta_p_value * delta_p_value);
}

double n_crit(const LearnerState& state) {
  const double side = side_length(state.hc);
  return critical_count(state.log_t,
                        delta_p(state.noise, side, state.ambient_dim));
}

bool is_converged(const LearnerState& state) {
  return side_length(state.hc) <= state.stop_side;
}

bool keep_upper_decision(std::int64_t n_plus, std::int64_t n_total, double p1,
                         double dp) {
  const double n = static_cast<double>(n_total);
  return static_cast<double>(n_plus) > n * p1 + n * dp / 2.0;
}

void shrink(LearnerState& state) {
  const double side = side_length(state.hc);
  const double dp = delta_p(state.noise, side, state.ambient_dim);
  const double p_above = p1(state.noise, side, state.ambient_dim);
  for (int i = 0; i < state.subspace_dim; ++i) {
    const std::int64_t n_total = state.n_plus[i] + state.n_minus[i];
    const bool upper =
        keep_upper_decision(state.n_plus[i], n_total, p_above, dp);
    const Interval next =
        shrink_interval(state.hc.interval(i), upper, state.alpha);
    state.hc.lower[i] = next.lo;
    state.hc.upper[i] = next.hi;
  }
}

StepOutcome step(LearnerState& state, const Vector& q, AskCapability& access) {
  if (q.size() != state.hc.basis.vectors.rows())
    throw ProtocolError("step: query dimension does not match the basis");
  StepOutcome out;

  // Answer first: the hypothesis center scores the query no matter what.
  state.coeff_buf.noalias() = state.hc.basis.vectors.transpose() * q;
  const Eigen::VectorXd& g = state.coeff_buf;
  out.answer = 0.5 * ((state.hc.lower + state.hc.upper) * g.array()).sum();

  if (is_converged(state)) {
    out.converged = true;
    return out;
  }

  const double q_norm = q.norm();
  if (!(q_norm > 0.0)) throw ProtocolError("step: query must be nonzero");

  // Angle gate: the most aligned basis direction, if any is within phi.
  int best = -1;
  double best_cos = 0.0;
  for (int i = 0; i < state.subspace_dim; ++i) {
    const double c = g[i] / q_norm;
    if (c < state.cos_phi) continue;
    if (best < 0 || c > best_cos) {
      best = i;
      best_cos = c;
    }
  }
  if (best < 0) return out;

  const ThresholdInfo th = threshold_midpoint(state.hc, q);
  const int bit = access.ask(th.theta);
  if (bit > 0)
    ++state.n_plus[best];
  else
    ++state.n_minus[best];
  out.matched_dim = best;
  out.oracle_bit = bit;

  if (!state.shrink_enabled) return out;

  const double quota = n_crit(state);
  bool all_met = true;
  for (int i = 0; i < state.subspace_dim; ++i)
    if (static_cast<double>(state.n_plus[i] + state.n_minus[i]) < quota) {
      all_met = false;
      break;
    }
  if (all_met) {
    shrink(state);
    state.n_plus.setZero();
    state.n_minus.setZero();
    ++state.phase;
    out.shrank = true;
  }
  return out;
}

std::int64_t scalar_count(const LearnerState& state) {
  const std::int64_t d = state.subspace_dim;
  // intervals (2d) + counters (2d) + scratch (d) + the fixed scalar fields.
  const std::int64_t fixed = 10;  // phi, cos_phi, T, D, d, phase, alpha,
                                  // log_t, stop_side, shrink_enabled
  return 5 * d + fixed;
}

}  // namespace obisect
