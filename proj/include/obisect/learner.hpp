#pragma once

#include <cstdint>

#include "obisect/hypercube.hpp"
#include "obisect/noise.hpp"
#include "obisect/protocol.hpp"

namespace obisect {

/// Everything the online bisection learner carries between queries. Apart
/// from the basis, the state is a fixed number of scalars per subspace
/// dimension: the interval pair and the two observation counters. Nothing
/// here grows with the stream length.
struct LearnerState {
  Hypercube hc;
  Eigen::Array<std::int64_t, Eigen::Dynamic, 1> n_plus;   // up-votes per dim
  Eigen::Array<std::int64_t, Eigen::Dynamic, 1> n_minus;  // down-votes per dim
  double phi = 0.0;      // angle gate, 2*asin(1/(64*sqrt(d)))
  double cos_phi = 1.0;  // cached cos(phi) so the gate avoids acos per query
  std::int64_t total_queries = 0;  // T
  int ambient_dim = 0;             // D
  int subspace_dim = 0;            // d
  NoiseModel noise;
  int phase = 0;                 // shrinks performed so far
  double alpha = 0.75;           // per-shrink side ratio
  double log_t = 0.0;            // ln(T), cached
  double stop_side = 0.0;        // ln(T)/sqrt(T*d), cached
  bool shrink_enabled = true;    // cleared only by the no-learning ablation
  Eigen::VectorXd coeff_buf;     // scratch for basis^T * q
};

/// Per-query observability of the learner's branch decisions.
struct StepOutcome {
  double answer = 0.0;
  int matched_dim = -1;  // -1: no basis direction passed the angle gate
  int oracle_bit = -1;   // -1: the oracle was not consulted
  bool shrank = false;
  bool converged = false;
};

LearnerState new_learner(int D, int d, std::int64_t T, Basis basis,
                         NoiseModel noise);

/// 30 * log_t / delta_p^2, the per-phase observation quota.
double critical_count(double log_t, double delta_p_value);

/// Quota at the learner's current side length.
double n_crit(const LearnerState& state);

/// True once every interval is no longer than ln(T)/sqrt(T*d).
bool is_converged(const LearnerState& state);

/// Shrink vote: keep the upper part iff n_plus > n * p1 + n * dp / 2.
/// Ties keep the lower part.
bool keep_upper_decision(std::int64_t n_plus, std::int64_t n_total, double p1,
                         double dp);

/// Applies the shrink rule to every interval. Probabilities are taken from
/// the side length before any interval moves. Counters are left untouched;
/// the caller resets them.
void shrink(LearnerState& state);

/// One online round: answer from the current hypothesis, then (unless
/// converged) try to turn the query into an observation for its most aligned
/// basis direction, and shrink once every direction has met its quota.
StepOutcome step(LearnerState& state, const Vector& q, AskCapability& access);

/// Number of scalar slots in the state (everything except the basis matrix).
/// A function of d alone; in particular independent of T.
std::int64_t scalar_count(const LearnerState& state);

}  // namespace obisect
