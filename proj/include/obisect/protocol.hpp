#pragma once

#include "obisect/geometry.hpp"
#include "obisect/noise.hpp"
#include "obisect/rng.hpp"

namespace obisect {

/// The hidden database: a vector with entries in [0, 1]. The learner never
/// touches this type; only the mechanism and the metrics side do.
struct Database {
  Vector w_star;

  int dimension() const { return static_cast<int>(w_star.size()); }
};

/// Validates the [0, 1] entry box before constructing a Database.
Database make_database(Vector w_star);

/// A query's single-use pass to the oracle. Once consumed it can never reach
/// the oracle again.
struct QueryTicket {
  const Vector& query;
  bool consumed = false;
};

/// Rejects queries outside the model: entries must be in [0, 1] and the
/// vector must be nonzero.
void validate_query(const Vector& q);

/// Exact answer plus scaled noise: w* . q + D * sample(model).
/// The exact answer never crosses this boundary unperturbed.
double perturbed_answer(const Database& db, const Vector& q,
                        const NoiseModel& model, Rng& rng);

/// 1 iff a_tilde is strictly greater than theta.
inline int oracle(double a_tilde, double theta) {
  return a_tilde > theta ? 1 : 0;
}

/// Consumes the ticket and returns the oracle bit for the chosen threshold.
/// A second call on the same ticket throws OneShotViolation.
int ask(QueryTicket& ticket, const Database& db, const NoiseModel& model,
        double theta, Rng& rng);

/// The learner-facing capability for one query: it can pick a threshold and
/// receive one bit, nothing else.
struct AskCapability {
  QueryTicket& ticket;
  const Database& db;
  const NoiseModel& noise;
  Rng& rng;

  int ask(double theta) {
    return obisect::ask(ticket, db, noise, theta, rng);
  }
};

}  // namespace obisect
