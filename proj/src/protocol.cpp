#include "obisect/protocol.hpp"

#include <string>

#include "obisect/errors.hpp"

namespace obisect {

Database make_database(Vector w_star) {
  if (w_star.size() < 1)
    throw UsageError("database: dimension must be at least 1");
  for (Eigen::Index i = 0; i < w_star.size(); ++i)
    if (!(w_star[i] >= 0.0 && w_star[i] <= 1.0))
      throw UsageError("database: entry " + std::to_string(i) +
                       " outside [0, 1]");
  return Database{std::move(w_star)};
}

void validate_query(const Vector& q) {
  double sq = 0.0;
  for (Eigen::Index i = 0; i < q.size(); ++i) {
    if (!(q[i] >= 0.0 && q[i] <= 1.0))
      throw ProtocolError("query entry " + std::to_string(i) +
                          " outside [0, 1]");
    sq += q[i] * q[i];
  }
  if (!(sq > 0.0)) throw ProtocolError("query must be a nonzero vector");
}

double perturbed_answer(const Database& db, const Vector& q,
                        const NoiseModel& model, Rng& rng) {
  if (q.size() != db.w_star.size())
    throw ProtocolError("query dimension does not match database");
  validate_query(q);
  const double exact = db.w_star.dot(q);
  return exact + static_cast<double>(db.dimension()) * sample(model, rng);
}

int ask(QueryTicket& ticket, const Database& db, const NoiseModel& model,
        double theta, Rng& rng) {
  if (ticket.consumed)
    throw OneShotViolation("oracle already consulted for this query");
  ticket.consumed = true;
  return oracle(perturbed_answer(db, ticket.query, model, rng), theta);
}

}  // namespace obisect
