#pragma once

#include <string>

#include "obisect/geometry.hpp"
#include "obisect/rng.hpp"

namespace obisect {

enum class QueryKind { kUniformCoeff, kBasisMixture };

QueryKind query_kind_from_name(const std::string& name);
std::string query_kind_name(QueryKind kind);

/// Distribution over valid queries inside span(subspace). basis_mixture sends
/// a mixture_weight fraction of queries to within jitter_angle of a random
/// basis direction; the rest (and all of uniform_coeff) are nonnegative
/// coefficient combinations rescaled into the unit entry box.
struct QueryDistribution {
  QueryKind kind = QueryKind::kBasisMixture;
  double mixture_weight = 0.5;
  double jitter_angle = 0.0;
  Basis subspace;
  double scale_lo = 0.25;
  double scale_hi = 1.0;
};

/// Orthonormal basis with nonnegative entries supported on disjoint
/// coordinate blocks, so every nonnegative coefficient combination scales
/// into a valid query.
Basis make_subspace(int D, int d, Rng& rng);

Vector sample_query(const QueryDistribution& dist, Rng& rng);

/// Allocation-free variant for hot loops.
void sample_query_into(const QueryDistribution& dist, Rng& rng, Vector& out);

/// Monte Carlo estimate of the alignment mass: for each basis direction, the
/// fraction of n normalized queries with cosine at least cos(theta); returns
/// the minimum over directions.
double estimate_p(const QueryDistribution& dist, double theta, int n,
                  Rng& rng);

/// Query-budget factor 2 / p^2.
double r_from_p(double p_hat);

}  // namespace obisect
