#include "obisect/querygen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "obisect/errors.hpp"

namespace obisect {
namespace {

void require_valid(const QueryDistribution& dist) {
  if (dist.subspace.dimension() < 1)
    throw UsageError("query distribution: empty subspace");
  if (dist.kind == QueryKind::kBasisMixture &&
      !(dist.mixture_weight >= 0.0 && dist.mixture_weight <= 1.0))
    throw UsageError("query distribution: mixture_weight outside [0, 1]");
  if (dist.jitter_angle < 0.0)
    throw UsageError("query distribution: negative jitter angle");
  if (!(dist.scale_lo > 0.0 && dist.scale_lo <= dist.scale_hi &&
        dist.scale_hi <= 1.0))
    throw UsageError("query distribution: scale range must satisfy 0 < lo <= hi <= 1");
}

// Nonnegative coefficient combination rescaled so the largest entry is the
// drawn scale. Valid by construction under a nonnegative disjoint-block basis.
void sample_uniform_coeff(const QueryDistribution& dist, Rng& rng,
                          Vector& out) {
  const auto& b = dist.subspace.vectors;
  const int d = dist.subspace.dimension();
  Eigen::VectorXd coeffs(d);
  double max_entry = 0.0;
  do {
    for (int i = 0; i < d; ++i) coeffs[i] = uniform01(rng);
    out.noalias() = b * coeffs;
    max_entry = out.maxCoeff();
  } while (!(max_entry > 0.0));
  const double scale = uniform_in(rng, dist.scale_lo, dist.scale_hi);
  out *= scale / max_entry;
}

// A scaled copy of basis direction i, rotated inside the span by an angle up
// to jitter_angle toward a random nonnegative in-span direction. Rotation
// within the nonnegative coefficient cone keeps every entry in [0, 1].
void sample_near_basis(const QueryDistribution& dist, Rng& rng, Vector& out) {
  const auto& b = dist.subspace.vectors;
  const int d = dist.subspace.dimension();
  const int pick = static_cast<int>(uniform_index(rng, d));
  const double scale = uniform_in(rng, dist.scale_lo, dist.scale_hi);

  double angle = dist.jitter_angle > 0.0
                     ? uniform_in(rng, 0.0, dist.jitter_angle)
                     : 0.0;
  if (d == 1) angle = 0.0;  // no in-span direction to rotate toward

  if (angle == 0.0) {
    out.noalias() = b.col(pick) * scale;
    return;
  }

  // Orthogonal part of a random nonnegative coefficient draw: with disjoint
  // blocks this is just the other directions' mix, entrywise nonnegative.
  Eigen::VectorXd ortho(d);
  double norm = 0.0;
  do {
    for (int i = 0; i < d; ++i)
      ortho[i] = i == pick ? 0.0 : uniform01(rng);
    norm = ortho.norm();
  } while (!(norm > 0.0));
  ortho /= norm;

  Eigen::VectorXd coeffs = Eigen::VectorXd::Zero(d);
  coeffs[pick] = std::cos(angle) * scale;
  coeffs += (std::sin(angle) * scale) * ortho;
  out.noalias() = b * coeffs;
}

}  // namespace

QueryKind query_kind_from_name(const std::string& name) {
  if (name == "uniform_coeff") return QueryKind::kUniformCoeff;
  if (name == "basis_mixture") return QueryKind::kBasisMixture;
  throw ConfigError("unknown query kind '" + name + "'");
}

std::string query_kind_name(QueryKind kind) {
  return kind == QueryKind::kUniformCoeff ? "uniform_coeff" : "basis_mixture";
}

Basis make_subspace(int D, int d, Rng& rng) {
  if (d < 1 || d > D) throw UsageError("make_subspace: need 1 <= d <= D");

  std::vector<int> coords(static_cast<std::size_t>(D));
  std::iota(coords.begin(), coords.end(), 0);
  for (int i = D - 1; i > 0; --i)
    std::swap(coords[static_cast<std::size_t>(i)],
              coords[uniform_index(rng, static_cast<std::uint64_t>(i) + 1)]);

  // Disjoint contiguous chunks of the shuffled coordinates, one per basis
  // vector, each with positive random weights.
  Eigen::MatrixXd vectors = Eigen::MatrixXd::Zero(D, d);
  const int base = D / d;
  const int extra = D % d;
  int next = 0;
  for (int i = 0; i < d; ++i) {
    const int count = base + (i < extra ? 1 : 0);
    double sq = 0.0;
    for (int k = 0; k < count; ++k) {
      const double w = uniform_in(rng, 0.1, 1.0);
      vectors(coords[static_cast<std::size_t>(next + k)], i) = w;
      sq += w * w;
    }
    vectors.col(i) /= std::sqrt(sq);
    next += count;
  }
  return Basis{std::move(vectors)};
}

Vector sample_query(const QueryDistribution& dist, Rng& rng) {
  Vector out(dist.subspace.ambient_dimension());
  sample_query_into(dist, rng, out);
  return out;
}

void sample_query_into(const QueryDistribution& dist, Rng& rng, Vector& out) {
  require_valid(dist);
  out.resize(dist.subspace.ambient_dimension());
  if (dist.kind == QueryKind::kBasisMixture &&
      uniform01(rng) < dist.mixture_weight)
    sample_near_basis(dist, rng, out);
  else
    sample_uniform_coeff(dist, rng, out);
  // Guard the entry box against last-ulp rounding from the rotation.
  for (Eigen::Index i = 0; i < out.size(); ++i)
    out[i] = std::clamp(out[i], 0.0, 1.0);
}

double estimate_p(const QueryDistribution& dist, double theta, int n,
                  Rng& rng) {
  if (n < 1) throw UsageError("estimate_p: need at least one sample");
  const int d = dist.subspace.dimension();
  const double cos_theta = std::cos(theta);
  std::vector<std::int64_t> hits(static_cast<std::size_t>(d), 0);
  Vector q(dist.subspace.ambient_dimension());
  for (int trial = 0; trial < n; ++trial) {
    sample_query_into(dist, rng, q);
    for (int i = 0; i < d; ++i)
      if (cos_angle(q, dist.subspace.vectors.col(i)) >= cos_theta)
        ++hits[static_cast<std::size_t>(i)];
  }
  std::int64_t min_hits = hits[0];
  for (std::int64_t h : hits) min_hits = std::min(min_hits, h);
  return static_cast<double>(min_hits) / static_cast<double>(n);
}

double r_from_p(double p_hat) {
  if (!(p_hat > 0.0))
    throw DegenerateInputError(
        "r_from_p: alignment probability must be positive");
  return 2.0 / (p_hat * p_hat);
}

}  // namespace obisect
