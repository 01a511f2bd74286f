#include <cmath>
#include <numbers>

#include "doctest.h"
#include "obisect/errors.hpp"
#include "obisect/protocol.hpp"
#include "obisect/querygen.hpp"

using namespace obisect;

namespace {

QueryDistribution mixture(Basis basis, double weight, double jitter) {
  QueryDistribution dist;
  dist.kind = QueryKind::kBasisMixture;
  dist.mixture_weight = weight;
  dist.jitter_angle = jitter;
  dist.subspace = std::move(basis);
  dist.scale_lo = 0.25;
  dist.scale_hi = 1.0;
  return dist;
}

double phi_of(int d) {
  return 2.0 * std::asin(1.0 / (64.0 * std::sqrt(static_cast<double>(d))));
}

double max_cosine(const QueryDistribution& dist, const Vector& q) {
  double best = -1.0;
  for (int i = 0; i < dist.subspace.dimension(); ++i)
    best = std::max(best, cos_angle(q, dist.subspace.vectors.col(i)));
  return best;
}

}  // namespace

TEST_CASE("make_subspace: orthonormal, nonnegative, disjoint blocks") {
  Rng rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const int D = 2 + static_cast<int>(uniform_index(rng, 30));
    const int d =
        1 + static_cast<int>(uniform_index(rng, static_cast<std::uint64_t>(D)));
    const Basis basis = make_subspace(D, d, rng);
    CHECK(is_orthonormal(basis));
    CHECK(basis.vectors.minCoeff() >= 0.0);
    // Disjoint support: each coordinate belongs to at most one direction.
    for (int row = 0; row < D; ++row) {
      int nonzero = 0;
      for (int col = 0; col < d; ++col)
        if (basis.vectors(row, col) != 0.0) ++nonzero;
      CHECK(nonzero <= 1);
    }
  }
}

TEST_CASE("make_subspace: d equal to D permutes the standard basis") {
  Rng rng(13);
  const Basis basis = make_subspace(6, 6, rng);
  CHECK(is_orthonormal(basis));
  for (int col = 0; col < 6; ++col) {
    int ones = 0;
    for (int row = 0; row < 6; ++row) {
      const double v = basis.vectors(row, col);
      CHECK((v == 0.0 || v == doctest::Approx(1.0).epsilon(1e-15)));
      if (v != 0.0) ++ones;
    }
    CHECK(ones == 1);
  }
}

TEST_CASE("sample_query: pure basis queries at zero jitter") {
  Rng rng(21);
  const Basis basis = make_subspace(6, 2, rng);
  const QueryDistribution dist = mixture(basis, 1.0, 0.0);
  for (int i = 0; i < 2000; ++i) {
    const Vector q = sample_query(dist, rng);
    CHECK(max_cosine(dist, q) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("sample_query: validity sweep over both kinds") {
  Rng rng(22);
  for (QueryKind kind : {QueryKind::kBasisMixture, QueryKind::kUniformCoeff}) {
    const Basis basis = make_subspace(8, 3, rng);
    QueryDistribution dist = mixture(basis, 0.5, phi_of(3));
    dist.kind = kind;
    for (int i = 0; i < 100000; ++i) {
      const Vector q = sample_query(dist, rng);
      CHECK_NOTHROW(validate_query(q));
      // In-span: the projection residual vanishes.
      const Vector residual = q - project(q, dist.subspace);
      CHECK(residual.norm() < 1e-10);
    }
  }
}

TEST_CASE("sample_query: mixture weight controls the aligned fraction") {
  Rng rng(23);
  const Basis basis = make_subspace(4, 2, rng);
  const double phi = phi_of(2);
  const QueryDistribution dist = mixture(basis, 0.5, phi);
  const double cos_phi = std::cos(phi);
  const int n = 100000;
  int aligned = 0;
  for (int i = 0; i < n; ++i) {
    const Vector q = sample_query(dist, rng);
    if (max_cosine(dist, q) >= cos_phi) ++aligned;
  }
  CHECK(std::abs(static_cast<double>(aligned) / n - 0.5) <= 0.01);
}

TEST_CASE("estimate_p: concentrated distribution splits mass per direction") {
  Rng rng(24);
  const Basis basis = make_subspace(4, 2, rng);
  const QueryDistribution dist = mixture(basis, 1.0, 0.0);
  const double estimate = estimate_p(dist, phi_of(2), 10000, rng);
  CHECK(std::abs(estimate - 0.5) <= 0.02);
}

TEST_CASE("estimate_p: theta of pi accepts everything") {
  Rng rng(25);
  const Basis basis = make_subspace(5, 2, rng);
  QueryDistribution dist = mixture(basis, 0.3, phi_of(2));
  CHECK(estimate_p(dist, std::numbers::pi, 2000, rng) == 1.0);
}

TEST_CASE("estimate_p: uniform coefficients make tiny angles rare") {
  Rng rng(26);
  const Basis basis = make_subspace(8, 4, rng);
  QueryDistribution dist = mixture(basis, 0.0, 0.0);
  dist.kind = QueryKind::kUniformCoeff;
  CHECK(estimate_p(dist, phi_of(4), 10000, rng) < 0.05);
}

TEST_CASE("estimate_p: aligned mass at phi stays above weight/d minus margin") {
  Rng rng(27);
  for (int d : {1, 2, 3}) {
    const Basis basis = make_subspace(2 * d + 1, d, rng);
    const double w = 0.6;
    const QueryDistribution dist = mixture(basis, w, phi_of(d));
    const int n = 20000;
    const double p = estimate_p(dist, phi_of(d), n, rng);
    const double target = w / d;
    const double margin = 3.0 * std::sqrt(target * (1.0 - target) / n);
    CHECK(p >= target - margin);
  }
}

TEST_CASE("normalizing a query never changes its best-aligned direction") {
  Rng rng(28);
  const Basis basis = make_subspace(6, 3, rng);
  QueryDistribution dist = mixture(basis, 0.5, phi_of(3));
  for (int i = 0; i < 1000; ++i) {
    const Vector q = sample_query(dist, rng);
    const Vector qn = q / q.norm();
    int best_raw = 0, best_norm = 0;
    double c_raw = -2.0, c_norm = -2.0;
    for (int k = 0; k < 3; ++k) {
      const double a = cos_angle(q, basis.vectors.col(k));
      const double b = cos_angle(qn, basis.vectors.col(k));
      if (a > c_raw) {
        c_raw = a;
        best_raw = k;
      }
      if (b > c_norm) {
        c_norm = b;
        best_norm = k;
      }
    }
    CHECK(best_raw == best_norm);
  }
}

TEST_CASE("r_from_p: closed form and degenerate input") {
  CHECK(r_from_p(1.0) == 2.0);
  CHECK(r_from_p(0.5) == 8.0);
  CHECK(r_from_p(0.125) == 128.0);
  CHECK_THROWS_AS(r_from_p(0.0), DegenerateInputError);
}
