#include <cmath>
#include <vector>

#include "doctest.h"
#include "obisect/geometry.hpp"
#include "obisect/rng.hpp"

using namespace obisect;

namespace {

Vector vec(std::initializer_list<double> entries) {
  Vector v(static_cast<Eigen::Index>(entries.size()));
  Eigen::Index i = 0;
  for (double e : entries) v[i++] = e;
  return v;
}

Vector random_vector(int n, Rng& rng, double lo = -1.0, double hi = 1.0) {
  Vector v(n);
  for (int i = 0; i < n; ++i) v[i] = uniform_in(rng, lo, hi);
  return v;
}

}  // namespace

TEST_CASE("dot: axis pairs and scalar-loop reference") {
  CHECK(dot(vec({1, 0}), vec({0, 1})) == 0.0);
  CHECK(dot(vec({1, 1}), vec({1, 1})) == 2.0);

  Rng rng(42);
  const Vector a = random_vector(8, rng);
  const Vector b = random_vector(8, rng);
  double reference = 0.0;
  for (int i = 0; i < 8; ++i) reference += a[i] * b[i];
  CHECK(dot(a, b) == doctest::Approx(reference).epsilon(1e-14));
}

TEST_CASE("dot: dimension mismatch is a usage error") {
  CHECK_THROWS_AS(dot(vec({1, 0}), vec({1, 0, 0})), UsageError);
}

TEST_CASE("dot: symmetric and bilinear on unit-scale inputs") {
  Rng rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const Vector a = random_vector(6, rng);
    const Vector b = random_vector(6, rng);
    const Vector c = random_vector(6, rng);
    const double s = uniform_in(rng, -1.0, 1.0);
    CHECK(dot(a, b) == doctest::Approx(dot(b, a)).epsilon(1e-12));
    CHECK(dot(a, (s * b + c).eval()) ==
          doctest::Approx(s * dot(a, b) + dot(a, c)).epsilon(1e-12));
  }
}

TEST_CASE("gram_schmidt: axis-aligned input normalizes in place") {
  const Basis basis = gram_schmidt({vec({2, 0}), vec({0, 3})});
  CHECK(basis.vectors.col(0).isApprox(vec({1, 0}), 1e-12));
  CHECK(basis.vectors.col(1).isApprox(vec({0, 1}), 1e-12));
}

TEST_CASE("gram_schmidt: span is preserved") {
  const Basis basis = gram_schmidt({vec({1, 1, 0}), vec({1, 0, 0})});
  CHECK(is_orthonormal(basis));
  // Both original vectors project back onto themselves.
  for (const Vector& v : {vec({1, 1, 0}), vec({1, 0, 0})}) {
    const Vector back = project(v, basis);
    CHECK((v - back).norm() < 1e-10);
  }
}

TEST_CASE("gram_schmidt: collinear input is rejected with the offending index") {
  try {
    gram_schmidt({vec({1, 0}), vec({2, 0})});
    FAIL("expected DegenerateInputError");
  } catch (const DegenerateInputError& e) {
    CHECK(std::string(e.what()).find("index 1") != std::string::npos);
  }
}

TEST_CASE("gram_schmidt: random full-rank inputs satisfy the basis invariants") {
  Rng rng(1234);
  for (int trial = 0; trial < 200; ++trial) {
    const int D = 2 + static_cast<int>(uniform_index(rng, 28));
    const int d =
        1 + static_cast<int>(uniform_index(rng, static_cast<std::uint64_t>(D)));
    std::vector<Vector> raw;
    for (int i = 0; i < d; ++i) raw.push_back(random_vector(D, rng));
    Basis basis;
    try {
      basis = gram_schmidt(raw);
    } catch (const DegenerateInputError&) {
      continue;  // random draw happened to be near-singular
    }
    CHECK(is_orthonormal(basis));
    CHECK(basis.dimension() == d);
  }
}

TEST_CASE("project_coeffs: single-axis basis") {
  const Basis basis{vec({1, 0})};
  const Vector c = project_coeffs(vec({0.5, 0.5}), basis);
  REQUIRE(c.size() == 1);
  CHECK(c[0] == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("project_coeffs: idempotent on the span") {
  const Basis basis = gram_schmidt({vec({1, 1, 0}), vec({0, 1, 1})});
  const Vector v = basis.vectors * vec({0.3, -1.2});
  const Vector back = reconstruct(project_coeffs(v, basis), basis);
  CHECK((v - back).norm() < 1e-10);
}

TEST_CASE("project_coeffs: residual is orthogonal to the basis") {
  Rng rng(77);
  for (int trial = 0; trial < 50; ++trial) {
    const Basis basis =
        gram_schmidt({random_vector(5, rng), random_vector(5, rng)});
    const Vector v = random_vector(5, rng);
    const Vector residual = v - reconstruct(project_coeffs(v, basis), basis);
    CHECK(std::abs(dot(residual, basis.vectors.col(0))) < 1e-10);
    CHECK(std::abs(dot(residual, basis.vectors.col(1))) < 1e-10);
  }
}

TEST_CASE("projection is a contraction") {
  Rng rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    const Basis basis =
        gram_schmidt({random_vector(6, rng), random_vector(6, rng),
                      random_vector(6, rng)});
    const Vector v = random_vector(6, rng, -3.0, 3.0);
    CHECK(project(v, basis).norm() <= v.norm() + 1e-10);
  }
}

TEST_CASE("cos_angle: aligned, orthogonal, 45 degrees") {
  const Vector e = vec({1, 0});
  CHECK(cos_angle(e, e) == 1.0);
  CHECK(cos_angle(vec({0, 1}), e) == 0.0);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  CHECK(cos_angle(vec({inv_sqrt2, inv_sqrt2}), e) ==
        doctest::Approx(std::sqrt(2.0) / 2.0).epsilon(1e-15));
}

TEST_CASE("cos_angle: zero vector is degenerate") {
  CHECK_THROWS_AS(cos_angle(vec({0, 0}), vec({1, 0})), DegenerateInputError);
  CHECK_THROWS_AS(cos_angle(vec({1, 0}), vec({0, 0})), DegenerateInputError);
}
