#include <cmath>
#include <limits>
#include <vector>

#include "doctest.h"
#include "obisect/geometry.hpp"
#include "obisect/hypercube.hpp"
#include "obisect/rng.hpp"

using namespace obisect;

namespace {

Vector vec(std::initializer_list<double> entries) {
  Vector v(static_cast<Eigen::Index>(entries.size()));
  Eigen::Index i = 0;
  for (double e : entries) v[i++] = e;
  return v;
}

Basis axis_basis(int D, int d) {
  return Basis{Eigen::MatrixXd::Identity(D, d)};
}

Hypercube box(Basis basis, std::initializer_list<Interval> intervals) {
  Hypercube hc;
  hc.basis = std::move(basis);
  const int d = static_cast<int>(intervals.size());
  hc.lower.resize(d);
  hc.upper.resize(d);
  int i = 0;
  for (const Interval& iv : intervals) {
    hc.lower[i] = iv.lo;
    hc.upper[i] = iv.hi;
    ++i;
  }
  return hc;
}

// Test-side oracle: exhaustive corner enumeration, kept separate from the
// implementation it is checking.
double corner_max(const Hypercube& hc, const Vector& q) {
  const int d = hc.dimension();
  double best = -std::numeric_limits<double>::infinity();
  for (std::uint64_t mask = 0; mask < (1ULL << d); ++mask) {
    double value = 0.0;
    for (int i = 0; i < d; ++i) {
      const double coeff = (mask >> i) & 1ULL ? hc.upper[i] : hc.lower[i];
      value += coeff * hc.basis.vectors.col(i).dot(q);
    }
    best = std::max(best, value);
  }
  return best;
}

Basis random_orthonormal(int D, int d, Rng& rng) {
  for (;;) {
    std::vector<Vector> raw;
    for (int i = 0; i < d; ++i) {
      Vector v(D);
      for (int k = 0; k < D; ++k) v[k] = uniform_in(rng, -1.0, 1.0);
      raw.push_back(std::move(v));
    }
    try {
      return gram_schmidt(raw);
    } catch (const DegenerateInputError&) {
    }
  }
}

Hypercube random_box(int D, int d, Rng& rng) {
  Hypercube hc;
  hc.basis = random_orthonormal(D, d, rng);
  hc.lower.resize(d);
  hc.upper.resize(d);
  for (int i = 0; i < d; ++i) {
    hc.lower[i] = uniform_in(rng, -3.0, 3.0);
    hc.upper[i] = hc.lower[i] + uniform_in(rng, 0.0, 4.0);
  }
  return hc;
}

}  // namespace

TEST_CASE("initial: every interval is [-sqrt(D), sqrt(D)]") {
  const Hypercube a = initial(4, 2, axis_basis(4, 2));
  for (int i = 0; i < 2; ++i) {
    CHECK(a.lower[i] == -2.0);
    CHECK(a.upper[i] == 2.0);
  }
  const Hypercube b = initial(1, 1, axis_basis(1, 1));
  CHECK(b.lower[0] == -1.0);
  CHECK(b.upper[0] == 1.0);
  const Hypercube c = initial(9, 3, axis_basis(9, 3));
  for (int i = 0; i < 3; ++i) {
    CHECK(c.lower[i] == -3.0);
    CHECK(c.upper[i] == 3.0);
  }
}

TEST_CASE("support: single coefficient picks the end matching the sign") {
  const Hypercube hc = box(axis_basis(2, 1), {{2.0, 3.0}});
  CHECK(support(hc, vec({0.5, 0})) == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(support(hc, vec({-0.5, 0})) == doctest::Approx(-1.0).epsilon(1e-15));
}

TEST_CASE("support: mixed-sign 2d example agrees with corner enumeration") {
  const Hypercube hc = box(axis_basis(2, 2), {{-1.0, 2.0}, {-3.0, 1.0}});
  const Vector q = vec({0.5, -0.25});
  CHECK(corner_max(hc, q) == doctest::Approx(1.75).epsilon(1e-15));
  CHECK(support(hc, q) == doctest::Approx(1.75).epsilon(1e-15));
}

TEST_CASE("support equals the corner maximum on random instances") {
  Rng rng(20240401);
  int trials = 0;
  for (int d = 1; d <= 12; ++d) {
    for (int k = 0; k < 90; ++k) {
      const int D = d + 3;
      const Hypercube hc = random_box(D, d, rng);
      Vector q(D);
      for (int i = 0; i < D; ++i) q[i] = uniform_in(rng, -1.0, 1.0);
      const double exact = corner_max(hc, q);
      const double fast = support(hc, q);
      CHECK(std::abs(fast - exact) <= 1e-12 * std::max(1.0, std::abs(exact)));
      ++trials;
    }
  }
  CHECK(trials == 1080);
}

TEST_CASE("support width is nonnegative") {
  Rng rng(5150);
  for (int trial = 0; trial < 300; ++trial) {
    const int d = 1 + static_cast<int>(uniform_index(rng, 6));
    const Hypercube hc = random_box(d + 2, d, rng);
    Vector q(d + 2);
    for (int i = 0; i < d + 2; ++i) q[i] = uniform_in(rng, -1.0, 1.0);
    CHECK(support(hc, q) + support(hc, (-q).eval()) >= 0.0);
  }
}

TEST_CASE("threshold_midpoint: interval midpoint in one dimension") {
  const Hypercube hc = box(axis_basis(2, 1), {{0.0, 2.0}});
  const ThresholdInfo info = threshold_midpoint(hc, vec({1, 0}));
  CHECK(info.minimum == 0.0);
  CHECK(info.maximum == 2.0);
  CHECK(info.theta == 1.0);
}

TEST_CASE("threshold_midpoint: symmetric cube centers at zero") {
  const Hypercube hc = box(axis_basis(2, 2), {{-1.0, 1.0}, {-1.0, 1.0}});
  const ThresholdInfo info = threshold_midpoint(hc, vec({0.3, 0.8}));
  CHECK(info.theta == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("threshold_midpoint: agrees with corner-enumeration min and max") {
  Rng rng(31337);
  for (int trial = 0; trial < 200; ++trial) {
    const int d = 1 + static_cast<int>(uniform_index(rng, 12));
    const int D = d + 2;
    const Hypercube hc = random_box(D, d, rng);
    Vector q(D);
    for (int i = 0; i < D; ++i) q[i] = uniform_in(rng, -1.0, 1.0);
    const double max_corner = corner_max(hc, q);
    const double min_corner = -corner_max(hc, (-q).eval());
    const ThresholdInfo info = threshold_midpoint(hc, q);
    CHECK(info.maximum == doctest::Approx(max_corner).epsilon(1e-12));
    CHECK(info.minimum == doctest::Approx(min_corner).epsilon(1e-12));
    CHECK(info.theta ==
          doctest::Approx(0.5 * (min_corner + max_corner)).epsilon(1e-12));
  }
}

TEST_CASE("shrink_interval: keep-upper and keep-lower update lines") {
  const Interval upper = shrink_interval({0.0, 4.0}, true, 0.75);
  CHECK(upper.lo == 1.0);
  CHECK(upper.hi == 4.0);
  const Interval lower = shrink_interval({0.0, 4.0}, false, 0.75);
  CHECK(lower.lo == 0.0);
  CHECK(lower.hi == 3.0);
  for (bool keep : {true, false}) {
    const Interval fixed = shrink_interval({5.0, 5.0}, keep, 0.75);
    CHECK(fixed.lo == 5.0);
    CHECK(fixed.hi == 5.0);
  }
}

TEST_CASE("shrink_interval: subset with length exactly alpha times input") {
  Rng rng(60601);
  for (int trial = 0; trial < 500; ++trial) {
    Interval iv{uniform_in(rng, -5.0, 5.0), 0.0};
    iv.hi = iv.lo + uniform_in(rng, 0.0, 6.0);
    const double alpha = uniform_in(rng, 0.05, 0.95);
    const bool keep = uniform01(rng) < 0.5;
    const Interval out = shrink_interval(iv, keep, alpha);
    CHECK(out.lo >= iv.lo - 1e-12);
    CHECK(out.hi <= iv.hi + 1e-12);
    CHECK(out.length() == doctest::Approx(alpha * iv.length()).epsilon(1e-12));
  }
}

TEST_CASE("representative: center point, inside the hypercube") {
  const Hypercube sym = box(axis_basis(2, 2), {{-2.0, 2.0}, {-2.0, 2.0}});
  CHECK(representative(sym).norm() == 0.0);

  const Hypercube one = box(axis_basis(2, 1), {{1.0, 3.0}});
  CHECK(representative(one).isApprox(vec({2, 0}), 1e-15));

  Rng rng(2222);
  for (int trial = 0; trial < 100; ++trial) {
    const int d = 1 + static_cast<int>(uniform_index(rng, 5));
    const Hypercube hc = random_box(d + 1, d, rng);
    CHECK(contains(hc, project_coeffs(representative(hc), hc.basis)));
  }
}

TEST_CASE("contains: center, outside point, boundary") {
  const Hypercube hc = box(axis_basis(3, 2), {{-1.0, 2.0}, {0.0, 3.0}});
  CHECK(contains(hc, vec({0.5, 1.5})));
  CHECK_FALSE(contains(hc, vec({3.0, 1.5})));  // upper[0] + 1
  CHECK(contains(hc, vec({2.0, 0.0})));        // exactly on the boundary
}

TEST_CASE("side_length: direct, initial, and after one shrink") {
  CHECK(side_length(box(axis_basis(2, 1), {{0.0, 3.0}})) == 3.0);

  Hypercube hc = initial(4, 2, axis_basis(4, 2));
  CHECK(side_length(hc) == 4.0);

  for (int i = 0; i < hc.dimension(); ++i) {
    const Interval next = shrink_interval(hc.interval(i), true, 0.75);
    hc.lower[i] = next.lo;
    hc.upper[i] = next.hi;
  }
  CHECK(side_length(hc) == doctest::Approx(3.0).epsilon(1e-15));
}

TEST_CASE("side_length: unequal sides violate the invariant") {
  const Hypercube hc = box(axis_basis(2, 2), {{0.0, 1.0}, {0.0, 2.0}});
  CHECK_THROWS_AS(side_length(hc), InvariantViolation);
}
