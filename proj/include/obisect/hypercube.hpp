#pragma once

#include <Eigen/Dense>
#include <cmath>

#include "obisect/errors.hpp"
#include "obisect/geometry.hpp"

namespace obisect {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double length() const { return hi - lo; }
};

/// The learner's hypothesis region: one coefficient interval per basis
/// direction. Intervals are closed; the learner only ever shrinks all sides
/// together, so sides stay equal along the algorithm's path.
struct Hypercube {
  Basis basis;
  Eigen::ArrayXd lower;  // d
  Eigen::ArrayXd upper;  // d

  int dimension() const { return static_cast<int>(lower.size()); }
  Interval interval(int i) const { return {lower[i], upper[i]}; }
};

/// Starting hypothesis: every coefficient interval is [-sqrt(D), sqrt(D)].
inline Hypercube initial(int D, int d, Basis basis) {
  if (basis.ambient_dimension() != D || basis.dimension() != d)
    throw UsageError("initial: basis shape does not match (D, d)");
  const double half = std::sqrt(static_cast<double>(D));
  Hypercube hc{std::move(basis), Eigen::ArrayXd::Constant(d, -half),
               Eigen::ArrayXd::Constant(d, half)};
  return hc;
}

/// Support value given precomputed basis coefficients g_i = e^i . q.
/// Each coefficient independently picks the interval end matching its sign.
template <typename G>
double support_from_coeffs(const Hypercube& hc, const Eigen::MatrixBase<G>& g) {
  double opt = 0.0;
  for (int i = 0; i < hc.dimension(); ++i)
    opt += (g[i] >= 0.0 ? hc.upper[i] : hc.lower[i]) * g[i];
  return opt;
}

/// max { v . q : v in hc }, by the closed form (no iterative solver).
template <typename Q>
double support(const Hypercube& hc, const Eigen::MatrixBase<Q>& q) {
  const Vector g = project_coeffs(q, hc.basis);
  return support_from_coeffs(hc, g);
}

struct ThresholdInfo {
  double minimum = 0.0;  // min of v . q over the hypercube
  double maximum = 0.0;  // max of v . q over the hypercube
  double theta = 0.0;    // midpoint (minimum + maximum) / 2
};

/// Extremes of the inner product with q over the hypercube and the midpoint
/// threshold between them. The maximum is support(hc, q); the minimum is
/// -support(hc, -q).
template <typename Q>
ThresholdInfo threshold_midpoint(const Hypercube& hc,
                                 const Eigen::MatrixBase<Q>& q) {
  const Vector g = project_coeffs(q, hc.basis);
  ThresholdInfo info;
  info.maximum = support_from_coeffs(hc, g);
  info.minimum = -support_from_coeffs(hc, -g);
  info.theta = 0.5 * (info.minimum + info.maximum);
  return info;
}

/// Keeps the upper (or lower) alpha-fraction of [x, y].
inline Interval shrink_interval(Interval iv, bool keep_upper, double alpha) {
  if (iv.lo > iv.hi) throw UsageError("shrink_interval: inverted interval");
  if (!(alpha > 0.0 && alpha < 1.0))
    throw UsageError("shrink_interval: alpha must be in (0, 1)");
  const double cut = alpha * (iv.hi - iv.lo);
  return keep_upper ? Interval{iv.hi - cut, iv.hi} : Interval{iv.lo, iv.lo + cut};
}

/// Center of the hypercube, mapped back into R^D. Any point of the hypercube
/// is an admissible hypothesis; the center makes runs deterministic.
inline Vector representative(const Hypercube& hc) {
  return reconstruct(((hc.lower + hc.upper) * 0.5).matrix(), hc.basis);
}

/// Closed-interval membership in coefficient space, with a 1e-12 slack.
template <typename C>
bool contains(const Hypercube& hc, const Eigen::MatrixBase<C>& coeffs) {
  if (coeffs.size() != hc.lower.size())
    throw UsageError("contains: coefficient count does not match hypercube");
  constexpr double kSlack = 1e-12;
  for (int i = 0; i < hc.dimension(); ++i)
    if (coeffs[i] < hc.lower[i] - kSlack || coeffs[i] > hc.upper[i] + kSlack)
      return false;
  return true;
}

/// Common side length. Throws if the equal-sides invariant has drifted.
inline double side_length(const Hypercube& hc, double tol = 1e-9) {
  const double side = hc.upper[0] - hc.lower[0];
  for (int i = 1; i < hc.dimension(); ++i)
    if (std::abs((hc.upper[i] - hc.lower[i]) - side) > tol)
      throw InvariantViolation("side_length: hypercube sides are not equal");
  return side;
}

}  // namespace obisect
