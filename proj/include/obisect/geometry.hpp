#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "obisect/errors.hpp"

namespace obisect {

using Vector = Eigen::VectorXd;

/// Orthonormal basis of a d-dimensional subspace of R^D, stored column-wise.
struct Basis {
  Eigen::MatrixXd vectors;  // D x d, columns pairwise orthogonal, unit norm

  int ambient_dimension() const { return static_cast<int>(vectors.rows()); }
  int dimension() const { return static_cast<int>(vectors.cols()); }
  Vector column(int i) const { return vectors.col(i); }
};

/// Inner product with an explicit dimension check.
template <typename A, typename B>
double dot(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
  if (a.size() != b.size())
    throw UsageError("dot: dimension mismatch (" + std::to_string(a.size()) +
                     " vs " + std::to_string(b.size()) + ")");
  return a.dot(b);
}

/// Cosine of the angle between q and e, clamped to [-1, 1].
template <typename A, typename B>
double cos_angle(const Eigen::MatrixBase<A>& q, const Eigen::MatrixBase<B>& e) {
  if (q.size() != e.size())
    throw UsageError("cos_angle: dimension mismatch");
  const double qn = q.norm();
  const double en = e.norm();
  if (qn == 0.0 || en == 0.0)
    throw DegenerateInputError("cos_angle: zero-length vector");
  return std::clamp(q.dot(e) / (qn * en), -1.0, 1.0);
}

/// Coefficients of v over the basis: c_i = v . e^i.
template <typename V>
Vector project_coeffs(const Eigen::MatrixBase<V>& v, const Basis& basis) {
  if (v.size() != basis.vectors.rows())
    throw UsageError("project_coeffs: vector dimension does not match basis");
  return basis.vectors.transpose() * v;
}

/// Maps coefficients back into R^D: sum_i c_i e^i.
template <typename C>
Vector reconstruct(const Eigen::MatrixBase<C>& coeffs, const Basis& basis) {
  if (coeffs.size() != basis.vectors.cols())
    throw UsageError("reconstruct: coefficient count does not match basis");
  return basis.vectors * coeffs;
}

/// Projection of v onto span(basis).
template <typename V>
Vector project(const Eigen::MatrixBase<V>& v, const Basis& basis) {
  return reconstruct(project_coeffs(v, basis), basis);
}

inline bool is_orthonormal(const Basis& basis, double tol = 1e-10) {
  const auto& m = basis.vectors;
  const Eigen::MatrixXd gram = m.transpose() * m;
  return (gram - Eigen::MatrixXd::Identity(m.cols(), m.cols()))
             .cwiseAbs()
             .maxCoeff() <= tol;
}

/// Modified Gram-Schmidt with one re-orthogonalization pass.
/// Throws DegenerateInputError naming the first input whose residual falls
/// below the rank tolerance.
inline Basis gram_schmidt(const std::vector<Vector>& raw,
                          double rank_tol = 1e-8) {
  if (raw.empty()) throw UsageError("gram_schmidt: empty input");
  const Eigen::Index D = raw.front().size();
  Eigen::MatrixXd out(D, static_cast<Eigen::Index>(raw.size()));
  for (std::size_t k = 0; k < raw.size(); ++k) {
    if (raw[k].size() != D)
      throw UsageError("gram_schmidt: mixed dimensions in input");
    Vector v = raw[k];
    for (int pass = 0; pass < 2; ++pass)
      for (std::size_t j = 0; j < k; ++j)
        v -= out.col(static_cast<Eigen::Index>(j)).dot(v) *
             out.col(static_cast<Eigen::Index>(j));
    const double residual = v.norm();
    if (residual <= rank_tol)
      throw DegenerateInputError(
          "gram_schmidt: input vector at index " + std::to_string(k) +
          " is linearly dependent on its predecessors (residual norm " +
          std::to_string(residual) + ")");
    out.col(static_cast<Eigen::Index>(k)) = v / residual;
  }
  return Basis{std::move(out)};
}

}  // namespace obisect
