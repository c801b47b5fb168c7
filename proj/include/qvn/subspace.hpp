#pragma once

#include <span>
#include <vector>

#include "qvn/embed.hpp"

namespace qvn {

/// Coordinates of an n x n quaternionic matrix in R^{4n^2}; the Euclidean
/// product of two images equals Re tr(A* B).
RealVector vec(const QMatrix& a);
QMatrix unvec(const RealVector& v, std::size_t n);

/// Real subspace of R^N held as an orthonormal column basis.
class RealSubspace {
 public:
  RealSubspace() = default;
  explicit RealSubspace(Eigen::Index ambient) : basis_(ambient, 0) {}

  /// Orthonormal basis of the column span; rank by singular-value threshold.
  /// Singular values at or below `abs_floor` never count, whatever sigma_max.
  static RealSubspace span(const RealMatrix& columns, double rank_eps, double abs_floor = 0.0);
  /// Null space of `m` (right singular vectors below the rank threshold).
  static RealSubspace nullspace(const RealMatrix& m, double rank_eps, double abs_floor = 0.0);

  Eigen::Index dim() const noexcept { return basis_.cols(); }
  Eigen::Index ambient() const noexcept { return basis_.rows(); }
  const RealMatrix& basis() const noexcept { return basis_; }

  RealVector project(const RealVector& v) const;
  /// |v - P v|.
  double residual(const RealVector& v) const;
  /// Largest residual of `other`'s basis vectors against this subspace.
  double containment_residual(const RealSubspace& other) const;
  /// Intersection with `other` (same ambient space).
  RealSubspace intersect(const RealSubspace& other, double rank_eps) const;

 private:
  explicit RealSubspace(RealMatrix basis) : basis_(std::move(basis)) {}
  RealMatrix basis_;
};

/// max of the two mutual containment residuals, +inf if dimensions differ.
double subspace_distance(const RealSubspace& a, const RealSubspace& b);

/// Span of quaternionic matrices in the Re-trace geometry.
RealSubspace matrix_span(std::span<const QMatrix> mats, double rank_eps);

}  // namespace qvn
