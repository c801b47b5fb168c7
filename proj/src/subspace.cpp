#include "qvn/subspace.hpp"

#include <algorithm>
#include <limits>

#include <Eigen/QR>
#include <Eigen/SVD>

namespace qvn {

RealVector vec(const QMatrix& a) {
  RealVector v(4 * static_cast<Eigen::Index>(a.rows() * a.cols()));
  Eigen::Index idx = 0;
  for (const auto& q : a.entries()) {
    v(idx++) = q.a;
    v(idx++) = q.b;
    v(idx++) = q.c;
    v(idx++) = q.d;
  }
  return v;
}

QMatrix unvec(const RealVector& v, std::size_t n) {
  if (static_cast<std::size_t>(v.size()) != 4 * n * n) fail(ErrorKind::Shape, "unvec: length mismatch");
  QMatrix a(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      const auto base = static_cast<Eigen::Index>(4 * (r * n + c));
      a(r, c) = Quaternion(v(base), v(base + 1), v(base + 2), v(base + 3));
    }
  }
  return a;
}

namespace {

double threshold(Eigen::Index rows, Eigen::Index cols, double sigma_max, double rank_eps) {
  return static_cast<double>(std::max(rows, cols)) * rank_eps * sigma_max;
}

}  // namespace

RealSubspace RealSubspace::span(const RealMatrix& columns, double rank_eps, double abs_floor) {
  const Eigen::Index n = columns.rows();
  if (columns.cols() == 0 || n == 0) return RealSubspace(n);
  // Wide inputs: M^T = Q R gives M = R^T Q^T with the same left singular
  // vectors and values as the square R^T.
  RealMatrix reduced;
  if (columns.cols() > n) {
    Eigen::HouseholderQR<RealMatrix> qr(columns.transpose());
    reduced = RealMatrix(qr.matrixQR().topRows(n).triangularView<Eigen::Upper>()).transpose();
  } else {
    reduced = columns;
  }
  Eigen::JacobiSVD<RealMatrix> svd(reduced, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  const double cut = std::max(abs_floor, threshold(columns.rows(), columns.cols(), sv(0), rank_eps));
  Eigen::Index r = 0;
  while (r < sv.size() && sv(r) > cut) ++r;
  return RealSubspace(RealMatrix(svd.matrixU().leftCols(r)));
}

RealSubspace RealSubspace::nullspace(const RealMatrix& m, double rank_eps, double abs_floor) {
  const Eigen::Index cols = m.cols();
  if (cols == 0) return RealSubspace(0);
  // Reduce tall systems to a square triangle first; the singular values
  // and right singular vectors are unchanged.
  RealMatrix reduced;
  if (m.rows() > cols) {
    Eigen::HouseholderQR<RealMatrix> qr(m);
    reduced = qr.matrixQR().topRows(cols).triangularView<Eigen::Upper>();
  } else {
    reduced = m;
  }
  Eigen::JacobiSVD<RealMatrix> svd(reduced, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double smax = sv.size() ? sv(0) : 0.0;
  const double cut = std::max(abs_floor, threshold(m.rows(), cols, smax, rank_eps));
  Eigen::Index r = 0;
  while (r < sv.size() && sv(r) > cut) ++r;
  return RealSubspace(RealMatrix(svd.matrixV().rightCols(cols - r)));
}

RealVector RealSubspace::project(const RealVector& v) const {
  if (dim() == 0) return RealVector::Zero(v.size());
  return basis_ * (basis_.transpose() * v);
}

double RealSubspace::residual(const RealVector& v) const { return (v - project(v)).norm(); }

double RealSubspace::containment_residual(const RealSubspace& other) const {
  double worst = 0.0;
  for (Eigen::Index c = 0; c < other.dim(); ++c) worst = std::max(worst, residual(other.basis_.col(c)));
  return worst;
}

RealSubspace RealSubspace::intersect(const RealSubspace& other, double rank_eps) const {
  if (other.dim() == 0 || dim() == 0) return RealSubspace(ambient());
  // Coefficients c with (I - P_this) Q_other c = 0.
  RealMatrix outside = other.basis_;
  if (dim() > 0) outside -= basis_ * (basis_.transpose() * other.basis_);
  const RealSubspace coeffs = nullspace(outside, rank_eps, 1e-8);
  if (coeffs.dim() == 0) return RealSubspace(ambient());
  return span(other.basis_ * coeffs.basis(), rank_eps, 1e-8);
}

double subspace_distance(const RealSubspace& a, const RealSubspace& b) {
  if (a.dim() != b.dim() || a.ambient() != b.ambient()) return std::numeric_limits<double>::infinity();
  return std::max(a.containment_residual(b), b.containment_residual(a));
}

RealSubspace matrix_span(std::span<const QMatrix> mats, double rank_eps) {
  if (mats.empty()) return RealSubspace(0);
  const std::size_t n = mats.front().rows();
  RealMatrix cols(static_cast<Eigen::Index>(4 * n * n), static_cast<Eigen::Index>(mats.size()));
  for (std::size_t i = 0; i < mats.size(); ++i) cols.col(static_cast<Eigen::Index>(i)) = vec(mats[i]);
  return RealSubspace::span(cols, rank_eps);
}

}  // namespace qvn
