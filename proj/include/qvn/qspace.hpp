#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "qvn/quaternion.hpp"
#include "qvn/tolerance.hpp"

namespace qvn {

/// Column vector in H^n. Scalars act from the right.
class QVector {
 public:
  QVector() = default;
  explicit QVector(std::size_t n) : data_(n) {}
  QVector(std::initializer_list<Quaternion> entries) : data_(entries) {}
  explicit QVector(std::vector<Quaternion> entries) : data_(std::move(entries)) {}

  static QVector basis(std::size_t n, std::size_t index);

  std::size_t size() const noexcept { return data_.size(); }
  Quaternion& operator[](std::size_t i) { return data_[i]; }
  const Quaternion& operator[](std::size_t i) const { return data_[i]; }
  std::span<const Quaternion> entries() const noexcept { return data_; }

  QVector& operator+=(const QVector& other);
  QVector& operator-=(const QVector& other);

 private:
  std::vector<Quaternion> data_;
};

QVector operator+(QVector x, const QVector& y);
QVector operator-(QVector x, const QVector& y);
/// Right scalar multiplication x*q.
QVector operator*(const QVector& x, const Quaternion& q);
QVector operator*(double s, const QVector& x);

/// Hermitian product <x|y> = sum conj(x_i) y_i, right-linear in y.
Quaternion inner(const QVector& x, const QVector& y);
double norm(const QVector& x);

/// Dense n x m quaternionic matrix acting on column vectors from the left,
/// so that A(x q) = (A x) q. Row-major storage.
class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  QMatrix(std::initializer_list<std::initializer_list<Quaternion>> rows);

  static QMatrix identity(std::size_t n);
  static QMatrix zero(std::size_t n) { return QMatrix(n, n); }
  static QMatrix diag(std::span<const Quaternion> entries);
  static QMatrix diag(std::initializer_list<Quaternion> entries);
  /// Scalar q placed on the diagonal: left multiplication x_i -> q x_i.
  static QMatrix scalar(std::size_t n, const Quaternion& q);
  /// E_ab: a single 1 in position (a, b).
  static QMatrix unit(std::size_t n, std::size_t a, std::size_t b);
  static QMatrix from_columns(std::span<const QVector> columns);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  Quaternion& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Quaternion& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  std::span<const Quaternion> entries() const noexcept { return data_; }

  QVector column(std::size_t j) const;

  QMatrix& operator+=(const QMatrix& other);
  QMatrix& operator-=(const QMatrix& other);
  QMatrix& operator*=(double s);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Quaternion> data_;
};

QMatrix operator+(QMatrix a, const QMatrix& b);
QMatrix operator-(QMatrix a, const QMatrix& b);
QMatrix operator-(QMatrix a);
QMatrix operator*(const QMatrix& a, const QMatrix& b);
QVector operator*(const QMatrix& a, const QVector& x);
// Only real scalars scale operators: q*A is not H-linear for non-real q.
QMatrix operator*(double s, QMatrix a);
QMatrix operator*(QMatrix a, double s);

/// Conjugate transpose; the unique operator with <A* y|x> = <y|A x>.
QMatrix adjoint(const QMatrix& a);
QMatrix commutator(const QMatrix& a, const QMatrix& b);
Quaternion full_trace(const QMatrix& a);

double frobenius(const QMatrix& a);
double max_abs(const QMatrix& a);
/// Largest singular value, via the complexified matrix.
double opnorm(const QMatrix& a);

bool approx_equal(const QMatrix& a, const QMatrix& b, double tol);

bool is_selfadjoint(const QMatrix& a, double tol = 1e-10);
bool is_antiselfadjoint(const QMatrix& a, double tol = 1e-10);
bool is_unitary(const QMatrix& a, double tol = 1e-10);
bool is_projector(const QMatrix& a, double tol = 1e-10);
bool is_complex_structure(const QMatrix& a, double tol = 1e-10);

/// Unique positive square root of a positive self-adjoint matrix. Throws
/// ErrorKind::Domain when an eigenvalue is below -tol.
QMatrix sqrt_positive(const QMatrix& a, const Tolerances& tols = {});

/// A certified complex structure: J^2 = -I and J* = -J within `tolerance`.
class ComplexStructure {
 public:
  /// Re-projects onto the skew part and re-checks J^2 + I. Throws
  /// ErrorKind::Precondition when either residual exceeds `tolerance`.
  static ComplexStructure certify(const QMatrix& j, double tolerance = 1e-10);

  const QMatrix& matrix() const noexcept { return j_; }
  std::size_t dim() const noexcept { return j_.rows(); }
  double tolerance() const noexcept { return tolerance_; }
  double residual() const noexcept { return residual_; }

 private:
  ComplexStructure(QMatrix j, double tolerance, double residual)
      : j_(std::move(j)), tolerance_(tolerance), residual_(residual) {}

  QMatrix j_;
  double tolerance_;
  double residual_;
};

}  // namespace qvn
