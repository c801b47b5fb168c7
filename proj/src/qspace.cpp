#include "qvn/qspace.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "qvn/embed.hpp"

namespace qvn {

namespace {

void require_same_size(std::size_t a, std::size_t b, const char* what) {
  if (a != b) fail(ErrorKind::Shape, std::string(what) + ": length mismatch");
}

void require_square(const QMatrix& a, const char* what) {
  if (!a.square()) fail(ErrorKind::Shape, std::string(what) + ": matrix is not square");
}

}  // namespace

QVector QVector::basis(std::size_t n, std::size_t index) {
  QVector e(n);
  e[index] = 1.0;
  return e;
}

QVector& QVector::operator+=(const QVector& other) {
  require_same_size(size(), other.size(), "vector sum");
  for (std::size_t i = 0; i < size(); ++i) data_[i] += other.data_[i];
  return *this;
}

QVector& QVector::operator-=(const QVector& other) {
  require_same_size(size(), other.size(), "vector difference");
  for (std::size_t i = 0; i < size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

QVector operator+(QVector x, const QVector& y) { return x += y; }
QVector operator-(QVector x, const QVector& y) { return x -= y; }

QVector operator*(const QVector& x, const Quaternion& q) {
  QVector out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] * q;
  return out;
}

QVector operator*(double s, const QVector& x) { return x * Quaternion(s); }

Quaternion inner(const QVector& x, const QVector& y) {
  require_same_size(x.size(), y.size(), "inner");
  Quaternion acc;
  for (std::size_t i = 0; i < x.size(); ++i) acc += conj(x[i]) * y[i];
  return acc;
}

double norm(const QVector& x) { return std::sqrt(re(inner(x, x))); }

QMatrix::QMatrix(std::initializer_list<std::initializer_list<Quaternion>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) fail(ErrorKind::Shape, "ragged matrix literal");
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

QMatrix QMatrix::identity(std::size_t n) { return scalar(n, 1.0); }

QMatrix QMatrix::diag(std::span<const Quaternion> entries) {
  QMatrix m(entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
  return m;
}

QMatrix QMatrix::diag(std::initializer_list<Quaternion> entries) {
  return diag(std::span<const Quaternion>(entries.begin(), entries.size()));
}

QMatrix QMatrix::scalar(std::size_t n, const Quaternion& q) {
  QMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = q;
  return m;
}

QMatrix QMatrix::unit(std::size_t n, std::size_t a, std::size_t b) {
  QMatrix m(n, n);
  m(a, b) = 1.0;
  return m;
}

QMatrix QMatrix::from_columns(std::span<const QVector> columns) {
  if (columns.empty()) return {};
  QMatrix m(columns.front().size(), columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    require_same_size(columns[j].size(), m.rows(), "from_columns");
    for (std::size_t i = 0; i < m.rows(); ++i) m(i, j) = columns[j][i];
  }
  return m;
}

QVector QMatrix::column(std::size_t j) const {
  QVector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

QMatrix& QMatrix::operator+=(const QMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) fail(ErrorKind::Shape, "matrix sum: shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

QMatrix& QMatrix::operator-=(const QMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) fail(ErrorKind::Shape, "matrix difference: shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

QMatrix& QMatrix::operator*=(double s) {
  for (auto& q : data_) q *= s;
  return *this;
}

QMatrix operator+(QMatrix a, const QMatrix& b) { return a += b; }
QMatrix operator-(QMatrix a, const QMatrix& b) { return a -= b; }
QMatrix operator-(QMatrix a) { return a *= -1.0; }
QMatrix operator*(double s, QMatrix a) { return a *= s; }
QMatrix operator*(QMatrix a, double s) { return a *= s; }

QMatrix operator*(const QMatrix& a, const QMatrix& b) {
  if (a.cols() != b.rows()) fail(ErrorKind::Shape, "matrix product: inner dimensions differ");
  QMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Quaternion aik = a(i, k);
      if (aik.a == 0.0 && aik.b == 0.0 && aik.c == 0.0 && aik.d == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

QVector operator*(const QMatrix& a, const QVector& x) {
  if (a.cols() != x.size()) fail(ErrorKind::Shape, "matrix-vector product: dimension mismatch");
  QVector out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out[i] += a(i, j) * x[j];
  }
  return out;
}

QMatrix adjoint(const QMatrix& a) {
  QMatrix out(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = conj(a(i, j));
  }
  return out;
}

QMatrix commutator(const QMatrix& a, const QMatrix& b) { return a * b - b * a; }

Quaternion full_trace(const QMatrix& a) {
  require_square(a, "trace");
  Quaternion t;
  for (std::size_t i = 0; i < a.rows(); ++i) t += a(i, i);
  return t;
}

double frobenius(const QMatrix& a) {
  double s = 0.0;
  for (const auto& q : a.entries()) s += norm2(q);
  return std::sqrt(s);
}

double max_abs(const QMatrix& a) {
  double m = 0.0;
  for (const auto& q : a.entries()) m = std::max(m, abs(q));
  return m;
}

double opnorm(const QMatrix& a) {
  if (a.rows() == 0 || a.cols() == 0) return 0.0;
  Eigen::JacobiSVD<ComplexMatrix> svd(drop_negligible(complexify_op(a)));
  return svd.singularValues()(0);
}

bool approx_equal(const QMatrix& a, const QMatrix& b, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  return frobenius(a - b) <= tol;
}

bool is_selfadjoint(const QMatrix& a, double tol) {
  return a.square() && frobenius(a - adjoint(a)) <= tol;
}

bool is_antiselfadjoint(const QMatrix& a, double tol) {
  return a.square() && frobenius(a + adjoint(a)) <= tol;
}

bool is_unitary(const QMatrix& a, double tol) {
  if (!a.square()) return false;
  const auto id = QMatrix::identity(a.rows());
  return frobenius(adjoint(a) * a - id) <= tol && frobenius(a * adjoint(a) - id) <= tol;
}

bool is_projector(const QMatrix& a, double tol) {
  return is_selfadjoint(a, tol) && frobenius(a * a - a) <= tol;
}

bool is_complex_structure(const QMatrix& a, double tol) {
  return is_antiselfadjoint(a, tol) && frobenius(a * a + QMatrix::identity(a.rows())) <= tol;
}

QMatrix sqrt_positive(const QMatrix& a, const Tolerances& tols) {
  require_square(a, "sqrt_positive");
  if (!is_selfadjoint(a, tols.tol * std::max(1.0, frobenius(a))))
    fail(ErrorKind::Domain, "sqrt_positive: matrix is not self-adjoint");
  const ComplexMatrix c = complexify_op(a);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(c);
  const auto& ev = es.eigenvalues();
  if (ev.size() > 0 && ev.minCoeff() < -tols.tol * std::max(1.0, ev.cwiseAbs().maxCoeff()))
    fail(ErrorKind::Domain, "sqrt_positive: matrix has a negative eigenvalue");
  const Eigen::VectorXd root = ev.cwiseMax(0.0).cwiseSqrt();
  const ComplexMatrix s = es.eigenvectors() * root.asDiagonal() * es.eigenvectors().adjoint();
  return pull_back(0.5 * (s + s.adjoint()), 1e-8);
}

ComplexStructure ComplexStructure::certify(const QMatrix& j, double tolerance) {
  if (!j.square() || j.rows() == 0) fail(ErrorKind::Shape, "complex structure must be a nonempty square matrix");
  const double skew_residual = frobenius(j + adjoint(j));
  if (skew_residual > tolerance)
    fail(ErrorKind::Precondition, "complex structure candidate is not anti-self-adjoint");
  QMatrix projected = 0.5 * (j - adjoint(j));
  const double square_residual = frobenius(projected * projected + QMatrix::identity(j.rows()));
  if (square_residual > tolerance)
    fail(ErrorKind::Precondition, "complex structure candidate does not square to -I");
  return ComplexStructure(std::move(projected), tolerance, std::max(skew_residual, square_residual));
}

}  // namespace qvn
