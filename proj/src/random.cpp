#include "qvn/random.hpp"

#include <cmath>

#include "qvn/error.hpp"
#include "qvn/valg.hpp"

namespace qvn {

double Random::uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(engine_);
}

std::size_t Random::index(std::size_t bound) {
  return std::uniform_int_distribution<std::size_t>(0, bound - 1)(engine_);
}

Quaternion Random::quaternion() {
  const double a = gaussian();
  const double b = gaussian();
  const double c = gaussian();
  const double d = gaussian();
  return {a, b, c, d};
}

Quaternion Random::unit_quaternion() {
  Quaternion q = quaternion();
  while (abs(q) < 1e-8) q = quaternion();
  return q / abs(q);
}

QVector Random::vector(std::size_t n) {
  QVector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = quaternion();
  return x;
}

QMatrix Random::matrix(std::size_t rows, std::size_t cols) {
  QMatrix a(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) a(i, j) = quaternion();
  }
  return a;
}

QMatrix Random::real_matrix(std::size_t n) {
  QMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a(i, j) = Quaternion(gaussian());
  }
  return a;
}

QMatrix Random::selfadjoint(std::size_t n) {
  const QMatrix x = matrix(n);
  return 0.5 * (x + adjoint(x));
}

QMatrix Random::antiselfadjoint(std::size_t n) {
  const QMatrix x = matrix(n);
  return 0.5 * (x - adjoint(x));
}

QMatrix Random::positive(std::size_t n, double shift) {
  const QMatrix x = matrix(n);
  return adjoint(x) * x + shift * QMatrix::identity(n);
}

QMatrix Random::unitary(std::size_t n) { return orthonormalize_columns(matrix(n)); }

QMatrix Random::projector(std::size_t n, std::size_t rank) {
  if (rank > n) fail(ErrorKind::Shape, "projector rank exceeds dimension");
  const QMatrix u = unitary(n);
  QMatrix p = QMatrix::zero(n);
  for (std::size_t r = 0; r < rank; ++r) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) p(i, j) += u(i, r) * conj(u(j, r));
    }
  }
  return p;
}

QMatrix Random::low_rank(std::size_t n, std::size_t rank) { return matrix(n, rank) * matrix(rank, n); }

QMatrix Random::complex_structure(std::size_t n) {
  const QMatrix v = unitary(n);
  return v * block_complex_structure(n) * adjoint(v);
}

QMatrix orthonormalize_columns(const QMatrix& a) {
  std::vector<QVector> cols;
  cols.reserve(a.cols());
  for (std::size_t c = 0; c < a.cols(); ++c) {
    QVector v = a.column(c);
    for (int pass = 0; pass < 2; ++pass) {
      for (const QVector& u : cols) v -= u * inner(u, v);
    }
    const double nv = norm(v);
    if (nv < 1e-12) fail(ErrorKind::Degenerate, "orthonormalize_columns: rank-deficient input");
    cols.push_back((1.0 / nv) * v);
  }
  return QMatrix::from_columns(cols);
}

}  // namespace qvn
