#include "qvn/embed.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qvn {

namespace {

constexpr Quaternion kUnits[4] = {Quaternion::one(), Quaternion::i(), Quaternion::j(), Quaternion::k()};

Eigen::Vector4d coords(const Quaternion& q) { return {q.a, q.b, q.c, q.d}; }

}  // namespace

Eigen::Matrix4d left_mult_matrix(const Quaternion& q) {
  Eigen::Matrix4d m;
  for (int u = 0; u < 4; ++u) m.col(u) = coords(q * kUnits[u]);
  return m;
}

Eigen::Matrix4d right_mult_matrix(const Quaternion& q) {
  Eigen::Matrix4d m;
  for (int u = 0; u < 4; ++u) m.col(u) = coords(kUnits[u] * q);
  return m;
}

RealVector realify_vec(const QVector& x) {
  RealVector v(4 * static_cast<Eigen::Index>(x.size()));
  for (std::size_t i = 0; i < x.size(); ++i) v.segment<4>(4 * static_cast<Eigen::Index>(i)) = coords(x[i]);
  return v;
}

QVector unrealify_vec(const RealVector& v) {
  if (v.size() % 4 != 0) fail(ErrorKind::Shape, "real vector length is not a multiple of 4");
  QVector x(static_cast<std::size_t>(v.size() / 4));
  for (std::size_t i = 0; i < x.size(); ++i) {
    const auto s = v.segment<4>(4 * static_cast<Eigen::Index>(i));
    x[i] = Quaternion(s(0), s(1), s(2), s(3));
  }
  return x;
}

RealMatrix realify_op(const QMatrix& a) {
  RealMatrix m(4 * static_cast<Eigen::Index>(a.rows()), 4 * static_cast<Eigen::Index>(a.cols()));
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      m.block<4, 4>(4 * static_cast<Eigen::Index>(i), 4 * static_cast<Eigen::Index>(j)) = left_mult_matrix(a(i, j));
    }
  }
  return m;
}

RightUnits jmat_kmat(std::size_t n) {
  const auto dim = 4 * static_cast<Eigen::Index>(n);
  RightUnits r{RealMatrix::Zero(dim, dim), RealMatrix::Zero(dim, dim)};
  const Eigen::Matrix4d jb = right_mult_matrix(Quaternion::j());
  const Eigen::Matrix4d kb = right_mult_matrix(Quaternion::k());
  for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(n); ++i) {
    r.j.block<4, 4>(4 * i, 4 * i) = jb;
    r.k.block<4, 4>(4 * i, 4 * i) = kb;
  }
  return r;
}

Quaternion recover_inner(const RealVector& x, const RealVector& y) {
  if (x.size() != y.size() || x.size() % 4 != 0) fail(ErrorKind::Shape, "recover_inner: length mismatch");
  const auto units = jmat_kmat(static_cast<std::size_t>(x.size() / 4));
  const RealVector jy = units.j * y;
  const RealVector ky = units.k * y;
  // Right multiplication by jk: first j, then k.
  const RealVector jky = units.k * jy;
  const Quaternion jk = Quaternion::j() * Quaternion::k();
  return Quaternion(x.dot(y)) - Quaternion::j() * x.dot(jy) - Quaternion::k() * x.dot(ky) - jk * x.dot(jky);
}

cplx to_complex(const Quaternion& q) { return {q.a, q.c}; }
Quaternion from_complex(cplx z) { return {z.real(), 0.0, z.imag(), 0.0}; }

// q = z + k w with z = a + j c and w = d - j b, since k (d - j b) = d k + b i.
std::pair<cplx, cplx> split(const Quaternion& q) { return {cplx(q.a, q.c), cplx(q.d, -q.b)}; }
Quaternion join(cplx z, cplx w) { return {z.real(), -w.imag(), z.imag(), w.real()}; }

ComplexVector complexify_vec(const QVector& x) {
  const auto n = static_cast<Eigen::Index>(x.size());
  ComplexVector v(2 * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto [z, w] = split(x[static_cast<std::size_t>(i)]);
    v(i) = z;
    v(n + i) = w;
  }
  return v;
}

QVector pull_back_vec(const ComplexVector& v) {
  if (v.size() % 2 != 0) fail(ErrorKind::Shape, "complex vector length is odd");
  const Eigen::Index n = v.size() / 2;
  QVector x(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) x[static_cast<std::size_t>(i)] = join(v(i), v(n + i));
  return x;
}

ComplexMatrix complexify_op(const QMatrix& a) {
  const auto r = static_cast<Eigen::Index>(a.rows());
  const auto c = static_cast<Eigen::Index>(a.cols());
  ComplexMatrix m(2 * r, 2 * c);
  for (Eigen::Index i = 0; i < r; ++i) {
    for (Eigen::Index j = 0; j < c; ++j) {
      const auto [z, w] = split(a(static_cast<std::size_t>(i), static_cast<std::size_t>(j)));
      m(i, j) = z;
      m(i, c + j) = -std::conj(w);
      m(r + i, j) = w;
      m(r + i, c + j) = std::conj(z);
    }
  }
  return m;
}

ComplexMatrix k_structure(std::size_t n) {
  const auto m = static_cast<Eigen::Index>(n);
  ComplexMatrix kc = ComplexMatrix::Zero(2 * m, 2 * m);
  kc.block(0, m, m, m) = -ComplexMatrix::Identity(m, m);
  kc.block(m, 0, m, m) = ComplexMatrix::Identity(m, m);
  return kc;
}

double quaternionic_residual(const ComplexMatrix& c) {
  if (c.rows() % 2 != 0 || c.cols() % 2 != 0) return std::numeric_limits<double>::infinity();
  const Eigen::Index r = c.rows() / 2;
  const Eigen::Index s = c.cols() / 2;
  // C Kc = Kc conj(C) blockwise: [[X, Y], [V, T]] needs T = conj(X), Y = -conj(V).
  const double d1 = (c.block(r, s, r, s) - c.block(0, 0, r, s).conjugate()).norm();
  const double d2 = (c.block(0, s, r, s) + c.block(r, 0, r, s).conjugate()).norm();
  return std::sqrt(2.0) * std::hypot(d1, d2);
}

bool is_quaternionic(const ComplexMatrix& c, double tol) { return quaternionic_residual(c) <= tol; }

ComplexMatrix drop_negligible(const ComplexMatrix& c, double rel) {
  if (c.size() == 0) return c;
  const double cut = rel * c.cwiseAbs().maxCoeff();
  return c.unaryExpr([cut](cplx z) { return std::abs(z) < cut ? cplx(0.0, 0.0) : z; });
}

QMatrix pull_back(const ComplexMatrix& c, double tol) {
  if (c.rows() % 2 != 0 || c.cols() % 2 != 0) fail(ErrorKind::Shape, "pull_back: dimensions must be even");
  if (quaternionic_residual(c) > tol * std::max(1.0, c.norm()))
    fail(ErrorKind::Structure, "pull_back: complex matrix does not commute with the k structure");
  const Eigen::Index r = c.rows() / 2;
  const Eigen::Index s = c.cols() / 2;
  QMatrix a(static_cast<std::size_t>(r), static_cast<std::size_t>(s));
  for (Eigen::Index i = 0; i < r; ++i) {
    for (Eigen::Index j = 0; j < s; ++j) {
      const cplx z = 0.5 * (c(i, j) + std::conj(c(r + i, s + j)));
      const cplx w = 0.5 * (c(r + i, j) - std::conj(c(i, s + j)));
      a(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = join(z, w);
    }
  }
  return a;
}

}  // namespace qvn
