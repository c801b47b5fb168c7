#include "qvn/restrict.hpp"

#include <algorithm>
#include <cmath>
#include <type_traits>

#include <Eigen/SVD>

#include "qvn/subspace.hpp"

namespace qvn {

namespace {

double commutation_scale(const QMatrix& a) { return std::max(1.0, frobenius(a)); }

void require_commutes(const QMatrix& a, const QMatrix& s, const Tolerances& tols, const char* what) {
  if (a.rows() != s.rows() || !a.square()) fail(ErrorKind::Shape, std::string(what) + ": dimension mismatch");
  if (frobenius(a * s - s * a) > 100.0 * tols.tol * commutation_scale(a))
    fail(ErrorKind::Precondition, std::string(what) + ": operator does not commute with the structure");
}

// Gram-Schmidt over the coordinate directions projected onto the solution
// space; `coefficient` maps <u|v> to the scalar field of the subspace.
template <class Coefficient>
std::vector<QVector> seeded_basis(const RealMatrix& null_basis, std::size_t want, Coefficient coefficient) {
  const RealMatrix proj = null_basis * null_basis.transpose();
  std::vector<QVector> out;
  for (Eigen::Index t = 0; t < proj.cols() && out.size() < want; ++t) {
    QVector v = unrealify_vec(proj.col(t));
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& u : out) v -= u * coefficient(inner(u, v));
    }
    const double nv = norm(v);
    if (nv > 1e-6) out.push_back(v * Quaternion(1.0 / nv));
  }
  return out;
}

double real_dim_of(const std::vector<RealVector>& vs, Eigen::Index ambient, double rank_eps) {
  if (vs.empty()) return 0;
  RealMatrix cols(ambient, static_cast<Eigen::Index>(vs.size()));
  for (std::size_t i = 0; i < vs.size(); ++i) cols.col(static_cast<Eigen::Index>(i)) = vs[i];
  return static_cast<double>(RealSubspace::span(cols, rank_eps, 1e-8).dim());
}

RealVector flatten(const ComplexMatrix& m) {
  RealVector v(2 * m.size());
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    v(2 * i) = m.data()[i].real();
    v(2 * i + 1) = m.data()[i].imag();
  }
  return v;
}

RealVector flatten(const RealMatrix& m) { return Eigen::Map<const RealVector>(m.data(), m.size()); }

double spectral_norm(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  return Eigen::JacobiSVD<ComplexMatrix>(drop_negligible(m)).singularValues()(0);
}

double spectral_norm(const RealMatrix& m) {
  if (m.size() == 0) return 0.0;
  return Eigen::JacobiSVD<RealMatrix>(m).singularValues()(0);
}

// Basis pairs checked for multiplicativity; enough to certify the
// homomorphism on a spanning set without quadratic blowup.
constexpr std::size_t kProductPairs = 24;

template <class Target, class Restrict>
TransportedAlgebra transport_impl(const OperatorAlgebra& r, Restrict restrict_fn, std::size_t target_dim,
                                  const Tolerances& tols) {
  TransportedAlgebra out;
  out.target_dim = target_dim;
  std::vector<Target> images;
  std::vector<RealVector> flat;
  for (const auto& b : r.basis()) {
    Target img = restrict_fn(b);
    out.adjoint_residual = std::max(out.adjoint_residual, (restrict_fn(adjoint(b)) - img.adjoint()).norm());
    out.norm_residual = std::max(out.norm_residual, std::abs(spectral_norm(img) - opnorm(b)));
    flat.push_back(flatten(img));
    images.push_back(std::move(img));
  }
  const std::size_t m = std::min(images.size(), kProductPairs);
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      const Target lhs = restrict_fn(r.basis()[a] * r.basis()[b]);
      out.product_residual = std::max(out.product_residual, (lhs - images[a] * images[b]).norm());
    }
  }
  out.real_dim = static_cast<std::size_t>(
      real_dim_of(flat, flat.empty() ? 0 : flat.front().size(), tols.rank_eps));
  if constexpr (std::is_same_v<Target, ComplexMatrix>) {
    out.complex_basis = std::move(images);
  } else {
    out.real_basis = std::move(images);
  }
  return out;
}

}  // namespace

HJBasis::HJBasis(ComplexStructure j, std::vector<QVector> vectors)
    : j_(std::move(j)), vectors_(std::move(vectors)), frame_(QMatrix::from_columns(vectors_)) {}

HJKBasis::HJKBasis(ComplexStructure j, ComplexStructure k, std::vector<QVector> vectors)
    : j_(std::move(j)), k_(std::move(k)), vectors_(std::move(vectors)), frame_(QMatrix::from_columns(vectors_)) {}

HJBasis hj_basis(const ComplexStructure& j, const Tolerances& tols) {
  const std::size_t n = j.dim();
  if (n == 0) fail(ErrorKind::Shape, "hj_basis: empty space");
  const RealMatrix system = realify_op(j.matrix()) - jmat_kmat(n).j;
  const RealSubspace null = RealSubspace::nullspace(system, tols.rank_eps, 1e-8);
  if (static_cast<std::size_t>(null.dim()) != 2 * n)
    fail(ErrorKind::Degenerate, "hj_basis: solution space has real dimension " + std::to_string(null.dim()) +
                                    ", expected " + std::to_string(2 * n));
  auto vectors = seeded_basis(null.basis(), n, [](const Quaternion& q) { return Quaternion(q.a, 0.0, q.c, 0.0); });
  if (vectors.size() != n) fail(ErrorKind::Degenerate, "hj_basis: Gram-Schmidt produced too few vectors");
  return HJBasis(j, std::move(vectors));
}

HJKBasis hjk_basis(const ComplexStructure& j, const ComplexStructure& k, const Tolerances& tols) {
  const std::size_t n = j.dim();
  if (n == 0) fail(ErrorKind::Shape, "hjk_basis: empty space");
  if (k.dim() != n) fail(ErrorKind::Shape, "hjk_basis: structures of different dimension");
  if (frobenius(j.matrix() * k.matrix() + k.matrix() * j.matrix()) > 100.0 * tols.tol * std::sqrt(static_cast<double>(n)))
    fail(ErrorKind::Precondition, "hjk_basis: J and K do not anticommute");
  const auto units = jmat_kmat(n);
  const auto m = static_cast<Eigen::Index>(4 * n);
  RealMatrix system(2 * m, m);
  system.topRows(m) = realify_op(j.matrix()) - units.j;
  system.bottomRows(m) = realify_op(k.matrix()) - units.k;
  const RealSubspace null = RealSubspace::nullspace(system, tols.rank_eps, 1e-8);
  if (static_cast<std::size_t>(null.dim()) != n)
    fail(ErrorKind::Degenerate, "hjk_basis: solution space has real dimension " + std::to_string(null.dim()) +
                                    ", expected " + std::to_string(n));
  auto vectors = seeded_basis(null.basis(), n, [](const Quaternion& q) { return Quaternion(q.a); });
  if (vectors.size() != n) fail(ErrorKind::Degenerate, "hjk_basis: Gram-Schmidt produced too few vectors");
  return HJKBasis(j, k, std::move(vectors));
}

ComplexMatrix restrict_j(const QMatrix& a, const HJBasis& basis, const Tolerances& tols) {
  require_commutes(a, basis.structure().matrix(), tols, "restrict_j");
  const QMatrix& u = basis.unitary();
  const QMatrix x = adjoint(u) * a * u;
  const auto n = static_cast<Eigen::Index>(basis.dim());
  ComplexMatrix out(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) out(r, c) = to_complex(x(static_cast<std::size_t>(r), static_cast<std::size_t>(c)));
  }
  return out;
}

QMatrix extend_j(const ComplexMatrix& x, const HJBasis& basis) {
  const std::size_t n = basis.dim();
  if (static_cast<std::size_t>(x.rows()) != n || static_cast<std::size_t>(x.cols()) != n)
    fail(ErrorKind::Shape, "extend_j: matrix size does not match the basis");
  QMatrix xq(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) xq(r, c) = from_complex(x(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)));
  }
  const QMatrix& u = basis.unitary();
  return u * xq * adjoint(u);
}

RealMatrix restrict_jk(const QMatrix& a, const HJKBasis& basis, const Tolerances& tols) {
  require_commutes(a, basis.j().matrix(), tols, "restrict_jk");
  require_commutes(a, basis.k().matrix(), tols, "restrict_jk");
  const QMatrix& z = basis.unitary();
  const QMatrix x = adjoint(z) * a * z;
  const auto n = static_cast<Eigen::Index>(basis.dim());
  RealMatrix out(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) out(r, c) = x(static_cast<std::size_t>(r), static_cast<std::size_t>(c)).a;
  }
  return out;
}

QMatrix extend_jk(const RealMatrix& x, const HJKBasis& basis) {
  const std::size_t n = basis.dim();
  if (static_cast<std::size_t>(x.rows()) != n || static_cast<std::size_t>(x.cols()) != n)
    fail(ErrorKind::Shape, "extend_jk: matrix size does not match the basis");
  QMatrix xq(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) xq(r, c) = x(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
  }
  const QMatrix& z = basis.unitary();
  return z * xq * adjoint(z);
}

QMatrix left_mult(const Quaternion& q, const ComplexStructure& j, const ComplexStructure& k, const Tolerances& tols) {
  const QMatrix& jm = j.matrix();
  const QMatrix& km = k.matrix();
  if (jm.rows() != km.rows()) fail(ErrorKind::Shape, "left_mult: structures of different dimension");
  if (frobenius(jm * km + km * jm) > 100.0 * tols.tol * std::sqrt(static_cast<double>(jm.rows())))
    fail(ErrorKind::Precondition, "left_mult: J and K do not anticommute");
  return q.a * QMatrix::identity(jm.rows()) + q.b * (jm * km) + q.c * jm + q.d * km;
}

std::pair<QVector, QVector> decompose_j(const QVector& x, const ComplexStructure& j) {
  const QVector jx = j.matrix() * x;
  QVector x1 = 0.5 * (x - jx * Quaternion::j());
  QVector x2 = (x - x1) * (-Quaternion::k());
  return {std::move(x1), std::move(x2)};
}

std::array<QVector, 4> decompose_jk(const QVector& x, const ComplexStructure& j, const ComplexStructure& k) {
  const QMatrix& jm = j.matrix();
  const QMatrix& km = k.matrix();
  const QVector a = jm * (km * (x * Quaternion::i()));
  const QVector b = jm * (x * Quaternion::j());
  const QVector c = km * (x * Quaternion::k());
  const QVector u1 = x - a - b - c;
  const QVector ui = x - a + b + c;
  const QVector uj = x + a - b + c;
  const QVector uk = x + a + b - c;
  return {0.25 * u1, (0.25 * ui) * (-Quaternion::i()), (0.25 * uj) * (-Quaternion::j()),
          (0.25 * uk) * (-Quaternion::k())};
}

TransportedAlgebra transport_algebra(const OperatorAlgebra& r, const HJBasis& basis, const Tolerances& tols) {
  for (const auto& b : r.basis()) require_commutes(b, basis.structure().matrix(), tols, "transport_algebra");
  const std::size_t n = basis.dim();
  return transport_impl<ComplexMatrix>(
      r, [&](const QMatrix& a) { return restrict_j(a, basis, tols); }, 2 * n * n, tols);
}

TransportedAlgebra transport_algebra(const OperatorAlgebra& r, const HJKBasis& basis, const Tolerances& tols) {
  for (const auto& b : r.basis()) {
    require_commutes(b, basis.j().matrix(), tols, "transport_algebra");
    require_commutes(b, basis.k().matrix(), tols, "transport_algebra");
  }
  const std::size_t n = basis.dim();
  return transport_impl<RealMatrix>(
      r, [&](const QMatrix& a) { return restrict_jk(a, basis, tols); }, n * n, tols);
}

std::vector<ComplexMatrix> transport_lattice(std::span<const QMatrix> projectors, const HJBasis& basis,
                                             const Tolerances& tols) {
  std::vector<ComplexMatrix> out;
  for (const auto& p : projectors) {
    if (!is_projector(p, 1e-8)) fail(ErrorKind::Precondition, "transport_lattice: input is not a projector");
    out.push_back(restrict_j(p, basis, tols));
  }
  return out;
}

std::vector<RealMatrix> transport_lattice(std::span<const QMatrix> projectors, const HJKBasis& basis,
                                          const Tolerances& tols) {
  std::vector<RealMatrix> out;
  for (const auto& p : projectors) {
    if (!is_projector(p, 1e-8)) fail(ErrorKind::Precondition, "transport_lattice: input is not a projector");
    out.push_back(restrict_jk(p, basis, tols));
  }
  return out;
}

namespace {

// Orthogonal projector onto the column span of `cols`.
ComplexMatrix span_projector(const ComplexMatrix& cols, const Tolerances& tols) {
  const Eigen::Index n = cols.rows();
  if (cols.size() == 0) return ComplexMatrix::Zero(n, n);
  Eigen::JacobiSVD<ComplexMatrix> svd(drop_negligible(cols), Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  const double cut = std::max(1e-9, 1e3 * tols.rank_eps * static_cast<double>(n)) * std::max(1.0, sv(0));
  Eigen::Index r = 0;
  while (r < sv.size() && sv(r) > cut) ++r;
  const ComplexMatrix u = svd.matrixU().leftCols(r);
  return u * u.adjoint();
}

}  // namespace

bool projector_leq(const QMatrix& p, const QMatrix& q, double tol) { return frobenius(q * p - p) <= tol; }

QMatrix projector_complement(const QMatrix& p) { return QMatrix::identity(p.rows()) - p; }

QMatrix projector_join(const QMatrix& p, const QMatrix& q, const Tolerances& tols) {
  const ComplexMatrix cp = complexify_op(p);
  const ComplexMatrix cq = complexify_op(q);
  ComplexMatrix both(cp.rows(), cp.cols() + cq.cols());
  both << cp, cq;
  return pull_back(span_projector(both, tols), 1e-8);
}

QMatrix projector_meet(const QMatrix& p, const QMatrix& q, const Tolerances& tols) {
  return projector_complement(projector_join(projector_complement(p), projector_complement(q), tols));
}

bool projector_leq(const ComplexMatrix& p, const ComplexMatrix& q, double tol) { return (q * p - p).norm() <= tol; }

ComplexMatrix projector_join(const ComplexMatrix& p, const ComplexMatrix& q, const Tolerances& tols) {
  ComplexMatrix both(p.rows(), p.cols() + q.cols());
  both << p, q;
  return span_projector(both, tols);
}

ComplexMatrix projector_meet(const ComplexMatrix& p, const ComplexMatrix& q, const Tolerances& tols) {
  const ComplexMatrix id = ComplexMatrix::Identity(p.rows(), p.cols());
  return id - projector_join(ComplexMatrix(id - p), ComplexMatrix(id - q), tols);
}

}  // namespace qvn
