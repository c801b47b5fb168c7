#include "qvn/valg.hpp"

#include <algorithm>
#include <cmath>

#include "qvn/embed.hpp"
#include "qvn/spectral.hpp"

namespace qvn {

namespace {

constexpr Quaternion kUnits[4] = {Quaternion::one(), Quaternion::i(), Quaternion::j(), Quaternion::k()};

std::size_t common_dim(std::span<const QMatrix> s) {
  if (s.empty()) fail(ErrorKind::Shape, "empty operator family");
  const std::size_t n = s.front().rows();
  for (const auto& m : s) {
    if (!m.square() || m.rows() != n) fail(ErrorKind::Shape, "operator family must be square and of one dimension");
  }
  return n;
}

std::vector<QMatrix> unvec_columns(const RealMatrix& cols, std::size_t n) {
  std::vector<QMatrix> out;
  out.reserve(static_cast<std::size_t>(cols.cols()));
  for (Eigen::Index c = 0; c < cols.cols(); ++c) out.push_back(unvec(cols.col(c), n));
  return out;
}

double family_scale(std::span<const QMatrix> s) {
  double m = 0.0;
  for (const auto& a : s) m = std::max(m, frobenius(a));
  return m;
}

// Rank floor for spans of O(1) matrices.
double span_floor(std::size_t n, const Tolerances& tols) {
  return tols.rank_eps * static_cast<double>(4 * n * n);
}

}  // namespace

OperatorAlgebra OperatorAlgebra::from_spanning(std::size_t n, std::span<const QMatrix> spanning,
                                               const Tolerances& tols) {
  OperatorAlgebra alg;
  alg.n_ = n;
  const auto ambient = static_cast<Eigen::Index>(4 * n * n);
  if (spanning.empty()) {
    alg.space_ = RealSubspace(ambient);
  } else {
    RealMatrix cols(ambient, static_cast<Eigen::Index>(spanning.size()));
    for (std::size_t i = 0; i < spanning.size(); ++i) {
      if (spanning[i].rows() != n || spanning[i].cols() != n)
        fail(ErrorKind::Shape, "algebra element has the wrong dimension");
      cols.col(static_cast<Eigen::Index>(i)) = vec(spanning[i]);
    }
    alg.space_ = RealSubspace::span(cols, tols.rank_eps, span_floor(n, tols) * std::max(1.0, cols.norm()));
  }
  alg.basis_ = unvec_columns(alg.space_.basis(), n);

  const double flag_tol = tols.tol * std::max<double>(1.0, static_cast<double>(n));
  alg.contains_identity_ = n > 0 && alg.residual(QMatrix::identity(n)) <= flag_tol;
  alg.star_closed_ = std::all_of(alg.basis_.begin(), alg.basis_.end(),
                                 [&](const QMatrix& b) { return alg.residual(adjoint(b)) <= flag_tol; });
  alg.product_closed_ = true;
  for (std::size_t a = 0; a < alg.basis_.size() && alg.product_closed_; ++a) {
    for (std::size_t b = 0; b < alg.basis_.size(); ++b) {
      if (alg.residual(alg.basis_[a] * alg.basis_[b]) > flag_tol) {
        alg.product_closed_ = false;
        break;
      }
    }
  }
  return alg;
}

double OperatorAlgebra::residual(const QMatrix& a) const {
  if (a.rows() != n_ || a.cols() != n_) fail(ErrorKind::Shape, "membership test: dimension mismatch");
  if (dim() == 0) return frobenius(a);
  return space_.residual(vec(a));
}

QMatrix OperatorAlgebra::project(const QMatrix& a) const { return unvec(space_.project(vec(a)), n_); }

std::vector<QMatrix> symmetrize(std::span<const QMatrix> s) {
  const std::size_t n = common_dim(s);
  std::vector<QMatrix> out;
  out.reserve(2 * s.size() + 1);
  out.push_back(QMatrix::identity(n));
  for (const auto& m : s) {
    out.push_back(m);
    out.push_back(adjoint(m));
  }
  return out;
}

OperatorAlgebra generated_algebra(std::span<const QMatrix> s, const Tolerances& tols) {
  const std::vector<QMatrix> gens = symmetrize(s);
  const std::size_t n = gens.front().rows();
  const double floor = span_floor(n, tols);
  RealSubspace space = matrix_span(gens, tols.rank_eps);
  const std::size_t cap = 4 * n * n + 1;
  for (std::size_t round = 0;; ++round) {
    if (round >= cap) fail(ErrorKind::Internal, "generated_algebra: word closure did not reach a fixpoint");
    const std::vector<QMatrix> basis = unvec_columns(space.basis(), n);
    const auto d = basis.size();
    RealMatrix cols(static_cast<Eigen::Index>(4 * n * n), static_cast<Eigen::Index>(d + d * d));
    Eigen::Index c = 0;
    for (const auto& b : basis) cols.col(c++) = vec(b);
    for (const auto& x : basis) {
      for (const auto& y : basis) cols.col(c++) = vec(x * y);
    }
    RealSubspace next = RealSubspace::span(cols, tols.rank_eps, floor * std::max(1.0, cols.norm()));
    const bool stable = next.dim() == space.dim();
    space = std::move(next);
    if (stable) break;
  }
  const std::vector<QMatrix> basis = unvec_columns(space.basis(), n);
  return OperatorAlgebra::from_spanning(n, basis, tols);
}

OperatorAlgebra commutant(std::span<const QMatrix> s, const Tolerances& tols) {
  const std::size_t n = common_dim(s);
  const auto unknowns = static_cast<Eigen::Index>(4 * n * n);
  RealMatrix constraints = RealMatrix::Zero(unknowns * static_cast<Eigen::Index>(s.size()), unknowns);
  // Column (a, b, u) is vec(X S - S X) for X = u E_ab:
  //   (X S)_{a j} = u S_{b j},  (S X)_{i b} = S_{i a} u.
  for (std::size_t g = 0; g < s.size(); ++g) {
    const QMatrix& sm = s[g];
    const Eigen::Index row0 = unknowns * static_cast<Eigen::Index>(g);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        for (int u = 0; u < 4; ++u) {
          const auto col = static_cast<Eigen::Index>(4 * (a * n + b)) + u;
          QMatrix image(n, n);
          for (std::size_t j = 0; j < n; ++j) image(a, j) += kUnits[u] * sm(b, j);
          for (std::size_t i = 0; i < n; ++i) image(i, b) -= sm(i, a) * kUnits[u];
          constraints.block(row0, col, unknowns, 1) = vec(image);
        }
      }
    }
  }
  const double floor = tols.rank_eps * static_cast<double>(constraints.rows()) * family_scale(s);
  const RealSubspace null = RealSubspace::nullspace(constraints, tols.rank_eps, floor);
  return OperatorAlgebra::from_spanning(n, unvec_columns(null.basis(), n), tols);
}

OperatorAlgebra double_commutant(std::span<const QMatrix> s, const Tolerances& tols) {
  const std::vector<QMatrix> sym = symmetrize(s);
  const OperatorAlgebra first = commutant(sym, tols);
  return commutant(first.basis(), tols);
}

std::vector<RealMatrix> real_commutant(std::span<const QMatrix> s, const Tolerances& tols) {
  const std::size_t n = common_dim(s);
  const auto m = static_cast<Eigen::Index>(4 * n);
  const Eigen::Index unknowns = m * m;
  RealMatrix constraints(unknowns * static_cast<Eigen::Index>(s.size()), unknowns);
  const RealMatrix id = RealMatrix::Identity(m, m);
  for (std::size_t g = 0; g < s.size(); ++g) {
    const RealMatrix r = realify_op(s[g]);
    // vec(X R - R X) = (R^T (x) I - I (x) R) vec(X), column-major vec.
    RealMatrix block(unknowns, unknowns);
    for (Eigen::Index p = 0; p < m; ++p) {
      for (Eigen::Index q = 0; q < m; ++q) block.block(p * m, q * m, m, m) = r(q, p) * id - (p == q ? r : RealMatrix::Zero(m, m));
    }
    constraints.middleRows(unknowns * static_cast<Eigen::Index>(g), unknowns) = block;
  }
  const double floor = tols.rank_eps * static_cast<double>(constraints.rows()) * family_scale(s);
  const RealSubspace null = RealSubspace::nullspace(constraints, tols.rank_eps, floor);
  std::vector<RealMatrix> out;
  for (Eigen::Index c = 0; c < null.dim(); ++c) {
    out.push_back(Eigen::Map<const RealMatrix>(null.basis().col(c).data(), m, m));
  }
  return out;
}

LemmaParts lemma_decompose(const RealMatrix& a, std::span<const QMatrix> s, const OperatorAlgebra& s_prime,
                           const Tolerances& tols) {
  const std::size_t n = common_dim(s);
  const auto m = static_cast<Eigen::Index>(4 * n);
  if (a.rows() != m || a.cols() != m) fail(ErrorKind::Shape, "lemma_decompose: operator has the wrong size");
  const double scale = std::max(1.0, a.norm());
  for (const auto& sm : s) {
    const RealMatrix r = realify_op(sm);
    if ((a * r - r * a).norm() > tols.tol * scale * std::max(1.0, r.norm()))
      fail(ErrorKind::Precondition, "lemma_decompose: operator does not commute with the family");
  }
  const auto units = jmat_kmat(n);
  const RealMatrix& j = units.j;
  const RealMatrix& k = units.k;
  const RealMatrix jk = j * k;
  const RealMatrix jaj = j * a * j;
  const RealMatrix kak = k * a * k;
  const RealMatrix jkajk = jk * a * jk;

  LemmaParts parts;
  parts.b = a - jaj - kak - jkajk;
  parts.b_j = a - jaj + kak + jkajk;
  parts.b_k = a - kak + jaj + jkajk;
  parts.b_jk = a - jkajk + jaj + kak;
  parts.reconstruction = (4.0 * a - parts.b - parts.b_j - parts.b_k - parts.b_jk).norm();

  // Membership in S', J S', K S', JK S' as real subspaces of 4n x 4n matrices.
  const std::array<const RealMatrix*, 4> prefixes = {nullptr, &j, &k, &jk};
  const std::array<const RealMatrix*, 4> targets = {&parts.b, &parts.b_j, &parts.b_k, &parts.b_jk};
  for (std::size_t t = 0; t < 4; ++t) {
    RealMatrix cols(m * m, static_cast<Eigen::Index>(s_prime.dim()));
    for (std::size_t e = 0; e < s_prime.dim(); ++e) {
      RealMatrix img = realify_op(s_prime.basis()[e]);
      if (prefixes[t]) img = (*prefixes[t]) * img;
      cols.col(static_cast<Eigen::Index>(e)) = Eigen::Map<const RealVector>(img.data(), m * m);
    }
    const RealSubspace space = RealSubspace::span(cols, tols.rank_eps);
    const RealVector target = Eigen::Map<const RealVector>(targets[t]->data(), m * m);
    parts.membership[t] = space.dim() == 0 ? target.norm() : space.residual(target);
  }
  return parts;
}

bool is_irreducible(std::span<const QMatrix> s, const Tolerances& tols) {
  const std::vector<QMatrix> sym = symmetrize(s);
  const std::size_t n = sym.front().rows();
  const OperatorAlgebra c = commutant(sym, tols);
  std::vector<QMatrix> selfadjoint;
  for (const auto& b : c.basis()) selfadjoint.push_back(b + adjoint(b));
  const RealSubspace sa = RealSubspace::span(
      [&] {
        RealMatrix cols(static_cast<Eigen::Index>(4 * n * n), static_cast<Eigen::Index>(selfadjoint.size()));
        for (std::size_t i = 0; i < selfadjoint.size(); ++i) cols.col(static_cast<Eigen::Index>(i)) = vec(selfadjoint[i]);
        return cols;
      }(),
      tols.rank_eps, 1e-8);
  return sa.dim() == 1;
}

const char* to_string(AlgebraTypeTag tag) noexcept {
  switch (tag) {
    case AlgebraTypeTag::QuaternionicReal: return "QuaternionicReal";
    case AlgebraTypeTag::QuaternionicComplex: return "QuaternionicComplex";
    case AlgebraTypeTag::QuaternionicQuaternionic: return "QuaternionicQuaternionic";
  }
  return "unknown";
}

QMatrix canonical_sign(const QMatrix& j) {
  const double scale = max_abs(j);
  if (scale == 0.0) return j;
  for (const auto& q : j.entries()) {
    for (int u = 0; u < 4; ++u) {
      if (std::abs(q[u]) > 1e-8 * scale) return q[u] < 0 ? -j : j;
    }
  }
  return j;
}

namespace {

// T anti-self-adjoint with T^2 = -c I, c > 0; returns T / sqrt(c).
QMatrix normalize_structure(const QMatrix& t, const Tolerances& tols) {
  const std::size_t n = t.rows();
  const QMatrix sq = t * t;
  const double c = -re(full_trace(sq)) / static_cast<double>(n);
  if (c <= tols.tol) fail(ErrorKind::Degenerate, "classify: anti-self-adjoint commutant element is too small to normalize");
  const double scatter = frobenius(sq + c * QMatrix::identity(n));
  if (scatter > 1e-8 * c * std::sqrt(static_cast<double>(n)))
    fail(ErrorKind::Degenerate, "classify: anti-self-adjoint commutant element does not square to a negative scalar");
  return (1.0 / std::sqrt(c)) * t;
}

QMatrix largest_skew_part(const std::vector<QMatrix>& candidates) {
  QMatrix best;
  double best_norm = -1.0;
  for (const auto& a : candidates) {
    QMatrix t = 0.5 * (a - adjoint(a));
    const double nrm = frobenius(t);
    if (nrm > best_norm) {
      best_norm = nrm;
      best = std::move(t);
    }
  }
  return best;
}

}  // namespace

AlgebraType classify(const OperatorAlgebra& r, bool require_irreducible, const Tolerances& tols) {
  if (r.dim() == 0) fail(ErrorKind::Precondition, "classify: empty algebra");
  const std::size_t n = r.n();
  if (require_irreducible && !is_irreducible(r.basis(), tols))
    fail(ErrorKind::Precondition, "classify: algebra is not irreducible");
  const OperatorAlgebra c = commutant(r.basis(), tols);
  AlgebraType type;
  type.commutant_dim = c.dim();
  const double member_tol = 1e-8 * std::sqrt(static_cast<double>(n));

  switch (c.dim()) {
    case 1:
      type.tag = AlgebraTypeTag::QuaternionicReal;
      return type;
    case 2: {
      QMatrix j = canonical_sign(normalize_structure(largest_skew_part(c.basis()), tols));
      if (r.residual(j) > member_tol)
        fail(ErrorKind::Degenerate, "classify: complex structure of the commutant is not in the algebra");
      type.tag = AlgebraTypeTag::QuaternionicComplex;
      type.j = ComplexStructure::certify(j, 1e-8);
      return type;
    }
    case 4: {
      const QMatrix j = canonical_sign(normalize_structure(largest_skew_part(c.basis()), tols));
      std::vector<QMatrix> rest;
      const double jj = re(full_trace(adjoint(j) * j));
      for (const auto& b : c.basis()) {
        QMatrix t = 0.5 * (b - adjoint(b));
        const double along = re(full_trace(adjoint(j) * t)) / jj;
        rest.push_back(t - along * j);
      }
      QMatrix k = largest_skew_part(rest);
      k = 0.5 * (k + j * k * j);  // anticommuting part
      k = canonical_sign(normalize_structure(k, tols));
      if (frobenius(j * k + k * j) > 1e-8 * std::sqrt(static_cast<double>(n)))
        fail(ErrorKind::Degenerate, "classify: extracted structures do not anticommute");
      const QMatrix jk = j * k;
      const double outside = std::min({r.residual(j), r.residual(k), r.residual(jk)});
      if (outside <= member_tol)
        fail(ErrorKind::Degenerate, "classify: a quaternionic-type structure lies in the algebra");
      if (center(r, tols).dim() != 1) fail(ErrorKind::Degenerate, "classify: center is not R I");
      type.tag = AlgebraTypeTag::QuaternionicQuaternionic;
      type.j = ComplexStructure::certify(j, 1e-8);
      type.k = ComplexStructure::certify(k, 1e-8);
      return type;
    }
    default:
      fail(ErrorKind::Degenerate, "classify: commutant has real dimension " + std::to_string(c.dim()) +
                                      ", expected 1, 2 or 4 (reducible or numerically degenerate input)");
  }
}

OperatorAlgebra center(const OperatorAlgebra& r, const Tolerances& tols) {
  const OperatorAlgebra c = commutant(r.basis(), tols);
  const RealSubspace both = r.subspace().intersect(c.subspace(), tols.rank_eps);
  return OperatorAlgebra::from_spanning(r.n(), unvec_columns(both.basis(), r.n()), tols);
}

std::vector<QMatrix> proj_lattice(const OperatorAlgebra& r, const Tolerances& tols) {
  const std::size_t n = r.n();
  std::vector<QMatrix> out = {QMatrix::zero(n), QMatrix::identity(n)};
  auto add = [&](const QMatrix& p) {
    for (const auto& q : out) {
      if (frobenius(p - q) <= 1e-8) return;
    }
    out.push_back(p);
  };
  for (const auto& b : r.basis()) {
    const QMatrix h = 0.5 * (b + adjoint(b));
    if (frobenius(h) <= tols.tol) continue;
    for (const auto& pair : eig_selfadjoint(h, tols).pairs) add(pair.projector);
  }
  return out;
}

CJSetReport cj_set_check(const OperatorAlgebra& r, const Tolerances& tols) {
  CJSetReport rep;
  const std::vector<QMatrix> lattice = proj_lattice(r, tols);
  const OperatorAlgebra lpp = double_commutant(lattice, tols);
  rep.lattice_algebra_dim = lpp.dim();

  std::vector<QMatrix> spanning = lpp.basis();
  for (const auto& a : r.basis()) {
    const QMatrix skew = a - adjoint(a);
    QMatrix rebuilt = 0.5 * (a + adjoint(a));
    if (frobenius(skew) > tols.tol) {
      const PolarPair pp = polar(skew, tols);
      const QMatrix& w = pp.u;
      const QMatrix minus_sq = -(w * w);
      const double witness = std::max({r.residual(w), frobenius(w + adjoint(w)),
                                       frobenius(minus_sq * minus_sq - minus_sq), r.residual(minus_sq),
                                       lpp.residual(pp.p)});
      rep.witness_residual = std::max(rep.witness_residual, witness);
      ++rep.structures;
      rebuilt += 0.5 * (w * pp.p);
      for (const auto& x : lpp.basis()) spanning.push_back(w * x);
    }
    rep.decomposition_residual = std::max(rep.decomposition_residual, frobenius(a - rebuilt));
    rep.decomposition_residual = std::max(rep.decomposition_residual, lpp.residual(a + adjoint(a)));
  }
  const RealSubspace rebuilt_space = matrix_span(spanning, tols.rank_eps);
  rep.reconstruction_residual = subspace_distance(rebuilt_space, r.subspace());
  rep.passed = rep.witness_residual < 1e-9 && rep.decomposition_residual < 1e-9 && rep.reconstruction_residual < 1e-9;
  return rep;
}

OperatorAlgebra full_algebra(std::size_t n) {
  std::vector<QMatrix> basis;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      for (const auto& u : kUnits) {
        QMatrix m(n, n);
        m(a, b) = u;
        basis.push_back(std::move(m));
      }
    }
  }
  return OperatorAlgebra::from_spanning(n, basis);
}

QMatrix block_complex_structure(std::size_t n) {
  QMatrix j(n, n);
  for (std::size_t m = 0; m + 1 < n; m += 2) {
    j(m, m + 1) = -1.0;
    j(m + 1, m) = 1.0;
  }
  if (n % 2 == 1) j(n - 1, n - 1) = Quaternion::j();
  return j;
}

OperatorAlgebra real_matrix_algebra(std::size_t n) {
  std::vector<QMatrix> basis;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) basis.push_back(QMatrix::unit(n, a, b));
  }
  return OperatorAlgebra::from_spanning(n, basis);
}

}  // namespace qvn
