#include "qvn/reduce.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/Geometry>

#include "qvn/error.hpp"
#include "qvn/random.hpp"
#include "qvn/spectral.hpp"
#include "qvn/subspace.hpp"

namespace qvn {

namespace {

double skew_residual(const QMatrix& a) { return frobenius(a + adjoint(a)); }

double worst_commutator(const QMatrix& a, std::span<const QMatrix> s) {
  double worst = 0.0;
  for (const QMatrix& u : s) worst = std::max(worst, frobenius(commutator(a, u)));
  return worst;
}

// Null space of X -> [X, U] over complex n x n matrices, as a real subspace
// of R^{2n^2} with coordinates (Re X, Im X).
RealSubspace complex_commutant(std::span<const ComplexMatrix> s, const Tolerances& tols) {
  const Eigen::Index n = s.front().rows();
  const Eigen::Index block = 2 * n * n;
  RealMatrix m(block * static_cast<Eigen::Index>(s.size()), block);
  double scale = 1.0;
  for (const ComplexMatrix& u : s) scale = std::max(scale, u.norm());
  Eigen::Index col = 0;
  for (Eigen::Index part = 0; part < 2; ++part) {
    for (Eigen::Index a = 0; a < n; ++a) {
      for (Eigen::Index b = 0; b < n; ++b, ++col) {
        ComplexMatrix e = ComplexMatrix::Zero(n, n);
        e(a, b) = part == 0 ? cplx(1.0, 0.0) : cplx(0.0, 1.0);
        for (std::size_t r = 0; r < s.size(); ++r) {
          const ComplexMatrix c = e * s[r] - s[r] * e;
          const Eigen::Index off = block * static_cast<Eigen::Index>(r);
          for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index j = 0; j < n; ++j) {
              m(off + i * n + j, col) = c(i, j).real();
              m(off + n * n + i * n + j, col) = c(i, j).imag();
            }
          }
        }
      }
    }
  }
  return RealSubspace::nullspace(m, tols.rank_eps, tols.rank_eps * static_cast<double>(m.rows()) * scale);
}

struct Stage {
  std::vector<LedgerEntry>& ledger;
  double tol;

  bool record(const char* name, double residual) {
    const bool ok = residual <= tol;
    ledger.push_back({name, ok, residual});
    return ok;
  }
};

ReductionOutcome failure(Diagnostic d, std::string message, std::vector<LedgerEntry> ledger) {
  ReductionOutcome out;
  out.diagnostic = d;
  out.message = std::move(message);
  out.ledger = std::move(ledger);
  return out;
}

}  // namespace

const char* to_string(Diagnostic d) noexcept {
  switch (d) {
    case Diagnostic::None: return "none";
    case Diagnostic::NotIrreducible: return "not-irreducible";
    case Diagnostic::NotConstructible: return "not-constructible";
    case Diagnostic::H0NotSkew: return "h0-not-skew";
    case Diagnostic::H0NotCommuting: return "h0-not-commuting";
    case Diagnostic::H0Degenerate: return "h0-degenerate";
    case Diagnostic::J0NotStructure: return "j0-not-structure";
    case Diagnostic::J0NotInAlgebra: return "j0-not-in-algebra";
    case Diagnostic::TypeMismatch: return "type-mismatch";
    case Diagnostic::SignAmbiguity: return "sign-ambiguity";
    case Diagnostic::RestrictionNotFull: return "restriction-not-full";
  }
  return "unknown";
}

QMatrix mass_operator(std::span<const QMatrix> p, const Tolerances& tols) {
  if (p.size() != 4) fail(ErrorKind::Shape, "mass_operator expects four generators");
  const std::size_t n = p[0].rows();
  for (const QMatrix& g : p) {
    if (!g.square() || g.rows() != n) fail(ErrorKind::Shape, "mass_operator: generators differ in shape");
    const double scale = std::max(1.0, frobenius(g));
    if (skew_residual(g) > tols.tol * scale) fail(ErrorKind::Precondition, "mass_operator: generator is not anti-self-adjoint");
  }
  for (std::size_t a = 0; a < 4; ++a) {
    for (std::size_t b = a + 1; b < 4; ++b) {
      const double scale = std::max(1.0, frobenius(p[a]) * frobenius(p[b]));
      if (frobenius(commutator(p[a], p[b])) > tols.tol * scale)
        fail(ErrorKind::Precondition, "mass_operator: generators do not commute");
    }
  }
  return -(p[0] * p[0]) + p[1] * p[1] + p[2] * p[2] + p[3] * p[3];
}

ReductionOutcome reduce(const ToySystem& sys, const Tolerances& tols) {
  const std::size_t n = sys.h0.rows();
  if (n == 0 || !sys.h0.square()) fail(ErrorKind::Shape, "reduce: H0 must be a nonempty square matrix");
  for (const QMatrix& u : sys.unitaries) {
    if (u.rows() != n || u.cols() != n) fail(ErrorKind::Shape, "reduce: unitaries and H0 differ in shape");
    if (!is_unitary(u, tols.tol * std::max<double>(1.0, static_cast<double>(n))))
      fail(ErrorKind::Precondition, "reduce: listed operator is not unitary");
  }

  std::vector<LedgerEntry> ledger;
  const double check = 100.0 * tols.tol * std::max<double>(1.0, static_cast<double>(n));
  Stage stage{ledger, check};
  const std::vector<QMatrix> family = symmetrize(sys.unitaries);

  // preconditions
  if (!is_irreducible(family, tols))
    return failure(Diagnostic::NotIrreducible, "the unitary family is reducible", ledger);
  const OperatorAlgebra comm = commutant(family, tols);
  double skew_size = 0.0;
  for (const QMatrix& b : comm.basis()) skew_size = std::max(skew_size, frobenius(b - adjoint(b)));
  if (skew_size <= 1e-8)
    return failure(Diagnostic::NotConstructible,
                   "the commutant is R I: no nonzero anti-self-adjoint operator commutes with the family",
                   ledger);
  const double h0_scale = std::max(1.0, frobenius(sys.h0));
  if (skew_residual(sys.h0) > tols.tol * h0_scale)
    return failure(Diagnostic::H0NotSkew, "H0 is not anti-self-adjoint", ledger);
  if (worst_commutator(sys.h0, family) > check * h0_scale)
    return failure(Diagnostic::H0NotCommuting, "H0 does not commute with the unitaries", ledger);

  // 1: polar decomposition of H0
  const PolarPair pp = polar(sys.h0, tols);
  const SpectralDecomposition modulus = eig_selfadjoint(0.5 * (pp.p + adjoint(pp.p)), tols);
  const double smallest = modulus.pairs.front().value;
  const PolarContract contract = polar_contract(sys.h0, pp, tols);
  stage.record("polar", contract.worst() / h0_scale);
  if (smallest < std::max(tols.tol, tols.pinv_cut * opnorm(sys.h0)) || !ledger.back().passed)
    return failure(Diagnostic::H0Degenerate, "H0 is singular", ledger);

  // 2: J0 is a complex structure
  std::optional<ComplexStructure> j0;
  try {
    j0 = ComplexStructure::certify(pp.u, check);
  } catch (const Error&) {
  }
  const QMatrix& j0m = j0 ? j0->matrix() : pp.u;
  const QMatrix id = QMatrix::identity(n);
  if (!stage.record("j0_structure", std::max(frobenius(j0m * j0m + id), skew_residual(j0m))))
    return failure(Diagnostic::J0NotStructure, "the polar isometry of H0 is not a complex structure", ledger);

  // 3: J0 in R_U and in R_U'
  const OperatorAlgebra alg = generated_algebra(family, tols);
  if (!stage.record("j0_membership", std::max(comm.residual(j0m), alg.residual(j0m))))
    return failure(Diagnostic::J0NotInAlgebra, "J0 is not in the algebra and its commutant", ledger);

  // 4: classification with payload +-J0
  AlgebraType type;
  try {
    type = classify(alg, true, tols);
  } catch (const Error& e) {
    ledger.push_back({"classification", false, 0.0});
    return failure(Diagnostic::TypeMismatch, e.what(), ledger);
  }
  if (type.tag != AlgebraTypeTag::QuaternionicComplex || !type.j) {
    ledger.push_back({"classification", false, 0.0});
    return failure(Diagnostic::TypeMismatch, std::string("algebra type is ") + to_string(type.tag), ledger);
  }
  const QMatrix& payload = type.j->matrix();
  if (!stage.record("classification", std::min(frobenius(payload - j0m), frobenius(payload + j0m))))
    return failure(Diagnostic::SignAmbiguity, "the classification payload is not +-J0", ledger);

  // 5: restriction to H_J0
  ReductionReport rep;
  std::optional<HJBasis> basis;
  try {
    basis = hj_basis(*j0, tols);
    for (const QMatrix& u : sys.unitaries) rep.restricted_unitaries.push_back(restrict_j(u, *basis, tols));
    rep.restricted_h0 = restrict_j(sys.h0, *basis, tols);
  } catch (const Error& e) {
    ledger.push_back({"restriction", false, 0.0});
    return failure(Diagnostic::RestrictionNotFull, e.what(), ledger);
  }
  double roundtrip = frobenius(extend_j(rep.restricted_h0, *basis) - sys.h0);
  for (std::size_t r = 0; r < sys.unitaries.size(); ++r)
    roundtrip = std::max(roundtrip, frobenius(extend_j(rep.restricted_unitaries[r], *basis) - sys.unitaries[r]));
  if (!stage.record("restriction", roundtrip / h0_scale))
    return failure(Diagnostic::RestrictionNotFull, "restriction does not invert extension", ledger);

  // 6: irreducible over C, full complex matrix algebra
  std::vector<ComplexMatrix> complex_family;
  complex_family.push_back(ComplexMatrix::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)));
  for (const ComplexMatrix& u : rep.restricted_unitaries) {
    complex_family.push_back(u);
    complex_family.push_back(u.adjoint());
  }
  const RealSubspace ccomm = complex_commutant(complex_family, tols);
  const TransportedAlgebra transported = transport_algebra(alg, *basis, tols);
  const bool full = ccomm.dim() == 2 && transported.full();
  ledger.push_back({"complex_irreducible", full,
                    std::max({transported.product_residual, transported.adjoint_residual, transported.norm_residual})});
  if (!full || ledger.back().residual > check)
    return failure(Diagnostic::RestrictionNotFull,
                   "restricted family has complex commutant of real dimension " + std::to_string(ccomm.dim()) +
                       " and restricted algebra of real dimension " + std::to_string(transported.real_dim),
                   ledger);

  // 7: J0 -> i I
  const ComplexMatrix j0c = restrict_j(j0m, *basis, tols);
  const ComplexMatrix ii = cplx(0.0, 1.0) * ComplexMatrix::Identity(j0c.rows(), j0c.cols());
  if (!stage.record("j0_maps_to_i", (j0c - ii).norm()))
    return failure(Diagnostic::RestrictionNotFull, "restriction does not map J0 to i I", ledger);

  // 8: spectra of self-adjoint elements
  double spectral = 0.0;
  for (const QMatrix& b : alg.basis()) {
    const QMatrix a = 0.5 * (b + adjoint(b));
    if (frobenius(a) < 1e-8) continue;
    const ComplexMatrix ac = restrict_j(a, *basis, tols);
    spectral = std::max(spectral, (ac - ac.adjoint()).norm());
    const std::vector<double> quat = eig_selfadjoint(a, tols).values_with_multiplicity();
    const Eigen::VectorXd cvals = Eigen::SelfAdjointEigenSolver<ComplexMatrix>(0.5 * (ac + ac.adjoint())).eigenvalues();
    if (quat.size() != static_cast<std::size_t>(cvals.size())) {
      spectral = std::numeric_limits<double>::infinity();
      break;
    }
    for (std::size_t i = 0; i < quat.size(); ++i)
      spectral = std::max(spectral, std::abs(quat[i] - cvals(static_cast<Eigen::Index>(i))));
  }
  if (!stage.record("spectra", spectral))
    return failure(Diagnostic::RestrictionNotFull, "restriction does not preserve spectra", ledger);

  // 9: J0 H0 = H0 J0 is an observable
  const QMatrix jh = j0m * sys.h0;
  if (!stage.record("observable", std::max(frobenius(jh - sys.h0 * j0m), frobenius(jh - adjoint(jh))) / h0_scale))
    return failure(Diagnostic::H0NotCommuting, "J0 H0 is not a self-adjoint operator commuting with H0", ledger);

  rep.j0 = j0m;
  rep.modulus = pp.p;
  rep.type = std::move(type);
  rep.ledger = ledger;
  ReductionOutcome out;
  out.message = "ok";
  out.ledger = std::move(ledger);
  out.report = std::move(rep);
  return out;
}

ComplexTypeFixture complex_type_fixture(std::size_t n, std::uint64_t seed, std::size_t count) {
  Random rng(seed);
  const QMatrix j = block_complex_structure(n);
  ToySystem sys;
  for (std::size_t c = 0; c < count; ++c) {
    const QMatrix y = rng.antiselfadjoint(n);
    sys.unitaries.push_back(expm_skew(0.5 * (y - j * y * j), 1.0));
  }
  sys.h0 = rng.uniform(0.5, 2.0) * j;
  return {std::move(sys), j};
}

ToySystem real_type_fixture(std::size_t n, std::uint64_t seed) {
  Random rng(seed);
  ToySystem sys;
  for (int c = 0; c < 3; ++c) sys.unitaries.push_back(rng.unitary(n));
  QMatrix h = rng.antiselfadjoint(n);
  sys.h0 = (1.0 / frobenius(h)) * h;
  return sys;
}

Quaternion rotation_to_quaternion(const Eigen::Matrix3d& r) {
  const Eigen::Quaterniond q(r);
  return Quaternion(q.w(), q.x(), q.y(), q.z());
}

SO3Exhibit so3_fixture(const Tolerances& tols) {
  SO3Exhibit ex;
  const double pi = std::numbers::pi;
  ex.rotations.push_back(Eigen::AngleAxisd(pi / 3.0, Eigen::Vector3d::UnitX()).toRotationMatrix());
  ex.rotations.push_back(Eigen::AngleAxisd(pi / 4.0, Eigen::Vector3d::UnitY()).toRotationMatrix());
  ex.rotations.push_back(Eigen::AngleAxisd(2.0 * pi / 5.0, Eigen::Vector3d::UnitZ()).toRotationMatrix());
  ex.rotations.push_back(ex.rotations[0] * ex.rotations[2]);

  for (const Eigen::Matrix3d& r : ex.rotations) {
    ex.lifts.push_back(QMatrix{{rotation_to_quaternion(r)}});
    RealMatrix m = RealMatrix::Identity(4, 4);
    m.block(1, 1, 3, 3) = r;
    ex.real_action.push_back(m);
  }

  ex.irreducible_over_h = is_irreducible(ex.lifts, tols);
  const OperatorAlgebra comm = commutant(symmetrize(ex.lifts), tols);
  std::vector<QMatrix> sa;
  for (const QMatrix& b : comm.basis()) sa.push_back(b + adjoint(b));
  ex.selfadjoint_commutant_dim = static_cast<std::size_t>(matrix_span(sa, tols.rank_eps).dim());

  // commutant of the real action in all real 4 x 4 matrices
  RealMatrix constraints(16 * static_cast<Eigen::Index>(ex.real_action.size()), 16);
  for (Eigen::Index a = 0; a < 4; ++a) {
    for (Eigen::Index b = 0; b < 4; ++b) {
      RealMatrix e = RealMatrix::Zero(4, 4);
      e(a, b) = 1.0;
      for (std::size_t r = 0; r < ex.real_action.size(); ++r) {
        const RealMatrix c = e * ex.real_action[r] - ex.real_action[r] * e;
        constraints.block(16 * static_cast<Eigen::Index>(r), 4 * a + b, 16, 1) = c.reshaped();
      }
    }
  }
  const RealSubspace rc = RealSubspace::nullspace(constraints, tols.rank_eps, 1e-9);
  ex.real_commutant_dim = static_cast<std::size_t>(rc.dim());

  for (Eigen::Index c = 0; c < rc.dim() && !ex.reducible_over_r; ++c) {
    const RealMatrix x = rc.basis().col(c).reshaped(4, 4);
    const Eigen::SelfAdjointEigenSolver<RealMatrix> es(0.5 * (x + x.transpose()));
    const Eigen::VectorXd ev = es.eigenvalues();
    // group eigenvalues; the projector onto the lowest cluster is invariant
    Eigen::Index k = 1;
    while (k < 4 && ev(k) - ev(0) < 1e-8 * std::max(1.0, ev.cwiseAbs().maxCoeff())) ++k;
    if (k == 4) continue;
    const RealMatrix v = es.eigenvectors().leftCols(k);
    const RealMatrix p = v * v.transpose();
    double leak = 0.0;
    for (const RealMatrix& m : ex.real_action)
      leak = std::max(leak, ((RealMatrix::Identity(4, 4) - p) * m * p).norm());
    if (leak < 1e-9) {
      ex.invariant_projector = p;
      ex.reducible_over_r = true;
    }
  }
  return ex;
}

}  // namespace qvn
