#include "qvn/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "qvn/embed.hpp"
#include "qvn/error.hpp"
#include "qvn/io.hpp"
#include "qvn/random.hpp"
#include "qvn/reduce.hpp"
#include "qvn/restrict.hpp"
#include "qvn/spectral.hpp"
#include "qvn/states.hpp"
#include "qvn/subspace.hpp"
#include "qvn/valg.hpp"

namespace qvn {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using Trial = std::function<double(Random&, std::size_t, const Tolerances&)>;

struct Property {
  const char* module;
  const char* name;
  double threshold;
  Trial run;
};

std::uint64_t trial_seed(std::uint64_t seed, std::size_t property, std::size_t n, int trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(property), static_cast<std::uint32_t>(n),
                    static_cast<std::uint32_t>(trial)};
  std::uint32_t out[2];
  seq.generate(out, out + 2);
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

// Irreducible families of the three types, plus a reducible block family.
enum class Family { Real, Complex, Quaternionic, Reducible };

std::vector<QMatrix> random_family(Random& rng, std::size_t n, Family kind) {
  std::vector<QMatrix> s;
  switch (kind) {
    case Family::Real:
      for (int i = 0; i < 2; ++i) s.push_back(rng.matrix(n));
      break;
    case Family::Complex: {
      const QMatrix j = rng.complex_structure(n);
      for (int i = 0; i < 2; ++i) {
        const QMatrix y = rng.matrix(n);
        s.push_back(0.5 * (y - j * y * j));
      }
      break;
    }
    case Family::Quaternionic: {
      const QMatrix v = rng.unitary(n);
      for (int i = 0; i < 2; ++i) s.push_back(v * rng.real_matrix(n) * adjoint(v));
      break;
    }
    case Family::Reducible: {
      if (n < 2) return random_family(rng, n, Family::Real);
      const std::size_t k = 1 + rng.index(n - 1);
      for (int i = 0; i < 2; ++i) {
        QMatrix a = rng.matrix(n);
        for (std::size_t r = 0; r < n; ++r) {
          for (std::size_t c = 0; c < n; ++c)
            if ((r < k) != (c < k)) a(r, c) = Quaternion();
        }
        s.push_back(a);
      }
      break;
    }
  }
  return s;
}

Family pick(Random& rng, bool irreducible_only) {
  return static_cast<Family>(rng.index(irreducible_only ? 3 : 4));
}

double rel(double residual, double scale) { return residual / std::max(1.0, scale); }

std::vector<double> sorted_eigs(const RealMatrix& m) {
  const Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<RealMatrix>(0.5 * (m + m.transpose())).eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

std::vector<double> sorted_eigs(const ComplexMatrix& m) {
  const Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<ComplexMatrix>(0.5 * (m + m.adjoint())).eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

double repeated_match(const std::vector<double>& base, const std::vector<double>& other, std::size_t times) {
  if (other.size() != base.size() * times) return kInf;
  double worst = 0.0;
  for (std::size_t i = 0; i < other.size(); ++i) worst = std::max(worst, std::abs(other[i] - base[i / times]));
  return worst;
}

QMatrix commuting_selfadjoint(Random& rng, const QMatrix& j) {
  const QMatrix y = rng.selfadjoint(j.rows());
  return 0.5 * (y - j * y * j);
}

QMatrix embed_complex(const ComplexMatrix& x) {
  QMatrix out(static_cast<std::size_t>(x.rows()), static_cast<std::size_t>(x.cols()));
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index k = 0; k < x.cols(); ++k)
      out(static_cast<std::size_t>(i), static_cast<std::size_t>(k)) = from_complex(x(i, k));
  }
  return out;
}

std::vector<Property> properties() {
  std::vector<Property> p;
  // quat
  p.push_back({"quat", "norm_multiplicative", 1e-12, [](Random& rng, std::size_t, const Tolerances&) {
                 double worst = 0.0;
                 for (int i = 0; i < 100; ++i) {
                   const Quaternion q = rng.quaternion(), r = rng.quaternion();
                   worst = std::max(worst, rel(std::abs(abs(q * r) - abs(q) * abs(r)), abs(q) * abs(r)));
                 }
                 return worst;
               }});
  p.push_back({"quat", "conj_antihomomorphism", 1e-15, [](Random& rng, std::size_t, const Tolerances&) {
                 double worst = 0.0;
                 for (int i = 0; i < 100; ++i) {
                   const Quaternion q = rng.quaternion(), r = rng.quaternion();
                   worst = std::max(worst, rel(abs(conj(q * r) - conj(r) * conj(q)), abs(q) * abs(r)));
                 }
                 return worst;
               }});
  p.push_back({"quat", "real_center", 0.0, [](Random& rng, std::size_t, const Tolerances&) {
                 double worst = 0.0;
                 for (int i = 0; i < 100; ++i) {
                   const Quaternion q = rng.quaternion(), r(rng.gaussian());
                   worst = std::max(worst, abs(q * r - r * q));
                 }
                 return worst;
               }});

  // qspace
  p.push_back({"qspace", "cstar_identity", 1e-9, [](Random& rng, std::size_t n, const Tolerances&) {
                 const QMatrix a = rng.matrix(n);
                 const double na = opnorm(a);
                 return std::abs(opnorm(adjoint(a) * a) - na * na) / (na * na);
               }});
  p.push_back({"qspace", "cauchy_schwarz", 1e-12, [](Random& rng, std::size_t n, const Tolerances&) {
                 const QVector x = rng.vector(n), y = rng.vector(n);
                 return std::max(0.0, abs(inner(x, y)) - norm(x) * norm(y));
               }});
  p.push_back({"qspace", "right_linearity", 1e-12, [](Random& rng, std::size_t n, const Tolerances&) {
                 const QMatrix a = rng.matrix(n);
                 const QVector x = rng.vector(n);
                 const Quaternion q = rng.quaternion();
                 const QVector d = a * (x * q) - (a * x) * q;
                 return rel(norm(d), frobenius(a) * norm(x) * abs(q));
               }});

  // embed
  p.push_back({"embed", "functoriality", 1e-11, [](Random& rng, std::size_t n, const Tolerances&) {
                 const QMatrix a = rng.matrix(n), b = rng.matrix(n);
                 const double scale = frobenius(a) * frobenius(b);
                 const double r = (realify_op(a * b) - realify_op(a) * realify_op(b)).norm();
                 const double c = (complexify_op(a * b) - complexify_op(a) * complexify_op(b)).norm();
                 return rel(std::max(r, c), scale);
               }});
  p.push_back({"embed", "inner_recovery", 1e-12, [](Random& rng, std::size_t n, const Tolerances&) {
                 const QVector x = rng.vector(n), y = rng.vector(n);
                 return rel(abs(recover_inner(realify_vec(x), realify_vec(y)) - inner(x, y)), norm(x) * norm(y));
               }});
  p.push_back({"embed", "spectral_multiplicity", 1e-9, [](Random& rng, std::size_t n, const Tolerances& tols) {
                 const QMatrix a = rng.selfadjoint(n);
                 const std::vector<double> q = eig_selfadjoint(a, tols).values_with_multiplicity();
                 const double r = repeated_match(q, sorted_eigs(realify_op(a)), 4);
                 const double c = repeated_match(q, sorted_eigs(complexify_op(a)), 2);
                 return rel(std::max(r, c), opnorm(a));
               }});
  p.push_back({"embed", "positivity_transport", 1e-9, [](Random& rng, std::size_t n, const Tolerances& tols) {
                 const QMatrix a = rng.index(2) == 0 ? rng.positive(n, 0.1) : rng.selfadjoint(n);
                 const double q = eig_selfadjoint(a, tols).pairs.front().value;
                 const double r = sorted_eigs(realify_op(a)).front();
                 const double c = sorted_eigs(complexify_op(a)).front();
                 if ((q >= 0) != (r >= 0) || (q >= 0) != (c >= 0)) return kInf;
                 return rel(std::max(std::abs(q - r), std::abs(q - c)), opnorm(a));
               }});

  // valg
  p.push_back({"valg", "commutant_triple", 1e-9, [](Random& rng, std::size_t n, const Tolerances& tols) {
                 const std::vector<QMatrix> s = symmetrize(random_family(rng, n, pick(rng, false)));
                 const OperatorAlgebra c1 = commutant(s, tols);
                 const OperatorAlgebra c3 = commutant(commutant(c1.basis(), tols).basis(), tols);
                 return subspace_distance(c1.subspace(), c3.subspace());
               }});
  p.push_back({"valg", "sandwich", 1e-10, [](Random& rng, std::size_t n, const Tolerances& tols) {
                 const std::vector<QMatrix> s = symmetrize(random_family(rng, n, pick(rng, false)));
                 const OperatorAlgebra sp = commutant(s, tols);
                 double worst = 0.0;
                 for (const QMatrix& b : sp.basis()) {
                   const RealMatrix rb = realify_op(b);
                   for (const QMatrix& g : s) {
                     const RealMatrix rg = realify_op(g);
                     worst = std::max(worst, rel((rb * rg - rg * rb).norm(), rg.norm()));
                   }
                 }
                 const std::vector<RealMatrix> rc = real_commutant(s, tols);
                 RealMatrix a = RealMatrix::Zero(4 * static_cast<Eigen::Index>(n), 4 * static_cast<Eigen::Index>(n));
                 for (const RealMatrix& m : rc) a += rng.gaussian() * m;
                 a /= std::max(1e-300, a.norm());
                 const LemmaParts parts = lemma_decompose(a, s, sp, tols);
                 for (double m : parts.membership) worst = std::max(worst, m);
                 return std::max(worst, parts.reconstruction);
               }});
  p.push_back({"valg", "double_commutant", 1e-9, [](Random& rng, std::size_t n, const Tolerances& tols) {
                 const std::vector<QMatrix> s = random_family(rng, n, pick(rng, false));
                 return subspace_distance(double_commutant(s, tols).subspace(),
                                          generated_algebra(symmetrize(s), tols).subspace());
               }});
  p.push_back({"valg", "classify_covariance", 1e-8, [](Random& rng, std::size_t n, const Tolerances& tols) {
                 const std::vector<QMatrix> s = random_family(rng, n, pick(rng, true));
                 const QMatrix v = rng.unitary(n);
                 std::vector<QMatrix> t;
                 for (const QMatrix& g : s) t.push_back(v * g * adjoint(v));
                 const AlgebraType a = classify(generated_algebra(symmetrize(s), tols), true, tols);
                 const OperatorAlgebra rb = generated_algebra(symmetrize(t), tols);
                 const AlgebraType b = classify(rb, true, tols);
                 if (a.tag != b.tag) return kInf;
                 if (a.tag == AlgebraTypeTag::QuaternionicComplex) {
                   const QMatrix moved = v * a.j->matrix() * adjoint(v);
                   return std::min(frobenius(moved - b.j->matrix()), frobenius(moved + b.j->matrix()));
                 }
                 if (a.tag == AlgebraTypeTag::QuaternionicQuaternionic) {
                   const OperatorAlgebra cb = commutant(rb.basis(), tols);
                   return std::max(cb.residual(v * a.j->matrix() * adjoint(v)), cb.residual(v * a.k->matrix() * adjoint(v)));
                 }
                 return 0.0;
               }});
  p.push_back({"valg", "schur_form", 1e-9, [](Random& rng, std::size_t n, const Tolerances& tols) {
                 const std::vector<QMatrix> s = symmetrize(random_family(rng, n, pick(rng, true)));
                 const AlgebraType type = classify(generated_algebra(s, tols), true, tols);
                 const OperatorAlgebra c = commutant(s, tols);
                 QMatrix a = QMatrix::zero(n);
                 for (const QMatrix& b : c.basis()) a += rng.gaussian() * b;
                 std::vector<QMatrix> allowed{QMatrix::identity(n)};
                 if (type.j) allowed.push_back(type.j->matrix());
                 if (type.k) {
                   allowed.push_back(type.k->matrix());
                   allowed.push_back(type.j->matrix() * type.k->matrix());
                 }
                 const OperatorAlgebra span = OperatorAlgebra::from_spanning(n, allowed, tols);
                 return rel(span.residual(a), frobenius(a));
               }});

  // spectral
  p.push_back({"spectral", "reconstruction", 1e-10, [](Random& rng, std::size_t n, const Tolerances& tols) {
                 const QMatrix a = rng.selfadjoint(n);
                 return opnorm(eig_selfadjoint(a, tols).reconstruct() - a) / (1.0 + opnorm(a));
               }});
  p.push_back({"spectral", "pvm", 1e-11, [](Random& rng, std::size_t n, const Tolerances& tols) {
                 const SpectralDecomposition sd = eig_selfadjoint(rng.selfadjoint(n), tols);
                 QMatrix sum = QMatrix::zero(n);
                 double worst = 0.0;
                 for (std::size_t r = 0; r < sd.pairs.size(); ++r) {
                   sum += sd.pairs[r].projector;
                   for (std::size_t s = r + 1; s < sd.pairs.size(); ++s)
                     worst = std::max(worst, opnorm(sd.pairs[r].projector * sd.pairs[s].projector));
                 }
                 return std::max(worst, opnorm(sum - QMatrix::identity(n)));
               }});
  p.push_back({"spectral", "pvm_transport", 1e-9, [](Random& rng, std::size_t n, const Tolerances& tols) {
                 const ComplexStructure j = ComplexStructure::certify(rng.complex_structure(n), 1e-9);
                 const HJBasis basis = hj_basis(j, tols);
                 const QMatrix a = commuting_selfadjoint(rng, j.matrix());
                 const SpectralDecomposition sd = eig_selfadjoint(a, tols);
                 const ComplexMatrix aj = restrict_j(a, basis, tols);
                 ComplexMatrix sum = ComplexMatrix::Zero(aj.rows(), aj.cols());
                 double worst = 0.0;
                 for (const SpectralPair& pr : sd.pairs) {
                   const ComplexMatrix pj = restrict_j(pr.projector, basis, tols);
                   worst = std::max(worst, (pj * pj - pj).norm());
                   worst = std::max(worst, std::abs(pj.trace().real() - static_cast<double>(pr.rank)));
                   sum += pr.value * pj;
                 }
                 worst = std::max(worst, (sum - aj).norm());
                 const std::vector<double> q = sd.values_with_multiplicity();
                 return rel(std::max(worst, repeated_match(q, sorted_eigs(aj), 1)), opnorm(a));
               }});
  p.push_back({"spectral", "function_transport", 1e-9, [](Random& rng, std::size_t n, const Tolerances& tols) {
                 const ComplexStructure j = ComplexStructure::certify(rng.complex_structure(n), 1e-9);
                 const HJBasis basis = hj_basis(j, tols);
                 const QMatrix a = commuting_selfadjoint(rng, j.matrix());
                 const auto f = [](double x) { return std::exp(0.3 * x) + x * x; };
                 const QMatrix fa = func_calc(a, f, tols);
                 const ComplexMatrix aj = restrict_j(a, basis, tols);
                 const Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (aj + aj.adjoint()));
                 const Eigen::VectorXd fv = es.eigenvalues().unaryExpr(f);
                 const ComplexMatrix faj = es.eigenvectors() * fv.asDiagonal() * es.eigenvectors().adjoint();
                 return rel((restrict_j(fa, basis, tols) - faj).norm(), faj.norm());
               }});
  p.push_back({"spectral", "polar_uniqueness", 1e-10, [](Random& rng, std::size_t n, const Tolerances& tols) {
                 const QMatrix a = rng.index(2) == 0 ? rng.matrix(n) : rng.low_rank(n, rng.index(n + 1));
                 const PolarPair pp = polar(a, tols);
                 const double scale = std::max(1.0, opnorm(a));
                 const double canonical = polar_contract(a, pp, tols).worst() / scale;
                 const QMatrix ker = kernel_projector(a, tols);
                 PolarPair perturbed = pp;
                 if (rank(a, tols) < n)
                   perturbed.u = pp.u + 1e-3 * (rng.unitary(n) * ker);
                 else
                   perturbed.p = pp.p + 1e-3 * rng.selfadjoint(n);
                 if (polar_contract(a, perturbed, tols).holds(1e-10 * scale)) return kInf;
                 return canonical;
               }});
  p.push_back({"spectral", "skew_polar", 1e-10, [](Random& rng, std::size_t n, const Tolerances& tols) {
                 QMatrix x = rng.low_rank(n, 1 + rng.index(n));
                 const QMatrix a = x - adjoint(x);
                 const PolarPair pp = polar(a, tols);
                 const QMatrix ran = range_projector(a, tols);
                 const QMatrix& u = pp.u;
                 const double scale = std::max(1.0, opnorm(a));
                 return std::max({opnorm(a - u * pp.p) / scale, opnorm(u * u + ran), opnorm(u + adjoint(u))});
               }});
  p.push_back({"spectral", "stone_generator", 1e-8, [](Random& rng, std::size_t n, const Tolerances& tols) {
                 const QMatrix a = rng.antiselfadjoint(n);
                 const GeneratorEstimate g = generator_of([&](double t) { return expm_skew(a, t, tols); }, 1e-3, tols);
                 return opnorm(g.generator - a) / std::max(1.0, opnorm(a));
               }});
  p.push_back({"spectral", "group_law", 1e-10, [](Random& rng, std::size_t n, const Tolerances& tols) {
                 const QMatrix a = rng.antiselfadjoint(n);
                 double worst = 0.0;
                 for (double t : {-1.3, -0.4, 0.0, 0.7, 1.9}) {
                   for (double s : {-2.1, -0.6, 0.2, 0.9, 1.5})
                     worst = std::max(worst, opnorm(expm_skew(a, t + s, tols) - expm_skew(a, t, tols) * expm_skew(a, s, tols)));
                 }
                 return worst;
               }});

  // restrict
  p.push_back({"restrict", "eigen_crosslink", 1e-9, [](Random& rng, std::size_t n, const Tolerances& tols) {
                 const ComplexStructure j = ComplexStructure::certify(rng.complex_structure(n), 1e-9);
                 const HJBasis basis = hj_basis(j, tols);
                 const QMatrix a = commuting_selfadjoint(rng, j.matrix());
                 const std::vector<double> q = eig_selfadjoint(a, tols).values_with_multiplicity();
                 return rel(repeated_match(q, sorted_eigs(restrict_j(a, basis, tols)), 1), opnorm(a));
               }});
  p.push_back({"restrict", "roundtrip", 1e-12, [](Random& rng, std::size_t n, const Tolerances& tols) {
                 const ComplexStructure j = ComplexStructure::certify(rng.complex_structure(n), 1e-9);
                 const HJBasis basis = hj_basis(j, tols);
                 const QMatrix y = rng.matrix(n);
                 const QMatrix a = 0.5 * (y - j.matrix() * y * j.matrix());
                 ComplexMatrix x(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
                 for (Eigen::Index e = 0; e < x.size(); ++e) x(e) = cplx(rng.gaussian(), rng.gaussian());
                 const double back = frobenius(extend_j(restrict_j(a, basis, tols), basis) - a) / (1.0 + frobenius(a));
                 const double fwd = (restrict_j(extend_j(x, basis), basis, tols) - x).norm() / (1.0 + x.norm());
                 return std::max(back, fwd);
               }});
  p.push_back({"restrict", "positivity_transport", 1e-9, [](Random& rng, std::size_t n, const Tolerances& tols) {
                 const ComplexStructure j = ComplexStructure::certify(rng.complex_structure(n), 1e-9);
                 const HJBasis basis = hj_basis(j, tols);
                 QMatrix a = commuting_selfadjoint(rng, j.matrix());
                 if (rng.index(2) == 0) a = a * a + 0.05 * QMatrix::identity(n);
                 const double q = eig_selfadjoint(a, tols).pairs.front().value;
                 const double c = sorted_eigs(restrict_j(a, basis, tols)).front();
                 if ((q >= 0) != (c >= 0)) return kInf;
                 return rel(std::abs(q - c), opnorm(a));
               }});
  p.push_back({"restrict", "norm_continuity", 1e-12, [](Random& rng, std::size_t n, const Tolerances& tols) {
                 const ComplexStructure j = ComplexStructure::certify(rng.complex_structure(n), 1e-9);
                 const HJBasis basis = hj_basis(j, tols);
                 const QMatrix y1 = rng.matrix(n), y2 = rng.matrix(n);
                 const QMatrix a = 0.5 * (y1 - j.matrix() * y1 * j.matrix());
                 const QMatrix b = 0.5 * (y2 - j.matrix() * y2 * j.matrix());
                 const ComplexMatrix d = restrict_j(a, basis, tols) - restrict_j(b, basis, tols);
                 const double dn = Eigen::JacobiSVD<ComplexMatrix>(drop_negligible(d)).singularValues()(0);
                 return std::max(0.0, dn - opnorm(a - b)) / (1.0 + opnorm(a - b));
               }});

  // states
  p.push_back({"states", "re_trace_invariance", 1e-11, [](Random& rng, std::size_t n, const Tolerances&) {
                 const QMatrix a = rng.matrix(n), u = rng.unitary(n);
                 return std::abs(re_trace(adjoint(u) * a * u) - re_trace(a));
               }});
  p.push_back({"states", "gleason_equivalence", 1e-11, [](Random& rng, std::size_t n, const Tolerances& tols) {
                 QMatrix t = rng.positive(n);
                 t = (1.0 / re_trace(t)) * t;
                 const DensityOperator d = DensityOperator::make(t, tols);
                 const GleasonForms g = gleason_forms(d, rng.projector(n, rng.index(n + 1)));
                 return abs(g.sandwiched - Quaternion(g.re_product));
               }});
  p.push_back({"states", "trace_transport", 1e-11, [](Random& rng, std::size_t n, const Tolerances& tols) {
                 const ComplexStructure j = ComplexStructure::certify(rng.complex_structure(n), 1e-9);
                 const HJBasis basis = hj_basis(j, tols);
                 QMatrix t = commuting_selfadjoint(rng, j.matrix());
                 t = t * t;
                 t = (1.0 / re_trace(t)) * t;
                 const DensityOperator d = DensityOperator::make(t, tols);
                 const SpectralDecomposition sd = eig_selfadjoint(commuting_selfadjoint(rng, j.matrix()), tols);
                 const QMatrix& p = sd.pairs[rng.index(sd.pairs.size())].projector;
                 const ComplexMatrix pj = restrict_j(p, basis, tols);
                 const ComplexMatrix tj = restrict_j(d.matrix(), basis, tols);
                 return std::abs(state_eval(d, p, tols) - (pj * tj * pj).trace().real());
               }});
  p.push_back({"states", "sigma_additivity", 1e-11, [](Random& rng, std::size_t n, const Tolerances& tols) {
                 QMatrix t = rng.positive(n);
                 const DensityOperator d = DensityOperator::make((1.0 / re_trace(t)) * t, tols);
                 std::vector<QMatrix> family;
                 for (const SpectralPair& pr : eig_selfadjoint(rng.selfadjoint(n), tols).pairs) family.push_back(pr.projector);
                 return sigma_additivity_check(d, family, tols).residual;
               }});
  p.push_back({"states", "luders_chain", 1e-11, [](Random& rng, std::size_t n, const Tolerances& tols) {
                 QMatrix t = rng.positive(n, 0.1);
                 const DensityOperator d = DensityOperator::make((1.0 / re_trace(t)) * t, tols);
                 const QMatrix u = rng.unitary(n);
                 const std::size_t r = 1 + rng.index(n);
                 const std::size_t q = 1 + rng.index(r);
                 QMatrix pp = QMatrix::zero(n), qq = QMatrix::zero(n);
                 for (std::size_t c = 0; c < r; ++c) {
                   const QVector col = u.column(c);
                   for (std::size_t a = 0; a < n; ++a) {
                     for (std::size_t b = 0; b < n; ++b) {
                       const Quaternion e = col[a] * conj(col[b]);
                       pp(a, b) += e;
                       if (c < q) qq(a, b) += e;
                     }
                   }
                 }
                 const DensityOperator dp = luders(d, pp, tols);
                 return std::abs(state_eval(dp, qq, tols) * state_eval(d, pp, tols) - state_eval(d, qq, tols));
               }});

  // reduce
  p.push_back({"reduce", "ledger", 0.0, [](Random& rng, std::size_t n, const Tolerances& tols) {
                 const ComplexTypeFixture fx = complex_type_fixture(n, rng.engine()());
                 const ReductionOutcome out = reduce(fx.system, tols);
                 return out.ok() ? 0.0 : kInf;
               }});
  p.push_back({"reduce", "idempotence", 1e-9, [](Random& rng, std::size_t n, const Tolerances& tols) {
                 const ComplexTypeFixture fx = complex_type_fixture(n, rng.engine()());
                 const ReductionOutcome first = reduce(fx.system, tols);
                 if (!first.ok()) return kInf;
                 ToySystem again;
                 for (const ComplexMatrix& u : first.report->restricted_unitaries) again.unitaries.push_back(embed_complex(u));
                 again.h0 = embed_complex(first.report->restricted_h0);
                 const ReductionOutcome second = reduce(again, tols);
                 if (!second.ok()) return kInf;
                 const QMatrix ji = QMatrix::scalar(n, Quaternion::j());
                 const QMatrix& j2 = second.report->j0;
                 double worst = std::min(frobenius(j2 - ji), frobenius(j2 + ji));
                 const std::vector<double> s1 = eig_selfadjoint(first.report->modulus, tols).values_with_multiplicity();
                 const std::vector<double> s2 = eig_selfadjoint(second.report->modulus, tols).values_with_multiplicity();
                 return std::max(worst, repeated_match(s1, s2, 1));
               }});
  p.push_back({"reduce", "frame_covariance", 1e-8, [](Random& rng, std::size_t n, const Tolerances& tols) {
                 const ComplexTypeFixture fx = complex_type_fixture(n, rng.engine()());
                 const QMatrix v = rng.unitary(n);
                 ToySystem moved;
                 for (const QMatrix& u : fx.system.unitaries) moved.unitaries.push_back(v * u * adjoint(v));
                 moved.h0 = v * fx.system.h0 * adjoint(v);
                 const ReductionOutcome a = reduce(fx.system, tols);
                 const ReductionOutcome b = reduce(moved, tols);
                 if (!a.ok() || !b.ok()) return kInf;
                 return frobenius(v * a.report->j0 * adjoint(v) - b.report->j0);
               }});
  p.push_back({"reduce", "sign_uniqueness", 1e-9, [](Random& rng, std::size_t n, const Tolerances& tols) {
                 const ComplexTypeFixture fx = complex_type_fixture(n, rng.engine()());
                 const ReductionOutcome out = reduce(fx.system, tols);
                 if (!out.ok()) return kInf;
                 const OperatorAlgebra c = commutant(symmetrize(fx.system.unitaries), tols);
                 if (c.dim() != 2) return kInf;
                 // X = x I + y S with S the unit skew direction: X^2 = -I forces x = 0, y^2 S^2 = -I
                 QMatrix s = QMatrix::zero(n);
                 for (const QMatrix& b : c.basis()) {
                   const QMatrix sk = 0.5 * (b - adjoint(b));
                   if (frobenius(sk) > frobenius(s)) s = sk;
                 }
                 const double y = 1.0 / std::sqrt(opnorm(s * s));
                 double worst = 0.0;
                 for (double sign : {1.0, -1.0}) {
                   const QMatrix x = (sign * y) * s;
                   worst = std::max(worst, frobenius(x * x + QMatrix::identity(n)));
                   worst = std::max(worst, std::min(frobenius(x - out.report->j0), frobenius(x + out.report->j0)));
                 }
                 return worst;
               }});
  p.push_back({"reduce", "mass_schur", 1e-10, [](Random& rng, std::size_t n, const Tolerances& tols) {
                 const ComplexTypeFixture fx = complex_type_fixture(n, rng.engine()());
                 std::vector<QMatrix> gens;
                 for (int i = 0; i < 4; ++i) gens.push_back(rng.gaussian() * fx.j);
                 const QMatrix m = mass_operator(gens, tols);
                 const double c = re_trace(m) / static_cast<double>(n);
                 return rel(frobenius(m - c * QMatrix::identity(n)), frobenius(m));
               }});

  // cli
  p.push_back({"cli", "json_roundtrip", 0.0, [](Random& rng, std::size_t n, const Tolerances&) {
                 const QMatrix a = rng.matrix(n, 1 + rng.index(n + 1));
                 const QMatrix b = io::matrix_from_json(io::parse(io::to_json(a).dump()));
                 if (a.rows() != b.rows() || a.cols() != b.cols()) return kInf;
                 double worst = 0.0;
                 for (std::size_t i = 0; i < a.entries().size(); ++i) {
                   const Quaternion& x = a.entries()[i];
                   const Quaternion& y = b.entries()[i];
                   if (x.a != y.a || x.b != y.b || x.c != y.c || x.d != y.d) worst = kInf;
                 }
                 return worst;
               }});
  return p;
}

}  // namespace

bool VerifySummary::ok() const {
  return std::all_of(properties.begin(), properties.end(), [](const PropertyResult& r) { return r.failed == 0; });
}

std::vector<std::string> property_names() {
  std::vector<std::string> out;
  for (const Property& p : properties()) out.push_back(std::string(p.module) + "." + p.name);
  return out;
}

VerifySummary run_verify(const VerifyOptions& opts) {
  if (opts.dim_lo < 1 || opts.dim_hi < opts.dim_lo) fail(ErrorKind::Domain, "verify: invalid dimension range");
  if (opts.trials < 0) fail(ErrorKind::Domain, "verify: negative trial count");
  const auto start = std::chrono::steady_clock::now();
  VerifySummary summary;
  if (opts.trials == 0) summary.warnings.push_back("zero trials requested: every property passes vacuously");

  const std::vector<Property> props = properties();
  for (std::size_t idx = 0; idx < props.size(); ++idx) {
    const Property& prop = props[idx];
    PropertyResult res{prop.module, prop.name, 0, 0, 0.0, prop.threshold};
    const auto hi = static_cast<std::size_t>(opts.dim_hi);
    for (std::size_t n = static_cast<std::size_t>(opts.dim_lo); n <= hi; ++n) {
      for (int t = 0; t < opts.trials; ++t) {
        Random rng(trial_seed(opts.seed, idx, n, t));
        double r = kInf;
        try {
          r = prop.run(rng, n, opts.tols);
        } catch (const Error& e) {
          summary.warnings.push_back(res.module + "." + res.name + " n=" + std::to_string(n) + " trial " +
                                     std::to_string(t) + ": " + e.what());
        }
        if (std::isnan(r)) r = kInf;
        res.worst_residual = std::max(res.worst_residual, r);
        (r <= prop.threshold ? res.passed : res.failed) += 1;
      }
    }
    summary.properties.push_back(std::move(res));
  }
  summary.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return summary;
}

}  // namespace qvn
