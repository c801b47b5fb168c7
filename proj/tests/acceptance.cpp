// Acceptance run: one line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qvn/embed.hpp"
#include "qvn/error.hpp"
#include "qvn/qspace.hpp"
#include "qvn/random.hpp"
#include "qvn/reduce.hpp"
#include "qvn/restrict.hpp"
#include "qvn/spectral.hpp"
#include "qvn/states.hpp"
#include "qvn/subspace.hpp"
#include "qvn/valg.hpp"
#include "qvn/verify.hpp"

#include "oracle.hpp"

using namespace qvn;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool passed = true;
  std::string detail;
  std::vector<std::string> failures;

  void require(bool ok, const std::string& what) {
    if (ok) return;
    passed = false;
    if (failures.size() < 5) failures.push_back(what);
  }
};

// Random generator sets cycling through generic, real, complex-type and
// reducible families.
std::vector<QMatrix> generator_set(std::size_t n, int trial, Random& rng) {
  const std::size_t count = 1 + rng.index(2);
  std::vector<QMatrix> s;
  switch (trial % 4) {
    case 0:
      for (std::size_t c = 0; c < count; ++c) s.push_back(rng.matrix(n));
      break;
    case 1:
      for (std::size_t c = 0; c < count; ++c) s.push_back(rng.real_matrix(n));
      break;
    case 2: {
      const QMatrix j = rng.complex_structure(n);
      for (std::size_t c = 0; c < count; ++c) {
        const QMatrix x = rng.matrix(n);
        s.push_back(0.5 * (x - j * x * j));
      }
      break;
    }
    default: {
      if (n == 1) {
        s.push_back(QMatrix::scalar(1, rng.gaussian()));
        break;
      }
      const std::size_t n1 = 1 + rng.index(n - 1);
      const QMatrix v = rng.unitary(n);
      for (std::size_t c = 0; c < count; ++c) {
        QMatrix b(n, n);
        const QMatrix top = rng.matrix(n1);
        const QMatrix bottom = rng.matrix(n - n1);
        for (std::size_t r = 0; r < n1; ++r)
          for (std::size_t k = 0; k < n1; ++k) b(r, k) = top(r, k);
        for (std::size_t r = 0; r < n - n1; ++r)
          for (std::size_t k = 0; k < n - n1; ++k) b(n1 + r, n1 + k) = bottom(r, k);
        s.push_back(v * b * adjoint(v));
      }
      break;
    }
  }
  return s;
}

Outcome criterion_double_commutant() {
  Outcome out;
  const auto t0 = Clock::now();
  double worst = 0.0;
  for (std::size_t n = 1; n <= 4; ++n) {
    for (int trial = 0; trial < 100; ++trial) {
      Random rng(1000 * n + trial);
      const auto s = generator_set(n, trial, rng);
      const auto closure = symmetrize(s);
      const OperatorAlgebra dc = double_commutant(s);
      const OperatorAlgebra gen = generated_algebra(closure);
      const double d = subspace_distance(dc.subspace(), gen.subspace());
      worst = std::max(worst, d);
      out.require(d < 1e-9, "n=" + std::to_string(n) + " trial " + std::to_string(trial) +
                                " dims " + std::to_string(dc.dim()) + "/" + std::to_string(gen.dim()));
    }
  }
  const double secs = seconds_since(t0);
  out.require(secs < 60.0, "runtime " + std::to_string(secs) + " s");
  out.detail = "400 sets, worst residual " + oracle::sci(worst) + ", " + oracle::fixed(secs) + " s";
  return out;
}

Outcome criterion_sandwich() {
  Outcome out;
  double worst_contain = 0.0;
  double worst_parts = 0.0;
  for (std::size_t n = 1; n <= 4; ++n) {
    for (int trial = 0; trial < 100; ++trial) {
      Random rng(1000 * n + trial);
      const auto s = generator_set(n, trial, rng);
      const OperatorAlgebra sp = commutant(s);
      const auto real_basis = real_commutant(s);
      const RealSubspace real_space = oracle::span_of(real_basis);
      for (const QMatrix& x : sp.basis()) {
        const double r = real_space.residual(oracle::flatten(realify_op(x)));
        worst_contain = std::max(worst_contain, r);
        out.require(r < 1e-10, "S' not inside real commutant, n=" + std::to_string(n));
      }
      RealMatrix a = RealMatrix::Zero(4 * n, 4 * n);
      for (const RealMatrix& b : real_basis) a += rng.gaussian() * b;
      const LemmaParts parts = lemma_decompose(a, s, sp);
      double w = parts.reconstruction;
      for (double m : parts.membership) w = std::max(w, m);
      worst_parts = std::max(worst_parts, w);
      out.require(w < 1e-10, "sandwich residual " + oracle::sci(w) + " n=" + std::to_string(n) +
                                 " trial " + std::to_string(trial));
    }
  }
  out.detail = "400 sets, containment " + oracle::sci(worst_contain) + ", parts " + oracle::sci(worst_parts);
  return out;
}

Outcome criterion_classification() {
  Outcome out;
  double worst_in = 0.0;
  double least_out = 1e300;
  for (std::size_t n = 1; n <= 4; ++n) {
    const std::string tag = " n=" + std::to_string(n);
    const AlgebraType real = classify(full_algebra(n));
    out.require(real.tag == AlgebraTypeTag::QuaternionicReal && real.commutant_dim == 1, "full algebra" + tag);

    const QMatrix jb = block_complex_structure(n);
    const std::vector<QMatrix> js{jb};
    const OperatorAlgebra rc = commutant(js);
    const AlgebraType cx = classify(rc);
    out.require(cx.tag == AlgebraTypeTag::QuaternionicComplex && cx.commutant_dim == 2 && cx.j.has_value(),
                "complex fixture" + tag);
    if (cx.j) {
      const double r = rc.residual(cx.j->matrix());
      worst_in = std::max(worst_in, r);
      out.require(r < 1e-10, "J not in R" + tag);
    }

    const OperatorAlgebra rq = real_matrix_algebra(n);
    const AlgebraType qt = classify(rq);
    out.require(qt.tag == AlgebraTypeTag::QuaternionicQuaternionic && qt.commutant_dim == 4 && qt.j && qt.k,
                "real-matrix fixture" + tag);
    if (qt.j && qt.k) {
      const QMatrix& j = qt.j->matrix();
      const QMatrix& k = qt.k->matrix();
      for (const QMatrix& m : {j, k, QMatrix(j * k)}) {
        // Distance relative to |m| = sqrt(n) in the Re-trace norm.
        const double r = rq.residual(m) / frobenius(m);
        least_out = std::min(least_out, r);
        out.require(r > 0.5, "structure inside R" + tag);
      }
    }
  }
  out.detail = "n=1..4, complex payload residual " + oracle::sci(worst_in) +
               ", quaternionic payloads relative distance >= " + oracle::fixed(least_out);
  return out;
}

template <class M>
M as_projector_of(const M& columns) {
  Eigen::HouseholderQR<M> qr(columns);
  const M q = qr.householderQ() * M::Identity(columns.rows(), columns.cols());
  return q * q.adjoint();
}

// Pairs: nested, overlapping in one direction, generic.
template <class M>
std::pair<M, M> projector_pair(Eigen::Index n, int mode, Random& rng) {
  auto gauss = [&](Eigen::Index rows, Eigen::Index cols) {
    M m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r)
      for (Eigen::Index c = 0; c < cols; ++c) {
        if constexpr (std::is_same_v<typename M::Scalar, cplx>)
          m(r, c) = cplx(rng.gaussian(), rng.gaussian());
        else
          m(r, c) = rng.gaussian();
      }
    return m;
  };
  const M base = gauss(n, n);
  const Eigen::Index rp = 1 + static_cast<Eigen::Index>(rng.index(static_cast<std::size_t>(n - 1)));
  if (mode == 0) {
    const Eigen::Index rq = 1 + static_cast<Eigen::Index>(rng.index(static_cast<std::size_t>(rp)));
    return {as_projector_of<M>(base.leftCols(rp)), as_projector_of<M>(base.leftCols(rq))};
  }
  if (mode == 1) {
    M qcols(n, 2);
    qcols.col(0) = base.col(0);
    qcols.col(1) = base.col(n - 1);
    return {as_projector_of<M>(base.leftCols(std::min<Eigen::Index>(rp, n - 1))), as_projector_of<M>(qcols)};
  }
  const M other = gauss(n, n);
  const Eigen::Index rq = 1 + static_cast<Eigen::Index>(rng.index(static_cast<std::size_t>(n)));
  return {as_projector_of<M>(base.leftCols(rp)), as_projector_of<M>(other.leftCols(rq))};
}

template <class M, class Basis, class Extend>
double lattice_check(const Basis& basis, Extend extend, Eigen::Index n, std::uint64_t seed, Outcome& out,
                     const char* label) {
  double worst = 0.0;
  Random rng(seed);
  for (int pair = 0; pair < 50; ++pair) {
    const auto [p, q] = projector_pair<M>(n, pair % 3, rng);
    const QMatrix pq = extend(p, basis);
    const QMatrix qq = extend(q, basis);
    auto transport = [&](const QMatrix& m) {
      const std::vector<QMatrix> one{m};
      return transport_lattice(std::span<const QMatrix>(one), basis).front();
    };
    const M meet_h = transport(projector_meet(pq, qq));
    const M join_h = transport(projector_join(pq, qq));
    const M comp_h = transport(projector_complement(pq));
    const M id = M::Identity(n, n);
    const double r = std::max({(transport(pq) - p).norm(), (meet_h - oracle::meet(p, q)).norm(),
                               (join_h - oracle::join(p, q)).norm(), (comp_h - (id - p)).norm()});
    worst = std::max(worst, r);
    out.require(r < 1e-9, std::string(label) + " lattice pair " + std::to_string(pair));
    out.require(projector_leq(pq, qq) == oracle::leq(p, q) && projector_leq(qq, pq) == oracle::leq(q, p),
                std::string(label) + " order pair " + std::to_string(pair));
  }
  return worst;
}

Outcome criterion_transport() {
  Outcome out;
  double worst_jj = 0.0;
  for (std::size_t n = 1; n <= 4; ++n) {
    const std::string tag = " n=" + std::to_string(n);
    const std::vector<QMatrix> js{block_complex_structure(n)};
    const OperatorAlgebra rc = commutant(js);
    const AlgebraType cx = classify(rc);
    const HJBasis hb = hj_basis(*cx.j);
    const TransportedAlgebra tc = transport_algebra(rc, hb);
    out.require(tc.full() && tc.real_dim == 2 * n * n, "complex restriction not full" + tag);
    const ComplexMatrix jj = restrict_j(cx.j->matrix(), hb);
    const ComplexMatrix ii = cplx(0.0, 1.0) * ComplexMatrix::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    const double r = (jj - ii).norm();
    worst_jj = std::max(worst_jj, r);
    out.require(r < 1e-12, "restrict_J(J) != jI" + tag);

    const OperatorAlgebra rq = real_matrix_algebra(n);
    const AlgebraType qt = classify(rq);
    const HJKBasis hk = hjk_basis(*qt.j, *qt.k);
    const TransportedAlgebra tq = transport_algebra(rq, hk);
    out.require(tq.full() && tq.real_dim == n * n, "real restriction not full" + tag);
  }

  const std::size_t n = 4;
  const std::vector<QMatrix> js{block_complex_structure(n)};
  const AlgebraType cx = classify(commutant(js));
  const HJBasis hb = hj_basis(*cx.j);
  const double wj = lattice_check<ComplexMatrix>(
      hb, [](const ComplexMatrix& p, const HJBasis& b) { return extend_j(p, b); }, 4, 77, out, "H_J");
  const AlgebraType qt = classify(real_matrix_algebra(n));
  const HJKBasis hk = hjk_basis(*qt.j, *qt.k);
  const double wk = lattice_check<RealMatrix>(
      hk, [](const RealMatrix& p, const HJKBasis& b) { return extend_jk(p, b); }, 4, 78, out, "H_JK");
  out.detail = "n=1..4 full restrictions, |J_J - jI| " + oracle::sci(worst_jj) + ", lattice 2x50 pairs worst " +
               oracle::sci(std::max(wj, wk));
  return out;
}

Outcome criterion_spectral() {
  Outcome out;
  double worst_rec = 0.0;
  double worst_pvm = 0.0;
  double worst_sigma = 0.0;
  for (std::size_t n = 1; n <= 5; ++n) {
    for (int trial = 0; trial < 100; ++trial) {
      Random rng(50000 + 1000 * n + trial);
      // Every fourth matrix gets repeated eigenvalues.
      QMatrix a;
      if (trial % 4 == 3) {
        const QMatrix v = rng.unitary(n);
        std::vector<Quaternion> d(n);
        for (std::size_t i = 0; i < n; ++i) d[i] = static_cast<double>(rng.index(3)) - 1.0;
        a = v * QMatrix::diag(d) * adjoint(v);
        a = 0.5 * (a + adjoint(a));
      } else {
        a = rng.selfadjoint(n);
      }
      const SpectralDecomposition sd = eig_selfadjoint(a);
      const double rec = opnorm(sd.reconstruct() - a);
      worst_rec = std::max(worst_rec, rec / (1.0 + opnorm(a)));
      out.require(rec < 1e-10 * (1.0 + opnorm(a)), "reconstruction n=" + std::to_string(n));
      QMatrix sum = QMatrix::zero(n);
      double pvm = 0.0;
      for (std::size_t r = 0; r < sd.pairs.size(); ++r) {
        sum += sd.pairs[r].projector;
        pvm = std::max(pvm, frobenius(sd.pairs[r].projector * sd.pairs[r].projector - sd.pairs[r].projector));
        for (std::size_t s = r + 1; s < sd.pairs.size(); ++s)
          pvm = std::max(pvm, frobenius(sd.pairs[r].projector * sd.pairs[s].projector));
      }
      pvm = std::max(pvm, frobenius(sum - QMatrix::identity(n)));
      worst_pvm = std::max(worst_pvm, pvm);
      out.require(pvm < 1e-11, "pvm n=" + std::to_string(n) + " residual " + oracle::sci(pvm));

      // Complex multiplicities are twice the quaternionic ranks.
      const auto complex_values = oracle::hermitian_eigenvalues(complexify_op(a));
      std::vector<double> doubled;
      for (const auto& pr : sd.pairs)
        for (std::size_t m = 0; m < 2 * pr.rank; ++m) doubled.push_back(pr.value);
      out.require(doubled.size() == 2 * n, "rank bookkeeping n=" + std::to_string(n));
      if (doubled.size() == 2 * n)
        worst_sigma = std::max(worst_sigma, oracle::max_diff(doubled, complex_values) / (1.0 + opnorm(a)));

      // sigma_S(A) = sigma(A_J) for A commuting with a structure J.
      const QMatrix j = rng.complex_structure(n);
      const QMatrix ac = 0.5 * (a - j * a * j);
      const HJBasis hb = hj_basis(ComplexStructure::certify(j));
      const auto restricted = oracle::hermitian_eigenvalues(restrict_j(ac, hb));
      const auto values = eig_selfadjoint(ac).values_with_multiplicity();
      const double d = oracle::max_diff(values, restricted) / (1.0 + opnorm(ac));
      worst_sigma = std::max(worst_sigma, d);
      out.require(values.size() == n && d < 1e-10, "sigma(A) != sigma(A_J) n=" + std::to_string(n));
    }
  }
  out.detail = "500 matrices, reconstruction " + oracle::sci(worst_rec) + ", pvm " + oracle::sci(worst_pvm) +
               ", spectra " + oracle::sci(worst_sigma);
  return out;
}

Outcome criterion_polar() {
  Outcome out;
  double worst_contract = 0.0;
  double worst_structure = 0.0;
  double worst_witness = 0.0;
  for (std::size_t n = 1; n <= 5; ++n) {
    for (int trial = 0; trial < 40; ++trial) {
      Random rng(90000 + 1000 * n + trial);
      const std::size_t r = trial % 2 == 0 ? n : rng.index(n);
      const QMatrix a = r == n ? rng.matrix(n) : rng.low_rank(n, r);
      const PolarPair pp = polar(a);
      const double w = polar_contract(a, pp).worst();
      worst_contract = std::max(worst_contract, w);
      out.require(w < 1e-10, "contract n=" + std::to_string(n) + " rank " + std::to_string(r) + " " + oracle::sci(w));
    }
    for (int trial = 0; trial < 10; ++trial) {
      Random rng(95000 + 1000 * n + trial);
      const QMatrix a = rng.antiselfadjoint(n);
      const PolarPair pp = polar(a);
      out.require(polar_contract(a, pp).worst() < 1e-10, "skew contract n=" + std::to_string(n));
      const double s = std::max(frobenius(pp.u * pp.u + QMatrix::identity(n)), frobenius(pp.u + adjoint(pp.u)));
      worst_structure = std::max(worst_structure, s);
      out.require(s < 1e-10, "skew isometry not a complex structure n=" + std::to_string(n));
      const std::vector<QMatrix> one{a};
      const OperatorAlgebra comm = commutant(one);
      for (int wi = 0; wi < 20; ++wi) {
        QMatrix b = QMatrix::zero(n);
        for (const QMatrix& e : comm.basis()) b += rng.gaussian() * e;
        b *= 1.0 / frobenius(b);
        const double c = frobenius(pp.u * b - b * pp.u);
        worst_witness = std::max(worst_witness, c);
        out.require(c < 1e-10, "witness fails to commute with U n=" + std::to_string(n));
      }
    }
  }
  out.detail = "200 general, 50 skew x 20 witnesses; contract " + oracle::sci(worst_contract) + ", structure " +
               oracle::sci(worst_structure) + ", witnesses " + oracle::sci(worst_witness);
  return out;
}

Outcome criterion_stone() {
  Outcome out;
  double worst_gen = 0.0;
  double worst_group = 0.0;
  const std::vector<double> grid{-2.0, -0.7, 0.0, 0.4, 1.5};
  for (std::size_t n = 1; n <= 5; ++n) {
    for (int trial = 0; trial < 10; ++trial) {
      Random rng(120000 + 1000 * n + trial);
      QMatrix a = rng.antiselfadjoint(n);
      a *= 1.0 / opnorm(a);
      const GeneratorEstimate est = generator_of([&](double t) { return expm_skew(a, t); }, 1e-3);
      const double g = opnorm(est.generator - a);
      worst_gen = std::max(worst_gen, g);
      out.require(g < 1e-8, "generator recovery n=" + std::to_string(n) + " " + oracle::sci(g));
      for (double t : grid)
        for (double s : grid) {
          const double e = opnorm(expm_skew(a, t + s) - expm_skew(a, t) * expm_skew(a, s));
          worst_group = std::max(worst_group, e);
          out.require(e < 1e-10, "group law n=" + std::to_string(n));
        }
    }
  }
  out.detail = "50 generators, recovery " + oracle::sci(worst_gen) + ", group law " + oracle::sci(worst_group);
  return out;
}

QMatrix leading_columns_projector(const QMatrix& u, std::size_t r) {
  QMatrix cols(u.rows(), r);
  for (std::size_t i = 0; i < u.rows(); ++i)
    for (std::size_t c = 0; c < r; ++c) cols(i, c) = u(i, c);
  return cols * adjoint(cols);
}

DensityOperator random_density(std::size_t n, Random& rng) {
  QMatrix t = rng.positive(n, 0.01);
  t *= 1.0 / re_trace(t);
  return DensityOperator::make(0.5 * (t + adjoint(t)));
}

Outcome criterion_trace_states() {
  Outcome out;
  double worst_trace = 0.0;
  double worst_gleason = 0.0;
  double worst_luders = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    Random rng(150000 + trial);
    const std::size_t n = 1 + trial % 5;
    const QMatrix a = rng.matrix(n);
    const QMatrix u = rng.unitary(n);
    const double d = std::abs(re_trace(adjoint(u) * a * u) - re_trace(a));
    worst_trace = std::max(worst_trace, d);
    out.require(d < 1e-11, "re_trace not invariant n=" + std::to_string(n));
  }
  const double s = 1.0 / std::numbers::sqrt2;
  const QMatrix wu{{Quaternion(s, s, 0, 0)}};
  const QMatrix wa{{Quaternion::j()}};
  const double full_gap = abs(full_trace(adjoint(wu) * wa * wu) - full_trace(wa));
  const double re_gap = std::abs(re_trace(adjoint(wu) * wa * wu) - re_trace(wa));
  out.require(full_gap > 0.1 && re_gap < 1e-11, "stored witness");

  for (int trial = 0; trial < 100; ++trial) {
    Random rng(160000 + trial);
    const std::size_t n = 1 + trial % 5;
    const DensityOperator t = random_density(n, rng);
    const QMatrix p = leading_columns_projector(rng.unitary(n), rng.index(n + 1));
    const GleasonForms g = gleason_forms(t, p);
    const double d = abs(g.sandwiched - Quaternion(g.re_product));
    worst_gleason = std::max(worst_gleason, d);
    out.require(d < 1e-11, "Gleason forms differ n=" + std::to_string(n));
  }

  for (int trial = 0; trial < 100; ++trial) {
    Random rng(170000 + trial);
    const std::size_t n = 2 + trial % 4;
    const DensityOperator t = random_density(n, rng);
    const QMatrix u = rng.unitary(n);
    // P1 >= P2 >= P3, all with positive weight under the full-rank T.
    const std::size_t r1 = 1 + rng.index(n);
    const std::size_t r2 = 1 + rng.index(r1);
    const std::size_t r3 = 1 + rng.index(r2);
    const QMatrix p1 = leading_columns_projector(u, r1);
    const QMatrix p2 = leading_columns_projector(u, r2);
    const QMatrix p3 = leading_columns_projector(u, r3);
    const DensityOperator t1 = luders(t, p1);
    const DensityOperator t12 = luders(t1, p2);
    const double one = std::abs(state_eval(t, p2) - state_eval(t, p1) * state_eval(t1, p2));
    const double two =
        std::abs(state_eval(t, p3) - state_eval(t, p1) * state_eval(t1, p2) * state_eval(t12, p3));
    worst_luders = std::max({worst_luders, one, two});
    out.require(one < 1e-11 && two < 1e-11, "Lueders chain n=" + std::to_string(n));
  }
  out.detail = "trace " + oracle::sci(worst_trace) + ", witness full-trace gap " + oracle::fixed(full_gap) +
               ", Gleason " + oracle::sci(worst_gleason) + ", Lueders " + oracle::sci(worst_luders);
  return out;
}

Outcome criterion_so3() {
  Outcome out;
  const SO3Exhibit ex = so3_fixture();
  out.require(ex.irreducible_over_h, "not irreducible over H");
  out.require(ex.selfadjoint_commutant_dim == 1, "self-adjoint commutant is not R I");
  out.require(ex.reducible_over_r, "realification not reducible");
  const RealMatrix& p = ex.invariant_projector;
  double leak = 0.0;
  double proj = 0.0;
  Eigen::Index rk = 0;
  if (p.rows() == 4) {
    proj = std::max((p * p - p).norm(), (p - p.transpose()).norm());
    for (const RealMatrix& g : ex.real_action) leak = std::max(leak, (g * p - p * g).norm());
    rk = std::lround(p.trace());
  }
  out.require(p.rows() == 4 && proj < 1e-9 && leak < 1e-9 && rk > 0 && rk < 4, "invariant projector");
  // Conjugation by each lift reproduces diag(1, R).
  for (std::size_t i = 0; i < ex.lifts.size(); ++i) {
    Eigen::Matrix4d direct = Eigen::Matrix4d::Zero();
    for (int c = 0; c < 4; ++c) {
      Eigen::Vector4d e = Eigen::Vector4d::Unit(c);
      const Quaternion x(e(0), e(1), e(2), e(3));
      const Quaternion q = ex.lifts[i](0, 0);
      const Quaternion y = q * x * conj(q);
      direct.col(c) << y.a, y.b, y.c, y.d;
    }
    out.require((direct - ex.real_action[i]).norm() < 1e-12, "lift does not implement rotation");
  }
  out.detail = "self-adjoint commutant dim " + std::to_string(ex.selfadjoint_commutant_dim) +
               ", invariant projector rank " + std::to_string(rk) + ", leak " + oracle::sci(leak);
  return out;
}

Outcome criterion_reduction() {
  Outcome out;
  double worst_j = 0.0;
  double worst_spec = 0.0;
  for (std::size_t n : {2u, 3u}) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const std::string tag = " n=" + std::to_string(n) + " seed " + std::to_string(seed);
      const ComplexTypeFixture fx = complex_type_fixture(n, seed);
      const ReductionOutcome res = reduce(fx.system);
      out.require(res.ok(), std::string("diagnostic ") + to_string(res.diagnostic) + tag);
      if (!res.ok()) continue;
      const ReductionReport& rep = *res.report;
      std::size_t passed = 0;
      for (const auto& e : rep.ledger) passed += e.passed ? 1 : 0;
      out.require(rep.ledger.size() == 9 && passed == 9, "ledger" + tag);
      const double dj = std::min(opnorm(rep.j0 - fx.j), opnorm(rep.j0 + fx.j));
      worst_j = std::max(worst_j, dj);
      out.require(dj < 1e-9, "J0 mismatch" + tag);

      const Eigen::Index dim = oracle::complex_commutant_dim(rep.restricted_unitaries, 1e-9);
      out.require(dim == 1, "restricted commutant dim " + std::to_string(dim) + tag);

      const HJBasis hb = hj_basis(ComplexStructure::certify(rep.j0));
      Random rng(seed);
      for (int t = 0; t < 5; ++t) {
        QMatrix a = QMatrix::zero(n);
        for (const QMatrix& u : fx.system.unitaries) {
          a += rng.gaussian() * (u + adjoint(u));
          a += rng.gaussian() * (rep.j0 * (u - adjoint(u)));
        }
        const QMatrix uv = fx.system.unitaries[0] * fx.system.unitaries[1];
        a += rng.gaussian() * (uv + adjoint(uv));
        const auto values = eig_selfadjoint(a).values_with_multiplicity();
        const auto restricted = oracle::hermitian_eigenvalues(restrict_j(a, hb));
        const double d = oracle::max_diff(values, restricted);
        worst_spec = std::max(worst_spec, d);
        out.require(values.size() == n && d < 1e-9, "spectrum not preserved" + tag);
      }
    }
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      const ToySystem sys = real_type_fixture(n, seed);
      const ReductionOutcome res = reduce(sys);
      out.require(res.diagnostic == Diagnostic::NotConstructible, "real-type diagnostic did not fire");
      out.require(commutant(sys.unitaries).dim() == 1, "real-type commutant is not R I");
    }
  }
  const auto t0 = Clock::now();
  const VerifySummary vs = run_verify(VerifyOptions{});
  const double secs = seconds_since(t0);
  out.require(vs.ok(), "verify reported failures");
  out.require(secs < 300.0, "verify took " + oracle::fixed(secs) + " s");
  out.detail = "10 complex fixtures, |J0 -/+ J| " + oracle::sci(worst_j) + ", spectra " + oracle::sci(worst_spec) +
               ", verify " + std::to_string(vs.properties.size()) + " properties in " + oracle::fixed(secs) + " s";
  return out;
}

}  // namespace

int main() {
  struct Item {
    const char* label;
    std::function<Outcome()> run;
  };
  const std::vector<Item> items{
      {"1  double commutant", criterion_double_commutant},
      {"2  commutant sandwich", criterion_sandwich},
      {"3  three-type classification", criterion_classification},
      {"4  structure transport", criterion_transport},
      {"5  spectral resolution", criterion_spectral},
      {"6  polar decomposition", criterion_polar},
      {"7  one-parameter groups", criterion_stone},
      {"8  Re-trace and states", criterion_trace_states},
      {"9  SO(3) exhibit", criterion_so3},
      {"10 reduction pipeline", criterion_reduction},
  };
  int failed = 0;
  for (const Item& item : items) {
    Outcome o;
    try {
      o = item.run();
    } catch (const std::exception& e) {
      o.passed = false;
      o.detail = std::string("exception: ") + e.what();
    }
    std::printf("%s  %-30s %s\n", o.passed ? "PASS" : "FAIL", item.label, o.detail.c_str());
    for (const std::string& f : o.failures) std::printf("      %s\n", f.c_str());
    std::fflush(stdout);
    failed += o.passed ? 0 : 1;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(items.size()) - failed, items.size());
  return failed == 0 ? 0 : 1;
}
