#include <doctest.h>

#include "oracle.hpp"
#include "qvn/random.hpp"
#include "qvn/restrict.hpp"
#include "qvn/spectral.hpp"
#include "qvn/valg.hpp"

using namespace qvn;

namespace {

template <class F>
ErrorKind thrown_kind(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an Error");
  return ErrorKind::Internal;
}

const cplx i1(0.0, 1.0);

QMatrix commuting_part(const QMatrix& x, const QMatrix& j) { return 0.5 * (x - j * x * j); }

}  // namespace

TEST_CASE("H_J basis") {
  const ComplexStructure j = ComplexStructure::certify(block_complex_structure(2));
  const HJBasis b = hj_basis(j);
  REQUIRE(b.dim() == 2);
  CHECK(is_unitary(b.unitary(), 1e-12));
  for (const QVector& u : b.vectors())
    CHECK(norm(j.matrix() * u - u * Quaternion::j()) < 1e-12);
  // Mutual products lie in C_j = span{1, j}.
  const Quaternion g = inner(b.vectors()[0], b.vectors()[1]);
  CHECK(std::abs(g.b) + std::abs(g.d) < 1e-12);
  Random rng(40);
  for (std::size_t n = 1; n <= 5; ++n) {
    const HJBasis rb = hj_basis(ComplexStructure::certify(rng.complex_structure(n)));
    CHECK(rb.dim() == n);
    CHECK(is_unitary(rb.unitary(), 1e-10));
  }
}

TEST_CASE("restriction along a complex structure") {
  const QMatrix jm = block_complex_structure(2);
  const HJBasis b = hj_basis(ComplexStructure::certify(jm));
  CHECK((restrict_j(QMatrix::identity(2), b) - ComplexMatrix::Identity(2, 2)).norm() < 1e-13);
  CHECK((restrict_j(jm, b) - i1 * ComplexMatrix::Identity(2, 2)).norm() < 1e-12);
  CHECK(thrown_kind([&] { (void)restrict_j(QMatrix::unit(2, 0, 0), b); }) == ErrorKind::Precondition);
  Random rng(41);
  for (int t = 0; t < 15; ++t) {
    const std::size_t n = 1 + t % 4;
    const QMatrix j = rng.complex_structure(n);
    const HJBasis hb = hj_basis(ComplexStructure::certify(j));
    const QMatrix a = commuting_part(rng.matrix(n), j);
    const QMatrix c = commuting_part(rng.matrix(n), j);
    const ComplexMatrix ar = restrict_j(a, hb);
    CHECK(frobenius(extend_j(ar, hb) - a) < 1e-10 * (1 + frobenius(a)));
    CHECK((restrict_j(a * c, hb) - ar * restrict_j(c, hb)).norm() < 1e-10 * (1 + frobenius(a) * frobenius(c)));
    CHECK((restrict_j(adjoint(a), hb) - ar.adjoint()).norm() < 1e-10 * (1 + frobenius(a)));
    Eigen::JacobiSVD<ComplexMatrix> svd(ar);
    CHECK(std::abs(svd.singularValues()(0) - opnorm(a)) < 1e-10 * (1 + opnorm(a)));
    // Positivity survives restriction.
    const QMatrix p = a * adjoint(a);
    CHECK(oracle::hermitian_eigenvalues(restrict_j(p, hb)).front() > -1e-10);
    // A random complex matrix extends to an operator commuting with J.
    ComplexMatrix x = ComplexMatrix::Random(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    const QMatrix xe = extend_j(x, hb);
    CHECK(frobenius(commutator(xe, j)) < 1e-10);
    CHECK((restrict_j(xe, hb) - x).norm() < 1e-10);
  }
}

TEST_CASE("H_JK basis and left multiplication") {
  const ComplexStructure lj = ComplexStructure::certify(QMatrix{{Quaternion::j()}});
  const ComplexStructure lk = ComplexStructure::certify(QMatrix{{Quaternion::k()}});
  const HJKBasis b = hjk_basis(lj, lk);
  REQUIRE(b.dim() == 1);
  const Quaternion z = b.vectors()[0][0];
  CHECK(approx_equal(z * z, 1.0, 1e-12));
  CHECK(std::abs(std::abs(z.a) - 1.0) < 1e-12);
  CHECK(frobenius(left_mult(1.0, lj, lk) - QMatrix::identity(1)) < 1e-14);
  const QMatrix li = left_mult(Quaternion::i(), lj, lk);
  CHECK(frobenius(left_mult(Quaternion::j(), lj, lk) * left_mult(Quaternion::k(), lj, lk) - li) < 1e-12);
  const ComplexStructure same = ComplexStructure::certify(QMatrix{{Quaternion::j()}});
  CHECK(thrown_kind([&] { (void)left_mult(Quaternion::i(), lj, same); }) == ErrorKind::Precondition);
  CHECK(thrown_kind([&] { (void)hjk_basis(lj, same); }) == ErrorKind::Precondition);

  const AlgebraType q = classify(real_matrix_algebra(3));
  const HJKBasis hk = hjk_basis(*q.j, *q.k);
  CHECK(hk.dim() == 3);
  CHECK(is_unitary(hk.unitary(), 1e-12));
  Random rng(42);
  for (int t = 0; t < 10; ++t) {
    const Quaternion p = rng.quaternion();
    const Quaternion r = rng.quaternion();
    const QMatrix lp = left_mult(p, *q.j, *q.k);
    CHECK(frobenius(lp * left_mult(r, *q.j, *q.k) - left_mult(p * r, *q.j, *q.k)) < 1e-11);
    for (const QVector& u : hk.vectors()) CHECK(norm(lp * u - u * p) < 1e-12);
  }
}

TEST_CASE("restriction along a pair of structures") {
  const AlgebraType q = classify(real_matrix_algebra(3));
  const HJKBasis hk = hjk_basis(*q.j, *q.k);
  CHECK((restrict_jk(QMatrix::identity(3), hk) - RealMatrix::Identity(3, 3)).norm() < 1e-13);
  Random rng(43);
  for (int t = 0; t < 10; ++t) {
    const RealMatrix x = RealMatrix::Random(3, 3);
    const QMatrix xe = extend_jk(x, hk);
    CHECK((restrict_jk(xe, hk) - x).norm() < 1e-12);
    CHECK(frobenius(commutator(xe, q.j->matrix())) < 1e-11);
    CHECK(frobenius(commutator(xe, q.k->matrix())) < 1e-11);
  }
  CHECK(thrown_kind([&] { (void)restrict_jk(rng.matrix(3), hk); }) == ErrorKind::Precondition);
}

TEST_CASE("vector decompositions") {
  const QMatrix jm = block_complex_structure(2);
  const ComplexStructure j = ComplexStructure::certify(jm);
  const HJBasis b = hj_basis(j);
  const auto [x1, x2] = decompose_j(b.vectors()[0], j);
  CHECK(norm(x1 - b.vectors()[0]) < 1e-12);
  CHECK(norm(x2) < 1e-12);
  Random rng(44);
  for (int t = 0; t < 10; ++t) {
    const QVector x = rng.vector(2);
    const auto [y1, y2] = decompose_j(x, j);
    CHECK(norm(y1 + y2 * Quaternion::k() - x) < 1e-12);
    CHECK(norm(jm * y1 - y1 * Quaternion::j()) < 1e-12);
    CHECK(norm(jm * y2 - y2 * Quaternion::j()) < 1e-12);
    CHECK(norm(y1) * norm(y1) + norm(y2) * norm(y2) == doctest::Approx(norm(x) * norm(x)).epsilon(1e-12));
  }
  const AlgebraType q = classify(real_matrix_algebra(2));
  const HJKBasis hk = hjk_basis(*q.j, *q.k);
  const QVector z = hk.vectors()[1];
  const auto parts = decompose_jk(z * Quaternion::k(), *q.j, *q.k);
  CHECK(norm(parts[0]) < 1e-12);
  CHECK(norm(parts[1]) < 1e-12);
  CHECK(norm(parts[2]) < 1e-12);
  CHECK(norm(parts[3] - z) < 1e-12);
  for (int t = 0; t < 10; ++t) {
    const QVector x = rng.vector(2);
    const auto p = decompose_jk(x, *q.j, *q.k);
    CHECK(norm(p[0] + p[1] * Quaternion::i() + p[2] * Quaternion::j() + p[3] * Quaternion::k() - x) < 1e-12);
    for (const QVector& part : p) {
      CHECK(norm(q.j->matrix() * part - part * Quaternion::j()) < 1e-12);
      CHECK(norm(q.k->matrix() * part - part * Quaternion::k()) < 1e-12);
    }
  }
}

TEST_CASE("algebra transport") {
  for (std::size_t n = 1; n <= 3; ++n) {
    const std::vector<QMatrix> js{block_complex_structure(n)};
    const OperatorAlgebra rc = commutant(js);
    const AlgebraType c = classify(rc);
    const TransportedAlgebra tc = transport_algebra(rc, hj_basis(*c.j));
    CHECK(tc.full());
    CHECK(tc.target_dim == 2 * n * n);
    CHECK(tc.product_residual < 1e-10);
    CHECK(tc.adjoint_residual < 1e-10);
    CHECK(tc.norm_residual < 1e-10);

    const OperatorAlgebra rq = real_matrix_algebra(n);
    const AlgebraType q = classify(rq);
    const TransportedAlgebra tq = transport_algebra(rq, hjk_basis(*q.j, *q.k));
    CHECK(tq.full());
    CHECK(tq.target_dim == n * n);
  }
  // The full algebra does not commute with a structure.
  const HJBasis b = hj_basis(ComplexStructure::certify(block_complex_structure(2)));
  CHECK(thrown_kind([&] { (void)transport_algebra(full_algebra(2), b); }) == ErrorKind::Precondition);
}

TEST_CASE("projector lattice operations") {
  const QMatrix e11 = QMatrix::unit(2, 0, 0);
  const QMatrix e22 = QMatrix::unit(2, 1, 1);
  CHECK(projector_leq(e11, QMatrix::identity(2)));
  CHECK_FALSE(projector_leq(e11, e22));
  CHECK(frobenius(projector_meet(e11, e22)) < 1e-12);
  CHECK(frobenius(projector_join(e11, e22) - QMatrix::identity(2)) < 1e-12);
  CHECK(frobenius(projector_complement(e11) - e22) == 0.0);
  Random rng(45);
  for (int t = 0; t < 20; ++t) {
    const QMatrix u = rng.unitary(4);
    auto cols = [&](std::initializer_list<std::size_t> idx) {
      QMatrix c(4, idx.size());
      std::size_t k = 0;
      for (std::size_t j : idx) {
        for (std::size_t r = 0; r < 4; ++r) c(r, k) = u(r, j);
        ++k;
      }
      return c * adjoint(c);
    };
    const QMatrix p = cols({0, 1});
    const QMatrix q = cols({1, 2});
    CHECK(frobenius(projector_meet(p, q) - cols({1})) < 1e-9);
    CHECK(frobenius(projector_join(p, q) - cols({0, 1, 2})) < 1e-9);
    CHECK(projector_leq(cols({1}), p));
  }
}

TEST_CASE("lattice transport preserves the operations") {
  const QMatrix jm = block_complex_structure(3);
  const HJBasis b = hj_basis(ComplexStructure::certify(jm));
  Random rng(46);
  for (int t = 0; t < 10; ++t) {
    ComplexMatrix m = ComplexMatrix::Random(3, 2);
    Eigen::HouseholderQR<ComplexMatrix> qr(m);
    const ComplexMatrix q2 = qr.householderQ() * ComplexMatrix::Identity(3, 2);
    const ComplexMatrix p = q2 * q2.adjoint();
    const ComplexMatrix p1 = q2.col(0) * q2.col(0).adjoint();
    const QMatrix pe = extend_j(p, b);
    const QMatrix p1e = extend_j(p1, b);
    CHECK(is_projector(pe, 1e-10));
    const std::vector<QMatrix> ps{pe, p1e};
    const auto back = transport_lattice(std::span<const QMatrix>(ps), b);
    CHECK((back[0] - p).norm() < 1e-10);
    CHECK(projector_leq(p1e, pe) == projector_leq(back[1], back[0]));
    CHECK((projector_meet(back[0], back[1]) - oracle::meet(p, p1)).norm() < 1e-9);
    CHECK((projector_join(back[0], back[1]) - oracle::join(p, p1)).norm() < 1e-9);
  }
}
