#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracle.hpp"
#include "qvn/random.hpp"
#include "qvn/states.hpp"

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

DensityOperator random_density(std::size_t n, Random& rng) {
  QMatrix t = rng.positive(n, 0.05);
  t *= 1.0 / re_trace(t);
  return DensityOperator::make(0.5 * (t + adjoint(t)));
}

QMatrix leading(const QMatrix& u, std::size_t r) {
  QMatrix c(u.rows(), r);
  for (std::size_t i = 0; i < u.rows(); ++i)
    for (std::size_t k = 0; k < r; ++k) c(i, k) = u(i, k);
  return c * adjoint(c);
}

}  // namespace

TEST_CASE("Re-trace examples") {
  CHECK(re_trace(QMatrix::identity(3)) == 3.0);
  CHECK(re_trace(QMatrix::diag({Quaternion::i(), Quaternion(2, 0, 1, 0)})) == 2.0);
  // Realified trace is four times the Re-trace.
  Random rng(50);
  const QMatrix a = rng.matrix(4);
  CHECK(re_trace(a) == doctest::Approx(oracle::realify(a).trace() / 4.0).epsilon(1e-13));
}

TEST_CASE("Re-trace is unitarily invariant but the full trace is not") {
  const double s = 1.0 / std::numbers::sqrt2;
  const QMatrix u{{Quaternion(s, s, 0, 0)}};
  const QMatrix a{{Quaternion::j()}};
  const QMatrix conj_a = adjoint(u) * a * u;
  CHECK(approx_equal(conj_a(0, 0), -Quaternion::k(), 1e-12));
  CHECK(abs(full_trace(conj_a) - full_trace(a)) > 0.1);
  CHECK(std::abs(re_trace(conj_a) - re_trace(a)) < 1e-12);
  Random rng(51);
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = 1 + t % 5;
    const QMatrix m = rng.matrix(n);
    const QMatrix v = rng.unitary(n);
    CHECK(std::abs(re_trace(adjoint(v) * m * v) - re_trace(m)) < 1e-11);
  }
}

TEST_CASE("density operator construction") {
  const DensityOperator mm = DensityOperator::maximally_mixed(4);
  CHECK(re_trace(mm.matrix()) == doctest::Approx(1.0));
  CHECK(frobenius(mm.matrix() - 0.25 * QMatrix::identity(4)) < 1e-15);
  const DensityOperator pure = DensityOperator::pure(QVector{Quaternion(0, 2, 0, 0), 0.0});
  CHECK(frobenius(pure.matrix() - QMatrix::unit(2, 0, 0)) < 1e-14);
  CHECK(thrown_kind([] { (void)DensityOperator::make(QMatrix::identity(2)); }) == ErrorKind::Precondition);
  CHECK(thrown_kind([] { (void)DensityOperator::make(QMatrix::diag({1.5, -0.5})); }) == ErrorKind::Precondition);
  CHECK(thrown_kind([] { (void)DensityOperator::make(QMatrix::unit(2, 0, 1)); }) == ErrorKind::Precondition);
  CHECK(thrown_kind([] { (void)DensityOperator::pure(QVector(2)); }) == ErrorKind::Domain);
}

TEST_CASE("state values") {
  const DensityOperator mm = DensityOperator::maximally_mixed(4);
  Random rng(52);
  const QMatrix p = rng.projector(4, 3);
  CHECK(state_eval(mm, p) == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(state_eval(mm, QMatrix::identity(4)) == doctest::Approx(1.0));
  CHECK(state_eval(mm, QMatrix::zero(4)) == 0.0);
  const QVector psi = rng.vector(3);
  const DensityOperator pure = DensityOperator::pure(psi);
  const QMatrix q = rng.projector(3, 1);
  // Oracle: |P psi|^2 / |psi|^2.
  const double expected = norm(q * psi) * norm(q * psi) / (norm(psi) * norm(psi));
  CHECK(state_eval(pure, q) == doctest::Approx(expected).epsilon(1e-12));
  CHECK(thrown_kind([&] { (void)state_eval(mm, 2.0 * QMatrix::identity(4)); }) == ErrorKind::Precondition);
}

TEST_CASE("the two trace forms agree") {
  Random rng(53);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = 1 + t % 5;
    const DensityOperator d = random_density(n, rng);
    const QMatrix p = rng.projector(n, rng.index(n + 1));
    const GleasonForms g = gleason_forms(d, p);
    CHECK(abs(g.sandwiched - Quaternion(g.re_product)) < 1e-11);
  }
}

TEST_CASE("conditioning and chains") {
  Random rng(54);
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 2 + t % 4;
    const DensityOperator d = random_density(n, rng);
    const QMatrix u = rng.unitary(n);
    const std::size_t r1 = 1 + rng.index(n);
    const std::size_t r2 = 1 + rng.index(r1);
    const QMatrix p = leading(u, r1);
    const QMatrix q = leading(u, r2);
    const DensityOperator dp = luders(d, p);
    CHECK(re_trace(dp.matrix()) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(state_eval(d, q) - state_eval(d, p) * state_eval(dp, q)) < 1e-11);
    CHECK(state_eval(dp, p) == doctest::Approx(1.0).epsilon(1e-12));
  }
  const DensityOperator pure = DensityOperator::pure(QVector{1.0, 0.0});
  CHECK(thrown_kind([&] { (void)luders(pure, QMatrix::unit(2, 1, 1)); }) == ErrorKind::Domain);
}

TEST_CASE("additivity over orthogonal families") {
  Random rng(55);
  const DensityOperator d = random_density(4, rng);
  const QMatrix u = rng.unitary(4);
  std::vector<QMatrix> family;
  for (std::size_t c = 0; c < 4; ++c) {
    QMatrix col(4, 1);
    for (std::size_t r = 0; r < 4; ++r) col(r, 0) = u(r, c);
    family.push_back(col * adjoint(col));
  }
  const AdditivityReport rep = sigma_additivity_check(d, family);
  CHECK(rep.passed);
  CHECK(rep.value_of_sum == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(sigma_additivity_check(d, std::vector<QMatrix>{}).passed);
  const std::vector<QMatrix> overlapping{family[0], family[0]};
  CHECK(thrown_kind([&] { (void)sigma_additivity_check(d, overlapping); }) == ErrorKind::Precondition);
}
