#include <doctest.h>

#include <sstream>

#include "oracle.hpp"
#include "qvn/quaternion.hpp"
#include "qvn/random.hpp"

using namespace qvn;

namespace {
const Quaternion I = Quaternion::i();
const Quaternion J = Quaternion::j();
const Quaternion K = Quaternion::k();
}  // namespace

TEST_CASE("unit products follow Hamilton's rules") {
  CHECK(approx_equal(I * I, -1.0));
  CHECK(approx_equal(J * J, -1.0));
  CHECK(approx_equal(K * K, -1.0));
  CHECK(approx_equal(I * J * K, -1.0));
  CHECK(approx_equal(I * J, K));
  CHECK(approx_equal(J * I, -K));
  CHECK(approx_equal(J * K, I));
  CHECK(approx_equal(K * I, J));
}

TEST_CASE("product of 1+i and 1+j") {
  const Quaternion q(1, 1, 0, 0);
  const Quaternion p(1, 0, 1, 0);
  CHECK(approx_equal(mul(q, p), oracle::product(q, p)));
  CHECK(approx_equal(q * p, Quaternion(1, 1, 1, 1)));
}

TEST_CASE("products agree with Eigen quaternions") {
  Random rng(1);
  for (int t = 0; t < 200; ++t) {
    const Quaternion q = rng.quaternion();
    const Quaternion p = rng.quaternion();
    CHECK(approx_equal(q * p, oracle::product(q, p), 1e-13, 1e-13));
  }
}

TEST_CASE("conjugate, real part and modulus") {
  CHECK(approx_equal(conj(I), -I));
  CHECK(abs(Quaternion(1, 1, 1, 1)) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(re(J * K) == 0.0);
  CHECK(re(Quaternion(3, 1, 2, 4)) == 3.0);
  CHECK(abs(Quaternion(0, 3, 0, 4)) == doctest::Approx(oracle::to_eigen(Quaternion(0, 3, 0, 4)).norm()));
}

TEST_CASE("inverse") {
  Random rng(2);
  for (int t = 0; t < 50; ++t) {
    const Quaternion q = rng.quaternion();
    CHECK(approx_equal(inv(q) * q, 1.0, 1e-13));
    CHECK(approx_equal(q * inv(q), 1.0, 1e-13));
    CHECK(approx_equal(inv(q), oracle::from_eigen(oracle::to_eigen(q).inverse()), 1e-13, 1e-12));
  }
  CHECK(approx_equal(inv(I), -I));
}

TEST_CASE("inverse of zero is a domain error") {
  try {
    (void)inv(Quaternion());
    FAIL("no throw");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Domain);
  }
}

TEST_CASE("algebraic invariants on random quaternions") {
  Random rng(3);
  for (int t = 0; t < 200; ++t) {
    const Quaternion q = rng.quaternion();
    const Quaternion p = rng.quaternion();
    const Quaternion r = rng.quaternion();
    CHECK(abs(q * p) == doctest::Approx(abs(q) * abs(p)).epsilon(1e-13));
    CHECK(approx_equal(conj(q * p), conj(p) * conj(q), 1e-13, 1e-13));
    CHECK(approx_equal(conj(conj(q)), q));
    CHECK(approx_equal((q * p) * r, q * (p * r), 1e-12, 1e-12));
    CHECK(approx_equal(q * conj(q), norm2(q), 1e-12, 1e-12));
    // Reals are central.
    const double s = rng.gaussian();
    CHECK(approx_equal(Quaternion(s) * q, q * Quaternion(s), 1e-14, 1e-14));
  }
}

TEST_CASE("approx_equal and printing") {
  CHECK(approx_equal(Quaternion(1, 0, 0, 0), Quaternion(1 + 1e-14, 0, 0, 0)));
  CHECK_FALSE(approx_equal(Quaternion(1, 0, 0, 0), Quaternion(1, 1e-6, 0, 0)));
  std::ostringstream os;
  os << Quaternion(1, -2, 0.5, 3);
  CHECK_FALSE(os.str().empty());
}
