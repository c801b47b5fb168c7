#pragma once

// Finite-dimensional reduction of a quaternionic unitary family with a
// commuting anti-self-adjoint generator H0 to a complex model: the polar
// isometry J0 of H0 is the canonical complex structure, and restricting to
// H_{J0} turns the family into an irreducible complex one.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qvn/qspace.hpp"
#include "qvn/restrict.hpp"
#include "qvn/tolerance.hpp"
#include "qvn/valg.hpp"

namespace qvn {

struct ToySystem {
  std::vector<QMatrix> unitaries;  // star-closed after symmetrize()
  QMatrix h0;                      // anti-self-adjoint, commuting with the unitaries
  std::vector<QMatrix> generators; // optional P0..P3
};

/// -P0^2 + P1^2 + P2^2 + P3^2. Throws ErrorKind::Precondition unless the
/// inputs are four pairwise commuting anti-self-adjoint matrices.
QMatrix mass_operator(std::span<const QMatrix> p, const Tolerances& tols = {});

enum class Diagnostic {
  None,
  NotIrreducible,
  NotConstructible,  // no nonzero anti-self-adjoint operator commutes with the family
  H0NotSkew,
  H0NotCommuting,
  H0Degenerate,
  J0NotStructure,
  J0NotInAlgebra,
  TypeMismatch,
  SignAmbiguity,
  RestrictionNotFull
};

const char* to_string(Diagnostic d) noexcept;

struct LedgerEntry {
  std::string name;
  bool passed = false;
  double residual = 0.0;
};

struct ReductionReport {
  QMatrix j0;
  QMatrix modulus;  // |H0|
  AlgebraType type;
  std::vector<ComplexMatrix> restricted_unitaries;
  ComplexMatrix restricted_h0;
  std::vector<LedgerEntry> ledger;
};

struct ReductionOutcome {
  Diagnostic diagnostic = Diagnostic::None;
  std::string message;
  std::vector<LedgerEntry> ledger;       // checks run so far
  std::optional<ReductionReport> report; // present iff diagnostic == None

  bool ok() const { return diagnostic == Diagnostic::None; }
};

/// Runs the nine-stage pipeline. Stage failures are Diagnostics; malformed
/// input (shape mismatch, non-unitary member) throws.
ReductionOutcome reduce(const ToySystem& sys, const Tolerances& tols = {});

/// Unitaries exp(X) for random anti-self-adjoint X in commutant({J}) with
/// J = block_complex_structure(n), and H0 = c J with c > 0.
struct ComplexTypeFixture {
  ToySystem system;
  QMatrix j;
};
ComplexTypeFixture complex_type_fixture(std::size_t n, std::uint64_t seed, std::size_t count = 3);

/// Unitaries generating all of B(H^n) with a nonzero anti-self-adjoint H0;
/// reduce() must report NotConstructible.
ToySystem real_type_fixture(std::size_t n, std::uint64_t seed);

/// Rotations R in SO(3) acting on H = R + R^3 as (a, b) -> (a, R b).
struct SO3Exhibit {
  std::vector<Eigen::Matrix3d> rotations;
  std::vector<QMatrix> lifts;          // [[p]] with p b conj(p) = R b
  std::vector<RealMatrix> real_action; // diag(1, R) on R^4
  bool irreducible_over_h = false;
  std::size_t selfadjoint_commutant_dim = 0;
  bool reducible_over_r = false;
  RealMatrix invariant_projector;      // nontrivial projector in the real commutant
  std::size_t real_commutant_dim = 0;
};
SO3Exhibit so3_fixture(const Tolerances& tols = {});

/// Unit quaternion p with p v conj(p) = R v for imaginary v.
Quaternion rotation_to_quaternion(const Eigen::Matrix3d& r);

}  // namespace qvn
