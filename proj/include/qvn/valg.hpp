#pragma once

// Finite-dimensional von Neumann algebras of quaternionic matrices.
//
// At finite dimension the strong and weak operator topologies coincide with
// the norm topology and every *-subalgebra is closed, so a unital *-algebra
// R satisfies R = R'' without any closure step. Algebras are therefore
// handled purely as real subspaces of B(H^n), with the Re-trace pairing
// Re tr(A* B) as inner product.

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "qvn/qspace.hpp"
#include "qvn/subspace.hpp"
#include "qvn/tolerance.hpp"

namespace qvn {

/// Real subspace of B(H^n) spanned by an orthonormal basis.
class OperatorAlgebra {
 public:
  OperatorAlgebra() = default;

  /// Orthonormalizes `spanning` and records the closure flags.
  static OperatorAlgebra from_spanning(std::size_t n, std::span<const QMatrix> spanning,
                                       const Tolerances& tols = {});

  std::size_t n() const noexcept { return n_; }
  std::size_t dim() const noexcept { return basis_.size(); }
  const std::vector<QMatrix>& basis() const noexcept { return basis_; }
  const RealSubspace& subspace() const noexcept { return space_; }

  bool contains_identity() const noexcept { return contains_identity_; }
  bool star_closed() const noexcept { return star_closed_; }
  bool product_closed() const noexcept { return product_closed_; }

  /// Distance from A to the span, in the Re-trace norm.
  double residual(const QMatrix& a) const;
  bool contains(const QMatrix& a, double tol) const { return residual(a) <= tol; }
  QMatrix project(const QMatrix& a) const;

 private:
  std::size_t n_ = 0;
  std::vector<QMatrix> basis_;
  RealSubspace space_;
  bool contains_identity_ = false;
  bool star_closed_ = false;
  bool product_closed_ = false;
};

/// S together with S* and I.
std::vector<QMatrix> symmetrize(std::span<const QMatrix> s);

/// Smallest real unital *-algebra containing S (word closure to a fixpoint).
OperatorAlgebra generated_algebra(std::span<const QMatrix> s, const Tolerances& tols = {});

/// {X : X S = S X for all S} as the null space of the stacked commutator map.
OperatorAlgebra commutant(std::span<const QMatrix> s, const Tolerances& tols = {});

/// commutant(commutant(S u S* u {I})).
OperatorAlgebra double_commutant(std::span<const QMatrix> s, const Tolerances& tols = {});

/// Commutant of realify_op(S) inside all real 4n x 4n matrices.
std::vector<RealMatrix> real_commutant(std::span<const QMatrix> s, const Tolerances& tols = {});

/// The four combinations of the commutant sandwich
///   B     = A - JAJ - KAK - JKAJK
///   B_J   = A - JAJ + KAK + JKAJK
///   B_K   = A - KAK + JAJ + JKAJK
///   B_JK  = A - JKAJK + JAJ + KAK
/// with J, K the right units, so that 4A = B + B_J + B_K + B_JK, together
/// with the residuals of B in S', B_J in J S', B_K in K S', B_JK in JK S'.
struct LemmaParts {
  RealMatrix b;
  RealMatrix b_j;
  RealMatrix b_k;
  RealMatrix b_jk;
  std::array<double, 4> membership{};
  double reconstruction = 0.0;
};

/// Throws ErrorKind::Precondition unless A commutes with realify_op of every
/// element of `s`.
LemmaParts lemma_decompose(const RealMatrix& a, std::span<const QMatrix> s,
                           const OperatorAlgebra& s_prime, const Tolerances& tols = {});

/// Self-adjoint part of the commutant of S u S* equals R I.
bool is_irreducible(std::span<const QMatrix> s, const Tolerances& tols = {});

enum class AlgebraTypeTag { QuaternionicReal, QuaternionicComplex, QuaternionicQuaternionic };

const char* to_string(AlgebraTypeTag tag) noexcept;

struct AlgebraType {
  AlgebraTypeTag tag = AlgebraTypeTag::QuaternionicReal;
  std::optional<ComplexStructure> j;
  std::optional<ComplexStructure> k;
  std::size_t commutant_dim = 0;
};

/// Three-type classification of an irreducible von Neumann algebra by the
/// real dimension (1, 2, 4) of its commutant. Throws ErrorKind::Degenerate
/// on any other dimension or on a failed normalization, and
/// ErrorKind::Precondition when `require_irreducible` is set and R is not.
AlgebraType classify(const OperatorAlgebra& r, bool require_irreducible = true,
                     const Tolerances& tols = {});

/// Deterministic sign: the first significant real component is positive.
QMatrix canonical_sign(const QMatrix& j);

/// R n R'.
OperatorAlgebra center(const OperatorAlgebra& r, const Tolerances& tols = {});

/// Spectral projectors of the self-adjoint parts of R's basis, plus 0 and I,
/// without duplicates.
std::vector<QMatrix> proj_lattice(const OperatorAlgebra& r, const Tolerances& tols = {});

/// Checks L_R'' + J_R L_R'' = R, where J_R = {J in R : J* = -J, -J^2 a
/// projector in R}, using the polar isometries of A - A* as J_R witnesses.
struct CJSetReport {
  std::size_t lattice_algebra_dim = 0;   // dim L_R(H)''
  std::size_t structures = 0;            // number of J_R witnesses used
  double witness_residual = 0.0;         // worst violation of J_R membership
  double decomposition_residual = 0.0;   // worst |A - (A+A*)/2 - W|A-A*|/2|
  double reconstruction_residual = 0.0;  // subspace distance to R
  bool passed = false;
};
CJSetReport cj_set_check(const OperatorAlgebra& r, const Tolerances& tols = {});

/// Fixtures for the three irreducible types on H^n.
OperatorAlgebra full_algebra(std::size_t n);
/// Direct sum of [[0,-1],[1,0]] blocks, with a trailing [[j]] for odd n.
QMatrix block_complex_structure(std::size_t n);
/// All real n x n matrices acting on H^n.
OperatorAlgebra real_matrix_algebra(std::size_t n);

}  // namespace qvn
