#pragma once

// Induced complex space H_J = {u : J u = u j} and real space
// H_JK = {u : J u = u j, K u = u k}, restriction of operators commuting with
// the structures, and their unique H-linear extensions.
//
// Restricted complex matrices use the identification a + j b -> a + i b.

#include <array>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "qvn/embed.hpp"
#include "qvn/qspace.hpp"
#include "qvn/tolerance.hpp"
#include "qvn/valg.hpp"

namespace qvn {

/// C_j-orthonormal basis u_1..u_n of H_J. The same vectors are a Hilbert
/// basis of H^n, so the matrix with these columns is unitary.
class HJBasis {
 public:
  const ComplexStructure& structure() const noexcept { return j_; }
  const std::vector<QVector>& vectors() const noexcept { return vectors_; }
  const QMatrix& unitary() const noexcept { return frame_; }
  std::size_t dim() const noexcept { return vectors_.size(); }

 private:
  friend HJBasis hj_basis(const ComplexStructure& j, const Tolerances& tols);
  HJBasis(ComplexStructure j, std::vector<QVector> vectors);

  ComplexStructure j_;
  std::vector<QVector> vectors_;
  QMatrix frame_;
};

/// Real-orthonormal basis z_1..z_n of H_JK, also a Hilbert basis of H^n.
class HJKBasis {
 public:
  const ComplexStructure& j() const noexcept { return j_; }
  const ComplexStructure& k() const noexcept { return k_; }
  const std::vector<QVector>& vectors() const noexcept { return vectors_; }
  const QMatrix& unitary() const noexcept { return frame_; }
  std::size_t dim() const noexcept { return vectors_.size(); }

 private:
  friend HJKBasis hjk_basis(const ComplexStructure& j, const ComplexStructure& k,
                            const Tolerances& tols);
  HJKBasis(ComplexStructure j, ComplexStructure k, std::vector<QVector> vectors);

  ComplexStructure j_;
  ComplexStructure k_;
  std::vector<QVector> vectors_;
  QMatrix frame_;
};

/// Solves realify(J) x = (right j) x; Gram-Schmidt seeded by the coordinate
/// directions in index order. Throws ErrorKind::Degenerate if the solution
/// space does not have real dimension 2n, ErrorKind::Shape for n = 0.
HJBasis hj_basis(const ComplexStructure& j, const Tolerances& tols = {});
HJKBasis hjk_basis(const ComplexStructure& j, const ComplexStructure& k,
                   const Tolerances& tols = {});

/// <u_m | A u_l>. Throws ErrorKind::Precondition unless A J = J A.
ComplexMatrix restrict_j(const QMatrix& a, const HJBasis& basis, const Tolerances& tols = {});
/// The unique H-linear X~ commuting with J with X~ u_l = sum_m u_m X_ml.
QMatrix extend_j(const ComplexMatrix& x, const HJBasis& basis);

RealMatrix restrict_jk(const QMatrix& a, const HJKBasis& basis, const Tolerances& tols = {});
QMatrix extend_jk(const RealMatrix& x, const HJKBasis& basis);

/// L_q = a I + b JK + c J + d K. Throws ErrorKind::Precondition unless
/// JK = -KJ.
QMatrix left_mult(const Quaternion& q, const ComplexStructure& j, const ComplexStructure& k,
                  const Tolerances& tols = {});

/// x = x1 + x2 k with x1, x2 in H_J.
std::pair<QVector, QVector> decompose_j(const QVector& x, const ComplexStructure& j);
/// x = x1 + x2 i + x3 j + x4 k with each part in H_JK, from
/// 4x = u_1 + u_i + u_j + u_k, u_1 = x - JK(xi) - J(xj) - K(xk) and so on.
std::array<QVector, 4> decompose_jk(const QVector& x, const ComplexStructure& j,
                                    const ComplexStructure& k);

/// Restriction of an algebra along one structure (complex target) or a pair
/// (real target).
struct TransportedAlgebra {
  std::vector<ComplexMatrix> complex_basis;  // J case
  std::vector<RealMatrix> real_basis;        // JK case
  std::size_t real_dim = 0;                  // dimension of the restricted span over R
  std::size_t target_dim = 0;                // 2n^2 (J) or n^2 (JK)
  double product_residual = 0.0;             // worst |(AB)_J - A_J B_J|
  double adjoint_residual = 0.0;             // worst |(A*)_J - (A_J)*|
  double norm_residual = 0.0;                // worst ||A_J|| - ||A|| |
  bool full() const { return real_dim == target_dim; }
};

TransportedAlgebra transport_algebra(const OperatorAlgebra& r, const HJBasis& basis,
                                     const Tolerances& tols = {});
TransportedAlgebra transport_algebra(const OperatorAlgebra& r, const HJKBasis& basis,
                                     const Tolerances& tols = {});

std::vector<ComplexMatrix> transport_lattice(std::span<const QMatrix> projectors,
                                             const HJBasis& basis, const Tolerances& tols = {});
std::vector<RealMatrix> transport_lattice(std::span<const QMatrix> projectors,
                                          const HJKBasis& basis, const Tolerances& tols = {});

/// Lattice operations on orthogonal projectors of H^n.
bool projector_leq(const QMatrix& p, const QMatrix& q, double tol = 1e-9);
QMatrix projector_join(const QMatrix& p, const QMatrix& q, const Tolerances& tols = {});
QMatrix projector_meet(const QMatrix& p, const QMatrix& q, const Tolerances& tols = {});
QMatrix projector_complement(const QMatrix& p);

/// The same lattice operations for complex matrices on H_J.
bool projector_leq(const ComplexMatrix& p, const ComplexMatrix& q, double tol = 1e-9);
ComplexMatrix projector_join(const ComplexMatrix& p, const ComplexMatrix& q,
                             const Tolerances& tols = {});
ComplexMatrix projector_meet(const ComplexMatrix& p, const ComplexMatrix& q,
                             const Tolerances& tols = {});

}  // namespace qvn
