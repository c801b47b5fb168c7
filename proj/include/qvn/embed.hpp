#pragma once

// Realification H -> R^{4n} and complexification H -> C^{2n}.
//
// Real coordinates are component-major, unit-minor: x_1 = (a,b,c,d) occupies
// slots 0..3, x_2 slots 4..7, and so on.
//
// Complex coordinates split q = z + k w with z, w in C_j = {a + j b}, and
// C_j is identified with C by a + j b -> a + i b. A vector x in H^n maps to
// (z_1..z_n, w_1..w_n). An operator A = Z + k W (entrywise) maps to
//
//     [ Z   -conj(W) ]
//     [ W    conj(Z) ]
//
// Right multiplication by k acts on C^{2n} as the antilinear map
// v -> Kc conj(v) with Kc = [[0, -I], [I, 0]].

#include <complex>

#include <Eigen/Dense>

#include "qvn/qspace.hpp"

namespace qvn {

using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using cplx = std::complex<double>;

/// 4x4 real matrix of x -> q x on R^4 = H.
Eigen::Matrix4d left_mult_matrix(const Quaternion& q);
/// 4x4 real matrix of x -> x q on R^4 = H.
Eigen::Matrix4d right_mult_matrix(const Quaternion& q);

RealVector realify_vec(const QVector& x);
QVector unrealify_vec(const RealVector& v);
RealMatrix realify_op(const QMatrix& a);

/// Right multiplications by j and k on R^{4n}.
struct RightUnits {
  RealMatrix j;
  RealMatrix k;
};
RightUnits jmat_kmat(std::size_t n);

/// <x|y> rebuilt from the real product (x|y) = Re<x|y> and the right units:
/// <x|y> = (x|y) - (x|Jy) j - (x|Ky) k - (x|JKy) jk.
Quaternion recover_inner(const RealVector& x, const RealVector& y);

/// a + j b  <->  a + i b.
cplx to_complex(const Quaternion& q);
Quaternion from_complex(cplx z);
/// Split q = z + k w.
std::pair<cplx, cplx> split(const Quaternion& q);
Quaternion join(cplx z, cplx w);

ComplexVector complexify_vec(const QVector& x);
QVector pull_back_vec(const ComplexVector& v);
ComplexMatrix complexify_op(const QMatrix& a);

/// The fixed matrix Kc with right-multiplication-by-k = Kc o conj.
ComplexMatrix k_structure(std::size_t n);

/// Residual of C Kc - Kc conj(C), Frobenius norm.
double quaternionic_residual(const ComplexMatrix& c);
bool is_quaternionic(const ComplexMatrix& c, double tol = 1e-10);

/// Copy of `c` with entries below rel * max|c_ij| set to zero. Applied to
/// every matrix handed to a complex SVD.
ComplexMatrix drop_negligible(const ComplexMatrix& c, double rel = 1e-30);

/// Inverse of complexify_op. Throws ErrorKind::Structure if `c` is not
/// quaternionic within `tol` (scaled by max(1, |c|_F)).
QMatrix pull_back(const ComplexMatrix& c, double tol = 1e-10);

}  // namespace qvn
