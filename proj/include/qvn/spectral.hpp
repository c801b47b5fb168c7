#pragma once

#include <functional>
#include <span>
#include <vector>

#include "qvn/embed.hpp"
#include "qvn/qspace.hpp"
#include "qvn/tolerance.hpp"

namespace qvn {

struct SpectralPair {
  double value = 0.0;
  QMatrix projector;
  std::size_t rank = 0;  // quaternionic rank = complex rank / 2
};

/// Spectral resolution A = sum value_r P_r, values strictly increasing.
/// At finite dimension the spectrum is pure point.
struct SpectralDecomposition {
  std::vector<SpectralPair> pairs;

  std::vector<double> values() const;
  QMatrix reconstruct() const;
  /// Values repeated by rank, ascending.
  std::vector<double> values_with_multiplicity() const;
};

/// Diagonalizes complexify_op(A), clusters eigenvalues within
/// tols.cluster * max(1, |A|) and pulls each eigenprojector back.
/// Throws ErrorKind::Precondition for non-self-adjoint A and
/// ErrorKind::Structure if a cluster splits a complex pair.
SpectralDecomposition eig_selfadjoint(const QMatrix& a, const Tolerances& tols = {});

/// f(A) = sum f(value_r) P_r.
QMatrix func_calc(const QMatrix& a, const std::function<double(double)>& f,
                  const Tolerances& tols = {});
QMatrix func_calc(const SpectralDecomposition& sd, const std::function<double(double)>& f);

struct PolarPair {
  QMatrix u;  // partial isometry, Ker U = Ker A
  QMatrix p;  // |A| = sqrt(A* A)
};

/// A = U P. Singular values below tols.pinv_cut * sigma_max define Ker P.
PolarPair polar(const QMatrix& a, const Tolerances& tols = {});

/// Orthogonal projector onto Ker A, same cutoff as polar.
QMatrix kernel_projector(const QMatrix& a, const Tolerances& tols = {});
/// Orthogonal projector onto Ran A.
QMatrix range_projector(const QMatrix& a, const Tolerances& tols = {});
/// Quaternionic rank.
std::size_t rank(const QMatrix& a, const Tolerances& tols = {});

/// Residuals of the polar contract for a candidate pair (U, P):
///   (i)   A = U P              (ii)  P = P*, P >= 0
///   (iii) U isometric on Ran P (iv)  Ker U contains Ker P
///   (1)   P^2 = A* A           (2)   Ker U = Ker A = Ker P
///   (3)   Ran U closed, i.e. U U* is a projector
struct PolarContract {
  double product = 0.0;
  double positive = 0.0;
  double isometric = 0.0;
  double kernel_inclusion = 0.0;
  double modulus = 0.0;
  double kernels_equal = 0.0;
  double range_closed = 0.0;

  double worst() const;
  bool holds(double tol) const { return worst() <= tol; }
};
PolarContract polar_contract(const QMatrix& a, const PolarPair& pair, const Tolerances& tols = {});

/// exp(t A) for anti-self-adjoint A.
QMatrix expm_skew(const QMatrix& a, double t, const Tolerances& tols = {});

struct GeneratorEstimate {
  QMatrix generator;           // log(U_h) / h
  double central_difference;   // |log(U_h)/h - (U_h - U_{-h}) / 2h|
  double step_distance;        // |U_h - I| (operator norm)
};

/// Recovers the anti-self-adjoint generator of t -> U_t from U_h and U_{-h}
/// by the principal logarithm. Throws ErrorKind::Domain if |U_h - I| > 0.5.
GeneratorEstimate generator_of(const std::function<QMatrix(double)>& flow, double h = 1e-3,
                               const Tolerances& tols = {});

struct FlowCommutation {
  double algebraic = 0.0;  // |BA - AB|
  double flow = 0.0;       // max_t |B e^{tA} - e^{tA} B|
  bool algebraic_holds = false;
  bool flow_holds = false;
  bool agree() const { return algebraic_holds == flow_holds; }
};

/// Checks B A = A B and B e^{tA} = e^{tA} B on a grid of t independently.
FlowCommutation flow_commutation(const QMatrix& b, const QMatrix& a, const Tolerances& tols = {});
bool commutes_with_flow(const QMatrix& b, const QMatrix& a, const Tolerances& tols = {});

}  // namespace qvn
