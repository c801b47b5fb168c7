#pragma once

#include <span>

#include "qvn/qspace.hpp"
#include "qvn/spectral.hpp"
#include "qvn/tolerance.hpp"

namespace qvn {

/// Re sum A_ii. Unlike the full quaternionic trace it is invariant under
/// unitary conjugation.
double re_trace(const QMatrix& a);

/// Positive self-adjoint operator with unit Re-trace. Every operator is
/// trace class at finite dimension.
class DensityOperator {
 public:
  /// Throws ErrorKind::Precondition if T is not self-adjoint, not positive
  /// or not of unit trace within tols.tol.
  static DensityOperator make(const QMatrix& t, const Tolerances& tols = {});
  /// |psi><psi| / <psi|psi>.
  static DensityOperator pure(const QVector& psi);
  static DensityOperator maximally_mixed(std::size_t n);

  const QMatrix& matrix() const noexcept { return t_; }
  const SpectralDecomposition& spectrum() const noexcept { return spectrum_; }
  std::size_t dim() const noexcept { return t_.rows(); }

 private:
  DensityOperator(QMatrix t, SpectralDecomposition sd) : t_(std::move(t)), spectrum_(std::move(sd)) {}
  QMatrix t_;
  SpectralDecomposition spectrum_;
};

/// mu(P) = tr(P T P), cross-checked against Re tr(P T). Throws
/// ErrorKind::Precondition for a non-projector P, ErrorKind::Internal if the
/// two formulas disagree beyond 1e-11.
double state_eval(const DensityOperator& t, const QMatrix& p, const Tolerances& tols = {});

struct GleasonForms {
  Quaternion sandwiched;  // tr(P T P), full quaternionic trace
  double re_product;      // Re tr(P T)
};
GleasonForms gleason_forms(const DensityOperator& t, const QMatrix& p);

/// T_P = P T P / mu(P). Throws ErrorKind::Domain if mu(P) <= tols.tol.
DensityOperator luders(const DensityOperator& t, const QMatrix& p, const Tolerances& tols = {});

struct AdditivityReport {
  double sum_of_values = 0.0;
  double value_of_sum = 0.0;
  double residual = 0.0;
  bool passed = false;
};
/// Throws ErrorKind::Precondition unless the family is pairwise orthogonal.
AdditivityReport sigma_additivity_check(const DensityOperator& t, std::span<const QMatrix> family,
                                        const Tolerances& tols = {});

}  // namespace qvn
