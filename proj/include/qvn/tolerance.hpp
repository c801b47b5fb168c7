#pragma once

namespace qvn {

/// Numeric judgment thresholds shared by every module.
///
/// `tol` is the absolute tolerance of structural predicates (self-adjoint,
/// projector, complex structure, commutation). `rank_eps` drives every rank
/// decision: a singular value counts when it exceeds max(rows, cols) *
/// rank_eps * sigma_max. `cluster` groups eigenvalues, relative to
/// max(1, |A|). `pinv_cut` is the relative singular-value cutoff that defines
/// kernels in the polar decomposition.
struct Tolerances {
  double tol = 1e-10;
  double rank_eps = 1e-12;
  double cluster = 1e-8;
  double pinv_cut = 1e-10;
};

}  // namespace qvn
