#include "qvn/states.hpp"

#include <algorithm>
#include <cmath>

namespace qvn {

double re_trace(const QMatrix& a) { return re(full_trace(a)); }

DensityOperator DensityOperator::make(const QMatrix& t, const Tolerances& tols) {
  if (!t.square() || t.rows() == 0) fail(ErrorKind::Shape, "density operator must be a nonempty square matrix");
  if (!is_selfadjoint(t, tols.tol * std::max(1.0, frobenius(t))))
    fail(ErrorKind::Precondition, "density operator is not self-adjoint");
  if (std::abs(re_trace(t) - 1.0) > 100.0 * tols.tol) fail(ErrorKind::Precondition, "density operator does not have unit trace");
  QMatrix sym = 0.5 * (t + adjoint(t));
  SpectralDecomposition sd = eig_selfadjoint(sym, tols);
  if (!sd.pairs.empty() && sd.pairs.front().value < -100.0 * tols.tol)
    fail(ErrorKind::Precondition, "density operator is not positive");
  return DensityOperator(std::move(sym), std::move(sd));
}

DensityOperator DensityOperator::pure(const QVector& psi) {
  const double n2 = re(inner(psi, psi));
  if (n2 <= 0.0) fail(ErrorKind::Domain, "pure state from the zero vector");
  QMatrix t(psi.size(), psi.size());
  for (std::size_t i = 0; i < psi.size(); ++i) {
    for (std::size_t j = 0; j < psi.size(); ++j) t(i, j) = psi[i] * conj(psi[j]) / n2;
  }
  return make(t);
}

DensityOperator DensityOperator::maximally_mixed(std::size_t n) {
  return make((1.0 / static_cast<double>(n)) * QMatrix::identity(n));
}

GleasonForms gleason_forms(const DensityOperator& t, const QMatrix& p) {
  return {full_trace(p * t.matrix() * p), re_trace(p * t.matrix())};
}

double state_eval(const DensityOperator& t, const QMatrix& p, const Tolerances& tols) {
  if (p.rows() != t.dim() || !p.square()) fail(ErrorKind::Shape, "state_eval: dimension mismatch");
  if (!is_projector(p, std::max(1e-8, 100.0 * tols.tol))) fail(ErrorKind::Precondition, "state_eval: argument is not a projector");
  const GleasonForms forms = gleason_forms(t, p);
  if (abs(forms.sandwiched - Quaternion(forms.re_product)) > 1e-11)
    fail(ErrorKind::Internal, "state_eval: tr(PTP) and Re tr(PT) disagree");
  return forms.sandwiched.a;
}

DensityOperator luders(const DensityOperator& t, const QMatrix& p, const Tolerances& tols) {
  const double mu = state_eval(t, p, tols);
  if (mu <= tols.tol) fail(ErrorKind::Domain, "luders: conditioning on a zero-probability event");
  return DensityOperator::make((1.0 / mu) * (p * t.matrix() * p), tols);
}

AdditivityReport sigma_additivity_check(const DensityOperator& t, std::span<const QMatrix> family,
                                        const Tolerances& tols) {
  AdditivityReport rep;
  if (family.empty()) {
    rep.passed = true;
    return rep;
  }
  QMatrix sum = QMatrix::zero(t.dim());
  for (std::size_t a = 0; a < family.size(); ++a) {
    for (std::size_t b = a + 1; b < family.size(); ++b) {
      if (frobenius(family[a] * family[b]) > 1e-8)
        fail(ErrorKind::Precondition, "sigma_additivity_check: projectors are not mutually orthogonal");
    }
    rep.sum_of_values += state_eval(t, family[a], tols);
    sum += family[a];
  }
  rep.value_of_sum = state_eval(t, sum, tols);
  rep.residual = std::abs(rep.value_of_sum - rep.sum_of_values);
  rep.passed = rep.residual < 1e-11;
  return rep;
}

}  // namespace qvn
