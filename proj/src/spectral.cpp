#include "qvn/spectral.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <unsupported/Eigen/MatrixFunctions>

namespace qvn {

std::vector<double> SpectralDecomposition::values() const {
  std::vector<double> v;
  for (const auto& p : pairs) v.push_back(p.value);
  return v;
}

QMatrix SpectralDecomposition::reconstruct() const {
  if (pairs.empty()) return {};
  QMatrix sum = QMatrix::zero(pairs.front().projector.rows());
  for (const auto& p : pairs) sum += p.value * p.projector;
  return sum;
}

std::vector<double> SpectralDecomposition::values_with_multiplicity() const {
  std::vector<double> v;
  for (const auto& p : pairs) v.insert(v.end(), p.rank, p.value);
  return v;
}

SpectralDecomposition eig_selfadjoint(const QMatrix& a, const Tolerances& tols) {
  if (!a.square()) fail(ErrorKind::Shape, "eig_selfadjoint: matrix is not square");
  if (!is_selfadjoint(a, tols.tol * std::max(1.0, frobenius(a))))
    fail(ErrorKind::Precondition, "eig_selfadjoint: matrix is not self-adjoint");
  SpectralDecomposition sd;
  if (a.rows() == 0) return sd;
  ComplexMatrix c = complexify_op(a);
  c = 0.5 * (c + c.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(c);
  const auto& ev = es.eigenvalues();
  const ComplexMatrix& vecs = es.eigenvectors();
  const double gap = tols.cluster * std::max(1.0, ev.cwiseAbs().maxCoeff());

  Eigen::Index start = 0;
  while (start < ev.size()) {
    Eigen::Index end = start + 1;
    while (end < ev.size() && ev(end) - ev(end - 1) <= gap) ++end;
    const Eigen::Index count = end - start;
    if (count % 2 != 0)
      fail(ErrorKind::Structure, "eig_selfadjoint: eigenvalue cluster of odd complex multiplicity");
    const ComplexMatrix v = vecs.middleCols(start, count);
    const ComplexMatrix proj = v * v.adjoint();
    if (!is_quaternionic(proj, 1e-8))
      fail(ErrorKind::Structure, "eig_selfadjoint: eigenprojector is not quaternionic (clustering tolerance too tight)");
    SpectralPair pair;
    pair.value = ev.segment(start, count).mean();
    pair.projector = pull_back(proj, 1e-8);
    pair.rank = static_cast<std::size_t>(count / 2);
    sd.pairs.push_back(std::move(pair));
    start = end;
  }
  return sd;
}

QMatrix func_calc(const SpectralDecomposition& sd, const std::function<double(double)>& f) {
  if (sd.pairs.empty()) return {};
  QMatrix out = QMatrix::zero(sd.pairs.front().projector.rows());
  for (const auto& p : sd.pairs) out += f(p.value) * p.projector;
  return out;
}

QMatrix func_calc(const QMatrix& a, const std::function<double(double)>& f, const Tolerances& tols) {
  return func_calc(eig_selfadjoint(a, tols), f);
}

namespace {

struct ComplexSvd {
  ComplexMatrix u;
  ComplexMatrix v;
  Eigen::VectorXd sigma;
  Eigen::Index rank = 0;  // always even
};

ComplexSvd complex_svd(const QMatrix& a, const Tolerances& tols) {
  if (!a.square()) fail(ErrorKind::Shape, "polar: matrix is not square");
  Eigen::JacobiSVD<ComplexMatrix> svd(drop_negligible(complexify_op(a)), Eigen::ComputeFullU | Eigen::ComputeFullV);
  ComplexSvd out{svd.matrixU(), svd.matrixV(), svd.singularValues(), 0};
  const double smax = out.sigma.size() ? out.sigma(0) : 0.0;
  const double cut = tols.pinv_cut * smax;
  while (out.rank < out.sigma.size() && out.sigma(out.rank) > cut) ++out.rank;
  if (out.rank % 2 != 0) ++out.rank;  // singular values come in pairs
  return out;
}

}  // namespace

PolarPair polar(const QMatrix& a, const Tolerances& tols) {
  const ComplexSvd s = complex_svd(a, tols);
  const Eigen::Index r = s.rank;
  const ComplexMatrix u = s.u.leftCols(r) * s.v.leftCols(r).adjoint();
  ComplexMatrix p = s.v.leftCols(r) * s.sigma.head(r).asDiagonal() * s.v.leftCols(r).adjoint();
  p = 0.5 * (p + p.adjoint()).eval();
  return {pull_back(u, 1e-8), pull_back(p, 1e-8)};
}

QMatrix kernel_projector(const QMatrix& a, const Tolerances& tols) {
  const ComplexSvd s = complex_svd(a, tols);
  const Eigen::Index null = s.v.cols() - s.rank;
  const ComplexMatrix v0 = s.v.rightCols(null);
  return pull_back(v0 * v0.adjoint(), 1e-8);
}

QMatrix range_projector(const QMatrix& a, const Tolerances& tols) {
  const ComplexSvd s = complex_svd(a, tols);
  const ComplexMatrix w = s.u.leftCols(s.rank);
  return pull_back(w * w.adjoint(), 1e-8);
}

std::size_t rank(const QMatrix& a, const Tolerances& tols) {
  return static_cast<std::size_t>(complex_svd(a, tols).rank / 2);
}

double PolarContract::worst() const {
  return std::max({product, positive, isometric, kernel_inclusion, modulus, kernels_equal, range_closed});
}

PolarContract polar_contract(const QMatrix& a, const PolarPair& pair, const Tolerances& tols) {
  const QMatrix& u = pair.u;
  const QMatrix& p = pair.p;
  PolarContract c;
  c.product = frobenius(a - u * p);
  double negative = 0.0;
  const QMatrix psym = 0.5 * (p + adjoint(p));
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(complexify_op(psym), Eigen::EigenvaluesOnly);
  if (es.eigenvalues().size() > 0) negative = std::max(0.0, -es.eigenvalues().minCoeff());
  c.positive = std::max(frobenius(p - adjoint(p)), negative);
  c.isometric = frobenius(p * adjoint(u) * u * p - p * p);
  const QMatrix ker_p = kernel_projector(p, tols);
  c.kernel_inclusion = frobenius(u * ker_p);
  c.modulus = frobenius(p * p - adjoint(a) * a);
  const QMatrix ker_u = kernel_projector(u, tols);
  const QMatrix ker_a = kernel_projector(a, tols);
  c.kernels_equal = std::max(frobenius(ker_u - ker_a), frobenius(ker_a - ker_p));
  const QMatrix uu = u * adjoint(u);
  c.range_closed = frobenius(uu * uu - uu);
  return c;
}

QMatrix expm_skew(const QMatrix& a, double t, const Tolerances& tols) {
  if (!is_antiselfadjoint(a, tols.tol * std::max(1.0, frobenius(a))))
    fail(ErrorKind::Precondition, "expm_skew: generator is not anti-self-adjoint");
  if (a.rows() == 0) return {};
  const ComplexMatrix c = complexify_op(a);
  // -i C is Hermitian; exp(tC) = V diag(exp(i t mu)) V^H.
  ComplexMatrix h = cplx(0.0, -1.0) * c;
  h = 0.5 * (h + h.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
  const Eigen::VectorXcd phases = (cplx(0.0, t) * es.eigenvalues().cast<cplx>()).array().exp();
  const ComplexMatrix u = es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
  return pull_back(u, 1e-8);
}

GeneratorEstimate generator_of(const std::function<QMatrix(double)>& flow, double h, const Tolerances& tols) {
  if (!(h > 0.0)) fail(ErrorKind::Domain, "generator_of: step must be positive");
  const QMatrix uh = flow(h);
  const QMatrix umh = flow(-h);
  if (!uh.square()) fail(ErrorKind::Shape, "generator_of: flow sample is not square");
  const std::size_t n = uh.rows();
  if (!is_unitary(uh, std::max(1e-8, 100.0 * tols.tol) * std::max<double>(1.0, static_cast<double>(n))))
    fail(ErrorKind::Precondition, "generator_of: flow sample is not unitary");
  GeneratorEstimate est;
  est.step_distance = opnorm(uh - QMatrix::identity(n));
  if (est.step_distance > 0.5)
    fail(ErrorKind::Domain, "generator_of: |U_h - I| > 0.5, step too large for the principal logarithm");
  ComplexMatrix lg = complexify_op(uh).log();
  lg = 0.5 * (lg - lg.adjoint()).eval();
  est.generator = pull_back(lg / h, 1e-6);
  est.central_difference = frobenius(est.generator - (1.0 / (2.0 * h)) * (uh - umh));
  return est;
}

FlowCommutation flow_commutation(const QMatrix& b, const QMatrix& a, const Tolerances& tols) {
  FlowCommutation fc;
  const double scale = std::max(1.0, frobenius(a)) * std::max(1.0, frobenius(b));
  const double threshold = 100.0 * tols.tol * scale;
  fc.algebraic = frobenius(b * a - a * b);
  constexpr std::array<double, 5> grid = {0.11, 0.37, 0.73, 1.29, 2.03};
  for (double t : grid) {
    const QMatrix e = expm_skew(a, t, tols);
    fc.flow = std::max(fc.flow, frobenius(b * e - e * b));
  }
  fc.algebraic_holds = fc.algebraic <= threshold;
  fc.flow_holds = fc.flow <= threshold;
  return fc;
}

bool commutes_with_flow(const QMatrix& b, const QMatrix& a, const Tolerances& tols) {
  const FlowCommutation fc = flow_commutation(b, a, tols);
  return fc.algebraic_holds && fc.flow_holds;
}

}  // namespace qvn
