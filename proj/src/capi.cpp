#include "qvn/qvn.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <new>
#include <exception>
#include <string>

#include "qvn/error.hpp"
#include "qvn/io.hpp"
#include "qvn/reduce.hpp"
#include "qvn/spectral.hpp"
#include "qvn/states.hpp"
#include "qvn/valg.hpp"
#include "qvn/verify.hpp"

struct qvn_context {
  qvn::Tolerances tols;
  std::uint64_t seed = qvn::VerifyOptions{}.seed;
  std::string last_error;
};

struct qvn_matrix {
  qvn::QMatrix m;
};

struct qvn_algebra {
  qvn::OperatorAlgebra a;
};

namespace {

using qvn::ErrorKind;
using qvn::io::json;

qvn_status status_of(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse: return QVN_ERR_PARSE;
    case ErrorKind::Shape:
    case ErrorKind::Domain:
    case ErrorKind::Precondition: return QVN_ERR_PRECONDITION;
    case ErrorKind::Structure:
    case ErrorKind::Degenerate: return QVN_ERR_DEGENERATE;
    case ErrorKind::Internal: return QVN_ERR_INTERNAL;
  }
  return QVN_ERR_INTERNAL;
}

qvn_status status_of(qvn::Diagnostic d) {
  switch (d) {
    case qvn::Diagnostic::None: return QVN_OK;
    case qvn::Diagnostic::NotIrreducible:
    case qvn::Diagnostic::NotConstructible:
    case qvn::Diagnostic::H0NotSkew:
    case qvn::Diagnostic::H0NotCommuting: return QVN_ERR_PRECONDITION;
    case qvn::Diagnostic::H0Degenerate: return QVN_ERR_DEGENERATE;
    default: return QVN_ERR_CHECK_FAILED;
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

// Runs `body`, translating exceptions into a status and the context message.
template <class F>
qvn_status guarded(qvn_context* ctx, F&& body) {
  try {
    if (ctx) ctx->last_error.clear();
    return body();
  } catch (const qvn::Error& e) {
    if (ctx) ctx->last_error = e.what();
    return status_of(e.kind());
  } catch (const std::bad_alloc&) {
    if (ctx) ctx->last_error = "out of memory";
    return QVN_ERR_INTERNAL;
  } catch (const std::exception& e) {
    if (ctx) ctx->last_error = e.what();
    return QVN_ERR_INTERNAL;
  }
}

qvn_status invalid(qvn_context* ctx, const char* what) {
  if (ctx) ctx->last_error = what;
  return QVN_ERR_INVALID_ARGUMENT;
}

std::vector<qvn::QMatrix> collect(const qvn_matrix* const* gens, std::size_t count) {
  std::vector<qvn::QMatrix> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    if (!gens[i]) qvn::fail(ErrorKind::Precondition, "null matrix in generator list");
    out.push_back(gens[i]->m);
  }
  return out;
}

void require_uniform(const std::vector<qvn::QMatrix>& ms) {
  if (ms.empty()) qvn::fail(ErrorKind::Precondition, "at least one matrix is required");
  const std::size_t n = ms.front().rows();
  for (const qvn::QMatrix& m : ms) {
    if (!m.square() || m.rows() != n || n == 0)
      qvn::fail(ErrorKind::Precondition, "matrices must be square and of one common size");
  }
}

qvn_status cmd_classify(qvn_context& ctx, const json& input, qvn::io::Report& rep) {
  const std::vector<qvn::QMatrix> gens = qvn::io::matrices_from_json(input);
  require_uniform(gens);
  const std::vector<qvn::QMatrix> sym = qvn::symmetrize(gens);
  const qvn::OperatorAlgebra r = qvn::generated_algebra(sym, ctx.tols);
  rep.set("algebra_dim", r.dim());
  const bool irreducible = qvn::is_irreducible(sym, ctx.tols);
  rep.check("irreducible", irreducible, 0.0);
  if (!irreducible) qvn::fail(ErrorKind::Precondition, "classify: the generated algebra is not irreducible");
  const qvn::AlgebraType type = qvn::classify(r, false, ctx.tols);
  rep.set("classification", qvn::io::to_json(type));
  const double member = 1e-8 * std::sqrt(static_cast<double>(r.n()));
  if (type.j && !type.k) {
    const double res = r.residual(type.j->matrix());
    rep.check("J_in_algebra", res <= member, res);
  }
  if (type.k) {
    const qvn::QMatrix jk = type.j->matrix() * type.k->matrix();
    for (const auto& [name, m] : {std::pair{"J_outside_algebra", type.j->matrix()},
                                  std::pair{"K_outside_algebra", type.k->matrix()},
                                  std::pair{"JK_outside_algebra", jk}}) {
      const double res = r.residual(m);
      rep.check(name, res > member, res);
    }
  }
  return rep.all_passed() ? QVN_OK : QVN_ERR_CHECK_FAILED;
}

qvn_status cmd_commutant(qvn_context& ctx, const json& input, qvn::io::Report& rep) {
  const std::vector<qvn::QMatrix> gens = qvn::io::matrices_from_json(input);
  require_uniform(gens);
  const qvn::OperatorAlgebra c = qvn::commutant(gens, ctx.tols);
  double worst = 0.0;
  json basis = json::array();
  for (const qvn::QMatrix& b : c.basis()) {
    basis.push_back(qvn::io::to_json(b, std::string("operator")));
    for (const qvn::QMatrix& g : gens) worst = std::max(worst, qvn::frobenius(qvn::commutator(b, g)));
  }
  rep.set("dim", c.dim());
  rep.set("basis", std::move(basis));
  rep.set("contains_identity", c.contains_identity());
  rep.set("star_closed", c.star_closed());
  rep.set("product_closed", c.product_closed());
  rep.check("commutes", worst <= 100.0 * ctx.tols.tol, worst);
  return rep.all_passed() ? QVN_OK : QVN_ERR_CHECK_FAILED;
}

const qvn::QMatrix& single(const std::vector<qvn::QMatrix>& ms) {
  if (ms.size() != 1) qvn::fail(ErrorKind::Precondition, "exactly one matrix is required");
  return ms.front();
}

qvn_status cmd_spectral(qvn_context& ctx, const json& input, qvn::io::Report& rep) {
  const std::vector<qvn::QMatrix> ms = qvn::io::matrices_from_json(input);
  require_uniform(ms);
  const qvn::QMatrix& a = single(ms);
  const qvn::SpectralDecomposition sd = qvn::eig_selfadjoint(a, ctx.tols);
  rep.set("spectral", qvn::io::to_json(sd));
  const double scale = 1.0 + qvn::opnorm(a);
  const double recon = qvn::opnorm(sd.reconstruct() - a) / scale;
  rep.check("reconstruction", recon <= ctx.tols.tol, recon);
  qvn::QMatrix sum = qvn::QMatrix::zero(a.rows());
  double ortho = 0.0;
  for (std::size_t r = 0; r < sd.pairs.size(); ++r) {
    sum += sd.pairs[r].projector;
    for (std::size_t s = r + 1; s < sd.pairs.size(); ++s)
      ortho = std::max(ortho, qvn::opnorm(sd.pairs[r].projector * sd.pairs[s].projector));
  }
  const double complete = qvn::opnorm(sum - qvn::QMatrix::identity(a.rows()));
  rep.check("completeness", complete <= ctx.tols.tol, complete);
  rep.check("orthogonality", ortho <= ctx.tols.tol, ortho);
  return rep.all_passed() ? QVN_OK : QVN_ERR_CHECK_FAILED;
}

qvn_status cmd_polar(qvn_context& ctx, const json& input, qvn::io::Report& rep) {
  const std::vector<qvn::QMatrix> ms = qvn::io::matrices_from_json(input);
  const qvn::QMatrix& a = single(ms);
  const qvn::PolarPair pp = qvn::polar(a, ctx.tols);
  rep.set("U", qvn::io::to_json(pp.u, std::string("operator")));
  rep.set("P", qvn::io::to_json(pp.p, std::string("operator")));
  const qvn::PolarContract c = qvn::polar_contract(a, pp, ctx.tols);
  const double tol = ctx.tols.tol * std::max(1.0, qvn::opnorm(a));
  for (const auto& [name, r] : {std::pair{"product", c.product}, std::pair{"positive", c.positive},
                                std::pair{"isometric", c.isometric}, std::pair{"kernel_inclusion", c.kernel_inclusion},
                                std::pair{"modulus", c.modulus}, std::pair{"kernels_equal", c.kernels_equal},
                                std::pair{"range_closed", c.range_closed}})
    rep.check(name, r <= tol, r);
  return rep.all_passed() ? QVN_OK : QVN_ERR_CHECK_FAILED;
}

qvn_status cmd_reduce(qvn_context& ctx, const json& input, qvn::io::Report& rep) {
  const qvn::ToySystem sys = qvn::io::toy_system_from_json(input);
  const qvn::ReductionOutcome out = qvn::reduce(sys, ctx.tols);
  rep.set("reduction", qvn::io::to_json(out));
  for (const qvn::LedgerEntry& e : out.ledger) rep.check(e.name, e.passed, e.residual);
  if (!out.ok()) {
    rep.set("error", out.message);
    ctx.last_error = out.message;
    return status_of(out.diagnostic);
  }
  if (!sys.generators.empty()) {
    const qvn::QMatrix m2 = qvn::mass_operator(sys.generators, ctx.tols);
    const std::size_t n = m2.rows();
    const double c = qvn::re_trace(m2) / static_cast<double>(n);
    const double scatter = qvn::frobenius(m2 - c * qvn::QMatrix::identity(n));
    rep.set("mass_squared", c);
    rep.check("mass_scalar", scatter <= 100.0 * ctx.tols.tol * std::max(1.0, std::abs(c)), scatter);
  }
  return rep.all_passed() ? QVN_OK : QVN_ERR_CHECK_FAILED;
}

}  // namespace

extern "C" {

const char* qvn_status_string(qvn_status status) {
  switch (status) {
    case QVN_OK: return "ok";
    case QVN_ERR_CHECK_FAILED: return "check failed";
    case QVN_ERR_PARSE: return "parse error";
    case QVN_ERR_PRECONDITION: return "precondition violated";
    case QVN_ERR_DEGENERATE: return "numerical degeneracy";
    case QVN_ERR_INTERNAL: return "internal error";
    case QVN_ERR_INVALID_ARGUMENT: return "invalid argument";
  }
  return "unknown status";
}

const char* qvn_version(void) { return "0.1.0"; }

qvn_status qvn_context_create(qvn_context** out) {
  if (!out) return QVN_ERR_INVALID_ARGUMENT;
  *out = new (std::nothrow) qvn_context();
  return *out ? QVN_OK : QVN_ERR_INTERNAL;
}

void qvn_context_destroy(qvn_context* ctx) { delete ctx; }

qvn_status qvn_context_set_tolerance(qvn_context* ctx, double tol) {
  if (!ctx) return QVN_ERR_INVALID_ARGUMENT;
  if (!(tol > 0.0) || !std::isfinite(tol)) return invalid(ctx, "tolerance must be positive and finite");
  ctx->tols.tol = tol;
  return QVN_OK;
}

qvn_status qvn_context_set_rank_eps(qvn_context* ctx, double rank_eps) {
  if (!ctx) return QVN_ERR_INVALID_ARGUMENT;
  if (!(rank_eps > 0.0) || !std::isfinite(rank_eps)) return invalid(ctx, "rank epsilon must be positive and finite");
  ctx->tols.rank_eps = rank_eps;
  return QVN_OK;
}

qvn_status qvn_context_set_seed(qvn_context* ctx, uint64_t seed) {
  if (!ctx) return QVN_ERR_INVALID_ARGUMENT;
  ctx->seed = seed;
  return QVN_OK;
}

double qvn_context_tolerance(const qvn_context* ctx) { return ctx ? ctx->tols.tol : 0.0; }

const char* qvn_context_last_error(const qvn_context* ctx) { return ctx ? ctx->last_error.c_str() : ""; }

qvn_status qvn_matrix_create(qvn_context* ctx, size_t rows, size_t cols, qvn_matrix** out) {
  if (!out) return invalid(ctx, "null output pointer");
  return guarded(ctx, [&] {
    *out = new qvn_matrix{qvn::QMatrix(rows, cols)};
    return QVN_OK;
  });
}

qvn_status qvn_matrix_from_json(qvn_context* ctx, const char* text, qvn_matrix** out) {
  if (!text || !out) return invalid(ctx, "null argument");
  return guarded(ctx, [&] {
    *out = new qvn_matrix{qvn::io::matrix_from_json(qvn::io::parse(text))};
    return QVN_OK;
  });
}

qvn_status qvn_matrix_to_json(qvn_context* ctx, const qvn_matrix* m, char** out) {
  if (!m || !out) return invalid(ctx, "null argument");
  return guarded(ctx, [&] {
    *out = dup_string(qvn::io::to_json(m->m).dump());
    return *out ? QVN_OK : QVN_ERR_INTERNAL;
  });
}

void qvn_matrix_destroy(qvn_matrix* m) { delete m; }

size_t qvn_matrix_rows(const qvn_matrix* m) { return m ? m->m.rows() : 0; }

size_t qvn_matrix_cols(const qvn_matrix* m) { return m ? m->m.cols() : 0; }

qvn_status qvn_matrix_set(qvn_matrix* m, size_t row, size_t col, const double q[4]) {
  if (!m || !q || row >= m->m.rows() || col >= m->m.cols()) return QVN_ERR_INVALID_ARGUMENT;
  m->m(row, col) = qvn::Quaternion(q[0], q[1], q[2], q[3]);
  return QVN_OK;
}

qvn_status qvn_matrix_get(const qvn_matrix* m, size_t row, size_t col, double q[4]) {
  if (!m || !q || row >= m->m.rows() || col >= m->m.cols()) return QVN_ERR_INVALID_ARGUMENT;
  const qvn::Quaternion& e = m->m(row, col);
  q[0] = e.a;
  q[1] = e.b;
  q[2] = e.c;
  q[3] = e.d;
  return QVN_OK;
}

qvn_status qvn_matrix_multiply(qvn_context* ctx, const qvn_matrix* a, const qvn_matrix* b, qvn_matrix** out) {
  if (!a || !b || !out) return invalid(ctx, "null argument");
  if (a->m.cols() != b->m.rows()) return invalid(ctx, "inner dimensions differ");
  return guarded(ctx, [&] {
    *out = new qvn_matrix{a->m * b->m};
    return QVN_OK;
  });
}

qvn_status qvn_matrix_adjoint(qvn_context* ctx, const qvn_matrix* a, qvn_matrix** out) {
  if (!a || !out) return invalid(ctx, "null argument");
  return guarded(ctx, [&] {
    *out = new qvn_matrix{qvn::adjoint(a->m)};
    return QVN_OK;
  });
}

qvn_status qvn_matrix_opnorm(qvn_context* ctx, const qvn_matrix* a, double* out) {
  if (!a || !out) return invalid(ctx, "null argument");
  return guarded(ctx, [&] {
    *out = qvn::opnorm(a->m);
    return QVN_OK;
  });
}

qvn_status qvn_algebra_generated(qvn_context* ctx, const qvn_matrix* const* gens, size_t count, qvn_algebra** out) {
  if (!ctx || !out || (count > 0 && !gens)) return invalid(ctx, "null argument");
  return guarded(ctx, [&] {
    const std::vector<qvn::QMatrix> ms = collect(gens, count);
    require_uniform(ms);
    *out = new qvn_algebra{qvn::generated_algebra(qvn::symmetrize(ms), ctx->tols)};
    return QVN_OK;
  });
}

qvn_status qvn_algebra_commutant(qvn_context* ctx, const qvn_matrix* const* gens, size_t count, qvn_algebra** out) {
  if (!ctx || !out || (count > 0 && !gens)) return invalid(ctx, "null argument");
  return guarded(ctx, [&] {
    const std::vector<qvn::QMatrix> ms = collect(gens, count);
    require_uniform(ms);
    *out = new qvn_algebra{qvn::commutant(ms, ctx->tols)};
    return QVN_OK;
  });
}

void qvn_algebra_destroy(qvn_algebra* alg) { delete alg; }

size_t qvn_algebra_dim(const qvn_algebra* alg) { return alg ? alg->a.dim() : 0; }

size_t qvn_algebra_n(const qvn_algebra* alg) { return alg ? alg->a.n() : 0; }

qvn_status qvn_algebra_basis(qvn_context* ctx, const qvn_algebra* alg, size_t index, qvn_matrix** out) {
  if (!alg || !out) return invalid(ctx, "null argument");
  if (index >= alg->a.dim()) return invalid(ctx, "basis index out of range");
  return guarded(ctx, [&] {
    *out = new qvn_matrix{alg->a.basis()[index]};
    return QVN_OK;
  });
}

qvn_status qvn_algebra_contains(qvn_context* ctx, const qvn_algebra* alg, const qvn_matrix* m, int* out) {
  if (!ctx || !alg || !m || !out) return invalid(ctx, "null argument");
  if (m->m.rows() != alg->a.n() || m->m.cols() != alg->a.n()) return invalid(ctx, "matrix size differs from algebra");
  return guarded(ctx, [&] {
    *out = alg->a.contains(m->m, ctx->tols.tol * std::max(1.0, qvn::frobenius(m->m))) ? 1 : 0;
    return QVN_OK;
  });
}

qvn_status qvn_algebra_classify(qvn_context* ctx, const qvn_algebra* alg, qvn_algebra_type* type, qvn_matrix** j_out,
                                qvn_matrix** k_out) {
  if (!ctx || !alg || !type) return invalid(ctx, "null argument");
  if (j_out) *j_out = nullptr;
  if (k_out) *k_out = nullptr;
  return guarded(ctx, [&] {
    const qvn::AlgebraType t = qvn::classify(alg->a, true, ctx->tols);
    switch (t.tag) {
      case qvn::AlgebraTypeTag::QuaternionicReal: *type = QVN_TYPE_QUATERNIONIC_REAL; break;
      case qvn::AlgebraTypeTag::QuaternionicComplex: *type = QVN_TYPE_QUATERNIONIC_COMPLEX; break;
      case qvn::AlgebraTypeTag::QuaternionicQuaternionic: *type = QVN_TYPE_QUATERNIONIC_QUATERNIONIC; break;
    }
    if (j_out && t.j) *j_out = new qvn_matrix{t.j->matrix()};
    if (k_out && t.k) *k_out = new qvn_matrix{t.k->matrix()};
    return QVN_OK;
  });
}

qvn_status qvn_run_command(qvn_context* ctx, const char* command, const char* input_json, char** report_json) {
  if (!ctx || !command || !input_json || !report_json) return invalid(ctx, "null argument");
  *report_json = nullptr;
  using Handler = qvn_status (*)(qvn_context&, const json&, qvn::io::Report&);
  Handler handler = nullptr;
  const std::string cmd = command;
  if (cmd == "classify") handler = cmd_classify;
  else if (cmd == "commutant") handler = cmd_commutant;
  else if (cmd == "spectral") handler = cmd_spectral;
  else if (cmd == "polar") handler = cmd_polar;
  else if (cmd == "reduce") handler = cmd_reduce;
  if (!handler) return invalid(ctx, "unknown command");

  json input;
  const qvn_status parsed = guarded(ctx, [&] {
    input = qvn::io::parse(input_json);
    return QVN_OK;
  });
  if (parsed != QVN_OK) return parsed;

  qvn::io::Report rep(cmd, ctx->tols);
  qvn_status status = guarded(ctx, [&] { return handler(*ctx, input, rep); });
  if (status == QVN_ERR_PARSE) return status;
  if (status != QVN_OK && !ctx->last_error.empty()) rep.set("error", ctx->last_error);
  rep.set("status", qvn_status_string(status));
  rep.set("exit_code", static_cast<int>(status));
  *report_json = dup_string(rep.document().dump(2));
  return status;
}

qvn_status qvn_verify(qvn_context* ctx, int dim_lo, int dim_hi, int trials, char** report_json) {
  if (!ctx || !report_json) return invalid(ctx, "null argument");
  *report_json = nullptr;
  if (dim_lo < 1 || dim_hi < dim_lo) return invalid(ctx, "dimension range must satisfy 1 <= lo <= hi");
  if (trials < 0) return invalid(ctx, "trial count must be nonnegative");
  return guarded(ctx, [&] {
    qvn::VerifyOptions opts;
    opts.dim_lo = dim_lo;
    opts.dim_hi = dim_hi;
    opts.trials = trials;
    opts.seed = ctx->seed;
    opts.tols = ctx->tols;
    const qvn::VerifySummary summary = qvn::run_verify(opts);
    json props = json::array();
    for (const qvn::PropertyResult& p : summary.properties) {
      props.push_back({{"module", p.module}, {"name", p.name}, {"passed", p.passed}, {"failed", p.failed},
                       {"worst_residual", std::isfinite(p.worst_residual) ? json(p.worst_residual) : json("inf")},
                       {"threshold", p.threshold}});
    }
    json doc = {{"command", "verify"},
                {"seed", opts.seed},
                {"dims", {dim_lo, dim_hi}},
                {"trials", trials},
                {"properties", std::move(props)},
                {"warnings", summary.warnings},
                {"seconds", summary.seconds},
                {"ok", summary.ok()}};
    *report_json = dup_string(doc.dump(2));
    return summary.ok() ? QVN_OK : QVN_ERR_CHECK_FAILED;
  });
}

void qvn_string_free(char* s) { std::free(s); }

}  // extern "C"
