#include "qvn/io.hpp"

#include <algorithm>
#include <iterator>

#include "qvn/error.hpp"

namespace qvn::io {

namespace {

const json& require(const json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) fail(ErrorKind::Parse, std::string("missing key '") + key + "'");
  return doc.at(key);
}

std::size_t dimension(const json& doc, const char* key) {
  const json& v = require(doc, key);
  if (!v.is_number_integer() || v.get<long long>() < 0)
    fail(ErrorKind::Parse, std::string("'") + key + "' must be a nonnegative integer");
  return v.get<std::size_t>();
}

template <class M>
json real_rows(const M& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

json to_json(const QMatrix& m, const std::optional<std::string>& role) {
  json entries = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const Quaternion& q = m(i, j);
      row.push_back({q.a, q.b, q.c, q.d});
    }
    entries.push_back(std::move(row));
  }
  json doc = {{"n", m.rows()}, {"m", m.cols()}, {"entries", std::move(entries)}};
  if (role) doc["role"] = *role;
  return doc;
}

QMatrix matrix_from_json(const json& doc) {
  const std::size_t n = dimension(doc, "n");
  const std::size_t m = dimension(doc, "m");
  const json& entries = require(doc, "entries");
  if (!entries.is_array() || entries.size() != n) fail(ErrorKind::Parse, "'entries' must have n rows");
  if (doc.contains("role")) {
    const json& role = doc.at("role");
    static const char* roles[] = {"operator", "unitary", "projector", "structure"};
    if (!role.is_string() || std::find(std::begin(roles), std::end(roles), role.get<std::string>()) == std::end(roles))
      fail(ErrorKind::Parse, "unknown matrix role");
  }
  QMatrix out(n, m);
  for (std::size_t i = 0; i < n; ++i) {
    const json& row = entries[i];
    if (!row.is_array() || row.size() != m) fail(ErrorKind::Parse, "row " + std::to_string(i) + " must have m entries");
    for (std::size_t j = 0; j < m; ++j) {
      const json& q = row[j];
      if (!q.is_array() || q.size() != 4) fail(ErrorKind::Parse, "quaternion entries are 4-arrays [a,b,c,d]");
      for (const json& c : q)
        if (!c.is_number()) fail(ErrorKind::Parse, "quaternion components must be numbers");
      out(i, j) = Quaternion(q[0].get<double>(), q[1].get<double>(), q[2].get<double>(), q[3].get<double>());
    }
  }
  return out;
}

json to_json(const ComplexMatrix& m) {
  return {{"n", m.rows()}, {"m", m.cols()}, {"re", real_rows(m.real())}, {"im", real_rows(m.imag())}};
}

json to_json(const RealMatrix& m) { return {{"n", m.rows()}, {"m", m.cols()}, {"entries", real_rows(m)}}; }

std::vector<QMatrix> matrices_from_json(const json& doc) {
  std::vector<QMatrix> out;
  if (doc.is_object() && doc.contains("matrices")) {
    const json& list = doc.at("matrices");
    if (!list.is_array()) fail(ErrorKind::Parse, "'matrices' must be an array");
    for (const json& m : list) out.push_back(matrix_from_json(m));
  } else {
    out.push_back(matrix_from_json(doc));
  }
  return out;
}

json to_json(const ToySystem& sys) {
  json doc;
  doc["unitaries"] = json::array();
  for (const QMatrix& u : sys.unitaries) doc["unitaries"].push_back(to_json(u, std::string("unitary")));
  doc["H0"] = to_json(sys.h0, std::string("operator"));
  if (!sys.generators.empty()) {
    doc["generators"] = json::array();
    for (const QMatrix& g : sys.generators) doc["generators"].push_back(to_json(g, std::string("operator")));
  }
  return doc;
}

ToySystem toy_system_from_json(const json& doc) {
  ToySystem sys;
  const json& list = require(doc, "unitaries");
  if (!list.is_array()) fail(ErrorKind::Parse, "'unitaries' must be an array");
  for (const json& m : list) sys.unitaries.push_back(matrix_from_json(m));
  sys.h0 = matrix_from_json(require(doc, "H0"));
  if (doc.contains("generators")) {
    const json& gens = doc.at("generators");
    if (!gens.is_array() || gens.size() != 4) fail(ErrorKind::Parse, "'generators' must list P0..P3");
    for (const json& m : gens) sys.generators.push_back(matrix_from_json(m));
  }
  return sys;
}

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::Parse, e.what());
  }
}

Report::Report(std::string command, const Tolerances& tols) {
  doc_["command"] = std::move(command);
  doc_["tolerances"] = {{"tol", tols.tol}, {"rank_eps", tols.rank_eps}, {"cluster", tols.cluster},
                        {"pinv_cut", tols.pinv_cut}};
  doc_["checks"] = json::array();
}

void Report::check(const std::string& name, bool passed, double residual) {
  doc_["checks"].push_back({{"name", name}, {"passed", passed}, {"residual", residual}});
}

void Report::set(const std::string& key, json value) { doc_[key] = std::move(value); }

bool Report::all_passed() const {
  for (const json& c : doc_.at("checks"))
    if (!c.at("passed").get<bool>()) return false;
  return true;
}

json to_json(const SpectralDecomposition& sd) {
  json pairs = json::array();
  for (const SpectralPair& p : sd.pairs)
    pairs.push_back({{"value", p.value}, {"rank", p.rank}, {"projector", to_json(p.projector, std::string("projector"))}});
  return {{"eigenvalues", sd.values()}, {"multiplicities", sd.values_with_multiplicity()}, {"pairs", std::move(pairs)}};
}

json to_json(const AlgebraType& type) {
  json doc = {{"type", to_string(type.tag)}, {"commutant_dim", type.commutant_dim}};
  if (type.j) doc["J"] = to_json(type.j->matrix(), std::string("structure"));
  if (type.k) doc["K"] = to_json(type.k->matrix(), std::string("structure"));
  return doc;
}

json to_json(const ReductionOutcome& outcome) {
  json ledger = json::array();
  for (const LedgerEntry& e : outcome.ledger)
    ledger.push_back({{"name", e.name}, {"passed", e.passed}, {"residual", e.residual}});
  json doc = {{"diagnostic", to_string(outcome.diagnostic)}, {"message", outcome.message}, {"ledger", std::move(ledger)}};
  if (outcome.report) {
    const ReductionReport& r = *outcome.report;
    doc["J0"] = to_json(r.j0, std::string("structure"));
    doc["modulus"] = to_json(r.modulus, std::string("operator"));
    doc["algebra"] = to_json(r.type);
    json us = json::array();
    for (const ComplexMatrix& u : r.restricted_unitaries) us.push_back(to_json(u));
    doc["complex_model"] = {{"unitaries", std::move(us)}, {"H0", to_json(r.restricted_h0)}};
  }
  return doc;
}

}  // namespace qvn::io
