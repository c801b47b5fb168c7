#pragma once

// JSON documents.
//
// MatrixDocument:  {"n": rows, "m": cols, "entries": [[[a,b,c,d], ...], ...],
//                   "role": "operator" | "unitary" | "projector" | "structure"}
// Matrix list:     {"matrices": [MatrixDocument, ...]}
// ToySystem:       {"unitaries": [...], "H0": MatrixDocument,
//                   "generators": [P0, P1, P2, P3]}      (generators optional)
// Complex matrices in reports: {"n":..,"m":..,"re":[[..]],"im":[[..]]}.

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qvn/qspace.hpp"
#include "qvn/reduce.hpp"
#include "qvn/spectral.hpp"
#include "qvn/valg.hpp"

namespace qvn::io {

using json = nlohmann::json;

json to_json(const QMatrix& m, const std::optional<std::string>& role = std::nullopt);
/// Throws ErrorKind::Parse on malformed documents.
QMatrix matrix_from_json(const json& doc);
json to_json(const ComplexMatrix& m);
json to_json(const RealMatrix& m);

/// Accepts a matrix list or a single MatrixDocument.
std::vector<QMatrix> matrices_from_json(const json& doc);

json to_json(const ToySystem& sys);
ToySystem toy_system_from_json(const json& doc);

/// Throws ErrorKind::Parse on invalid JSON text.
json parse(const std::string& text);

/// Report builder shared by every command.
class Report {
 public:
  Report(std::string command, const Tolerances& tols);

  void check(const std::string& name, bool passed, double residual);
  void set(const std::string& key, json value);
  bool all_passed() const;
  const json& document() const noexcept { return doc_; }

 private:
  json doc_;
};

json to_json(const SpectralDecomposition& sd);
json to_json(const AlgebraType& type);
json to_json(const ReductionOutcome& outcome);

}  // namespace qvn::io
