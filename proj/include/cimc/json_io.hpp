#ifndef CIMC_JSON_IO_HPP
#define CIMC_JSON_IO_HPP

#include "cimc/families.hpp"
#include "cimc/oracle.hpp"

#include <json.hpp>

namespace cimc {

// One self-contained result document; the same shape serves plain curve
// commands and family commands.  All integers render as decimal strings,
// exponent maps use variable names x1..x(n+1) with the last reserved for
// the homogenizing variable.
struct VerdictDocument {
  std::vector<Int> input;
  std::string variant;  // "affine" or "projective"
  std::string verdict;
  std::string method;
  std::optional<std::string> matched_condition;
  std::vector<Binomial> generators;
  std::optional<Int> frobenius;
  ReductionTrace trace;
  std::vector<FamilyHypothesis> hypothesis_report;
  std::optional<OracleReport> oracle;
};

VerdictDocument make_document(const Verdict& v);
VerdictDocument make_document(const FamilyVerdict& fv);

// Deterministic: identical documents serialize to identical bytes.
nlohmann::ordered_json document_json(const VerdictDocument& doc);

// Inverse of document_json over the schema fields.  The optional oracle
// block is emit-only diagnostics and is not recovered; the trace residual
// is recomputed by replay.
VerdictDocument parse_document(const std::string& text);

}  // namespace cimc

#endif
