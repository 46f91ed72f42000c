#include "cimc/json_io.hpp"

namespace cimc {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string var_name(std::size_t slot) { return "x" + std::to_string(slot + 1); }

std::size_t parse_var(const std::string& name) {
  if (name.size() < 2 || name[0] != 'x')
    throw std::invalid_argument("parse: bad variable name " + name);
  const unsigned long idx = std::stoul(name.substr(1));
  if (idx == 0) throw std::invalid_argument("parse: bad variable name " + name);
  return static_cast<std::size_t>(idx - 1);
}

ordered_json exponents_json(const std::map<std::size_t, Int>& m) {
  ordered_json out = ordered_json::object();
  for (const auto& [slot, c] : m) out[var_name(slot)] = c.str();
  return out;
}

std::map<std::size_t, Int> parse_exponents(const ordered_json& j) {
  std::map<std::size_t, Int> out;
  for (const auto& [key, val] : j.items()) out[parse_var(key)] = Int(val.get<std::string>());
  return out;
}

ordered_json binomial_json(const Binomial& b) {
  ordered_json out;
  out["plus"] = exponents_json(b.plus);
  out["minus"] = exponents_json(b.minus);
  if (b.projective)
    out["degree"] = ordered_json::array({b.deg_t.str(), b.deg_u.str()});
  else
    out["degree"] = b.deg_t.str();
  return out;
}

Binomial parse_binomial(const ordered_json& j) {
  Binomial b;
  b.plus = parse_exponents(j.at("plus"));
  b.minus = parse_exponents(j.at("minus"));
  if (j.at("degree").is_array()) {
    b.projective = true;
    b.deg_t = Int(j.at("degree").at(0).get<std::string>());
    b.deg_u = Int(j.at("degree").at(1).get<std::string>());
  } else {
    b.deg_t = Int(j.at("degree").get<std::string>());
  }
  return b;
}

ordered_json trace_json(const ReductionTrace& t) {
  ordered_json steps = ordered_json::array();
  std::size_t idx = 0;
  auto emit_rescale = [&] {
    if (t.rescale_divisor > 1) {
      ordered_json s;
      s["kind"] = "rescale";
      s["divisor"] = t.rescale_divisor.str();
      steps.push_back(std::move(s));
    }
  };
  for (const ReductionStep& step : t.steps) {
    if (idx == t.dup_steps) emit_rescale();
    ++idx;
    ordered_json s;
    switch (step.kind) {
      case ReductionStep::Kind::scale:
        s["kind"] = "scale";
        s["slot"] = step.slot;
        s["factor"] = step.factor.str();
        break;
      case ReductionStep::Kind::remove:
        s["kind"] = "remove";
        s["slot"] = step.slot;
        s["target"] = step.cert.target.str();
        s["witness"] = exponents_json(step.cert.coeffs);
        break;
      case ReductionStep::Kind::drop_free:
        s["kind"] = "drop_free";
        s["slot"] = step.slot;
        break;
    }
    steps.push_back(std::move(s));
  }
  if (idx == t.dup_steps) emit_rescale();
  return steps;
}

void parse_trace_steps(const ordered_json& arr, ReductionTrace& t) {
  bool seen_rescale = false;
  for (const auto& s : arr) {
    const std::string kind = s.at("kind").get<std::string>();
    if (kind == "rescale") {
      t.rescale_divisor = Int(s.at("divisor").get<std::string>());
      t.dup_steps = t.steps.size();
      seen_rescale = true;
      continue;
    }
    ReductionStep step;
    step.slot = s.at("slot").get<std::size_t>();
    if (kind == "scale") {
      step.kind = ReductionStep::Kind::scale;
      step.factor = Int(s.at("factor").get<std::string>());
    } else if (kind == "remove") {
      step.kind = ReductionStep::Kind::remove;
      step.cert.target = Int(s.at("target").get<std::string>());
      step.cert.coeffs = parse_exponents(s.at("witness"));
    } else if (kind == "drop_free") {
      step.kind = ReductionStep::Kind::drop_free;
    } else {
      throw std::invalid_argument("parse: unknown trace step kind " + kind);
    }
    t.steps.push_back(std::move(step));
  }
  if (!seen_rescale) {
    t.rescale_divisor = 1;
    t.dup_steps = 0;
  }
}

ordered_json oracle_json(const OracleReport& r) {
  ordered_json out;
  out["bound"] = r.bound.str();
  out["scan_exhausted"] = r.scan_exhausted;
  out["minimal_generators_within_bound"] = r.mu_within_bound;
  ordered_json betti = ordered_json::array();
  for (const auto& e : r.betti) {
    ordered_json row;
    if (r.projective)
      row["degree"] = ordered_json::array({e.deg_t.str(), e.deg_u.str()});
    else
      row["degree"] = e.deg_t.str();
    row["count"] = e.count;
    betti.push_back(std::move(row));
  }
  out["betti"] = std::move(betti);
  return out;
}

}  // namespace

VerdictDocument make_document(const Verdict& v) {
  VerdictDocument doc;
  doc.input = v.trace.initial;
  doc.variant = v.projective ? "projective" : "affine";
  doc.verdict = to_string(v.decision);
  doc.method = to_string(v.method);
  doc.generators = v.generators;
  doc.frobenius = v.frobenius_number;
  doc.trace = v.trace;
  doc.oracle = v.oracle_report;
  return doc;
}

VerdictDocument make_document(const FamilyVerdict& fv) {
  VerdictDocument doc = make_document(fv.verdict);
  doc.matched_condition = fv.matched_condition;
  doc.hypothesis_report = fv.hypotheses;
  return doc;
}

nlohmann::ordered_json document_json(const VerdictDocument& doc) {
  ordered_json out;
  ordered_json input = ordered_json::array();
  for (const Int& v : doc.input) input.push_back(v.str());
  out["input"] = std::move(input);
  out["variant"] = doc.variant;
  out["verdict"] = doc.verdict;
  out["method"] = doc.method;
  out["matched_condition"] =
      doc.matched_condition ? ordered_json(*doc.matched_condition) : ordered_json(nullptr);
  ordered_json gens = ordered_json::array();
  for (const Binomial& b : doc.generators) gens.push_back(binomial_json(b));
  out["generators"] = std::move(gens);
  out["frobenius"] = doc.frobenius ? ordered_json(doc.frobenius->str()) : ordered_json(nullptr);
  out["trace"] = trace_json(doc.trace);
  ordered_json hyps = ordered_json::array();
  for (const FamilyHypothesis& h : doc.hypothesis_report) {
    ordered_json hj;
    hj["name"] = h.name;
    hj["satisfied"] = h.satisfied;
    hj["note"] = h.note;
    hyps.push_back(std::move(hj));
  }
  out["hypothesis_report"] = std::move(hyps);
  if (doc.oracle) out["oracle"] = oracle_json(*doc.oracle);
  return out;
}

VerdictDocument parse_document(const std::string& text) {
  const ordered_json j = ordered_json::parse(text);
  VerdictDocument doc;
  for (const auto& v : j.at("input")) doc.input.push_back(Int(v.get<std::string>()));
  doc.variant = j.at("variant").get<std::string>();
  doc.verdict = j.at("verdict").get<std::string>();
  doc.method = j.at("method").get<std::string>();
  if (!j.at("matched_condition").is_null())
    doc.matched_condition = j.at("matched_condition").get<std::string>();
  for (const auto& g : j.at("generators")) doc.generators.push_back(parse_binomial(g));
  if (!j.at("frobenius").is_null()) doc.frobenius = Int(j.at("frobenius").get<std::string>());
  doc.trace.initial = doc.input;
  parse_trace_steps(j.at("trace"), doc.trace);
  doc.trace.residual = replay_trace(doc.trace);
  for (const auto& h : j.at("hypothesis_report")) {
    FamilyHypothesis hy;
    hy.name = h.at("name").get<std::string>();
    hy.satisfied = h.at("satisfied").get<bool>();
    hy.note = h.at("note").get<std::string>();
    doc.hypothesis_report.push_back(hy);
  }
  return doc;
}

}  // namespace cimc
