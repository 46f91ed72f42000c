// Command-line front end: affine/projective decisions, family theorems,
// Frobenius numbers, the counting oracle, and parameter sweeps.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include "cimc/json_io.hpp"
#include "cimc/oracle.hpp"

using namespace cimc;

namespace {

// Malformed command input (bad integer syntax, bad range spec); exits 1.
// Semantically invalid values (nonpositive, non-coprime p,q) surface as
// std::invalid_argument from the library and exit 2.
struct usage_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string trim(const std::string& s) {
  const std::size_t b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const std::size_t e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

Int parse_decimal(const std::string& raw) {
  const std::string t = trim(raw);
  std::size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
  if (i == t.size()) throw usage_error("not an integer: '" + raw + "'");
  for (std::size_t k = i; k < t.size(); ++k)
    if (t[k] < '0' || t[k] > '9') throw usage_error("not an integer: '" + raw + "'");
  return Int(t);
}

long long parse_ll(const std::string& raw) {
  const Int v = parse_decimal(raw);
  if (v > Int(std::numeric_limits<long long>::max()) ||
      v < Int(std::numeric_limits<long long>::min()))
    throw usage_error("integer out of range: '" + raw + "'");
  return v.convert_to<long long>();
}

std::vector<Int> parse_gens(const std::string& list) {
  std::vector<Int> out;
  std::stringstream ss(list);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(parse_decimal(tok));
  if (out.empty()) throw usage_error("empty generator list");
  return out;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file: " + out_path);
  f << text;
}

std::string verdict_word(Decision d) {
  switch (d) {
    case Decision::ci: return "CI";
    case Decision::not_ci: return "NotCI";
    default: return "Inconclusive";
  }
}

std::string monomial_string(const std::map<std::size_t, Int>& m) {
  if (m.empty()) return "1";
  std::string out;
  for (const auto& [slot, e] : m) {
    if (!out.empty()) out += "*";
    out += "x" + std::to_string(slot + 1);
    if (e != 1) out += "^" + e.str();
  }
  return out;
}

std::string binomial_string(const Binomial& b) {
  std::string s = monomial_string(b.plus) + " - " + monomial_string(b.minus);
  s += "  (degree " + b.deg_t.str();
  if (b.projective) s += ", " + b.deg_u.str();
  s += ")";
  return s;
}

std::string verdict_text(const Verdict& v) {
  std::string out = verdict_word(v.decision) + "\n";
  out += "method: " + std::string(to_string(v.method)) + "\n";
  if (v.decision != Decision::ci && !v.trace.residual.empty()) {
    out += "residual:";
    for (const Int& r : v.trace.residual) out += " " + r.str();
    out += "\n";
  }
  for (const Binomial& g : v.generators) out += "  " + binomial_string(g) + "\n";
  if (v.frobenius_number) out += "frobenius: " + v.frobenius_number->str() + "\n";
  return out;
}

std::string family_text(const FamilyVerdict& fv) {
  std::string out = "values:";
  for (const Int& v : fv.verdict.trace.initial) out += " " + v.str();
  out += "\n";
  for (const FamilyHypothesis& h : fv.hypotheses)
    out += "hypothesis " + h.name + ": " + (h.satisfied ? "ok" : "FAILED") +
           (h.note.empty() ? "" : " (" + h.note + ")") + "\n";
  out += verdict_text(fv.verdict);
  if (fv.matched_condition) out += "condition: " + *fv.matched_condition + "\n";
  return out;
}

std::string json_text(const nlohmann::ordered_json& j) { return j.dump(2) + "\n"; }

int exit_for(Decision d, bool strict) {
  return (d == Decision::inconclusive && strict) ? 3 : 0;
}

// ---- sweep ----------------------------------------------------------

struct KeyRange {
  std::string key;
  long long lo = 0;
  long long hi = 0;
};

std::map<std::string, std::pair<long long, long long>> parse_ranges(const std::string& spec) {
  std::map<std::string, std::pair<long long, long long>> out;
  std::stringstream ss(spec);
  std::string part;
  while (std::getline(ss, part, ',')) {
    const std::size_t eq = part.find('=');
    if (eq == std::string::npos) throw usage_error("range item without '=': '" + part + "'");
    const std::string key = trim(part.substr(0, eq));
    const std::string val = part.substr(eq + 1);
    if (key.empty()) throw usage_error("range item without key: '" + part + "'");
    long long lo, hi;
    const std::size_t dots = val.find("..");
    if (dots == std::string::npos) {
      lo = hi = parse_ll(val);
    } else {
      lo = parse_ll(val.substr(0, dots));
      hi = parse_ll(val.substr(dots + 2));
    }
    if (lo > hi) throw usage_error("empty range for '" + key + "'");
    if (!out.emplace(key, std::make_pair(lo, hi)).second)
      throw usage_error("duplicate range key '" + key + "'");
  }
  if (out.empty()) throw usage_error("empty range spec");
  return out;
}

// Canonical parameter order per family; this is also the CSV column and
// grid iteration order (first key varies slowest).
std::vector<KeyRange> sweep_plan(const std::string& family,
                                 const std::string& ranges_spec) {
  struct KeyDef {
    const char* key;
    bool required;
    long long def;
  };
  std::vector<KeyDef> defs;
  if (family == "gen-arith") {
    defs = {{"d1", true, 0}, {"h", false, 1}, {"step", true, 0}, {"n", false, 3}};
  } else if (family == "almost") {
    defs = {{"d1", true, 0}, {"h", false, 1}, {"step", true, 0}, {"n", false, 4},
            {"dn", true, 0}};
  } else if (family == "fib") {
    defs = {{"p", false, 1}, {"q", false, 1}, {"h", false, 1}, {"a", true, 0},
            {"d", false, 1}, {"n", false, 3}};
  } else if (family == "lucas") {
    defs = {{"p", false, 1}, {"q", false, 1}, {"a", true, 0}, {"d", false, 1},
            {"n", false, 3}};
  } else {
    throw usage_error("unknown family '" + family + "'");
  }
  auto ranges = parse_ranges(ranges_spec);
  std::vector<KeyRange> plan;
  for (const KeyDef& d : defs) {
    auto it = ranges.find(d.key);
    if (it == ranges.end()) {
      if (d.required) throw usage_error("family " + family + " needs a range for '" + d.key + "'");
      plan.push_back({d.key, d.def, d.def});
    } else {
      plan.push_back({d.key, it->second.first, it->second.second});
      ranges.erase(it);
    }
  }
  if (!ranges.empty())
    throw usage_error("range key '" + ranges.begin()->first + "' does not apply to " + family);
  return plan;
}

FamilyParams point_params(const std::string& family,
                          const std::map<std::string, long long>& v) {
  auto get = [&](const char* k) { return v.at(k); };
  if (family == "gen-arith")
    return GenArithParams{Int(get("d1")), Int(get("h")), Int(get("step")),
                          static_cast<std::size_t>(get("n"))};
  if (family == "almost")
    return AlmostArithParams{Int(get("d1")), Int(get("h")), Int(get("step")),
                             static_cast<std::size_t>(get("n") - 1), Int(get("dn"))};
  if (family == "fib")
    return FibonacciParams{PqParams(Int(get("p")), Int(get("q"))), get("h"), get("a"),
                           get("d"), static_cast<std::size_t>(get("n"))};
  return LucasParams{PqParams(Int(get("p")), Int(get("q"))), get("a"), get("d"),
                     static_cast<std::size_t>(get("n"))};
}

struct SweepOptions {
  std::string family;
  std::string ranges;
  std::string out_path;
  bool projective = false;
  long long oracle_max = 0;  // 0 disables the oracle column
};

int run_sweep(const SweepOptions& opt) {
  const std::vector<KeyRange> plan = sweep_plan(opt.family, opt.ranges);
  std::ofstream csv(opt.out_path, std::ios::binary);
  if (!csv) throw std::runtime_error("cannot open output file: " + opt.out_path);
  for (const KeyRange& k : plan) csv << k.key << ",";
  csv << "family_verdict,general_verdict,oracle_verdict,agreement\n";

  std::vector<long long> cursor;
  for (const KeyRange& k : plan) cursor.push_back(k.lo);
  long long rows = 0, skipped = 0, disagreements = 0;
  bool done = cursor.empty();
  while (!done) {
    std::map<std::string, long long> point;
    for (std::size_t i = 0; i < plan.size(); ++i) point[plan[i].key] = cursor[i];

    bool valid = true;
    std::string fam_word, gen_word, oracle_word;
    std::vector<Int> values;
    try {
      const FamilyParams params = point_params(opt.family, point);
      values = family_build(params);
      const FamilyVerdict fam = family_ci(params, opt.projective);
      fam_word = to_string(fam.verdict.decision);
    } catch (const std::invalid_argument&) {
      valid = false;
    } catch (const resource_error&) {
      valid = false;
    }
    if (valid) {
      const CurveSpec spec{values};
      try {
        const Verdict gen = opt.projective ? projective_ci(spec) : affine_ci(spec);
        gen_word = to_string(gen.decision);
      } catch (const resource_error&) {
        gen_word = to_string(Decision::inconclusive);
      }
      if (opt.oracle_max > 0 && spec.max_value() <= Int(opt.oracle_max)) {
        try {
          const Verdict o = opt.projective ? projective_oracle_ci(spec) : oracle_ci(spec);
          oracle_word = to_string(o.decision);
        } catch (const resource_error&) {
          oracle_word = to_string(Decision::inconclusive);
        }
      }
      const std::string inconclusive = to_string(Decision::inconclusive);
      std::vector<std::string> definite;
      for (const std::string& w : {fam_word, gen_word, oracle_word})
        if (!w.empty() && w != inconclusive) definite.push_back(w);
      bool agree = true;
      for (const std::string& w : definite) agree = agree && w == definite.front();
      if (!agree) ++disagreements;

      for (std::size_t i = 0; i < plan.size(); ++i) csv << cursor[i] << ",";
      csv << fam_word << "," << gen_word << "," << oracle_word << ","
          << (agree ? "true" : "false") << "\n";
      ++rows;
    } else {
      ++skipped;
    }

    // Odometer advance, last key fastest.
    std::size_t i = plan.size();
    while (i > 0) {
      --i;
      if (cursor[i] < plan[i].hi) {
        ++cursor[i];
        break;
      }
      cursor[i] = plan[i].lo;
      if (i == 0) done = true;
    }
  }
  std::cout << "rows: " << rows << "  skipped_invalid: " << skipped
            << "  disagreements: " << disagreements << "\n";
  return 0;
}

// ---- single commands ------------------------------------------------

struct CommonFlags {
  bool json = false;
  bool strict = false;
  std::string out_path;
};

int run_verdict_command(const CurveSpec& spec, bool projective, const CommonFlags& f) {
  const Verdict v = projective ? projective_ci(spec) : affine_ci(spec);
  if (f.json)
    emit(json_text(document_json(make_document(v))), f.out_path);
  else
    emit(verdict_text(v), f.out_path);
  return exit_for(v.decision, f.strict);
}

int run_family_command(const FamilyParams& params, bool projective, bool fallback,
                       const CommonFlags& f) {
  const FamilyVerdict fam = family_ci(params, projective);
  bool hypothesis_failed = false;
  for (const FamilyHypothesis& h : fam.hypotheses) hypothesis_failed |= !h.satisfied;
  std::optional<Verdict> fb;
  if (fallback && hypothesis_failed) {
    const CurveSpec spec{family_build(params)};
    fb = projective ? projective_ci(spec) : affine_ci(spec);
  }
  if (f.json) {
    nlohmann::ordered_json j = document_json(make_document(fam));
    if (fb) j["fallback"] = document_json(make_document(*fb));
    emit(json_text(j), f.out_path);
  } else {
    std::string out = family_text(fam);
    if (fb) out += "fallback:\n" + verdict_text(*fb);
    emit(out, f.out_path);
  }
  return exit_for(fb ? fb->decision : fam.verdict.decision, f.strict);
}

int run_frobenius_command(const CurveSpec& spec, const CommonFlags& f) {
  const Int g = frobenius(spec);
  if (f.json) {
    nlohmann::ordered_json j;
    nlohmann::ordered_json input = nlohmann::ordered_json::array();
    for (const Int& v : spec.gens()) input.push_back(v.str());
    j["input"] = std::move(input);
    j["frobenius"] = g.str();
    emit(json_text(j), f.out_path);
  } else {
    emit(g.str() + "\n", f.out_path);
  }
  return 0;
}

int run_oracle_command(const CurveSpec& spec, std::optional<Int> bound, bool projective,
                       const CommonFlags& f) {
  const Verdict v = projective ? projective_oracle_ci(spec, bound) : oracle_ci(spec, bound);
  if (f.json) {
    emit(json_text(document_json(make_document(v))), f.out_path);
  } else {
    std::string out = verdict_text(v);
    if (v.oracle_report) {
      const OracleReport& r = *v.oracle_report;
      out += "scan bound: " + r.bound.str() + "\n";
      out += "scan exhausted: " + std::string(r.scan_exhausted ? "yes" : "no") + "\n";
      out += "minimal generators within bound: " + std::to_string(r.mu_within_bound) + "\n";
      for (const auto& e : r.betti) {
        out += "  degree " + e.deg_t.str();
        if (r.projective) out += "," + e.deg_u.str();
        out += ": " + std::to_string(e.count) + "\n";
      }
    }
    emit(out, f.out_path);
  }
  return exit_for(v.decision, f.strict);
}

int run(int argc, char** argv) {
  CLI::App app{"complete intersection decisions for monomial curves"};
  app.require_subcommand(1);
  // The family parameter --h would clash with the default -h,--help pair,
  // so every App carries a long-only help flag.
  auto with_help = [](CLI::App* a) {
    a->set_help_flag("--help", "print this help and exit");
    return a;
  };
  with_help(&app);

  CommonFlags flags;
  app.add_flag("--json", flags.json, "emit a JSON document instead of text");
  app.add_flag("--strict", flags.strict, "exit 3 on an inconclusive verdict");
  app.add_option("--out", flags.out_path, "write output to this file instead of stdout");

  std::string gens_affine, gens_projective, gens_frob, gens_oracle;
  auto* affine = with_help(app.add_subcommand("affine", "decide the affine monomial curve"));
  affine->fallthrough();
  affine->add_option("--gens", gens_affine, "comma-separated generators")->required();

  auto* projective = with_help(app.add_subcommand("projective", "decide the projective closure"));
  projective->fallthrough();
  projective->add_option("--gens", gens_projective, "comma-separated generators")->required();

  auto* frob = with_help(app.add_subcommand("frobenius", "Frobenius number of the numerical semigroup"));
  frob->fallthrough();
  frob->add_option("--gens", gens_frob, "comma-separated generators")->required();

  std::string oracle_bound;
  bool oracle_projective = false;
  auto* oracle = with_help(app.add_subcommand("oracle", "count minimal generators by degree scan"));
  oracle->fallthrough();
  oracle->add_option("--gens", gens_oracle, "comma-separated generators")->required();
  oracle->add_option("--bound", oracle_bound, "scan degrees up to this bound");
  oracle->add_flag("--projective", oracle_projective, "scan the projective closure");

  auto* family = with_help(app.add_subcommand("family", "closed-form decision for a named family"));
  family->fallthrough();
  family->require_subcommand(1);
  bool family_projective = false, family_fallback = false;
  family->add_flag("--projective", family_projective, "decide the projective closure");
  family->add_flag("--fallback", family_fallback,
                   "rerun the general algorithm when a hypothesis fails");

  std::string ga_d1, ga_h = "1", ga_step;
  long long ga_n = 3;
  auto* ga = with_help(family->add_subcommand("gen-arith", "generalized arithmetic sequence"));
  ga->fallthrough();
  ga->add_option("--d1", ga_d1, "first value")->required();
  ga->add_option("--h", ga_h, "multiplier on the first value");
  ga->add_option("--step", ga_step, "common difference")->required();
  ga->add_option("--n", ga_n, "number of values");

  std::string al_d1, al_h = "1", al_step, al_dn;
  long long al_n = 4;
  auto* al = with_help(family->add_subcommand("almost", "generalized arithmetic block plus one value"));
  al->fallthrough();
  al->add_option("--d1", al_d1, "first value of the block")->required();
  al->add_option("--h", al_h, "multiplier on the first value");
  al->add_option("--step", al_step, "common difference of the block")->required();
  al->add_option("--n", al_n, "total number of values, extra included");
  al->add_option("--dn", al_dn, "the extra value")->required();

  long long fb_p = 1, fb_q = 1, fb_h = 1, fb_a = 1, fb_d = 1, fb_n = 3;
  auto* fb = with_help(family->add_subcommand("fib", "(p,q)-Fibonacci values at arithmetic indices"));
  fb->fallthrough();
  fb->add_option("--p", fb_p, "recurrence coefficient p");
  fb->add_option("--q", fb_q, "recurrence coefficient q");
  fb->add_option("--h", fb_h, "multiplier on the first index");
  fb->add_option("--a", fb_a, "first index")->required();
  fb->add_option("--d", fb_d, "index step");
  fb->add_option("--n", fb_n, "number of values");

  long long lc_p = 1, lc_q = 1, lc_a = 1, lc_d = 1, lc_n = 3;
  auto* lc = with_help(family->add_subcommand("lucas", "(p,q)-Lucas values at arithmetic indices"));
  lc->fallthrough();
  lc->add_option("--p", lc_p, "recurrence coefficient p");
  lc->add_option("--q", lc_q, "recurrence coefficient q");
  lc->add_option("--a", lc_a, "first index")->required();
  lc->add_option("--d", lc_d, "index step");
  lc->add_option("--n", lc_n, "number of values");

  SweepOptions sweep_opt;
  auto* sweep = with_help(app.add_subcommand("sweep", "grid sweep of a family, CSV agreement output"));
  sweep->fallthrough();
  sweep->add_option("--family", sweep_opt.family, "gen-arith | almost | fib | lucas")->required();
  sweep->add_option("--ranges", sweep_opt.ranges,
                    "comma-separated inclusive ranges, e.g. d1=2..20,h=1..3")
      ->required();
  sweep->add_option("--out", sweep_opt.out_path, "CSV output path")->required();
  sweep->add_flag("--projective", sweep_opt.projective, "sweep the projective closures");
  sweep->add_option("--oracle-max", sweep_opt.oracle_max,
                    "also run the oracle on points whose max value stays at or below this");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return 1;
  }

  try {
    if (affine->parsed())
      return run_verdict_command(CurveSpec{parse_gens(gens_affine)}, false, flags);
    if (projective->parsed())
      return run_verdict_command(CurveSpec{parse_gens(gens_projective)}, true, flags);
    if (frob->parsed()) return run_frobenius_command(CurveSpec{parse_gens(gens_frob)}, flags);
    if (oracle->parsed()) {
      std::optional<Int> bound;
      if (!oracle_bound.empty()) bound = parse_decimal(oracle_bound);
      return run_oracle_command(CurveSpec{parse_gens(gens_oracle)}, bound, oracle_projective,
                                flags);
    }
    if (family->parsed()) {
      FamilyParams params = [&]() -> FamilyParams {
        if (ga->parsed())
          return GenArithParams{parse_decimal(ga_d1), parse_decimal(ga_h), parse_decimal(ga_step),
                                static_cast<std::size_t>(ga_n)};
        if (al->parsed())
          return AlmostArithParams{parse_decimal(al_d1), parse_decimal(al_h),
                                   parse_decimal(al_step), static_cast<std::size_t>(al_n - 1),
                                   parse_decimal(al_dn)};
        if (fb->parsed())
          return FibonacciParams{PqParams(Int(fb_p), Int(fb_q)), fb_h, fb_a, fb_d,
                                 static_cast<std::size_t>(fb_n)};
        return LucasParams{PqParams(Int(lc_p), Int(lc_q)), lc_a, lc_d,
                           static_cast<std::size_t>(lc_n)};
      }();
      return run_family_command(params, family_projective, family_fallback, flags);
    }
    return run_sweep(sweep_opt);
  } catch (const resource_error& e) {
    std::cerr << "inconclusive: " << e.what() << "\n";
    return flags.strict ? 3 : 0;
  }
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const usage_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
