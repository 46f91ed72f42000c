#include "cimc/families.hpp"

#include <algorithm>
#include <array>
#include <numeric>

namespace cimc {

namespace {

// Sequence terms grow exponentially; past this index even building the
// values is pointless for semigroup work.
constexpr long long kMaxSeqIndex = 200000;

void need_positive(long long v, const char* what) {
  if (v < 1) throw std::invalid_argument(std::string(what) + " must be >= 1");
}

void need_positive(const Int& v, const char* what) {
  if (v < 1) throw std::invalid_argument(std::string(what) + " must be >= 1");
}

void need_small_index(long long idx) {
  if (idx > kMaxSeqIndex)
    throw resource_error("family: sequence index " + std::to_string(idx) + " is out of reach");
}

std::vector<Int> build_gen_arith_block(const Int& d1, const Int& h, const Int& step,
                                       std::size_t n) {
  need_positive(d1, "d1");
  need_positive(h, "h");
  need_positive(step, "step");
  std::vector<Int> vals{d1};
  for (std::size_t k = 1; k < n; ++k) vals.push_back(h * d1 + Int(k) * step);
  return vals;
}

std::vector<Int> build_values(const GenArithParams& P) {
  if (P.n < 3) throw std::invalid_argument("family requires n >= 3");
  return build_gen_arith_block(P.d1, P.h, P.step, P.n);
}

std::vector<Int> build_values(const AlmostArithParams& P) {
  if (P.n_seq < 3) throw std::invalid_argument("family requires a block of at least 3");
  need_positive(P.dn, "dn");
  std::vector<Int> vals = build_gen_arith_block(P.d1, P.h, P.step, P.n_seq);
  if (std::find(vals.begin(), vals.end(), P.dn) != vals.end())
    throw std::invalid_argument("extra value collides with the block");
  vals.push_back(P.dn);
  return vals;
}

std::vector<Int> build_values(const FibonacciParams& P) {
  if (P.n < 3) throw std::invalid_argument("family requires n >= 3");
  need_positive(P.h, "h");
  need_positive(P.a, "a");
  need_positive(P.d, "d");
  need_small_index(P.a);
  need_small_index(P.d);
  need_small_index(P.h);
  const long long top = P.h * P.a + static_cast<long long>(P.n - 1) * P.d;
  need_small_index(top);
  std::vector<Int> vals{seq_term(P.pq, SeqKind::fibonacci, P.a)};
  for (std::size_t k = 1; k < P.n; ++k)
    vals.push_back(seq_term(P.pq, SeqKind::fibonacci, P.h * P.a + static_cast<long long>(k) * P.d));
  return vals;
}

std::vector<Int> build_values(const LucasParams& P) {
  if (P.n < 3) throw std::invalid_argument("family requires n >= 3");
  need_positive(P.a, "a");
  need_positive(P.d, "d");
  need_small_index(P.a);
  need_small_index(P.d);
  const long long top = P.a + static_cast<long long>(P.n - 1) * P.d;
  need_small_index(top);
  std::vector<Int> vals;
  for (std::size_t k = 0; k < P.n; ++k)
    vals.push_back(seq_term(P.pq, SeqKind::lucas, P.a + static_cast<long long>(k) * P.d));
  return vals;
}

Binomial affine_gen(std::initializer_list<std::pair<std::size_t, Int>> plus,
                    std::initializer_list<std::pair<std::size_t, Int>> minus, Int deg) {
  Binomial b;
  for (const auto& [slot, c] : plus)
    if (c > 0) b.plus[slot] = c;
  for (const auto& [slot, c] : minus)
    if (c > 0) b.minus[slot] = c;
  b.deg_t = std::move(deg);
  return b;
}

Binomial proj_gen(std::initializer_list<std::pair<std::size_t, Int>> plus,
                  std::initializer_list<std::pair<std::size_t, Int>> minus, Int deg_t, Int deg_u) {
  Binomial b = affine_gen(plus, minus, std::move(deg_t));
  b.deg_u = std::move(deg_u);
  b.projective = true;
  return b;
}

Verdict base_verdict(const std::vector<Int>& values, bool projective, Decision decision) {
  Verdict v;
  v.decision = decision;
  v.method = Method::family_theorem;
  v.projective = projective;
  v.trace.initial = values;
  v.trace.residual = values;
  v.trace.residual_slots.resize(values.size());
  std::iota(v.trace.residual_slots.begin(), v.trace.residual_slots.end(), 0);
  return v;
}

Int seq(const PqParams& pq, SeqKind kind, long long k) { return seq_term(pq, kind, k); }

// ---- generalized arithmetic sequences ----------------------------------

FamilyVerdict ci_gen_arith(const GenArithParams& P, bool projective, const SearchLimits&) {
  const std::vector<Int> values = build_values(P);
  FamilyVerdict fv;

  const Int g = gcd_many(values);
  fv.hypotheses.push_back({"gcd_one", g == 1, "gcd of the values is " + g.str()});
  bool hyp_ok = g == 1;
  if (!projective) {
    const bool minimal = Int(P.n) <= P.d1;
    fv.hypotheses.push_back({"minimal_generating_set", minimal,
                             minimal ? "n <= d1, so no value is spanned by the others"
                                     : "n > d1, so the block is not a minimal generating set"});
    hyp_ok = hyp_ok && minimal;
  }
  if (!hyp_ok) {
    fv.verdict = base_verdict(values, projective, Decision::inconclusive);
    return fv;
  }

  const Int& d1 = values[0];
  const Int& d2 = values[1];
  const Int& d3 = values[2];

  if (!projective) {
    if (P.n == 3 && d1 % 2 == 0) {
      Verdict v = base_verdict(values, false, Decision::ci);
      v.generators.push_back(affine_gen({{1, 2}}, {{0, P.h}, {2, 1}}, 2 * d2));
      const Int half3 = exact_div(d3, 2);
      v.generators.push_back(affine_gen({{0, half3}}, {{2, exact_div(d1, 2)}}, d1 * half3));
      v.frobenius_number = d1 * half3 - d1 + d2 - d3;
      fv.matched_condition = "gen_arith:triple_even_start";
      fv.verdict = std::move(v);
    } else {
      fv.verdict = base_verdict(values, false, Decision::not_ci);
    }
    return fv;
  }

  if (P.n == 3 && P.h == 1 && d1 % 2 == 0) {
    Verdict v = base_verdict(values, true, Decision::ci);
    v.generators.push_back(proj_gen({{1, 2}}, {{0, 1}, {2, 1}}, 2 * d2, 2 * (d3 - d2)));
    const Int half3 = exact_div(d3, 2);
    v.generators.push_back(
        proj_gen({{0, half3}}, {{2, exact_div(d1, 2)}, {3, d2 - d1}}, d1 * half3, half3 * (d3 - d1)));
    fv.matched_condition = "gen_arith:arithmetic_triple_even_start";
    fv.verdict = std::move(v);
  } else {
    fv.verdict = base_verdict(values, true, Decision::not_ci);
  }
  return fv;
}

// ---- generalized arithmetic block plus one extra value ------------------

// Working presentation: the arithmetic-block triple in slots 0..2 and
// the extra value in slot 3.  Projectively the
// presentation may swap the extra with the block head when the swapped
// triple is the arithmetic one; slot[] maps positions (4 = homogenizing
// variable) back to input slots.
struct AlmostLayout {
  std::array<std::size_t, 5> slot{{0, 1, 2, 3, 4}};
  Int D1, D2, D3, D4;
  Int h;
};

bool minimality_ok(const std::vector<Int>& values, const SearchLimits& limits,
                   std::string& note) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    std::vector<Int> others;
    for (std::size_t j = 0; j < values.size(); ++j)
      if (j != i) others.push_back(values[j]);
    if (member(CurveSpec(others), values[i], limits)) {
      note = "value " + values[i].str() + " is spanned by the others";
      return false;
    }
  }
  note = "no value is spanned by the others";
  return true;
}

FamilyVerdict ci_almost_arith(const AlmostArithParams& P, bool projective,
                              const SearchLimits& limits) {
  const std::vector<Int> values = build_values(P);
  const std::size_t n_total = values.size();
  FamilyVerdict fv;

  const Int g = gcd_many(values);
  fv.hypotheses.push_back({"gcd_one", g == 1, "gcd of the values is " + g.str()});
  bool hyp_ok = g == 1;
  if (!projective) {
    std::string note;
    const bool minimal = hyp_ok ? minimality_ok(values, limits, note) : false;
    if (!hyp_ok) note = "not checked, gcd is not 1";
    fv.hypotheses.push_back({"minimal_generating_set", minimal, note});
    hyp_ok = hyp_ok && minimal;
  }
  if (!hyp_ok) {
    fv.verdict = base_verdict(values, projective, Decision::inconclusive);
    return fv;
  }

  if (n_total != 4) {
    fv.verdict = base_verdict(values, projective, Decision::not_ci);
    return fv;
  }

  AlmostLayout L;
  L.D1 = values[0];
  L.D2 = values[1];
  L.D3 = values[2];
  L.D4 = values[3];
  L.h = P.h;
  const Int dmax = *std::max_element(values.begin(), values.end());

  if (projective) {
    // Work in a presentation whose triple is arithmetic: prefer the
    // extra-headed triple when it is arithmetic, else the given one when
    // h = 1; otherwise no presentation qualifies.
    if (values[1] - P.dn == P.step) {
      L.slot = {{3, 1, 2, 0, 4}};
      L.D1 = P.dn;
      L.D4 = values[0];
      L.h = 1;
    } else if (P.h != 1) {
      fv.verdict = base_verdict(values, true, Decision::not_ci);
      return fv;
    }
  }

  const Int b = boost::multiprecision::gcd(L.D1, L.D2);
  if (exact_div(L.D1, b) % 2 == 0) {
    const CurveSpec triple({L.D1, L.D2, L.D3});
    const Int target = b * L.D4;
    std::optional<Certificate> cert = projective ? member_bounded(triple, target, b, limits)
                                                 : member(triple, target, limits);
    if (cert) {
      Verdict v = base_verdict(values, projective, Decision::ci);
      Int beta[3] = {0, 0, 0};
      for (const auto& [pos, c] : cert->coeffs) beta[pos] = c;
      const Int half1 = exact_div(L.D1, 2 * b);
      const Int half3 = exact_div(L.D3, 2 * b);
      if (!projective) {
        v.generators.push_back(
            affine_gen({{3, b}}, {{0, beta[0]}, {1, beta[1]}, {2, beta[2]}}, target));
        v.generators.push_back(affine_gen({{1, 2}}, {{0, L.h}, {2, 1}}, 2 * L.D2));
        v.generators.push_back(affine_gen({{0, half3}}, {{2, half1}}, L.D1 * half3));
        v.frobenius_number = L.D1 * half3 - L.D1 + L.D2 - L.D3 + (b - 1) * L.D4;
      } else {
        const Int slack = b - cert->coefficient_sum();
        const auto& s = L.slot;
        v.generators.push_back(proj_gen(
            {{s[3], b}}, {{s[0], beta[0]}, {s[1], beta[1]}, {s[2], beta[2]}, {s[4], slack}},
            target, b * (dmax - L.D4)));
        v.generators.push_back(
            proj_gen({{s[1], 2}}, {{s[0], 1}, {s[2], 1}}, 2 * L.D2, 2 * (dmax - L.D2)));
        v.generators.push_back(proj_gen({{s[0], half3}},
                                        {{s[2], half1}, {s[4], exact_div(L.D2 - L.D1, b)}},
                                        L.D1 * half3, half3 * (dmax - L.D1)));
      }
      fv.matched_condition = "almost_arith:absorbed_extra";
      fv.verdict = std::move(v);
      return fv;
    }
  }

  if (L.D1 % 2 == 0 && L.D4 % 2 == 0) {
    const CurveSpec sub_spec({L.D1, L.D3, L.D4});
    const Verdict sub =
        projective ? projective_ci(sub_spec, limits) : affine_ci(sub_spec, std::nullopt, limits);
    if (sub.decision == Decision::ci) {
      Verdict v = base_verdict(values, projective, Decision::ci);
      const auto& s = L.slot;
      if (!projective) {
        if (!sub.frobenius_number)
          throw std::logic_error("almost_arith: sub-curve verdict lacks a Frobenius number");
        v.generators.push_back(affine_gen({{1, 2}}, {{0, L.h}, {2, 1}}, 2 * L.D2));
        v.frobenius_number = 2 * *sub.frobenius_number + L.D2;
      } else {
        v.generators.push_back(
            proj_gen({{s[1], 2}}, {{s[0], 1}, {s[2], 1}}, 2 * L.D2, 2 * (dmax - L.D2)));
      }
      const std::size_t remap[4] = {s[0], s[2], s[3], s[4]};
      for (const Binomial& gsub : sub.generators) {
        Binomial out;
        out.projective = gsub.projective;
        out.deg_t = gsub.deg_t;
        out.deg_u = gsub.deg_u;
        for (const auto& [pos, c] : gsub.plus) out.plus[remap[pos]] = c;
        for (const auto& [pos, c] : gsub.minus) out.minus[remap[pos]] = c;
        v.generators.push_back(std::move(out));
      }
      fv.matched_condition = "almost_arith:even_triple";
      fv.verdict = std::move(v);
      return fv;
    }
  }

  fv.verdict = base_verdict(values, projective, Decision::not_ci);
  return fv;
}

// ---- Fibonacci-valued sets ----------------------------------------------

FamilyVerdict ci_fibonacci(const FibonacciParams& P, bool projective, const SearchLimits& limits) {
  const std::vector<Int> values = build_values(P);
  FamilyVerdict fv;
  const long long a = P.a;
  const long long d = P.d;
  const long long g_ad = std::gcd(a, d);
  const Int& d1 = values[0];
  const Int& d2 = values[1];
  const Int& d3 = values[2];

  if (projective) {
    if (P.n == 3 && P.h == 1 && d % 2 == 0 && a % (2 * d) == 0) {
      const Int F2d = seq(P.pq, SeqKind::fibonacci, 2 * d);
      const Int Ld = seq(P.pq, SeqKind::lucas, d);
      const Int qd = pow_int(P.pq.q, static_cast<unsigned long>(d));
      if (Ld - qd - 1 < 0) throw std::logic_error("fibonacci: slack exponent went negative");
      const Int u1 = exact_div(d3, F2d);
      Verdict v = base_verdict(values, true, Decision::ci);
      v.generators.push_back(proj_gen(
          {{0, u1}}, {{2, exact_div(d1, F2d)}, {3, exact_div(d3 - d1, F2d)}}, d1 * u1,
          u1 * (d3 - d1)));
      v.generators.push_back(
          proj_gen({{1, Ld}}, {{0, qd}, {2, 1}, {3, Ld - qd - 1}}, Ld * d2, Ld * (d3 - d2)));
      fv.matched_condition = "fibonacci:aligned_even_step_triple";
      fv.verdict = std::move(v);
    } else {
      fv.verdict = base_verdict(values, true, Decision::not_ci);
    }
    return fv;
  }

  const char* matched = nullptr;
  if (d % 2 == 1)
    matched = "fibonacci:odd_index_step";
  else if (d >= a)
    matched = "fibonacci:step_at_least_start";
  else if (a == 2 * d)
    matched = "fibonacci:start_equals_double_step";
  else if (g_ad == a - d && a % 2 == 1)
    matched = "fibonacci:gap_gcd_odd_start";
  else if (P.n == 3 && a % (2 * d) == 0)
    matched = "fibonacci:triple_with_aligned_step";

  if (!matched) {
    fv.verdict = base_verdict(values, false, Decision::not_ci);
    return fv;
  }

  Verdict v = base_verdict(values, false, Decision::ci);
  const Int qd = pow_int(P.pq.q, static_cast<unsigned long>(d));
  const Int Ld = seq(P.pq, SeqKind::lucas, d);

  if (d % 2 == 1 || d >= a || a == 2 * d || (g_ad == a - d && a % 2 == 1)) {
    // The tail values all lie in the span of the first two.
    const Int e = boost::multiprecision::gcd(d1, d2);
    v.generators.push_back(affine_gen({{0, exact_div(d2, e)}}, {{1, exact_div(d1, e)}},
                                      d1 * exact_div(d2, e)));
    if (d % 2 == 1) {
      const Int e3 = exact_div(qd * seq(P.pq, SeqKind::fibonacci, P.h * a), d1);
      v.generators.push_back(affine_gen({{2, 1}}, {{0, e3}, {1, Ld}}, d3));
      for (std::size_t i = 4; i <= P.n; ++i)
        v.generators.push_back(
            affine_gen({{i - 1, 1}}, {{i - 3, qd}, {i - 2, Ld}}, values[i - 1]));
    } else {
      const CurveSpec head({d1, d2});
      for (std::size_t i = 3; i <= P.n; ++i) {
        auto cert = member(head, values[i - 1], limits);
        if (!cert) throw std::logic_error("fibonacci: promised span witness is missing");
        Int c0 = 0, c1 = 0;
        for (const auto& [pos, c] : cert->coeffs) (pos == 0 ? c0 : c1) = c;
        v.generators.push_back(affine_gen({{i - 1, 1}}, {{0, c0}, {1, c1}}, values[i - 1]));
      }
    }
    v.frobenius_number = exact_div(d1, e) * exact_div(d2, e) - exact_div(d1, e) - exact_div(d2, e);
  } else {
    // Three values, index step aligned (2d | a, a > 2d, d even).
    const Int F2d = seq(P.pq, SeqKind::fibonacci, 2 * d);
    const Int Fd = seq(P.pq, SeqKind::fibonacci, d);
    const Int u1 = exact_div(d3, F2d);
    v.generators.push_back(affine_gen({{0, u1}}, {{2, exact_div(d1, F2d)}}, d1 * u1));
    const Int e3 = exact_div(qd * seq(P.pq, SeqKind::fibonacci, P.h * a), d1);
    v.generators.push_back(affine_gen({{1, Ld}}, {{0, e3}, {2, 1}}, Ld * d2));
    v.frobenius_number = exact_div(d1 * u1 - d1 + (Ld - 1) * d2 - d3, Fd);
  }
  fv.matched_condition = matched;
  fv.verdict = std::move(v);
  return fv;
}

// ---- Lucas-valued sets --------------------------------------------------

FamilyVerdict ci_lucas(const LucasParams& P, bool projective, const SearchLimits& limits) {
  const std::vector<Int> values = build_values(P);
  FamilyVerdict fv;
  const long long a = P.a;
  const long long d = P.d;
  const long long g_ad = std::gcd(a, d);
  const bool p_odd = P.pq.p % 2 == 1;
  const bool q_odd = P.pq.q % 2 == 1;
  const Int& d1 = values[0];
  const Int& d2 = values[1];
  const Int& d3 = values[2];

  const bool aligned_triple = P.n == 3 && d % 2 == 0 && a % d == 0 && (a / d) % 2 == 1 && p_odd &&
                              (!q_odd || d % 3 != 0);

  if (projective) {
    if (aligned_triple) {
      const Int Ld = seq(P.pq, SeqKind::lucas, d);
      const Int qd = pow_int(P.pq.q, static_cast<unsigned long>(d));
      if (Ld - qd - 1 < 0) throw std::logic_error("lucas: slack exponent went negative");
      const Int u1 = exact_div(d3, Ld);
      Verdict v = base_verdict(values, true, Decision::ci);
      v.generators.push_back(proj_gen(
          {{0, u1}}, {{2, exact_div(d1, Ld)}, {3, exact_div(d3 - d1, Ld)}}, d1 * u1,
          u1 * (d3 - d1)));
      v.generators.push_back(
          proj_gen({{1, Ld}}, {{0, qd}, {2, 1}, {3, Ld - qd - 1}}, Ld * d2, Ld * (d3 - d2)));
      fv.matched_condition = "lucas:even_step_triple_odd_ratio";
      fv.verdict = std::move(v);
    } else {
      fv.verdict = base_verdict(values, true, Decision::not_ci);
    }
    return fv;
  }

  const char* matched = nullptr;
  if (d % 2 == 1)
    matched = "lucas:odd_index_step";
  else if (d >= a)
    matched = "lucas:step_at_least_start";
  else if (g_ad == a - d && val2(Int(a)) >= 1 && val2(Int(d)) > val2(Int(a)))
    matched = "lucas:gap_gcd_higher_two_valuation";
  else if (P.n == 3 && a % d == 0 && (a / d) % 2 == 1 && p_odd && !q_odd)
    matched = "lucas:triple_odd_ratio_even_q";
  else if (P.n == 3 && a % d == 0 && (a / d) % 2 == 1 && p_odd && q_odd && d % 3 != 0)
    matched = "lucas:triple_odd_ratio_no_triple_factor";

  if (!matched) {
    fv.verdict = base_verdict(values, false, Decision::not_ci);
    return fv;
  }

  Verdict v = base_verdict(values, false, Decision::ci);
  const Int qd = pow_int(P.pq.q, static_cast<unsigned long>(d));
  const Int Ld = seq(P.pq, SeqKind::lucas, d);

  if (d % 2 == 1 || d >= a || (g_ad == a - d && val2(Int(a)) >= 1 && val2(Int(d)) > val2(Int(a)))) {
    const Int e = boost::multiprecision::gcd(d1, d2);
    v.generators.push_back(affine_gen({{0, exact_div(d2, e)}}, {{1, exact_div(d1, e)}},
                                      d1 * exact_div(d2, e)));
    if (d % 2 == 1) {
      for (std::size_t i = 3; i <= P.n; ++i)
        v.generators.push_back(
            affine_gen({{i - 1, 1}}, {{i - 3, qd}, {i - 2, Ld}}, values[i - 1]));
    } else {
      const CurveSpec head({d1, d2});
      for (std::size_t i = 3; i <= P.n; ++i) {
        auto cert = member(head, values[i - 1], limits);
        if (!cert) throw std::logic_error("lucas: promised span witness is missing");
        Int c0 = 0, c1 = 0;
        for (const auto& [pos, c] : cert->coeffs) (pos == 0 ? c0 : c1) = c;
        v.generators.push_back(affine_gen({{i - 1, 1}}, {{0, c0}, {1, c1}}, values[i - 1]));
      }
    }
    v.frobenius_number = exact_div(d1, e) * exact_div(d2, e) - exact_div(d1, e) - exact_div(d2, e);
  } else {
    // Three values, odd index ratio, even step: the head and tail share
    // the factor L_d and the middle carries the L_d relation.
    if (gcd_many(values) != 1) throw std::logic_error("lucas: expected coprime values");
    const Int u1 = exact_div(d3, Ld);
    v.generators.push_back(affine_gen({{0, u1}}, {{2, exact_div(d1, Ld)}}, d1 * u1));
    v.generators.push_back(affine_gen({{1, Ld}}, {{0, qd}, {2, 1}}, Ld * d2));
    v.frobenius_number = d1 * u1 - d1 + (Ld - 1) * d2 - d3;
  }
  fv.matched_condition = matched;
  fv.verdict = std::move(v);
  return fv;
}

}  // namespace

std::vector<Int> family_build(const FamilyParams& params) {
  return std::visit([](const auto& P) { return build_values(P); }, params);
}

bool fib_third_term_in_span(const PqParams& pq, long long a, long long d) {
  need_positive(a, "a");
  need_positive(d, "d");
  if (d % 2 == 1) return true;
  need_small_index(a);
  need_small_index(2 * d);
  const Int F2d = seq_term(pq, SeqKind::fibonacci, 2 * d);
  const Int Fa = seq_term(pq, SeqKind::fibonacci, a);
  const Int Fd = seq_term(pq, SeqKind::fibonacci, d);
  return F2d >= lcm_pair(Fa, Fd);
}

bool lucas_third_term_in_span(const PqParams& pq, long long a, long long d) {
  need_positive(a, "a");
  need_positive(d, "d");
  if (d % 2 == 1) return true;
  need_small_index(a);
  need_small_index(2 * d);
  const Int F2d = seq_term(pq, SeqKind::fibonacci, 2 * d);
  const Int La = seq_term(pq, SeqKind::lucas, a);
  const Int Fd = seq_term(pq, SeqKind::fibonacci, d);
  return F2d >= lcm_pair(La, Fd);
}

FamilyVerdict family_ci(const FamilyParams& params, bool projective, const SearchLimits& limits) {
  return std::visit(
      [&](const auto& P) -> FamilyVerdict {
        using T = std::decay_t<decltype(P)>;
        if constexpr (std::is_same_v<T, GenArithParams>)
          return ci_gen_arith(P, projective, limits);
        else if constexpr (std::is_same_v<T, AlmostArithParams>)
          return ci_almost_arith(P, projective, limits);
        else if constexpr (std::is_same_v<T, FibonacciParams>)
          return ci_fibonacci(P, projective, limits);
        else
          return ci_lucas(P, projective, limits);
      },
      params);
}

}  // namespace cimc
