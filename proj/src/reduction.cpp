#include "cimc/reduction.hpp"

#include <algorithm>

#include "cimc/oracle.hpp"

namespace cimc {

namespace {

Int gcd_of(const std::vector<Int>& v) { return gcd_many(v); }

Int gcd_excluding(const std::vector<Int>& v, std::size_t k) {
  Int g = 0;
  for (std::size_t j = 0; j < v.size(); ++j)
    if (j != k) g = boost::multiprecision::gcd(g, v[j]);
  return g;
}

// Core affine pass structure: all applicable scalings, then all
// applicable removals, until neither fires.  Values and slots are
// parallel; removals erase in place.
void reduction_loop(std::vector<std::size_t>& slots, std::vector<Int>& values,
                    std::vector<ReductionStep>& steps, const SearchLimits& limits) {
  bool changed = true;
  int passes = 0;
  while (changed) {
    if (++passes > 10000) throw std::logic_error("reduction did not stabilize");
    changed = false;
    if (values.size() < 2) break;
    for (std::size_t k = 0; k < values.size(); ++k) {
      const Int B = exact_div(gcd_excluding(values, k), gcd_of(values));
      if (B > 1) {
        values[k] *= B;
        ReductionStep s;
        s.kind = ReductionStep::Kind::scale;
        s.slot = slots[k];
        s.factor = B;
        steps.push_back(std::move(s));
        changed = true;
      }
    }
    for (std::size_t k = 0; k < values.size();) {
      if (values.size() < 2) break;
      std::vector<Int> others;
      std::vector<std::size_t> others_slot;
      for (std::size_t j = 0; j < values.size(); ++j)
        if (j != k) {
          others.push_back(values[j]);
          others_slot.push_back(slots[j]);
        }
      auto cert = member(CurveSpec(others), values[k], limits);
      if (cert) {
        ReductionStep s;
        s.kind = ReductionStep::Kind::remove;
        s.slot = slots[k];
        std::map<std::size_t, Int> by_slot;
        for (const auto& [pos, c] : cert->coeffs) by_slot[others_slot[pos]] = c;
        s.cert.coeffs = std::move(by_slot);
        s.cert.target = values[k];
        steps.push_back(std::move(s));
        values.erase(values.begin() + static_cast<std::ptrdiff_t>(k));
        slots.erase(slots.begin() + static_cast<std::ptrdiff_t>(k));
        changed = true;
      } else {
        ++k;
      }
    }
  }
}

void drop_last_free(std::vector<std::size_t>& slots, std::vector<Int>& values,
                    std::vector<ReductionStep>& steps) {
  if (values.size() != 1) return;
  ReductionStep s;
  s.kind = ReductionStep::Kind::drop_free;
  s.slot = slots[0];
  steps.push_back(std::move(s));
  values.clear();
  slots.clear();
}

// Duplicate values are removed first with unit witnesses pointing at the
// first slot carrying the value.
std::size_t record_duplicate_removals(std::vector<std::size_t>& slots, std::vector<Int>& values,
                                      std::vector<ReductionStep>& steps) {
  std::size_t count = 0;
  for (std::size_t k = 0; k < values.size();) {
    bool removed = false;
    for (std::size_t j = 0; j < k; ++j) {
      if (values[j] == values[k]) {
        ReductionStep s;
        s.kind = ReductionStep::Kind::remove;
        s.slot = slots[k];
        s.cert.coeffs[slots[j]] = 1;
        s.cert.target = values[k];
        steps.push_back(std::move(s));
        values.erase(values.begin() + static_cast<std::ptrdiff_t>(k));
        slots.erase(slots.begin() + static_cast<std::ptrdiff_t>(k));
        ++count;
        removed = true;
        break;
      }
    }
    if (!removed) ++k;
  }
  return count;
}

std::map<std::size_t, Int> final_multipliers(const ReductionTrace& trace) {
  std::map<std::size_t, Int> mult;
  for (std::size_t i = 0; i < trace.initial.size(); ++i) mult[i] = 1;
  for (const auto& s : trace.steps)
    if (s.kind == ReductionStep::Kind::scale) mult[s.slot] *= s.factor;
  return mult;
}

}  // namespace

ReductionTrace affine_reduce(const CurveSpec& A, const SearchLimits& limits) {
  ReductionTrace trace;
  trace.initial = A.gens();
  std::vector<std::size_t> slots(A.size());
  for (std::size_t i = 0; i < A.size(); ++i) slots[i] = i;
  std::vector<Int> values = A.gens();
  reduction_loop(slots, values, trace.steps, limits);
  drop_last_free(slots, values, trace.steps);
  trace.residual = values;
  trace.residual_slots = slots;
  return trace;
}

std::vector<Int> replay_trace(const ReductionTrace& trace) {
  const std::size_t n = trace.initial.size();
  std::vector<bool> live(n, true);
  std::vector<Int> value = trace.initial;
  auto value_of = [&](std::size_t slot) -> Int {
    if (slot >= n) return 0;  // homogenizing slot carries weight 0
    if (!live[slot]) throw std::logic_error("replay: witness uses a removed slot");
    return value[slot];
  };
  std::size_t idx = 0;
  bool rescaled = (trace.rescale_divisor == 1);
  for (const auto& s : trace.steps) {
    if (!rescaled && idx == trace.dup_steps) {
      for (std::size_t i = 0; i < n; ++i)
        if (live[i]) value[i] = exact_div(value[i], trace.rescale_divisor);
      rescaled = true;
    }
    ++idx;
    switch (s.kind) {
      case ReductionStep::Kind::scale:
        if (s.slot >= n || !live[s.slot] || s.factor < 2)
          throw std::logic_error("replay: bad scale step");
        value[s.slot] *= s.factor;
        break;
      case ReductionStep::Kind::remove: {
        if (s.slot >= n || !live[s.slot]) throw std::logic_error("replay: bad remove step");
        Int sum = 0;
        for (const auto& [j, c] : s.cert.coeffs) {
          if (j == s.slot || c < 1) throw std::logic_error("replay: bad witness");
          sum += c * value_of(j);
        }
        if (sum != value[s.slot] || s.cert.target != value[s.slot])
          throw std::logic_error("replay: witness does not match value");
        live[s.slot] = false;
        break;
      }
      case ReductionStep::Kind::drop_free: {
        if (s.slot >= n || !live[s.slot]) throw std::logic_error("replay: bad drop step");
        for (std::size_t i = 0; i < n; ++i)
          if (live[i] && i != s.slot) throw std::logic_error("replay: drop with companions");
        live[s.slot] = false;
        break;
      }
    }
  }
  if (!rescaled) {
    for (std::size_t i = 0; i < n; ++i)
      if (live[i]) value[i] = exact_div(value[i], trace.rescale_divisor);
  }
  std::vector<Int> out;
  for (std::size_t i = 0; i < n; ++i)
    if (live[i]) out.push_back(value[i]);
  return out;
}

std::vector<Binomial> generators_from_trace(const ReductionTrace& trace) {
  const std::size_t n = trace.initial.size();
  std::map<std::size_t, Int> mult;
  for (std::size_t i = 0; i < n; ++i) mult[i] = 1;
  std::vector<Binomial> gens;
  for (const auto& s : trace.steps) {
    switch (s.kind) {
      case ReductionStep::Kind::scale:
        mult[s.slot] *= s.factor;
        break;
      case ReductionStep::Kind::remove: {
        Binomial b;
        b.plus[s.slot] = mult[s.slot];
        Int deg = mult[s.slot] * trace.initial[s.slot];
        for (const auto& [j, c] : s.cert.coeffs) {
          if (j >= n) continue;  // homogenizing slack never appears in affine traces
          b.minus[j] = c * mult[j];
        }
        b.deg_t = deg;
        gens.push_back(std::move(b));
        break;
      }
      case ReductionStep::Kind::drop_free:
        break;
    }
  }
  return gens;
}

namespace {

Verdict not_ci_verdict(ReductionTrace trace, Method method) {
  Verdict v;
  v.decision = Decision::not_ci;
  v.method = method;
  v.trace = std::move(trace);
  return v;
}

struct CriticalProfile {
  std::vector<std::optional<std::pair<Int, Certificate>>> m;  // per index
};

CriticalProfile critical_profile(const CurveSpec& A, const SearchLimits& limits) {
  CriticalProfile p;
  p.m.resize(A.size());
  for (std::size_t i = 0; i < A.size(); ++i) {
    try {
      p.m[i] = m_index(A, i, limits);
    } catch (const resource_error&) {
      p.m[i] = std::nullopt;
    }
  }
  return p;
}

// Two crossing critical binomials rule CI out: indices i != j with
// distinct critical degrees such that each critical multiple admits a
// witness spending the other generator.
bool crossing_critical_pair(const CurveSpec& A, const CriticalProfile& p,
                            const SearchLimits& limits) {
  auto uses_other = [&](std::size_t i, std::size_t j, const Int& mi) {
    std::vector<Int> others;
    for (std::size_t k = 0; k < A.size(); ++k)
      if (k != i) others.push_back(A[k]);
    const Int rest = mi * A[i] - A[j];
    if (rest < 0) return false;
    return member(CurveSpec(others), rest, limits).has_value();
  };
  for (std::size_t i = 0; i < A.size(); ++i) {
    if (!p.m[i]) continue;
    for (std::size_t j = i + 1; j < A.size(); ++j) {
      if (!p.m[j]) continue;
      if (p.m[i]->first * A[i] == p.m[j]->first * A[j]) continue;
      if (uses_other(i, j, p.m[i]->first) && uses_other(j, i, p.m[j]->first)) return true;
    }
  }
  return false;
}

// n-1 pairwise distinct critical degrees force the decision down to the
// reduction alone; with a nonempty residual that means NotCI.
bool distinct_critical_degrees(const CurveSpec& A, const CriticalProfile& p) {
  std::vector<Int> degrees;
  for (std::size_t i = 0; i < A.size(); ++i)
    if (p.m[i]) degrees.push_back(p.m[i]->first * A[i]);
  std::sort(degrees.begin(), degrees.end());
  degrees.erase(std::unique(degrees.begin(), degrees.end()), degrees.end());
  return degrees.size() + 1 >= A.size();
}

}  // namespace

Verdict affine_ci(const CurveSpec& A, std::optional<Int> oracle_bound, const SearchLimits& limits) {
  ReductionTrace trace;
  trace.initial = A.gens();
  std::vector<std::size_t> slots(A.size());
  for (std::size_t i = 0; i < A.size(); ++i) slots[i] = i;
  std::vector<Int> values = A.gens();

  trace.dup_steps = record_duplicate_removals(slots, values, trace.steps);
  const Int e = gcd_of(values);
  trace.rescale_divisor = e;
  if (e > 1)
    for (Int& v : values) v = exact_div(v, e);
  const std::vector<Int> normalized = values;

  reduction_loop(slots, values, trace.steps, limits);
  drop_last_free(slots, values, trace.steps);
  trace.residual = values;
  trace.residual_slots = slots;

  if (values.empty()) {
    Verdict v;
    v.decision = Decision::ci;
    v.method = Method::empty_reduction;
    v.generators = generators_from_trace(trace);
    Int deg_sum = 0;
    for (const auto& g : v.generators) deg_sum += g.deg_t;
    Int d_sum = 0;
    for (const Int& d : trace.initial) d_sum += d;
    v.frobenius_number = exact_div(deg_sum - d_sum, e);
    v.trace = std::move(trace);
    return v;
  }

  if (values.size() == 3) return not_ci_verdict(std::move(trace), Method::three_element_residual);
  if (values.size() < 3) throw std::logic_error("affine_ci: impossible residual size");

  const CurveSpec residual_spec{values};
  CriticalProfile residual_profile = critical_profile(residual_spec, limits);
  if (crossing_critical_pair(residual_spec, residual_profile, limits))
    return not_ci_verdict(std::move(trace), Method::critical_pair_obstruction);
  if (distinct_critical_degrees(residual_spec, residual_profile))
    return not_ci_verdict(std::move(trace), Method::distinct_critical_degrees);
  if (normalized != values) {
    const CurveSpec input_spec{normalized};
    CriticalProfile input_profile = critical_profile(input_spec, limits);
    if (crossing_critical_pair(input_spec, input_profile, limits))
      return not_ci_verdict(std::move(trace), Method::critical_pair_obstruction);
    if (distinct_critical_degrees(input_spec, input_profile))
      return not_ci_verdict(std::move(trace), Method::distinct_critical_degrees);
  }

  // The reduction preserves the decision, so the oracle examines the
  // residual; on CI its generators lift through the recorded scalings.
  Verdict oracle = oracle_ci(residual_spec, oracle_bound, default_oracle_limits(), limits);
  Verdict v;
  v.decision = oracle.decision;
  v.method = Method::oracle_count;
  v.oracle_report = oracle.oracle_report;
  if (oracle.decision == Decision::ci) {
    v.generators = generators_from_trace(trace);
    auto mult = final_multipliers(trace);
    for (const auto& g : oracle.generators) {
      Binomial lifted;
      for (const auto& [pos, c] : g.plus) {
        const std::size_t slot = trace.residual_slots[pos];
        lifted.plus[slot] = c * mult[slot];
        lifted.deg_t += lifted.plus[slot] * trace.initial[slot];
      }
      for (const auto& [pos, c] : g.minus) {
        const std::size_t slot = trace.residual_slots[pos];
        lifted.minus[slot] = c * mult[slot];
      }
      v.generators.push_back(std::move(lifted));
    }
    Int deg_sum = 0;
    for (const auto& g : v.generators) deg_sum += g.deg_t;
    Int d_sum = 0;
    for (const Int& d : trace.initial) d_sum += d;
    v.frobenius_number = exact_div(deg_sum - d_sum, e);
  }
  v.trace = std::move(trace);
  return v;
}

Verdict projective_ci(const CurveSpec& A, const SearchLimits& limits) {
  ReductionTrace trace;
  trace.initial = A.gens();
  const std::size_t homog_slot = A.size();
  std::vector<std::size_t> slots(A.size());
  for (std::size_t i = 0; i < A.size(); ++i) slots[i] = i;
  std::vector<Int> values = A.gens();

  std::vector<Binomial> gens;
  trace.dup_steps = record_duplicate_removals(slots, values, trace.steps);
  const Int d = *std::max_element(values.begin(), values.end());
  for (std::size_t s = 0; s < trace.dup_steps; ++s) {
    const auto& st = trace.steps[s];
    Binomial b;
    b.projective = true;
    b.plus[st.slot] = 1;
    b.minus[st.cert.coeffs.begin()->first] = 1;
    b.deg_t = st.cert.target;
    b.deg_u = d - st.cert.target;
    gens.push_back(std::move(b));
  }

  bool changed = true;
  int passes = 0;
  while (changed && values.size() > 1) {
    if (++passes > 10000) throw std::logic_error("projective elimination did not stabilize");
    changed = false;
    for (std::size_t k = 0; k < values.size();) {
      if (values[k] == d) {
        ++k;
        continue;
      }
      const Int B = exact_div(gcd_excluding(values, k), gcd_of(values));
      std::vector<Int> others;
      std::vector<std::size_t> others_slot;
      for (std::size_t j = 0; j < values.size(); ++j)
        if (j != k) {
          others.push_back(values[j]);
          others_slot.push_back(slots[j]);
        }
      auto cert = member_bounded(CurveSpec(others), B * values[k], B, limits);
      if (!cert) {
        ++k;
        continue;
      }
      const Int slack = B - cert->coefficient_sum();
      if (B > 1) {
        ReductionStep s;
        s.kind = ReductionStep::Kind::scale;
        s.slot = slots[k];
        s.factor = B;
        trace.steps.push_back(std::move(s));
      }
      ReductionStep s;
      s.kind = ReductionStep::Kind::remove;
      s.slot = slots[k];
      for (const auto& [pos, c] : cert->coeffs) s.cert.coeffs[others_slot[pos]] = c;
      if (slack > 0) s.cert.coeffs[homog_slot] = slack;
      s.cert.target = B * values[k];

      Binomial b;
      b.projective = true;
      b.plus[slots[k]] = B;
      b.deg_t = B * values[k];
      b.deg_u = B * (d - values[k]);
      for (const auto& [pos, c] : cert->coeffs) b.minus[others_slot[pos]] = c;
      if (slack > 0) b.minus[homog_slot] = slack;
      gens.push_back(std::move(b));

      trace.steps.push_back(std::move(s));
      values.erase(values.begin() + static_cast<std::ptrdiff_t>(k));
      slots.erase(slots.begin() + static_cast<std::ptrdiff_t>(k));
      changed = true;
    }
  }

  Verdict v;
  v.projective = true;
  if (values.size() == 1) {
    drop_last_free(slots, values, trace.steps);
    trace.residual = values;
    trace.residual_slots = slots;
    v.decision = Decision::ci;
    v.method = Method::table1_algorithm;
    v.generators = std::move(gens);
  } else {
    trace.residual = values;
    trace.residual_slots = slots;
    v.decision = Decision::not_ci;
    v.method = Method::table1_algorithm;
  }
  v.trace = std::move(trace);
  return v;
}

}  // namespace cimc
