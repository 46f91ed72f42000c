#include "cimc/oracle.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>

namespace cimc {

const OracleLimits& default_oracle_limits() {
  static const OracleLimits limits{};
  return limits;
}

namespace {

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

// Reachable sums of each generator suffix, one bit per value up to a
// working bound.  The enumeration consults it to visit only branches
// that complete to a factorization, keeping traversal proportional to
// the output instead of the raw coefficient ranges.
struct SuffixReach {
  std::size_t bound = 0;
  std::vector<std::vector<std::uint64_t>> bits;  // bits[pos] covers gens[pos..]

  bool test(std::size_t pos, const Int& v) const {
    const std::size_t s = static_cast<std::size_t>(v);
    return (bits[pos][s >> 6] >> (s & 63)) & 1;
  }
};

constexpr std::size_t kReachCap = std::size_t(1) << 22;  // largest tabulated bound

std::shared_ptr<const SuffixReach> build_reach(const std::vector<Int>& gens, std::size_t bound) {
  auto table = std::make_shared<SuffixReach>();
  table->bound = bound;
  const std::size_t words = (bound >> 6) + 1;
  table->bits.assign(gens.size() + 1, std::vector<std::uint64_t>(words, 0));
  table->bits[gens.size()][0] = 1;  // the empty suffix reaches 0 only
  for (std::size_t pos = gens.size(); pos-- > 0;) {
    auto& row = table->bits[pos];
    row = table->bits[pos + 1];
    if (gens[pos] <= Int(bound)) {
      const std::size_t g = static_cast<std::size_t>(gens[pos]);
      // Ascending sweep: bits set at s seed s+g, which the sweep then
      // revisits, so whole arithmetic progressions fill in one pass.
      for (std::size_t s = 0; s + g <= bound; ++s)
        if ((row[s >> 6] >> (s & 63)) & 1)
          row[(s + g) >> 6] |= std::uint64_t(1) << ((s + g) & 63);
    }
  }
  return table;
}

// Tables are pure functions of (gens, bound); scans request the same set
// degree by degree, so the cache turns the build into a one-off.
std::shared_ptr<const SuffixReach> reach_for(const std::vector<Int>& gens, const Int& b) {
  if (b > Int(kReachCap)) return nullptr;
  thread_local std::map<std::vector<Int>, std::shared_ptr<const SuffixReach>> cache;
  auto it = cache.find(gens);
  if (it != cache.end()) {
    if (Int(it->second->bound) >= b) return it->second;
    std::size_t bound = it->second->bound;
    while (Int(bound) < b) bound <<= 1;
    it->second = build_reach(gens, bound);
    return it->second;
  }
  if (cache.size() > 64) cache.clear();
  std::size_t bound = 64;
  while (Int(bound) < b) bound <<= 1;
  auto table = build_reach(gens, bound);
  cache.emplace(gens, table);
  return table;
}

void fiber_dfs(const std::vector<Int>& gens, const std::vector<Int>& suffix_gcd,
               const SuffixReach* reach, std::size_t pos, const Int& rem, std::vector<Int>& cur,
               std::vector<std::vector<Int>>& out, std::size_t cap) {
  if (reach && rem <= Int(reach->bound)) {
    if (!reach->test(pos, rem)) return;
  } else if (rem % suffix_gcd[pos] != 0) {
    return;
  }
  if (pos + 1 == gens.size()) {
    if (rem % gens[pos] == 0) {
      cur[pos] = rem / gens[pos];
      out.push_back(cur);
      cur[pos] = 0;
      if (out.size() > cap) throw resource_error("fiber: factorization count exceeds cap");
    }
    return;
  }
  if (pos + 2 == gens.size()) {
    // Closed form at the bottom pair: solutions of a*u + b*v = rem are
    // a = a0 (mod v') with v' = v/gcd(u,v), so only actual factorizations
    // are touched.  The entry check above already ensured gcd(u,v) | rem.
    const Int& u = gens[pos];
    const Int& v = gens[pos + 1];
    const Int g2 = boost::multiprecision::gcd(u, v);
    const Int vp = v / g2;
    Int a0 = 0;
    if (vp != 1) a0 = (rem / g2 % vp) * mod_inverse(u / g2 % vp, vp) % vp;
    const Int a_cap = rem / u;
    if (a_cap >= a0) {
      for (Int a = a0 + ((a_cap - a0) / vp) * vp; a >= 0; a -= vp) {
        cur[pos] = a;
        cur[pos + 1] = (rem - a * u) / v;
        out.push_back(cur);
        if (out.size() > cap) {
          cur[pos] = 0;
          cur[pos + 1] = 0;
          throw resource_error("fiber: factorization count exceeds cap");
        }
      }
    }
    cur[pos] = 0;
    cur[pos + 1] = 0;
    return;
  }
  for (Int k = rem / gens[pos]; k >= 0; --k) {
    cur[pos] = k;
    fiber_dfs(gens, suffix_gcd, reach, pos + 1, rem - k * gens[pos], cur, out, cap);
  }
  cur[pos] = 0;
}

std::vector<std::vector<Int>> fiber_impl(const std::vector<Int>& gens, const Int& b,
                                         std::size_t cap) {
  std::vector<Int> suffix(gens.size());
  for (std::size_t i = gens.size(); i-- > 0;)
    suffix[i] = (i + 1 < gens.size()) ? boost::multiprecision::gcd(gens[i], suffix[i + 1]) : gens[i];
  auto reach = reach_for(gens, b);
  std::vector<std::vector<Int>> out;
  std::vector<Int> cur(gens.size(), 0);
  if (b >= 0) fiber_dfs(gens, suffix, reach.get(), 0, b, cur, out, cap);
  return out;
}

// Connected components of the fiber graph: factorizations sharing a
// positive coordinate are adjacent, so chaining every vertex positive at
// position i to the first such vertex captures all edges.
std::size_t component_count(const std::vector<std::vector<Int>>& verts, std::size_t n,
                            UnionFind& uf) {
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t first = verts.size();
    for (std::size_t v = 0; v < verts.size(); ++v) {
      if (verts[v][i] > 0) {
        if (first == verts.size())
          first = v;
        else
          uf.unite(v, first);
      }
    }
  }
  std::size_t comps = 0;
  for (std::size_t v = 0; v < verts.size(); ++v)
    if (uf.find(v) == v) ++comps;
  return comps;
}

// Minimal generators of one graded piece: differences between one
// representative per component and the representative of the first
// vertex's component.  Distinct components share no positive
// coordinate, so supports are disjoint.
void emit_component_binomials(const std::vector<std::vector<Int>>& verts, std::size_t n,
                              UnionFind& uf, const Int& deg_t, const Int& deg_u, bool projective,
                              std::vector<Binomial>& out) {
  if (verts.empty()) return;
  std::vector<std::size_t> reps;
  for (std::size_t v = 0; v < verts.size(); ++v)
    if (uf.find(v) == v) reps.push_back(v);
  const std::size_t base_root = uf.find(0);
  for (std::size_t r : reps) {
    if (r == base_root) continue;
    Binomial b;
    b.projective = projective;
    b.deg_t = deg_t;
    b.deg_u = deg_u;
    for (std::size_t i = 0; i < n; ++i) {
      if (verts[base_root][i] > 0) b.plus[i] = verts[base_root][i];
      if (verts[r][i] > 0) b.minus[i] = verts[r][i];
    }
    out.push_back(std::move(b));
  }
}

struct ScaledInput {
  Int e = 1;                 // gcd of the input
  std::vector<Int> scaled;   // input order, divided by e
  Int d_sum = 0;             // sum of scaled values
};

ScaledInput scale_input(const CurveSpec& A) {
  ScaledInput s;
  s.e = A.gcd();
  for (const Int& v : A.gens()) {
    s.scaled.push_back(v / s.e);
    s.d_sum += v / s.e;
  }
  return s;
}

// Frobenius number of the normalized set, or nullopt when the Apery
// table is out of reach.
std::optional<Int> guarded_frobenius(const std::vector<Int>& scaled, const SearchLimits& search) {
  try {
    return frobenius(CurveSpec(scaled), search);
  } catch (const resource_error&) {
    return std::nullopt;
  }
}

Verdict inconclusive_verdict(const CurveSpec& A, OracleReport report, bool projective) {
  Verdict v;
  v.decision = Decision::inconclusive;
  v.method = Method::oracle_count;
  v.projective = projective;
  v.oracle_report = std::move(report);
  v.trace.initial = A.gens();
  v.trace.residual = A.gens();
  for (std::size_t i = 0; i < A.size(); ++i) v.trace.residual_slots.push_back(i);
  return v;
}

}  // namespace

std::vector<std::vector<Int>> fiber(const CurveSpec& A, const Int& b, const OracleLimits& limits) {
  if (b < 0) throw std::invalid_argument("fiber: degree must be >= 0");
  return fiber_impl(A.gens(), b, limits.fiber_cap);
}

OracleReport minimal_generator_degrees(const CurveSpec& A, const Int& bound,
                                       const OracleLimits& limits, const SearchLimits& search) {
  if (bound > limits.degree_budget)
    throw resource_error("minimal_generator_degrees: bound exceeds the degree budget");
  ScaledInput in = scale_input(A);
  const CurveSpec scaled_spec(in.scaled);
  OracleReport report;
  report.bound = bound;
  const Int scaled_bound = bound / in.e;
  Int work = 0;
  for (Int t = 1; t <= scaled_bound; ++t) {
    ++work;
    if (work > limits.work_budget)
      throw resource_error("minimal_generator_degrees: scan exceeds the work budget");
    if (!semigroup_contains(scaled_spec, t, search)) continue;
    auto verts = fiber_impl(in.scaled, t, limits.fiber_cap);
    work += Int(verts.size());
    if (verts.size() < 2) continue;
    UnionFind uf(verts.size());
    const std::size_t comps = component_count(verts, A.size(), uf);
    if (comps > 1) {
      report.betti.push_back({t * in.e, Int(0), static_cast<long>(comps - 1)});
      report.mu_within_bound += static_cast<long>(comps - 1);
    }
  }
  report.scan_exhausted = true;
  return report;
}

Verdict oracle_ci(const CurveSpec& A, std::optional<Int> bound, const OracleLimits& limits,
                  const SearchLimits& search) {
  ScaledInput in = scale_input(A);
  const std::size_t n = A.size();
  std::optional<Int> gS = guarded_frobenius(in.scaled, search);

  Int D;
  if (bound) {
    D = *bound;
  } else if (gS) {
    D = in.e * (*gS + in.d_sum);
  } else {
    OracleReport r;
    r.scan_exhausted = false;
    return inconclusive_verdict(A, std::move(r), false);
  }

  OracleReport report;
  report.bound = D;
  if (D > limits.degree_budget) return inconclusive_verdict(A, std::move(report), false);

  std::vector<Binomial> gens;
  bool exhausted = true;
  const Int scaled_bound = D / in.e;
  const CurveSpec scaled_spec(in.scaled);
  Int work = 0;
  for (Int t = 1; t <= scaled_bound; ++t) {
    ++work;
    if (work > limits.work_budget) {
      exhausted = false;
      break;
    }
    if (!semigroup_contains(scaled_spec, t, search)) continue;
    std::vector<std::vector<Int>> verts;
    try {
      verts = fiber_impl(in.scaled, t, limits.fiber_cap);
    } catch (const resource_error&) {
      exhausted = false;
      break;
    }
    work += Int(verts.size());
    if (verts.size() < 2) continue;
    UnionFind uf(verts.size());
    const std::size_t comps = component_count(verts, n, uf);
    if (comps > 1) {
      report.betti.push_back({t * in.e, Int(0), static_cast<long>(comps - 1)});
      report.mu_within_bound += static_cast<long>(comps - 1);
      emit_component_binomials(verts, n, uf, t * in.e, Int(0), false, gens);
      if (report.mu_within_bound >= static_cast<long>(n)) {
        exhausted = (t == scaled_bound);
        break;
      }
    }
  }
  report.scan_exhausted = exhausted;

  Verdict v;
  v.method = Method::oracle_count;
  v.projective = false;
  v.trace.initial = A.gens();
  v.trace.residual = A.gens();
  for (std::size_t i = 0; i < n; ++i) v.trace.residual_slots.push_back(i);

  if (report.mu_within_bound >= static_cast<long>(n)) {
    v.decision = Decision::not_ci;
    v.oracle_report = std::move(report);
    return v;
  }
  if (report.mu_within_bound == static_cast<long>(n) - 1 && exhausted && gS) {
    Int deg_sum = 0;
    for (const auto& e : report.betti) deg_sum += e.deg_t * e.count;
    if (deg_sum == in.e * (*gS + in.d_sum)) {
      v.decision = Decision::ci;
      v.generators = std::move(gens);
      v.frobenius_number = *gS;
      v.oracle_report = std::move(report);
      return v;
    }
  }
  v.decision = Decision::inconclusive;
  v.oracle_report = std::move(report);
  return v;
}

Verdict projective_oracle_ci(const CurveSpec& A, std::optional<Int> bound,
                             const OracleLimits& limits, const SearchLimits& search) {
  ScaledInput in = scale_input(A);
  const std::size_t n = A.size();
  const Int d = *std::max_element(in.scaled.begin(), in.scaled.end());
  std::optional<Int> gS = guarded_frobenius(in.scaled, search);

  Int D;
  if (bound) {
    D = *bound;
  } else if (gS) {
    D = in.e * (*gS + in.d_sum);
  } else {
    OracleReport r;
    r.scan_exhausted = false;
    r.projective = true;
    return inconclusive_verdict(A, std::move(r), true);
  }

  OracleReport report;
  report.bound = D;
  report.projective = true;
  if (D > limits.degree_budget) return inconclusive_verdict(A, std::move(report), true);

  std::vector<Binomial> gens;
  bool exhausted = true;
  const Int scaled_bound = D / in.e;
  const CurveSpec scaled_spec(in.scaled);
  Int work = 0;
  for (Int b1 = 1; b1 <= scaled_bound && exhausted; ++b1) {
    ++work;
    if (work > limits.work_budget) {
      exhausted = false;
      break;
    }
    if (!semigroup_contains(scaled_spec, b1, search)) continue;
    std::vector<std::vector<Int>> verts;
    try {
      verts = fiber_impl(in.scaled, b1, limits.fiber_cap);
    } catch (const resource_error&) {
      exhausted = false;
      break;
    }
    work += Int(verts.size());
    if (verts.empty()) continue;
    std::vector<Int> totals;
    for (const auto& v : verts) {
      Int w = 0;
      for (const Int& c : v) w += c;
      totals.push_back(w);
    }
    std::vector<Int> distinct = totals;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    for (const Int& T : distinct) {
      // Monomials of degree (b1, T*d - b1): fiber members with total
      // weight <= T, padded by the slack variable; slack-bearing
      // vertices all share it.
      std::vector<std::size_t> sel;
      for (std::size_t v = 0; v < verts.size(); ++v)
        if (totals[v] <= T) sel.push_back(v);
      work += Int(sel.size());
      if (work > limits.work_budget) {
        exhausted = false;
        break;
      }
      if (sel.size() < 2) continue;
      std::vector<std::vector<Int>> sub;
      for (std::size_t v : sel) {
        std::vector<Int> row = verts[v];
        row.push_back(T - totals[v]);  // slack exponent
        sub.push_back(std::move(row));
      }
      UnionFind uf(sub.size());
      const std::size_t comps = component_count(sub, n + 1, uf);
      if (comps > 1) {
        const Int deg2 = T * d - b1;
        report.betti.push_back({b1 * in.e, deg2 * in.e, static_cast<long>(comps - 1)});
        report.mu_within_bound += static_cast<long>(comps - 1);
        emit_component_binomials(sub, n + 1, uf, b1 * in.e, deg2 * in.e, true, gens);
        if (report.mu_within_bound >= static_cast<long>(n)) {
          exhausted = (b1 == scaled_bound);
          break;
        }
      }
    }
  }
  report.scan_exhausted = exhausted;

  Verdict v;
  v.method = Method::oracle_count;
  v.projective = true;
  v.trace.initial = A.gens();
  v.trace.residual = A.gens();
  for (std::size_t i = 0; i < n; ++i) v.trace.residual_slots.push_back(i);

  if (report.mu_within_bound >= static_cast<long>(n)) {
    v.decision = Decision::not_ci;
    v.oracle_report = std::move(report);
    return v;
  }
  if (report.mu_within_bound == static_cast<long>(n) - 1 && exhausted && gS) {
    Int deg_sum = 0;
    for (const auto& e : report.betti) deg_sum += e.deg_t * e.count;
    if (deg_sum == in.e * (*gS + in.d_sum)) {
      v.decision = Decision::ci;
      v.generators = std::move(gens);
      v.oracle_report = std::move(report);
      return v;
    }
  }
  v.decision = Decision::inconclusive;
  v.oracle_report = std::move(report);
  return v;
}

}  // namespace cimc
