#include "cimc/semigroup.hpp"

#include <algorithm>
#include <cstdint>
#include <memory>
#include <numeric>
#include <queue>
#include <set>
#include <tuple>

namespace cimc {

const SearchLimits& default_limits() {
  static const SearchLimits limits{};
  return limits;
}

CurveSpec::CurveSpec(std::vector<Int> gens) : gens_(std::move(gens)) {
  if (gens_.empty()) throw std::invalid_argument("CurveSpec: at least one generator required");
  for (const Int& v : gens_)
    if (v < 1) throw std::invalid_argument("CurveSpec: generators must be positive");
}

bool CurveSpec::has_duplicates() const {
  std::vector<Int> s = gens_;
  std::sort(s.begin(), s.end());
  return std::adjacent_find(s.begin(), s.end()) != s.end();
}

Int CurveSpec::gcd() const { return gcd_many(gens_); }

const Int& CurveSpec::min_value() const {
  return *std::min_element(gens_.begin(), gens_.end());
}

const Int& CurveSpec::max_value() const {
  return *std::max_element(gens_.begin(), gens_.end());
}

Int Certificate::coefficient_sum() const {
  Int s = 0;
  for (const auto& [i, c] : coeffs) s += c;
  return s;
}

Certificate make_certificate(const std::vector<Int>& gens,
                             std::map<std::size_t, Int> coeffs, Int target) {
  Int sum = 0;
  for (const auto& [i, c] : coeffs) {
    if (i >= gens.size()) throw std::logic_error("certificate: index out of range");
    if (c < 1) throw std::logic_error("certificate: coefficients must be >= 1");
    sum += c * gens[i];
  }
  if (sum != target) throw std::logic_error("certificate: sum does not match target");
  Certificate cert;
  cert.coeffs = std::move(coeffs);
  cert.target = std::move(target);
  return cert;
}

bool certificate_valid(const Certificate& c, const std::vector<Int>& gens) {
  Int sum = 0;
  for (const auto& [i, a] : c.coeffs) {
    if (i >= gens.size() || a < 1) return false;
    sum += a * gens[i];
  }
  return sum == c.target;
}

Int b_index(const CurveSpec& A, std::size_t i) {
  if (A.size() < 2) throw std::invalid_argument("b_index: need at least two generators");
  if (i >= A.size()) throw std::invalid_argument("b_index: index out of range");
  std::vector<Int> others;
  for (std::size_t j = 0; j < A.size(); ++j)
    if (j != i) others.push_back(A[j]);
  return exact_div(gcd_many(others), A.gcd());
}

namespace {

// Distinct values ascending, scaled by the gcd; owner maps each scaled
// value back to the first original index carrying it.
struct NormalizedSet {
  Int g = 1;
  std::vector<Int> vals;
  std::vector<std::size_t> owner;
};

NormalizedSet normalize(const std::vector<Int>& gens) {
  NormalizedSet ns;
  ns.g = gcd_many(gens);
  std::vector<std::pair<Int, std::size_t>> seen;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    Int v = gens[i] / ns.g;
    bool dup = false;
    for (auto& [w, j] : seen)
      if (w == v) { dup = true; break; }
    if (!dup) seen.emplace_back(std::move(v), i);
  }
  std::sort(seen.begin(), seen.end());
  for (auto& [v, i] : seen) {
    ns.vals.push_back(v);
    ns.owner.push_back(i);
  }
  return ns;
}

// Apery table of a distinct ascending gcd-1 set with small least element.
// least[r] is the least semigroup element congruent to r mod m0; parents
// record which generator relaxed each residue so witnesses can be read off.
struct AperyTable {
  std::size_t m0 = 0;
  std::vector<Int> least;
  std::vector<int32_t> parent_pos;
  std::vector<uint32_t> parent_res;
};

std::shared_ptr<const AperyTable> build_apery(const std::vector<Int>& vals) {
  auto table = std::make_shared<AperyTable>();
  const std::size_t m0 = static_cast<std::size_t>(vals.front());
  table->m0 = m0;
  table->least.assign(m0, Int(-1));
  table->parent_pos.assign(m0, -1);
  table->parent_res.assign(m0, 0);
  table->least[0] = 0;

  // Round-robin: one sweep per generator; each residue orbit under
  // +v (mod m0) is relaxed once around starting from its minimum.
  for (std::size_t pos = 1; pos < vals.size(); ++pos) {
    const Int& v = vals[pos];
    const std::size_t step = static_cast<std::size_t>(v % m0);
    const std::size_t d = std::gcd(step == 0 ? m0 : step, m0);
    const std::size_t orbit_len = m0 / d;
    for (std::size_t start = 0; start < d; ++start) {
      std::size_t best_r = m0;  // residue with the least current value
      Int best = -1;
      std::size_t r = start;
      for (std::size_t k = 0; k < orbit_len; ++k) {
        if (table->least[r] >= 0 && (best < 0 || table->least[r] < best)) {
          best = table->least[r];
          best_r = r;
        }
        r = (r + step) % m0;
      }
      if (best < 0) continue;  // orbit unreachable so far
      Int n = best;
      std::size_t cur = best_r;
      for (std::size_t k = 0; k < orbit_len; ++k) {
        std::size_t next = (cur + step) % m0;
        n += v;
        if (table->least[next] < 0 || n < table->least[next]) {
          table->least[next] = n;
          table->parent_pos[next] = static_cast<int32_t>(pos);
          table->parent_res[next] = static_cast<uint32_t>(cur);
        } else {
          n = table->least[next];
        }
        cur = next;
      }
    }
  }
  return table;
}

// Tables are pure functions of the value set; the cache only keeps
// rebuild cost out of inner loops and is never observable.
std::shared_ptr<const AperyTable> apery_for(const std::vector<Int>& vals) {
  thread_local std::map<std::vector<Int>, std::shared_ptr<const AperyTable>> cache;
  auto it = cache.find(vals);
  if (it != cache.end()) return it->second;
  if (cache.size() > 64) cache.clear();
  auto table = build_apery(vals);
  cache.emplace(vals, table);
  return table;
}

// Reads coefficients (by position into vals) for scaled target t.
bool apery_extract(const AperyTable& table, const Int& t, std::map<std::size_t, Int>& out) {
  const std::size_t r = static_cast<std::size_t>(t % table.m0);
  if (table.least[r] < 0 || t < table.least[r]) return false;
  Int k0 = (t - table.least[r]) / Int(table.m0);
  if (k0 > 0) out[0] += k0;
  std::size_t cur = r;
  while (table.parent_pos[cur] >= 0) {
    out[static_cast<std::size_t>(table.parent_pos[cur])] += 1;
    cur = table.parent_res[cur];
  }
  return true;
}

// Maximal-alpha solution of alpha*u + beta*v = t with u > v >= 1 and
// alpha, beta >= 0.  Maximal alpha is also the minimal coefficient sum.
std::optional<std::pair<Int, Int>> two_gen_solve(const Int& u, const Int& v, const Int& t) {
  const Int g = boost::multiprecision::gcd(u, v);
  if (t % g != 0) return std::nullopt;
  const Int u1 = u / g, v1 = v / g, t1 = t / g;
  Int alpha0 = 0;
  if (v1 > 1) alpha0 = (t1 % v1) * mod_inverse(u1 % v1, v1) % v1;
  if (alpha0 * u1 > t1) return std::nullopt;
  const Int alpha = alpha0 + (t1 / u1 - alpha0) / v1 * v1;
  const Int beta = (t1 - alpha * u1) / v1;
  return std::make_pair(alpha, beta);
}

struct DfsSearch {
  std::vector<Int> vals;  // descending
  std::vector<Int> suffix_gcd;
  bool bounded = false;
  std::set<std::pair<std::size_t, Int>> failed;
  std::set<std::tuple<std::size_t, Int, Int>> failed_bounded;

  explicit DfsSearch(std::vector<Int> desc, bool bounded_) : vals(std::move(desc)), bounded(bounded_) {
    suffix_gcd.assign(vals.size(), 0);
    for (std::size_t i = vals.size(); i-- > 0;)
      suffix_gcd[i] = (i + 1 < vals.size())
                          ? boost::multiprecision::gcd(vals[i], suffix_gcd[i + 1])
                          : vals[i];
  }

  // coeffs parallel to vals; budget ignored unless bounded.
  bool run(std::size_t level, const Int& t, const Int& budget, std::vector<Int>& coeffs) {
    if (t == 0) return true;
    const std::size_t remaining = vals.size() - level;
    if (t % suffix_gcd[level] != 0) return false;
    if (t < vals[vals.size() - 1]) return false;
    if (bounded && budget * vals[level] < t) return false;
    if (remaining == 1) {
      if (t % vals[level] != 0) return false;
      Int k = t / vals[level];
      if (bounded && k > budget) return false;
      coeffs[level] = k;
      return true;
    }
    if (remaining == 2) {
      auto sol = two_gen_solve(vals[level], vals[level + 1], t);
      if (!sol) return false;
      if (bounded && sol->first + sol->second > budget) return false;
      coeffs[level] = sol->first;
      coeffs[level + 1] = sol->second;
      return true;
    }
    if (!bounded) {
      if (failed.count({level, t})) return false;
    } else {
      if (failed_bounded.count({level, t, budget})) return false;
    }
    Int k = t / vals[level];
    if (bounded && k > budget) k = budget;
    for (; k >= 0; --k) {
      for (std::size_t j = level + 1; j < vals.size(); ++j) coeffs[j] = 0;
      if (run(level + 1, t - k * vals[level], budget - k, coeffs)) {
        coeffs[level] = k;
        return true;
      }
    }
    if (!bounded)
      failed.insert({level, t});
    else
      failed_bounded.insert({level, t, budget});
    return false;
  }
};

std::optional<Certificate> member_impl(const std::vector<Int>& gens, const Int& t,
                                       std::optional<Int> bound, const SearchLimits& limits) {
  if (t < 0) throw std::invalid_argument("member: target must be >= 0");
  if (bound && *bound < 0) throw std::invalid_argument("member_bounded: bound must be >= 0");
  if (t == 0) {
    Certificate c;
    c.target = 0;
    return c;
  }
  NormalizedSet ns = normalize(gens);
  if (t % ns.g != 0) return std::nullopt;
  const Int ts = t / ns.g;  // coefficients are scale invariant
  if (ts < ns.vals.front()) return std::nullopt;

  std::map<std::size_t, Int> pos_coeffs;
  bool found = false;

  if (ns.vals.size() == 1) {
    if (ts % ns.vals[0] == 0) {
      pos_coeffs[0] = ts / ns.vals[0];
      found = true;
    }
  } else if (ns.vals.size() == 2) {
    auto sol = two_gen_solve(ns.vals[1], ns.vals[0], ts);
    if (sol) {
      if (sol->first > 0) pos_coeffs[1] = sol->first;
      if (sol->second > 0) pos_coeffs[0] = sol->second;
      found = true;
    }
  } else if (!bound && ns.vals.front() <= Int(limits.apery_cap)) {
    auto table = apery_for(ns.vals);
    found = apery_extract(*table, ts, pos_coeffs);
  } else {
    std::vector<Int> desc(ns.vals.rbegin(), ns.vals.rend());
    DfsSearch search(desc, bound.has_value());
    std::vector<Int> coeffs(desc.size(), 0);
    if (search.run(0, ts, bound ? *bound : Int(0), coeffs)) {
      for (std::size_t j = 0; j < desc.size(); ++j)
        if (coeffs[j] > 0) pos_coeffs[desc.size() - 1 - j] += coeffs[j];
      found = true;
    }
  }
  if (!found) return std::nullopt;

  std::map<std::size_t, Int> by_index;
  for (const auto& [pos, c] : pos_coeffs) by_index[ns.owner[pos]] = c;
  return make_certificate(gens, std::move(by_index), t);
}

std::optional<Certificate> member_bounded_impl(const std::vector<Int>& gens, const Int& t,
                                               const Int& bound, const SearchLimits& limits) {
  auto cert = member_impl(gens, t, bound, limits);
  if (cert && cert->coefficient_sum() > bound) return std::nullopt;
  return cert;
}

}  // namespace

std::optional<Certificate> member(const CurveSpec& A, const Int& t, const SearchLimits& limits) {
  return member_impl(A.gens(), t, std::nullopt, limits);
}

std::optional<Certificate> member_bounded(const CurveSpec& A, const Int& t, const Int& bound,
                                          const SearchLimits& limits) {
  return member_bounded_impl(A.gens(), t, bound, limits);
}

bool semigroup_contains(const CurveSpec& A, const Int& t, const SearchLimits& limits) {
  if (t < 0) throw std::invalid_argument("semigroup_contains: target must be >= 0");
  if (t == 0) return true;
  NormalizedSet ns = normalize(A.gens());
  if (t % ns.g != 0) return false;
  const Int ts = t / ns.g;
  if (ts < ns.vals.front()) return false;
  if (ns.vals.size() == 1) return ts % ns.vals[0] == 0;
  if (ns.vals.size() == 2) return two_gen_solve(ns.vals[1], ns.vals[0], ts).has_value();
  if (ns.vals.front() <= Int(limits.apery_cap)) {
    auto table = apery_for(ns.vals);
    const std::size_t r = static_cast<std::size_t>(ts % table->m0);
    return table->least[r] >= 0 && table->least[r] <= ts;
  }
  return member_impl(A.gens(), t, std::nullopt, limits).has_value();
}

namespace {

// Ascending enumeration of nonzero monoid combinations, canonical by
// never incrementing below the largest position already used.
struct EnumNode {
  Int value;
  std::vector<Int> coeffs;
  std::size_t min_pos;
};

struct EnumNodeCmp {
  bool operator()(const EnumNode& a, const EnumNode& b) const {
    if (a.value != b.value) return a.value > b.value;  // min-heap on value
    return a.coeffs > b.coeffs;
  }
};

}  // namespace

std::pair<Int, Certificate> m_index(const CurveSpec& A, std::size_t i, const SearchLimits& limits) {
  if (A.size() < 2) throw std::invalid_argument("m_index: need at least two generators");
  if (i >= A.size()) throw std::invalid_argument("m_index: index out of range");
  const Int& di = A[i];
  std::vector<Int> others;
  std::vector<std::size_t> others_index;
  for (std::size_t j = 0; j < A.size(); ++j)
    if (j != i) {
      others.push_back(A[j]);
      others_index.push_back(j);
    }

  // b * di is always reachable at b = A[j]/gcd(di, A[j]) for any j.
  Int bound = 0;
  for (const Int& v : others) {
    Int cand = v / boost::multiprecision::gcd(di, v);
    if (bound == 0 || cand < bound) bound = cand;
  }

  NormalizedSet ns = normalize(others);
  const Int step = ns.g / boost::multiprecision::gcd(di, ns.g);  // b must be a multiple

  if (ns.vals.front() <= Int(limits.apery_cap)) {
    auto table = ns.vals.size() == 1 ? nullptr : apery_for(ns.vals);
    for (Int b = step; b <= bound; b += step) {
      const Int ts = b * di / ns.g;
      std::map<std::size_t, Int> pos_coeffs;
      bool ok = false;
      if (ns.vals.size() == 1) {
        if (ts % ns.vals[0] == 0 && ts > 0) {
          pos_coeffs[0] = ts / ns.vals[0];
          ok = true;
        }
      } else {
        ok = ts >= ns.vals.front() && apery_extract(*table, ts, pos_coeffs);
      }
      if (ok) {
        std::map<std::size_t, Int> by_index;
        for (const auto& [pos, c] : pos_coeffs) by_index[others_index[ns.owner[pos]]] = c;
        return {b, make_certificate(A.gens(), std::move(by_index), b * di)};
      }
    }
    throw std::logic_error("m_index: scan exceeded its provable bound");
  }

  // Sparse huge generators: walk the monoid in ascending order until a
  // multiple of di appears.
  std::priority_queue<EnumNode, std::vector<EnumNode>, EnumNodeCmp> heap;
  for (std::size_t j = 0; j < others.size(); ++j) {
    EnumNode n;
    n.value = others[j];
    n.coeffs.assign(others.size(), 0);
    n.coeffs[j] = 1;
    n.min_pos = j;
    heap.push(std::move(n));
  }
  const Int value_bound = bound * di;
  std::size_t pops = 0;
  while (!heap.empty()) {
    EnumNode n = heap.top();
    heap.pop();
    if (++pops > limits.enum_pop_cap)
      throw resource_error("m_index: enumeration budget exhausted");
    if (n.value % di == 0) {
      std::map<std::size_t, Int> by_index;
      for (std::size_t j = 0; j < others.size(); ++j)
        if (n.coeffs[j] > 0) by_index[others_index[j]] += n.coeffs[j];
      return {n.value / di, make_certificate(A.gens(), std::move(by_index), n.value)};
    }
    if (n.value > value_bound) break;  // unreachable: the lcm witness precedes this
    for (std::size_t j = n.min_pos; j < others.size(); ++j) {
      EnumNode s = n;
      s.value += others[j];
      s.coeffs[j] += 1;
      s.min_pos = j;
      heap.push(std::move(s));
    }
  }
  throw std::logic_error("m_index: enumeration missed its provable witness");
}

Int frobenius(const CurveSpec& A, const SearchLimits& limits) {
  if (A.gcd() != 1)
    throw std::invalid_argument("frobenius: generators must have gcd 1");
  NormalizedSet ns = normalize(A.gens());
  if (ns.vals.front() == 1) return -1;
  if (ns.vals.front() > Int(limits.apery_cap))
    throw resource_error("frobenius: least generator exceeds the table budget");
  auto table = apery_for(ns.vals);
  Int best = 0;
  for (const Int& v : table->least)
    if (v > best) best = v;
  return best - Int(table->m0);
}

CurveSpec minimal_generators(const CurveSpec& A, const SearchLimits& limits) {
  std::vector<Int> distinct = A.gens();
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  if (distinct.size() == 1) return CurveSpec(distinct);
  std::vector<Int> kept;
  for (std::size_t k = 0; k < distinct.size(); ++k) {
    std::vector<Int> others;
    for (std::size_t j = 0; j < distinct.size(); ++j)
      if (j != k) others.push_back(distinct[j]);
    if (!member_impl(others, distinct[k], std::nullopt, limits)) kept.push_back(distinct[k]);
  }
  return CurveSpec(kept);
}

}  // namespace cimc
