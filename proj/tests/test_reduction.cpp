#include <doctest.h>

#include <algorithm>

#include "cimc/ints.hpp"
#include "cimc/reduction.hpp"
#include "test_support.hpp"

using cimc::CurveSpec;
using cimc::Decision;
using cimc::Int;
using cimc::Verdict;
using testsupport::spec;
using testsupport::V;

namespace {

// Pool of sets exercising every decision path: CI by reduction, CI only
// via the oracle (a glued fixpoint), NotCI at 3 and 4 elements,
// duplicates, and common factors.
const std::vector<std::vector<long long>> kPool = {
    {2, 3},         {4, 6, 9},      {11, 18, 29}, {3, 5, 7},      {4, 5, 6},
    {10, 15, 14, 21}, {8, 10, 12, 15}, {5, 7, 9},  {8, 12, 18, 27}, {2, 2, 3},
    {6, 10, 15},    {4, 9, 10},     {7, 11, 13},  {9, 12, 15, 17}};

Verdict run(const std::vector<long long>& s) {
  std::vector<Int> gens;
  for (long long x : s) gens.push_back(Int(x));
  return cimc::affine_ci(CurveSpec{gens});
}

void check_ci_shape(const Verdict& v, std::size_t n) {
  CHECK(v.generators.size() == n - 1);
  Int deg_sum = 0, d_sum = 0;
  for (const auto& g : v.generators) {
    // A-homogeneity: both monomials carry the generator's degree.
    Int plus_deg = 0, minus_deg = 0;
    for (const auto& [slot, c] : g.plus) plus_deg += c * v.trace.initial.at(slot);
    for (const auto& [slot, c] : g.minus) minus_deg += c * v.trace.initial.at(slot);
    CHECK(plus_deg == g.deg_t);
    CHECK(minus_deg == g.deg_t);
    deg_sum += g.deg_t;
  }
  for (const Int& d : v.trace.initial) d_sum += d;
  REQUIRE(v.frobenius_number.has_value());
  CHECK(cimc::gcd_many(v.trace.initial) * *v.frobenius_number == deg_sum - d_sum);
}

}  // namespace

TEST_CASE("affine_reduce reaches the expected residuals") {
  auto t1 = cimc::affine_reduce(spec({4, 6, 9}));
  CHECK(t1.residual.empty());
  CHECK(cimc::replay_trace(t1).empty());
  auto gens1 = cimc::generators_from_trace(t1);
  CHECK(gens1.size() == 2);
  std::vector<Int> degs;
  for (const auto& g : gens1) degs.push_back(g.deg_t);
  std::sort(degs.begin(), degs.end());
  CHECK(degs == V({12, 18}));

  auto t2 = cimc::affine_reduce(spec({3, 5, 7}));
  CHECK(t2.residual == V({3, 5, 7}));
  CHECK(t2.steps.empty());

  // Glued fixpoint: the reduction cannot shrink it, yet it is CI.
  auto t3 = cimc::affine_reduce(spec({10, 15, 14, 21}));
  CHECK(t3.residual.size() == 4);
}

TEST_CASE("replay_trace reproduces every residual") {
  for (const auto& s : kPool) {
    std::vector<Int> gens;
    for (long long x : s) gens.push_back(Int(x));
    const auto trace = cimc::affine_reduce(CurveSpec{gens});
    CHECK(cimc::replay_trace(trace) == trace.residual);
  }
}

TEST_CASE("affine_ci frozen verdicts") {
  CHECK(run({11, 18, 29}).decision == Decision::ci);
  CHECK(*run({11, 18, 29}).frobenius_number == 169);
  CHECK(run({11, 199, 322}).decision == Decision::not_ci);
  CHECK(run({11, 2207, 3571}).decision == Decision::ci);
  CHECK(run({11, 24476, 39603}).decision == Decision::not_ci);
  CHECK(run({4, 6, 9}).decision == Decision::ci);
  CHECK(*run({4, 6, 9}).frobenius_number == 11);
  CHECK(run({3, 5, 7}).decision == Decision::not_ci);
  CHECK(run({2, 3}).decision == Decision::ci);
  CHECK(*run({2, 3}).frobenius_number == 1);
  CHECK(run({10, 15, 14, 21}).decision == Decision::ci);
  CHECK(run({4, 9, 10}).decision == Decision::ci);
}

TEST_CASE("duplicates and common factors normalize away") {
  const Verdict dup = run({2, 2});
  CHECK(dup.decision == Decision::ci);
  CHECK(*dup.frobenius_number == -1);
  check_ci_shape(dup, 2);

  const Verdict dup3 = run({2, 2, 3});
  CHECK(dup3.decision == Decision::ci);
  CHECK(*dup3.frobenius_number == 1);
  check_ci_shape(dup3, 3);

  const Verdict scaled = run({8, 12, 18});
  CHECK(scaled.decision == Decision::ci);
  CHECK(*scaled.frobenius_number == *run({4, 6, 9}).frobenius_number);
}

TEST_CASE("CI generator shape and degree sum") {
  for (const auto& s : kPool) {
    const Verdict v = run(s);
    if (v.decision != Decision::ci) continue;
    check_ci_shape(v, s.size());
  }
}

TEST_CASE("decision is scale invariant") {
  for (const auto& s : kPool) {
    const Verdict base = run(s);
    for (long long c : {2, 3, 5}) {
      std::vector<long long> scaled;
      for (long long x : s) scaled.push_back(c * x);
      const Verdict v = run(scaled);
      CHECK(v.decision == base.decision);
      if (base.frobenius_number) CHECK(*v.frobenius_number == *base.frobenius_number);
    }
  }
}

TEST_CASE("decision is permutation invariant") {
  for (const auto& s : kPool) {
    const Decision base = run(s).decision;
    std::vector<long long> perm = s;
    std::sort(perm.begin(), perm.end());
    int tried = 0;
    do {
      CHECK(run(perm).decision == base);
    } while (std::next_permutation(perm.begin(), perm.end()) && ++tried < 6);
  }
}

TEST_CASE("projective frozen verdicts") {
  // Affine CI whose closure drops intersection completeness.
  CHECK(run({4, 9, 10}).decision == Decision::ci);
  CHECK(cimc::projective_ci(spec({4, 9, 10})).decision == Decision::not_ci);

  const Verdict p1 = cimc::projective_ci(spec({4, 5, 6}));
  CHECK(p1.decision == Decision::ci);
  CHECK(p1.projective);
  REQUIRE(p1.generators.size() == 2);
  for (const auto& g : p1.generators) {
    CHECK(g.projective);
    // Homogeneity in both coordinates against A* = {(d_i, d - d_i)}.
    const Int d = *std::max_element(p1.trace.initial.begin(), p1.trace.initial.end());
    Int pt = 0, pu = 0, mt = 0, mu = 0;
    for (const auto& [slot, c] : g.plus) {
      const Int di = slot < p1.trace.initial.size() ? p1.trace.initial[slot] : Int(0);
      pt += c * di;
      pu += c * (d - di);
    }
    for (const auto& [slot, c] : g.minus) {
      const Int di = slot < p1.trace.initial.size() ? p1.trace.initial[slot] : Int(0);
      mt += c * di;
      mu += c * (d - di);
    }
    CHECK(pt == g.deg_t);
    CHECK(mt == g.deg_t);
    CHECK(pu == g.deg_u);
    CHECK(mu == g.deg_u);
  }

  CHECK(cimc::projective_ci(spec({3, 5, 7})).decision == Decision::not_ci);

  const Verdict p2 = cimc::projective_ci(spec({2, 3}));
  CHECK(p2.decision == Decision::ci);
  REQUIRE(p2.generators.size() == 1);
  CHECK(p2.generators[0].deg_t == 6);
  CHECK(p2.generators[0].deg_u == 3);
}

TEST_CASE("projective CI implies affine CI") {
  for (const auto& s : kPool) {
    std::vector<Int> gens;
    for (long long x : s) gens.push_back(Int(x));
    const Verdict proj = cimc::projective_ci(CurveSpec{gens});
    if (proj.decision == Decision::ci) CHECK(run(s).decision == Decision::ci);
    CHECK(cimc::replay_trace(proj.trace) == proj.trace.residual);
  }
}
