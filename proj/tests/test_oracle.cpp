#include <doctest.h>

#include <algorithm>
#include <map>

#include "cimc/oracle.hpp"
#include "cimc/reduction.hpp"
#include "test_support.hpp"

using cimc::Decision;
using cimc::Int;
using cimc::OracleLimits;
using testsupport::spec;
using testsupport::V;

namespace {

std::vector<std::vector<Int>> sorted(std::vector<std::vector<Int>> v) {
  std::sort(v.begin(), v.end());
  return v;
}

std::vector<std::vector<Int>> lifted(const std::vector<std::vector<long long>>& rows) {
  std::vector<std::vector<Int>> out;
  for (const auto& r : rows) {
    std::vector<Int> row;
    for (long long x : r) row.push_back(Int(x));
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace

TEST_CASE("fiber enumerates factorizations in descending lex order") {
  auto f1 = cimc::fiber(spec({2, 3}), Int(6));
  REQUIRE(f1.size() == 2);
  CHECK(f1[0] == V({3, 0}));
  CHECK(f1[1] == V({0, 2}));

  auto f2 = cimc::fiber(spec({4, 6, 9}), Int(12));
  REQUIRE(f2.size() == 2);
  CHECK(f2[0] == V({3, 0, 0}));
  CHECK(f2[1] == V({0, 2, 0}));

  CHECK(cimc::fiber(spec({2, 3}), Int(1)).empty());
  CHECK_THROWS_AS(cimc::fiber(spec({2, 3}), Int(-1)), std::invalid_argument);

  for (auto& f : {cimc::fiber(spec({4, 6, 9}), Int(18))}) {
    for (std::size_t i = 1; i < f.size(); ++i) CHECK(f[i - 1] > f[i]);
  }
}

TEST_CASE("fiber agrees with an independent enumeration") {
  const std::vector<std::vector<long long>> sets = {
      {2, 3}, {4, 6, 9}, {3, 5, 7}, {5, 7, 9}, {2, 5, 13}, {4, 7, 10, 13}};
  for (const auto& s : sets) {
    std::vector<Int> gens;
    for (long long x : s) gens.push_back(Int(x));
    for (long long t = 0; t <= 40; ++t) {
      auto a = sorted(cimc::fiber(cimc::CurveSpec{gens}, Int(t)));
      auto b = sorted(lifted(testsupport::factorizations(s, t)));
      CHECK(a == b);
    }
  }
}

TEST_CASE("fiber cap trips on dense degrees") {
  OracleLimits lim;
  lim.fiber_cap = 3;
  CHECK_THROWS_AS(cimc::fiber(spec({1, 2}), Int(10), lim), cimc::resource_error);
}

TEST_CASE("per-degree generator counts match the naive fiber graph") {
  const std::vector<std::vector<long long>> sets = {{4, 6, 9}, {3, 5, 7}, {5, 7, 9}, {2, 3}};
  for (const auto& s : sets) {
    std::vector<Int> gens;
    for (long long x : s) gens.push_back(Int(x));
    const auto report = cimc::minimal_generator_degrees(cimc::CurveSpec{gens}, Int(40));
    CHECK(report.scan_exhausted);
    std::map<Int, long> by_degree;
    for (const auto& e : report.betti) {
      CHECK(e.deg_u == 0);
      by_degree[e.deg_t] = e.count;
    }
    for (long long t = 1; t <= 40; ++t) {
      const auto it = by_degree.find(Int(t));
      const long have = it == by_degree.end() ? 0 : it->second;
      CHECK(have == testsupport::naive_mu_at_degree(s, t));
    }
  }
}

TEST_CASE("minimal generator degrees of known curves") {
  const auto r1 = cimc::minimal_generator_degrees(spec({4, 6, 9}), Int(20));
  REQUIRE(r1.betti.size() == 2);
  CHECK(r1.betti[0].deg_t == 12);
  CHECK(r1.betti[1].deg_t == 18);
  CHECK(r1.mu_within_bound == 2);

  const auto r2 = cimc::minimal_generator_degrees(spec({3, 5, 7}), Int(20));
  REQUIRE(r2.betti.size() == 3);
  CHECK(r2.betti[0].deg_t == 10);
  CHECK(r2.betti[1].deg_t == 12);
  CHECK(r2.betti[2].deg_t == 14);
  CHECK(r2.mu_within_bound == 3);

  const auto r3 = cimc::minimal_generator_degrees(spec({2, 3}), Int(10));
  REQUIRE(r3.betti.size() == 1);
  CHECK(r3.betti[0].deg_t == 6);
}

TEST_CASE("oracle verdicts on known curves") {
  const auto v1 = cimc::oracle_ci(spec({4, 6, 9}));
  CHECK(v1.decision == Decision::ci);
  CHECK(*v1.frobenius_number == 11);
  CHECK(v1.generators.size() == 2);
  REQUIRE(v1.oracle_report.has_value());
  CHECK(v1.oracle_report->scan_exhausted);

  const auto v2 = cimc::oracle_ci(spec({3, 5, 7}));
  CHECK(v2.decision == Decision::not_ci);

  CHECK(cimc::oracle_ci(spec({10, 15, 14, 21})).decision == Decision::ci);
  CHECK(cimc::oracle_ci(spec({4, 5, 6})).decision == Decision::ci);
}

TEST_CASE("exhausted work budget is inconclusive, not a verdict") {
  OracleLimits lim;
  lim.work_budget = Int(1);
  const auto v = cimc::oracle_ci(spec({4, 6, 9}), std::nullopt, lim);
  CHECK(v.decision == Decision::inconclusive);
  REQUIRE(v.oracle_report.has_value());
  CHECK_FALSE(v.oracle_report->scan_exhausted);
}

TEST_CASE("projective oracle verdicts on known curves") {
  const auto v1 = cimc::projective_oracle_ci(spec({4, 5, 6}));
  CHECK(v1.decision == Decision::ci);
  REQUIRE(v1.oracle_report.has_value());
  REQUIRE(v1.oracle_report->betti.size() == 2);
  CHECK(v1.oracle_report->betti[0].deg_t == 10);
  CHECK(v1.oracle_report->betti[0].deg_u == 2);
  CHECK(v1.oracle_report->betti[1].deg_t == 12);
  CHECK(v1.oracle_report->betti[1].deg_u == 6);

  CHECK(cimc::projective_oracle_ci(spec({3, 5, 7})).decision == Decision::not_ci);
  CHECK(cimc::projective_oracle_ci(spec({4, 9, 10})).decision == Decision::not_ci);

  const auto v2 = cimc::projective_oracle_ci(spec({2, 3}));
  CHECK(v2.decision == Decision::ci);
  REQUIRE(v2.oracle_report.has_value());
  REQUIRE(v2.oracle_report->betti.size() == 1);
  CHECK(v2.oracle_report->betti[0].deg_t == 6);
  CHECK(v2.oracle_report->betti[0].deg_u == 3);
}

TEST_CASE("oracle and reduction agree on small triples") {
  for (long long a = 2; a <= 12; ++a)
    for (long long b = a + 1; b <= 12; ++b)
      for (long long c = b + 1; c <= 12; ++c) {
        std::vector<Int> gens = {Int(a), Int(b), Int(c)};
        if (cimc::gcd_many(gens) != 1) continue;
        const cimc::CurveSpec A{gens};
        CHECK(cimc::oracle_ci(A).decision == cimc::affine_ci(A).decision);
        CHECK(cimc::projective_oracle_ci(A).decision == cimc::projective_ci(A).decision);
      }
}
