#include <doctest.h>

#include <numeric>

#include "cimc/semigroup.hpp"
#include "test_support.hpp"

using cimc::CurveSpec;
using cimc::Int;
using testsupport::spec;
using testsupport::V;

namespace {

const std::vector<std::vector<long long>> kSets = {
    {3, 5}, {2, 3}, {4, 6, 9}, {5, 7, 11}, {6, 10, 15}, {4, 7, 10, 13}, {8, 10, 12, 15}};

}  // namespace

TEST_CASE("CurveSpec validation") {
  CHECK_THROWS_AS(CurveSpec{V({0, 3})}, std::invalid_argument);
  CHECK_THROWS_AS(CurveSpec{V({4, -1})}, std::invalid_argument);
  CHECK_THROWS_AS(CurveSpec{std::vector<Int>{}}, std::invalid_argument);
  const CurveSpec a{V({5, 3, 5})};
  CHECK(a.has_duplicates());
  CHECK(a.gcd() == 1);
  CHECK(a.min_value() == 3);
  CHECK(a.max_value() == 5);
  CHECK_FALSE(spec({4, 6, 9}).has_duplicates());
}

TEST_CASE("member agrees with the reachability sieve") {
  for (const auto& s : kSets) {
    std::vector<Int> gens;
    for (long long g : s) gens.push_back(Int(g));
    const CurveSpec A{gens};
    const auto sieve = testsupport::reach_sieve(s, 200);
    for (long long t = 0; t <= 200; ++t) {
      const auto cert = cimc::member(A, Int(t));
      CHECK(cert.has_value() == static_cast<bool>(sieve[t]));
      if (cert) {
        CHECK(cert->target == t);
        CHECK(cimc::certificate_valid(*cert, A.gens()));
      }
    }
  }
}

TEST_CASE("member rejects negative targets") {
  CHECK_THROWS_AS(cimc::member(spec({2, 3}), Int(-1)), std::invalid_argument);
}

TEST_CASE("semigroup_contains matches member") {
  for (const auto& s : kSets) {
    std::vector<Int> gens;
    for (long long g : s) gens.push_back(Int(g));
    const CurveSpec A{gens};
    for (long long t = 0; t <= 150; ++t)
      CHECK(cimc::semigroup_contains(A, Int(t)) == cimc::member(A, Int(t)).has_value());
  }
}

TEST_CASE("member_bounded respects the coefficient budget") {
  // 10 = 4 + 6 needs coefficient sum 2.
  CHECK(cimc::member_bounded(spec({4, 6}), Int(10), Int(2)).has_value());
  CHECK_FALSE(cimc::member_bounded(spec({4, 6}), Int(10), Int(1)).has_value());
  for (const auto& s : kSets) {
    std::vector<Int> gens;
    for (long long g : s) gens.push_back(Int(g));
    const CurveSpec A{gens};
    for (long long t = 0; t <= 100; ++t) {
      const auto unb = cimc::member(A, Int(t));
      const auto big = cimc::member_bounded(A, Int(t), Int(1000));
      CHECK(unb.has_value() == big.has_value());
      if (big) CHECK(big->coefficient_sum() <= 1000);
      if (unb) {
        // The unbounded witness's sum is itself a feasible budget.
        const auto tight = cimc::member_bounded(A, Int(t), unb->coefficient_sum());
        CHECK(tight.has_value());
        CHECK(tight->coefficient_sum() <= unb->coefficient_sum());
      }
    }
  }
}

TEST_CASE("b_index values") {
  const CurveSpec A = spec({4, 6, 9});
  CHECK(cimc::b_index(A, 0) == 3);
  CHECK(cimc::b_index(A, 1) == 1);
  CHECK(cimc::b_index(A, 2) == 2);
  CHECK(cimc::b_index(spec({8, 10, 12}), 0) == 1);
}

TEST_CASE("m_index minimal multiples") {
  auto [b0, c0] = cimc::m_index(spec({4, 6, 9}), 0);
  CHECK(b0 == 3);
  CHECK(c0.target == 12);
  CHECK(cimc::certificate_valid(c0, V({4, 6, 9})));
  CHECK(c0.coeffs.count(0) == 0);

  auto [b2, c2] = cimc::m_index(spec({4, 6, 9}), 2);
  CHECK(b2 == 2);
  CHECK(c2.target == 18);
  CHECK(cimc::certificate_valid(c2, V({4, 6, 9})));

  auto [bt, ct] = cimc::m_index(spec({2, 3}), 0);
  CHECK(bt == 3);
  CHECK(ct.coeffs.at(1) == 2);
}

TEST_CASE("m_index minimality against the sieve") {
  for (const auto& s : kSets) {
    if (s.size() < 2) continue;
    std::vector<Int> gens;
    for (long long g : s) gens.push_back(Int(g));
    const CurveSpec A{gens};
    for (std::size_t i = 0; i < s.size(); ++i) {
      std::vector<long long> others;
      for (std::size_t j = 0; j < s.size(); ++j)
        if (j != i) others.push_back(s[j]);
      const auto sieve = testsupport::reach_sieve(others, 2000);
      auto [b, cert] = cimc::m_index(A, i);
      CHECK(cert.target == b * A[i]);
      CHECK(cimc::certificate_valid(cert, A.gens()));
      CHECK(cert.coeffs.count(i) == 0);
      for (Int k = 1; k < b; ++k) CHECK_FALSE(sieve[(k * A[i]).convert_to<std::size_t>()]);
      CHECK(sieve[(b * A[i]).convert_to<std::size_t>()]);
    }
  }
}

TEST_CASE("frobenius spot values") {
  CHECK(cimc::frobenius(spec({4, 5, 6})) == 7);
  CHECK(cimc::frobenius(spec({8, 10, 12, 15})) == 29);
  CHECK(cimc::frobenius(spec({2, 3})) == 1);
  CHECK(cimc::frobenius(spec({11, 18, 29})) == 169);
  CHECK(cimc::frobenius(spec({1})) == -1);
  CHECK(cimc::frobenius(spec({3, 1, 7})) == -1);
  CHECK_THROWS_AS(cimc::frobenius(spec({4, 6})), std::invalid_argument);
}

TEST_CASE("frobenius equals the largest sieve gap") {
  const std::vector<std::vector<long long>> sets = {
      {3, 5}, {2, 3}, {4, 6, 9, 11}, {5, 7, 11}, {4, 5, 6}, {7, 9, 11, 13},
      {6, 10, 15}, {11, 18, 29}, {5, 9, 21}, {8, 9, 15}};
  for (const auto& s : sets) {
    std::vector<Int> gens;
    long long g = 0;
    for (long long x : s) {
      gens.push_back(Int(x));
      g = std::gcd(g, x);
    }
    REQUIRE(g == 1);
    CHECK(cimc::frobenius(CurveSpec{gens}) == testsupport::sieve_frobenius(s));
  }
}

TEST_CASE("minimal_generators") {
  auto m1 = cimc::minimal_generators(spec({4, 6, 9, 10}));
  CHECK(m1.gens() == V({4, 6, 9}));
  auto m2 = cimc::minimal_generators(spec({2, 4, 7}));
  CHECK(m2.gens() == V({2, 7}));
  auto m3 = cimc::minimal_generators(spec({5, 5, 8}));
  CHECK(m3.gens() == V({5, 8}));
  auto m4 = cimc::minimal_generators(spec({11, 18, 29}));
  CHECK(m4.gens() == V({11, 18}));
}
