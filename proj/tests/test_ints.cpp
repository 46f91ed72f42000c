#include <doctest.h>

#include <numeric>

#include "cimc/ints.hpp"
#include "test_support.hpp"

using cimc::Int;
using testsupport::V;

TEST_CASE("gcd_many") {
  CHECK(cimc::gcd_many(V({8, 10, 12})) == 2);
  CHECK(cimc::gcd_many(V({3, 5, 7})) == 1);
  CHECK(cimc::gcd_many(V({6})) == 6);
  CHECK(cimc::gcd_many(V({12, 18, 30})) == 6);
}

TEST_CASE("lcm_pair") {
  CHECK(cimc::lcm_pair(Int(4), Int(6)) == 12);
  CHECK(cimc::lcm_pair(Int(5), Int(7)) == 35);
  CHECK(cimc::lcm_pair(Int(6), Int(6)) == 6);
  for (long long a = 1; a <= 20; ++a)
    for (long long b = 1; b <= 20; ++b)
      CHECK(cimc::lcm_pair(Int(a), Int(b)) * boost::multiprecision::gcd(Int(a), Int(b)) ==
            Int(a) * Int(b));
}

TEST_CASE("val2") {
  CHECK(cimc::val2(Int(8)) == 3);
  CHECK(cimc::val2(Int(12)) == 2);
  CHECK(cimc::val2(Int(7)) == 0);
  CHECK(cimc::val2(Int(1)) == 0);
  CHECK(cimc::val2(Int(1) << 40) == 40);
}

TEST_CASE("exact_div") {
  CHECK(cimc::exact_div(Int(12), Int(4)) == 3);
  CHECK(cimc::exact_div(Int(-12), Int(4)) == -3);
  CHECK_THROWS_AS(cimc::exact_div(Int(13), Int(4)), std::logic_error);
}

TEST_CASE("pow_int") {
  CHECK(cimc::pow_int(Int(2), 10) == 1024);
  CHECK(cimc::pow_int(Int(7), 0) == 1);
  CHECK(cimc::pow_int(Int(3), 5) == 243);
  CHECK(cimc::pow_int(Int(10), 25) == Int("10000000000000000000000000"));
}

TEST_CASE("mod_inverse") {
  CHECK(cimc::mod_inverse(Int(3), Int(7)) == 5);
  CHECK_THROWS_AS(cimc::mod_inverse(Int(4), Int(8)), std::invalid_argument);
  for (long long m = 2; m <= 50; ++m)
    for (long long x = 1; x < m; ++x) {
      if (std::gcd(x, m) != 1) continue;
      const Int inv = cimc::mod_inverse(Int(x), Int(m));
      CHECK(inv >= 0);
      CHECK(inv < m);
      CHECK(Int(x) * inv % Int(m) == 1);
    }
}
