#ifndef CIMC_INTS_HPP
#define CIMC_INTS_HPP

#include <stdexcept>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace cimc {

// All semigroup data is exact; sequence terms overflow 64 bits quickly.
using Int = boost::multiprecision::cpp_int;

// gcd of a nonempty list of positive integers.
Int gcd_many(const std::vector<Int>& values);

Int lcm_pair(const Int& a, const Int& b);

// 2-valuation: largest t with 2^t | a.  Requires a >= 1.
unsigned long val2(const Int& a);

// a / b, throwing if b does not divide a.  Used where a formula promises
// an integer exponent and we want the violation loud.
Int exact_div(const Int& a, const Int& b);

Int pow_int(const Int& base, unsigned long exp);

// x^-1 mod m for gcd(x, m) = 1, m >= 1.
Int mod_inverse(const Int& x, const Int& m);

}  // namespace cimc

#endif
