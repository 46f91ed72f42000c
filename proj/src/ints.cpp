#include "cimc/ints.hpp"

namespace cimc {

Int gcd_many(const std::vector<Int>& values) {
  if (values.empty()) throw std::invalid_argument("gcd_many: empty list");
  Int g = 0;
  for (const Int& v : values) {
    if (v <= 0) throw std::invalid_argument("gcd_many: values must be positive");
    g = boost::multiprecision::gcd(g, v);
  }
  return g;
}

Int lcm_pair(const Int& a, const Int& b) {
  if (a <= 0 || b <= 0) throw std::invalid_argument("lcm_pair: values must be positive");
  return a / boost::multiprecision::gcd(a, b) * b;
}

unsigned long val2(const Int& a) {
  if (a <= 0) throw std::invalid_argument("val2: value must be positive");
  return boost::multiprecision::lsb(a);
}

Int exact_div(const Int& a, const Int& b) {
  if (b == 0 || a % b != 0) throw std::logic_error("exact_div: division is not exact");
  return a / b;
}

Int pow_int(const Int& base, unsigned long exp) {
  Int r = 1;
  Int b = base;
  while (exp > 0) {
    if (exp & 1UL) r *= b;
    b *= b;
    exp >>= 1UL;
  }
  return r;
}

Int mod_inverse(const Int& x, const Int& m) {
  if (m < 1) throw std::invalid_argument("mod_inverse: modulus must be positive");
  if (m == 1) return 0;
  // extended Euclid on (x mod m, m)
  Int a = x % m;
  if (a < 0) a += m;
  Int b = m;
  Int s0 = 1, s1 = 0;  // coefficients of a
  while (b != 0) {
    Int q = a / b;
    Int t = a - q * b;
    a = b;
    b = t;
    t = s0 - q * s1;
    s0 = s1;
    s1 = t;
  }
  if (a != 1) throw std::invalid_argument("mod_inverse: arguments are not coprime");
  if (s0 < 0) s0 += m;
  return s0;
}

}  // namespace cimc
