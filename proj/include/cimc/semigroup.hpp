#ifndef CIMC_SEMIGROUP_HPP
#define CIMC_SEMIGROUP_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "cimc/ints.hpp"

namespace cimc {

// Thrown when a search would exceed its configured budget (table size,
// enumeration pops, fiber size).  Callers either propagate or fall back
// to a different decision path.
struct resource_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SearchLimits {
  // Largest min(A)/gcd(A) for which the Apery table of the semigroup
  // is materialized; above it membership falls back to bounded search.
  std::size_t apery_cap = 1'000'000;
  // Pop budget of the ascending enumeration used by m_index on sets
  // whose Apery table is out of reach.
  std::size_t enum_pop_cap = 2'000'000;
};

const SearchLimits& default_limits();

// Generators of a numerical-semigroup / monomial-curve instance, in the
// order given by the caller.  Order is meaningful (it names the
// variables x1..xn); values must be positive, duplicates are legal and
// detectable.
class CurveSpec {
 public:
  explicit CurveSpec(std::vector<Int> gens);

  const std::vector<Int>& gens() const { return gens_; }
  std::size_t size() const { return gens_.size(); }
  const Int& operator[](std::size_t i) const { return gens_.at(i); }
  bool has_duplicates() const;
  Int gcd() const;
  const Int& min_value() const;
  const Int& max_value() const;

 private:
  std::vector<Int> gens_;
};

// Witness that target = sum coeffs[i] * gens[i]; indices refer to the
// generator list the certificate was built against.  Only nonzero
// coefficients are stored.
struct Certificate {
  std::map<std::size_t, Int> coeffs;
  Int target = 0;

  Int coefficient_sum() const;
};

// Validates the arithmetic and returns the certificate; throws
// std::logic_error if the sum does not match.
Certificate make_certificate(const std::vector<Int>& gens,
                             std::map<std::size_t, Int> coeffs, Int target);

bool certificate_valid(const Certificate& c, const std::vector<Int>& gens);

// gcd(A \ {i}) / gcd(A).  Requires at least two generators.
Int b_index(const CurveSpec& A, std::size_t i);

// Membership of t in the monoid generated by A, with witness.
// Deterministic: the certificate is the lexicographically first one when
// generators are scanned in descending value order.
std::optional<Certificate> member(const CurveSpec& A, const Int& t,
                                  const SearchLimits& limits = default_limits());

// Membership with coefficient-sum budget: sum of coefficients <= bound.
std::optional<Certificate> member_bounded(const CurveSpec& A, const Int& t,
                                          const Int& bound,
                                          const SearchLimits& limits = default_limits());

// Membership without witness extraction; cheap enough for scan loops.
bool semigroup_contains(const CurveSpec& A, const Int& t,
                        const SearchLimits& limits = default_limits());

// Smallest b >= 1 with b * A[i] in the monoid generated by A \ {i},
// together with a witness over the remaining indices.  Always finite:
// b <= min over j != i of A[j] / gcd(A[i], A[j]).
std::pair<Int, Certificate> m_index(const CurveSpec& A, std::size_t i,
                                    const SearchLimits& limits = default_limits());

// Frobenius number of the numerical semigroup generated by A.
// Requires gcd(A) = 1; returns -1 when 1 is a generator.
Int frobenius(const CurveSpec& A, const SearchLimits& limits = default_limits());

// The unique minimal generating set: elements not representable by the
// others.  Canonical output: ascending, duplicate-free.
CurveSpec minimal_generators(const CurveSpec& A, const SearchLimits& limits = default_limits());

}  // namespace cimc

#endif
