#ifndef CIMC_FAMILIES_HPP
#define CIMC_FAMILIES_HPP

#include "cimc/reduction.hpp"
#include "cimc/sequences.hpp"

#include <string>
#include <variant>

namespace cimc {

// Values d1 and h*d1 + k*step for k = 1..n-1.  Always strictly increasing.
struct GenArithParams {
  Int d1;
  Int h;
  Int step;
  std::size_t n = 3;
};

// A generalized arithmetic block of n_seq values plus one extra value dn.
// The extra value occupies the last slot and may fall anywhere relative
// to the block; it must not collide with a block value.
struct AlmostArithParams {
  Int d1;
  Int h;
  Int step;
  std::size_t n_seq = 3;
  Int dn;
};

// Fibonacci values whose indices are a generalized arithmetic sequence:
// F(a) and F(h*a + k*d) for k = 1..n-1.
struct FibonacciParams {
  PqParams pq;
  long long h = 1;
  long long a = 1;
  long long d = 1;
  std::size_t n = 3;
};

// Lucas values whose indices are an arithmetic sequence:
// L(a + k*d) for k = 0..n-1.
struct LucasParams {
  PqParams pq;
  long long a = 1;
  long long d = 1;
  std::size_t n = 3;
};

using FamilyParams = std::variant<GenArithParams, AlmostArithParams, FibonacciParams, LucasParams>;

// One checked hypothesis of a family theorem.  A failed hypothesis makes
// the family verdict inconclusive rather than wrong.
struct FamilyHypothesis {
  std::string name;
  bool satisfied = true;
  std::string note;
};

struct FamilyVerdict {
  Verdict verdict;
  // Which arm of the characterization fired, for complete intersections.
  std::optional<std::string> matched_condition;
  std::vector<FamilyHypothesis> hypotheses;
};

// The value tuple in slot order.  Throws std::invalid_argument on
// malformed parameters and resource_error when sequence indices are
// beyond reach (past index 200000).
std::vector<Int> family_build(const FamilyParams& params);

// Third member test for index step d: F(a+2d)-type values lie in the
// span of the first two exactly when d is odd or F(2d) covers
// lcm(first value, F(d)).  Used by the closed-form deciders and handy
// for cross-checks.
bool fib_third_term_in_span(const PqParams& pq, long long a, long long d);
bool lucas_third_term_in_span(const PqParams& pq, long long a, long long d);

// Closed-form complete intersection decision for a family point.  The
// verdict carries explicit generators and (affine cases) the Frobenius
// number of the normalized semigroup; hypotheses that fail produce an
// inconclusive verdict instead of a guess.
FamilyVerdict family_ci(const FamilyParams& params, bool projective,
                        const SearchLimits& limits = default_limits());

}  // namespace cimc

#endif
