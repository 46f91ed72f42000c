#ifndef CIMC_ORACLE_HPP
#define CIMC_ORACLE_HPP

#include "cimc/verdict.hpp"

namespace cimc {

struct OracleLimits {
  std::size_t fiber_cap = 1'000'000;  // abort when one degree has more factorizations
  Int degree_budget = Int(2'000'000);  // refuse scans past this many degrees
  Int work_budget = Int(50'000'000);  // give up (inconclusive) past this many
                                      // enumerated factorizations across the scan
};

const OracleLimits& default_oracle_limits();

// All factorizations of b over A: exponent vectors e with sum e_i A_i = b,
// in descending lexicographic order.  Throws resource_error past
// limits.fiber_cap.
std::vector<std::vector<Int>> fiber(const CurveSpec& A, const Int& b,
                                    const OracleLimits& limits = default_oracle_limits());

// Scans degrees 1..bound.  At each degree the number of minimal
// generators of the toric ideal equals (connected components of the
// fiber graph) - 1, where factorizations are adjacent when they share a
// positive coordinate.
OracleReport minimal_generator_degrees(const CurveSpec& A, const Int& bound,
                                       const OracleLimits& limits = default_oracle_limits(),
                                       const SearchLimits& search = default_limits());

// Minimal-generator count against height n-1.  Default bound is
// frobenius(A/gcd) + sum of the normalized values: every minimal
// generator of a complete intersection lives at or below it, so an
// exhaustive scan with mu = n-1 plus the degree-sum identity certifies
// CI, and mu >= n refutes it at any bound.
Verdict oracle_ci(const CurveSpec& A, std::optional<Int> bound = std::nullopt,
                  const OracleLimits& limits = default_oracle_limits(),
                  const SearchLimits& search = default_limits());

// Projective analogue over two-component degrees.  Degrees are scanned by
// first coordinate b1 up to the same bound; for each b1 the second
// coordinates that can carry minimal generators are the distinct totals
// of the affine fiber, homogenized by the slack variable.
Verdict projective_oracle_ci(const CurveSpec& A, std::optional<Int> bound = std::nullopt,
                             const OracleLimits& limits = default_oracle_limits(),
                             const SearchLimits& search = default_limits());

}  // namespace cimc

#endif
