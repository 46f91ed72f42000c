#ifndef CIMC_REDUCTION_HPP
#define CIMC_REDUCTION_HPP

#include "cimc/verdict.hpp"

namespace cimc {

// Iterated elimination for affine sets: per pass, scan slots ascending and
// apply every applicable scale (factor gcd(rest)/gcd(all) when > 1), then
// every applicable removal (value representable by the rest, witnessed);
// repeat to a fixpoint.  A final singleton is dropped without witness.
// The residual is empty or has every element in the integer span but not
// the monoid span of the others.
ReductionTrace affine_reduce(const CurveSpec& A, const SearchLimits& limits = default_limits());

// Replays a trace against its recorded initial values; throws
// std::logic_error on any mismatch.  Returns the surviving values.
std::vector<Int> replay_trace(const ReductionTrace& trace);

// Defining binomials of the curve read off a fully-consumed trace, in
// original variables.  A removal of slot i contributes
//   x_i^{M_i} - prod_j x_j^{alpha_j M_j}
// where M is the accumulated scale multiplier at removal time.
std::vector<Binomial> generators_from_trace(const ReductionTrace& trace);

// Complete-intersection decision for the affine monomial curve of A.
// Decision order: normalize; two or fewer distinct values is CI; empty
// residual is CI (generators and Frobenius number from the trace); a
// three-element residual is NotCI; crossing critical binomials or n-1
// distinct critical degrees (on residual or input) are NotCI; otherwise
// the degree-scan oracle decides on the residual.
Verdict affine_ci(const CurveSpec& A, std::optional<Int> oracle_bound = std::nullopt,
                  const SearchLimits& limits = default_limits());

// Complete-intersection decision for the projective closure: repeatedly
// drop a non-maximal value d_i whenever B_i * d_i is representable by the
// rest with coefficient sum <= B_i (B_i = gcd(rest)/gcd(all), recomputed
// against the shrinking set).  CI exactly when only the maximum survives.
Verdict projective_ci(const CurveSpec& A, const SearchLimits& limits = default_limits());

}  // namespace cimc

#endif
