#ifndef CIMC_SEQUENCES_HPP
#define CIMC_SEQUENCES_HPP

#include "cimc/ints.hpp"

namespace cimc {

// Coefficients of the recurrence u_{k+1} = p*u_k + q*u_{k-1}.
// Both must be >= 1 and coprime.
struct PqParams {
  Int p;
  Int q;
  PqParams(Int p_, Int q_);
};

enum class SeqKind { fibonacci, lucas };

// F_0 = 0, F_1 = 1; L_0 = 2, L_1 = p; thereafter the recurrence above.
// Exact evaluation, no floating shortcuts.
Int seq_term(const PqParams& pq, SeqKind kind, long long k);

// gcd of two sequence terms by the closed-form case split; the direct gcd
// of seq_term values must agree (checked in tests, never used as fallback).
//
//   gcd(F_a, F_b) = F_gcd(a,b)
//   gcd(L_a, L_b) = L_d               if v2(a) == v2(b)
//                   2                 if v2(a) != v2(b), p,q odd, 3 | d
//                   2                 if v2(a) != v2(b), p even, q odd
//                   1                 otherwise
//   gcd(L_a, F_b) = L_d               if v2(a) < v2(b)
//                   2                 if v2(a) >= v2(b), p,q odd, 3 | d
//                   2                 if v2(a) >= v2(b), p even, b even, q odd
//                   1                 otherwise
// with d = gcd(a,b).  A mixed call in (fibonacci, lucas) order is
// normalized to (lucas, fibonacci) first.  Requires a, b >= 1.
Int gcd_closed(const PqParams& pq, SeqKind kind_a, long long a, SeqKind kind_b, long long b);

}  // namespace cimc

#endif
