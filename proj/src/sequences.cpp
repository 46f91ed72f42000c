#include "cimc/sequences.hpp"

#include <numeric>
#include <utility>

namespace cimc {

PqParams::PqParams(Int p_, Int q_) : p(std::move(p_)), q(std::move(q_)) {
  if (p < 1 || q < 1) throw std::invalid_argument("PqParams: p and q must be >= 1");
  if (boost::multiprecision::gcd(p, q) != 1)
    throw std::invalid_argument("PqParams: p and q must be coprime");
}

Int seq_term(const PqParams& pq, SeqKind kind, long long k) {
  if (k < 0) throw std::invalid_argument("seq_term: index must be >= 0");
  Int prev = (kind == SeqKind::fibonacci) ? Int(0) : Int(2);
  Int cur = (kind == SeqKind::fibonacci) ? Int(1) : pq.p;
  if (k == 0) return prev;
  for (long long i = 1; i < k; ++i) {
    Int next = pq.p * cur + pq.q * prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

Int gcd_closed(const PqParams& pq, SeqKind kind_a, long long a, SeqKind kind_b, long long b) {
  if (a < 1 || b < 1) throw std::invalid_argument("gcd_closed: indices must be >= 1");
  if (kind_a == SeqKind::fibonacci && kind_b == SeqKind::lucas)
    return gcd_closed(pq, kind_b, b, kind_a, a);

  const long long d = std::gcd(a, b);
  const bool p_odd = (pq.p % 2 != 0);
  const bool q_odd = (pq.q % 2 != 0);

  if (kind_a == SeqKind::fibonacci) {  // both Fibonacci
    return seq_term(pq, SeqKind::fibonacci, d);
  }

  const unsigned long va = val2(Int(a));
  const unsigned long vb = val2(Int(b));

  if (kind_b == SeqKind::lucas) {  // both Lucas
    if (va == vb) return seq_term(pq, SeqKind::lucas, d);
    if (p_odd && q_odd && d % 3 == 0) return 2;
    if (!p_odd && q_odd) return 2;
    return 1;
  }

  // Lucas, Fibonacci
  if (va < vb) return seq_term(pq, SeqKind::lucas, d);
  if (p_odd && q_odd && d % 3 == 0) return 2;
  if (!p_odd && b % 2 == 0 && q_odd) return 2;
  return 1;
}

}  // namespace cimc
