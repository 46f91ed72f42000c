#ifndef CIMC_VERDICT_HPP
#define CIMC_VERDICT_HPP

#include <optional>
#include <string>
#include <vector>

#include "cimc/semigroup.hpp"

namespace cimc {

enum class Decision { ci, not_ci, inconclusive };

// How a verdict was reached.
//   empty_reduction          the replayable reduction consumed every generator
//   three_element_residual   a three-element fixpoint remained
//   critical_pair_obstruction  two crossing critical binomials were exhibited
//   distinct_critical_degrees  n-1 pairwise distinct critical degrees
//   oracle_count             minimal-generator count within a degree bound
//   family_theorem           a closed-form family criterion
//   table1_algorithm         the bounded projective elimination loop
enum class Method {
  empty_reduction,
  three_element_residual,
  critical_pair_obstruction,
  distinct_critical_degrees,
  oracle_count,
  family_theorem,
  table1_algorithm,
};

const char* to_string(Decision d);
const char* to_string(Method m);

// Difference of two monomials with disjoint supports.  Variable slots are
// 0-based; slot n (one past the input generators) is the homogenizing
// variable of projective instances.  deg_t is the weighted degree under
// the input values; deg_u the complementary projective degree (0 for
// affine binomials).
struct Binomial {
  std::map<std::size_t, Int> plus;
  std::map<std::size_t, Int> minus;
  Int deg_t = 0;
  Int deg_u = 0;
  bool projective = false;
};

struct ReductionStep {
  enum class Kind { scale, remove, drop_free };
  Kind kind = Kind::scale;
  std::size_t slot = 0;
  Int factor = 0;    // scale only, always >= 2
  Certificate cert;  // remove only, indexed by slot
};

// Replayable record: dup_steps removals act on the raw input, then every
// value is divided by rescale_divisor, then steps run in order.  The
// surviving values must equal residual.
struct ReductionTrace {
  std::vector<Int> initial;
  std::size_t dup_steps = 0;
  Int rescale_divisor = 1;
  std::vector<ReductionStep> steps;
  std::vector<Int> residual;
  std::vector<std::size_t> residual_slots;
};

struct OracleReport {
  struct BettiEntry {
    Int deg_t;
    Int deg_u;  // 0 for affine scans
    long count = 0;
  };
  Int bound = 0;
  std::vector<BettiEntry> betti;
  long mu_within_bound = 0;
  bool scan_exhausted = false;
  bool projective = false;
};

struct Verdict {
  Decision decision = Decision::inconclusive;
  Method method = Method::empty_reduction;
  bool projective = false;
  std::vector<Binomial> generators;  // populated only for CI
  std::optional<Int> frobenius_number;
  ReductionTrace trace;
  std::optional<OracleReport> oracle_report;
};

}  // namespace cimc

#endif
