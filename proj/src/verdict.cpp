#include "cimc/verdict.hpp"

namespace cimc {

const char* to_string(Decision d) {
  switch (d) {
    case Decision::ci: return "ci";
    case Decision::not_ci: return "not_ci";
    case Decision::inconclusive: return "inconclusive";
  }
  return "?";
}

const char* to_string(Method m) {
  switch (m) {
    case Method::empty_reduction: return "empty_reduction";
    case Method::three_element_residual: return "three_element_residual";
    case Method::critical_pair_obstruction: return "critical_pair_obstruction";
    case Method::distinct_critical_degrees: return "distinct_critical_degrees";
    case Method::oracle_count: return "oracle_count";
    case Method::family_theorem: return "family_theorem";
    case Method::table1_algorithm: return "table1_algorithm";
  }
  return "?";
}

}  // namespace cimc
