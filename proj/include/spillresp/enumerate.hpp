#pragma once

#include "spillresp/milp.hpp"
#include "spillresp/model.hpp"

namespace spillresp {

struct EnumerateResult {
  Solution solution;
  bool unique_station_set = true;  // no other station set ties the optimum
  long combinations = 0;           // (X, Y) assignments examined
};

/// Exhaustive oracle for tiny instances: enumerates station subsets and
/// per-scenario assignment vectors, pricing each with an analytic response
/// time and a minimum-cost transfer LP (basic_lp). Fully independent of the
/// formulation and branch-and-bound path. Throws TooLarge above the
/// combination budget.
EnumerateResult enumerate_oracle(const ProblemInstance& instance, const Weights& weights,
                                 long max_combinations = 1L << 24);

}  // namespace spillresp
