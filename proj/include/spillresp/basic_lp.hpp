#pragma once

#include <vector>

namespace spillresp {

/// Minimal standard-form simplex used by the enumeration oracle and as an
/// independent reference in tests. Intentionally a different algorithm and
/// code path from SimplexTableau: explicit slack/artificial columns, upper
/// bounds as extra rows, two phases, Bland's rule throughout.
struct BasicLp {
  struct Row {
    std::vector<double> a;  // dense coefficients, one per variable
    char sense = 'L';       // 'L' <=, 'G' >=, 'E' =
    double b = 0.0;
  };
  std::vector<double> c;   // minimize c'x
  std::vector<double> ub;  // per variable; +infinity allowed; all x >= 0
  std::vector<Row> rows;
};

struct BasicLpResult {
  enum class Status { Optimal, Infeasible, Unbounded };
  Status status = Status::Optimal;
  double objective = 0.0;
  std::vector<double> x;
};

BasicLpResult basic_lp_solve(const BasicLp& lp);

}  // namespace spillresp
