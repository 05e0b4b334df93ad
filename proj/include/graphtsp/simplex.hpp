#pragma once

#include <vector>

namespace graphtsp {

/// Dense two-phase simplex for max c.x subject to Ax <= b, x >= 0.
struct LpResult {
  enum class Status { optimal, infeasible, unbounded };
  Status status = Status::infeasible;
  double value = 0.0;
  std::vector<double> x;
};

LpResult lp_maximize(const std::vector<std::vector<double>>& a,
                     const std::vector<double>& b,
                     const std::vector<double>& c);

}  // namespace graphtsp
