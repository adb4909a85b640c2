#pragma once

#include <vector>

namespace remez::lp {

enum class Status { optimal, infeasible, unbounded };

struct Solution {
  Status status = Status::infeasible;
  double value = 0.0;
  std::vector<double> y;
};

/// Dense two-phase simplex: maximize c.y subject to M y <= h, y >= 0.
/// Bland's rule is used on ties, so the pivot sequence is deterministic.
Solution maximize(const std::vector<double>& c, const std::vector<std::vector<double>>& M,
                  const std::vector<double>& h);

}  // namespace remez::lp
