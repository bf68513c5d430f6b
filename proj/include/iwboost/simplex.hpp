// Dense two-phase simplex for small linear programs:
//   maximize c^T x  subject to  A x <= b,  x >= 0.

#pragma once

#include <cstddef>
#include <vector>

namespace iwboost {

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

struct LpResult {
    LpStatus status = LpStatus::Optimal;
    double objective = 0.0;
    std::vector<double> x;
};

/// Pivot selection breaks ties by variable index (Bland), so degenerate game
/// matrices terminate.
LpResult solve_lp(const std::vector<std::vector<double>>& a, const std::vector<double>& b,
                  const std::vector<double>& c, std::size_t max_pivots = 100000);

}  // namespace iwboost
