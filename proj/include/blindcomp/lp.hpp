#pragma once

// Small dense exact-rational linear programming.  Serves as the independent
// oracle for the hull-distance bound and the fixed-point rigidity checks; not
// a general-purpose solver.

#include <vector>

#include "blindcomp/distribution.hpp"
#include "blindcomp/rational.hpp"

namespace blindcomp::lp {

enum class Status { Optimal, Infeasible, Unbounded };

struct Result {
    Status status;
    Rat value;           // optimal objective (minimization)
    std::vector<Rat> x;  // optimal point
};

// min c^T x  subject to  A x = b, x >= 0.  Two-phase simplex, Bland's rule.
Result solve_min(const std::vector<std::vector<Rat>>& a, const std::vector<Rat>& b,
                 const std::vector<Rat>& c);

// Exact min over convex combinations r of || v - sum_i r_i w_i ||_1.
Rat l1_distance_to_hull(const RatDistribution& v, const std::vector<RatDistribution>& ws);

}  // namespace blindcomp::lp
