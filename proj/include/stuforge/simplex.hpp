// simplex.hpp - dense phase-1 simplex feasibility solver with Bland's rule.
#pragma once

#include "stuforge/common.hpp"

#include <optional>
#include <vector>

namespace stuforge::simplex {

struct Feasibility {
    bool feasible = false;
    // when feasible: a basic solution of A x = b, x >= 0
    Vec solution;
    // when infeasible: the residual phase-1 objective (sum of artificials)
    double gap = 0.0;
    int iterations = 0;
};

// Decides existence of x >= 0 with A x = b. Rows with negative b are
// flipped; artificial variables seed the basis; Bland's rule guarantees
// termination.
Feasibility solve_feasibility(const Mat& a, const Vec& b, double tol = 1e-11);

}  // namespace stuforge::simplex
