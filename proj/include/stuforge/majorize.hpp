// majorize.hpp - majorisation predicates, constructive HLP doubly stochastic
// matrices via T-transforms, Birkhoff decomposition, and the Schur-Horn lift
// to explicit orthogonal matrices.
#pragma once

#include "stuforge/common.hpp"

#include <utility>
#include <vector>

namespace stuforge::majorize {

// true iff x is majorised by y (x ≺ y): every partial sum of the
// descending-sorted x is dominated by y's, total sums equal within sum_tol.
// Ties break by stable descending sort (value, then original index).
bool majorizes(const Vec& y, const Vec& x, double tol = 1e-11, double sum_tol = 1e-9);

// One step t*I + (1-t)*Swap(j,k); t = 0 is a plain swap.
struct TStep {
    int j = 0;
    int k = 0;
    double t = 1.0;
    Mat matrix(int d) const;
};

struct HlpResult {
    Mat matrix;                // product of the steps, M y = x
    std::vector<TStep> steps;  // applied left to right: M = T_n ... T_1
    // proper mixing steps (t in (0,1)); at most d-1 of these
    int mixing_steps() const;
};

// Constructive HLP: given x ≺ y returns M doubly stochastic with M y = x,
// assembled from at most d-1 mixing T-transforms plus alignment swaps.
// Throws NotMajorised when the precondition fails.
HlpResult hlp_construct(const Vec& y, const Vec& x);

bool is_doubly_stochastic(const Mat& m, double tol = 1e-10);

// Greedy Birkhoff-von Neumann: M = sum w_k P_k with positive weights summing
// to 1, at most (d-1)^2 + 1 terms. Permutations returned as index maps
// sigma with (P v)_{sigma(j)} = v_j.
std::vector<std::pair<double, std::vector<int>>> birkhoff_decompose(const Mat& m,
                                                                    double tol = 1e-10);

Mat permutation_matrix(const std::vector<int>& sigma);

// Schur-Horn lift via chained two-level rotations: orthogonal U with
// diag(U diag(y) U^T) = x, requiring x ≺ y. Equivalently |U|^2 y = x.
Mat horn_lift(const Vec& y, const Vec& x);

}  // namespace stuforge::majorize
