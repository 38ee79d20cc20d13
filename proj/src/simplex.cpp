#include "stuforge/simplex.hpp"

#include <cmath>
#include <limits>

namespace stuforge::simplex {

Feasibility solve_feasibility(const Mat& a_in, const Vec& b_in, double tol) {
    const int m = static_cast<int>(a_in.rows());
    const int n = static_cast<int>(a_in.cols());

    // tableau: [A | I_artificial | b], artificials start basic
    Mat t(m, n + m + 1);
    t.setZero();
    for (int i = 0; i < m; ++i) {
        const double sign = b_in[i] < 0.0 ? -1.0 : 1.0;
        t.block(i, 0, 1, n) = sign * a_in.row(i);
        t(i, n + i) = 1.0;
        t(i, n + m) = sign * b_in[i];
    }
    std::vector<int> basis(m);
    for (int i = 0; i < m; ++i) basis[i] = n + i;

    // phase-1 objective row: minimize sum of artificials; reduced costs
    // c_j - z_j with c = (0..0, 1..1)
    Vec obj(n + m);
    obj.setZero();
    for (int i = 0; i < m; ++i) {
        // artificial columns start basic with cost 1; their reduced costs are 0
        obj.head(n) -= t.block(i, 0, 1, n).transpose();
    }

    Feasibility out;
    const int max_iter = 50000;
    for (int it = 0; it < max_iter; ++it) {
        // Bland: entering = smallest index with negative reduced cost
        int enter = -1;
        for (int j = 0; j < n + m; ++j) {
            if (obj[j] < -tol) {
                enter = j;
                break;
            }
        }
        if (enter < 0) {
            out.iterations = it;
            break;
        }
        // ratio test, Bland ties by smallest basis index
        int leave = -1;
        double best = std::numeric_limits<double>::infinity();
        for (int i = 0; i < m; ++i) {
            if (t(i, enter) > tol) {
                const double ratio = t(i, n + m) / t(i, enter);
                if (ratio < best - 1e-15 ||
                    (ratio < best + 1e-15 && (leave < 0 || basis[i] < basis[leave]))) {
                    best = ratio;
                    leave = i;
                }
            }
        }
        if (leave < 0) break;  // unbounded cannot happen in phase 1
        // pivot
        const double piv = t(leave, enter);
        t.row(leave) /= piv;
        for (int i = 0; i < m; ++i) {
            if (i == leave) continue;
            const double f = t(i, enter);
            if (f != 0.0) t.row(i) -= f * t.row(leave);
        }
        const double fo = obj[enter];
        if (fo != 0.0) obj -= fo * t.block(leave, 0, 1, n + m).transpose();
        basis[leave] = enter;
        out.iterations = it + 1;
    }

    // objective value = sum of artificial basic values
    double art = 0.0;
    for (int i = 0; i < m; ++i)
        if (basis[i] >= n) art += t(i, n + m);
    out.gap = std::max(art, 0.0);
    out.feasible = art <= 1e-9;
    if (out.feasible) {
        out.solution = Vec::Zero(n);
        for (int i = 0; i < m; ++i)
            if (basis[i] < n) out.solution[basis[i]] = t(i, n + m);
    }
    return out;
}

}  // namespace stuforge::simplex
