#include "stuforge/stu_majorised.hpp"

#include "stuforge/majorize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace stuforge::stu_majorised {

const std::array<Mat, 6>& permutations_d3() {
    static const std::array<Mat, 6> perms = [] {
        std::array<Mat, 6> p;
        const Mat pi = cyclic_permutation(3, 1);
        p[0] = Mat::Identity(3, 3);            // 1
        p[1] = (Mat(3, 3) << 1, 0, 0,
                             0, 0, 1,
                             0, 1, 0).finished();  // 2: swap(1,2)
        p[2] = pi * pi;                        // 3
        p[3] = (Mat(3, 3) << 0, 0, 1,
                             0, 1, 0,
                             1, 0, 0).finished();  // 4: swap(0,2)
        p[4] = pi;                             // 5
        p[5] = (Mat(3, 3) << 0, 1, 0,
                             1, 0, 0,
                             0, 0, 1).finished();  // 6: swap(0,1)
        return p;
    }();
    return perms;
}

namespace {

// index (0-based) of a 3x3 permutation matrix in the fixed ordering
int perm_index_d3(const Mat& p) {
    const auto& perms = permutations_d3();
    for (int i = 0; i < 6; ++i)
        if ((p - perms[i]).cwiseAbs().maxCoeff() < 1e-9) return i;
    throw std::logic_error("not a 3x3 permutation matrix");
}

}  // namespace

CompanionResult companion_matrix_d3(const Mat& m) {
    if (m.rows() != 3 || m.cols() != 3) throw DimensionMismatch("companion needs 3x3");
    if (!majorize::is_doubly_stochastic(m)) throw NotDoublyStochastic("companion_matrix_d3");
    const auto& perms = permutations_d3();
    // anticyclic remap 6 -> 2, 2 -> 4, 4 -> 6 in the fixed ordering
    // (0-based indices 5 -> 1, 1 -> 3, 3 -> 5); cyclic components commute.
    static const int remap[6] = {0, 3, 2, 5, 4, 1};
    Mat out = Mat::Zero(3, 3);
    for (const auto& [w, sigma] : majorize::birkhoff_decompose(m)) {
        const int idx = perm_index_d3(majorize::permutation_matrix(sigma));
        out += w * perms[remap[idx]];
    }
    const Mat shift = Mat::Identity(3, 3) + cyclic_permutation(3, 1);
    CompanionResult res;
    res.companion = out;
    res.residual = (m * shift - shift * out).cwiseAbs().maxCoeff();
    return res;
}

block_unitary::BlockUnitary reach_majorised_marginal_d3(
    const spectra::EnergySpectrum& spec, spectra::InverseTemperature beta,
    const Vec& target) {
    if (spec.dim() != 3) throw UnsupportedDimension("majorised-marginals route is d=3");
    const Vec p = spectra::thermal_vector(spec, beta).probs;
    if (!majorize::majorizes(p, target))
        throw NotMajorised("target must be majorised by thermal(beta)");

    const Mat mq = majorize::hlp_construct(p, target).matrix;
    const auto comp = companion_matrix_d3(mq);
    if (comp.residual > 1e-9)
        throw CompanionFailure("companion residual " + std::to_string(comp.residual));

    const auto dec = lcs::decompose(lcs::JointDiagonal::product(p));
    // identity M_q q + (1+Pi) M_r r = M_q p realized blockwise
    const Mat uq = majorize::horn_lift(dec.q, mq * dec.q);
    const Mat ur = majorize::horn_lift(dec.r_i(1), comp.companion * dec.r_i(1));
    return block_unitary::BlockUnitary::symmetric(3, uq, {ur});
}

Mat counterexample_matrix_d4() {
    Mat m(4, 4);
    m << 1, 0, 0, 0,
         0, 0, 0, 1,
         0, 1, 0, 0,
         0, 0, 1, 0;
    return m;
}

namespace {

// Rows of the equality system for M~: 16 variables m_{ij} (row-major),
// (1+Pi) M~ = R, plus row and column sums = 1.
void companion_system_d4(const Mat& rhs, Mat& a, Vec& b) {
    const int d = 4;
    const Mat shift = Mat::Identity(d, d) + cyclic_permutation(d, 1);
    const int rows = d * d + 2 * d;
    a = Mat::Zero(rows, d * d);
    b = Vec::Zero(rows);
    int r = 0;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            for (int k = 0; k < d; ++k) a(r, k * d + j) = shift(i, k);
            b[r] = rhs(i, j);
            ++r;
        }
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) a(r, i * d + j) = 1.0;
        b[r] = 1.0;
        ++r;
    }
    for (int j = 0; j < d; ++j) {
        for (int i = 0; i < d; ++i) a(r, i * d + j) = 1.0;
        b[r] = 1.0;
        ++r;
    }
}

void shuffle_rows(Mat& a, Vec& b, unsigned seed) {
    if (seed == 0) return;
    std::vector<int> order(a.rows());
    std::iota(order.begin(), order.end(), 0);
    std::mt19937 gen(seed);
    std::shuffle(order.begin(), order.end(), gen);
    Mat a2(a.rows(), a.cols());
    Vec b2(b.size());
    for (int i = 0; i < a.rows(); ++i) {
        a2.row(i) = a.row(order[i]);
        b2[i] = b[order[i]];
    }
    a = a2;
    b = b2;
}

}  // namespace

simplex::Feasibility companion_feasibility_d4(const Mat& m, unsigned shuffle_seed) {
    const Mat shift = Mat::Identity(4, 4) + cyclic_permutation(4, 1);
    Mat a;
    Vec b;
    companion_system_d4(m * shift, a, b);
    shuffle_rows(a, b, shuffle_seed);
    return simplex::solve_feasibility(a, b);
}

CounterexampleReport counterexamples_d4(unsigned shuffle_seed) {
    CounterexampleReport rep;
    const Mat m = counterexample_matrix_d4();
    {
        const auto f = companion_feasibility_d4(m, shuffle_seed);
        rep.matrix_infeasible = !f.feasible;
        rep.matrix_gap = f.gap;
    }
    {
        // vector version: only the action on v = (1,0,0,0) must match, i.e. the
        // first column c of M~ satisfies (1+Pi) c = M (1+Pi) v.
        const int d = 4;
        const Mat shift = Mat::Identity(d, d) + cyclic_permutation(d, 1);
        Vec v = Vec::Zero(d);
        v[0] = 1.0;
        const Vec rhs = m * shift * v;
        const int rows = d + 2 * d;
        Mat a = Mat::Zero(rows, d * d);
        Vec b = Vec::Zero(rows);
        int r = 0;
        for (int i = 0; i < d; ++i) {
            for (int k = 0; k < d; ++k) a(r, k * d + 0) = shift(i, k);
            b[r] = rhs[i];
            ++r;
        }
        for (int i = 0; i < d; ++i) {
            for (int j = 0; j < d; ++j) a(r, i * d + j) = 1.0;
            b[r] = 1.0;
            ++r;
        }
        for (int j = 0; j < d; ++j) {
            for (int i = 0; i < d; ++i) a(r, i * d + j) = 1.0;
            b[r] = 1.0;
            ++r;
        }
        shuffle_rows(a, b, shuffle_seed);
        const auto f = simplex::solve_feasibility(a, b);
        rep.vector_infeasible = !f.feasible;
        rep.vector_gap = f.gap;
    }
    rep.identity_feasible = companion_feasibility_d4(Mat::Identity(4, 4), shuffle_seed).feasible;
    rep.cyclic_feasible = companion_feasibility_d4(cyclic_permutation(4, 1), shuffle_seed).feasible;
    return rep;
}

}  // namespace stuforge::stu_majorised
