// lcs.hpp - decomposition of vectorised joint diagonals into the q / r_i
// subspace components, marginal reconstruction, and Latin-square families.
#pragma once

#include "stuforge/common.hpp"

#include <utility>
#include <vector>

namespace stuforge::lcs {

// Diagonal of a two-party state, p_{ij} >= 0, sum = 1, stored row-major by
// the first subsystem: entries[i*d + j] = p_{ij}.
struct JointDiagonal {
    int d = 0;
    Vec entries;

    static JointDiagonal product(const Vec& p);  // p_{ij} = p_i p_j
    static JointDiagonal from_entries(int d, Vec entries);
    double at(int i, int j) const { return entries[i * d + j]; }
    bool symmetric(double tol = 1e-12) const;
};

// q_j = p_{jj}, (r_i)_j = p_{j, j+i mod d}. For symmetric joints
// r_{d-i} = Pi^i r_i holds elementwise.
struct LcsDecomposition {
    int d = 0;
    Vec q;
    std::vector<Vec> r;  // r[i-1] is r_i, i = 1..d-1
    bool symmetric = false;

    const Vec& r_i(int i) const { return r.at(i - 1); }
    double norm_q() const { return q.sum(); }
    double norm_r(int i) const { return r.at(i - 1).sum(); }
    // k = (d-1)/2 for odd d, d/2 for even d (midpoint subspace counted once)
    int k() const { return d % 2 ? (d - 1) / 2 : d / 2; }
    // prefactor (floor(2i/d)+1)^{-1}: 1 except 1/2 at the even-d midpoint
    double prefactor(int i) const { return 1.0 / ((2 * i) / d + 1); }
    bool is_midpoint(int i) const { return d % 2 == 0 && i == d / 2; }
};

LcsDecomposition decompose(const JointDiagonal& joint);

// pA = q + sum r_i ; pB = q + sum Pi^i r_i
std::pair<Vec, Vec> reconstruct_marginals(const LcsDecomposition& dec);

// Marginals after per-subspace doubly stochastic maps with the symmetric
// constraint realized via the pairing M_{r_{d-i}} = Pi^i M_{r_i} Pi^{-i}:
//   p~ = M_q q + sum_{i=1}^{k} prefactor(i) (1 + Pi^i) M_i r_i.
// Mq acts on q; Ms[i-1] on r_i for i = 1..k.
Vec symmetric_transform(const LcsDecomposition& dec, const Mat& Mq,
                        const std::vector<Mat>& Ms);

// General Latin-square LCS family: perms[i] is the permutation P_i of
// {0..d-1}; Gamma_{ij} = P_i(j) must be a Latin square.
struct LatinSquareLcs {
    std::vector<std::vector<int>> perms;
    int d() const { return static_cast<int>(perms.size()); }
};

LatinSquareLcs latin_square_lcs(std::vector<std::vector<int>> perms);

// pA = sum M_i r~_i and pB = sum P_i^{-1} M_i r~_i with (r~_i)_j = p_{j,P_i(j)}.
std::pair<Vec, Vec> general_marginals(const LatinSquareLcs& family,
                                      const std::vector<Mat>& matrices,
                                      const JointDiagonal& joint);

}  // namespace stuforge::lcs
