#include "stuforge/lcs.hpp"

#include <cmath>

namespace stuforge::lcs {

JointDiagonal JointDiagonal::product(const Vec& p) {
    const int d = static_cast<int>(p.size());
    Vec e(d * d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) e[i * d + j] = p[i] * p[j];
    return {d, e};
}

JointDiagonal JointDiagonal::from_entries(int d, Vec entries) {
    if (entries.size() != d * d) throw LengthMismatch("joint diagonal needs d^2 entries");
    if (entries.minCoeff() < -1e-12) throw std::invalid_argument("negative joint entry");
    if (std::abs(entries.sum() - 1.0) > 1e-12)
        throw SumMismatch("joint diagonal must sum to 1");
    return {d, std::move(entries)};
}

bool JointDiagonal::symmetric(double tol) const {
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j)
            if (std::abs(at(i, j) - at(j, i)) > tol) return false;
    return true;
}

LcsDecomposition decompose(const JointDiagonal& joint) {
    const int d = joint.d;
    LcsDecomposition dec;
    dec.d = d;
    dec.q = Vec(d);
    for (int j = 0; j < d; ++j) dec.q[j] = joint.at(j, j);
    dec.r.reserve(d - 1);
    for (int i = 1; i < d; ++i) {
        Vec ri(d);
        for (int j = 0; j < d; ++j) ri[j] = joint.at(j, (j + i) % d);
        dec.r.push_back(std::move(ri));
    }
    dec.symmetric = joint.symmetric();
    return dec;
}

std::pair<Vec, Vec> reconstruct_marginals(const LcsDecomposition& dec) {
    const int d = dec.d;
    Vec pA = dec.q, pB = dec.q;
    for (int i = 1; i < d; ++i) {
        pA += dec.r_i(i);
        pB += cyclic_permutation(d, i) * dec.r_i(i);
    }
    return {pA, pB};
}

Vec symmetric_transform(const LcsDecomposition& dec, const Mat& Mq,
                        const std::vector<Mat>& Ms) {
    const int d = dec.d;
    if (static_cast<int>(Ms.size()) != dec.k())
        throw DimensionMismatch("need one matrix per subspace pair i = 1..k");
    Vec out = Mq * dec.q;
    for (int i = 1; i <= dec.k(); ++i) {
        const Mat shift = Mat::Identity(d, d) + cyclic_permutation(d, i);
        out += dec.prefactor(i) * (shift * (Ms[i - 1] * dec.r_i(i)));
    }
    return out;
}

LatinSquareLcs latin_square_lcs(std::vector<std::vector<int>> perms) {
    const int d = static_cast<int>(perms.size());
    if (d < 2) throw NotLatinSquare("need d >= 2 permutations");
    for (const auto& p : perms) {
        if (static_cast<int>(p.size()) != d) throw NotLatinSquare("permutation length != d");
        std::vector<bool> seen(d, false);
        for (int v : p) {
            if (v < 0 || v >= d || seen[v]) throw NotLatinSquare("row is not a permutation");
            seen[v] = true;
        }
    }
    // column constraint: symbol P_i(j) unique down each column j
    for (int j = 0; j < d; ++j) {
        std::vector<bool> seen(d, false);
        for (int i = 0; i < d; ++i) {
            const int v = perms[i][j];
            if (seen[v]) throw NotLatinSquare("column repeats a symbol");
            seen[v] = true;
        }
    }
    return {std::move(perms)};
}

std::pair<Vec, Vec> general_marginals(const LatinSquareLcs& family,
                                      const std::vector<Mat>& matrices,
                                      const JointDiagonal& joint) {
    const int d = family.d();
    if (joint.d != d) throw DimensionMismatch("joint dimension != family dimension");
    if (static_cast<int>(matrices.size()) != d)
        throw DimensionMismatch("need one matrix per LCS");
    Vec pA = Vec::Zero(d), pB = Vec::Zero(d);
    for (int i = 0; i < d; ++i) {
        Vec ri(d);
        for (int j = 0; j < d; ++j) ri[j] = joint.at(j, family.perms[i][j]);
        const Vec ti = matrices[i] * ri;
        pA += ti;
        // (P_i^{-1} t)_{P_i(j)} = t_j, matching P_i = (Pi^{-1})^i for the
        // cyclic family where pB picks up Pi^i r_i.
        for (int j = 0; j < d; ++j) pB[family.perms[i][j]] += ti[j];
    }
    return {pA, pB};
}

}  // namespace stuforge::lcs
