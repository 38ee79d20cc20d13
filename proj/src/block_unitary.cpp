#include "stuforge/block_unitary.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace stuforge::block_unitary {

BlockUnitary BlockUnitary::identity(int d) {
    BlockUnitary u;
    u.d = d;
    u.blocks.assign(d, Mat::Identity(d, d));
    return u;
}

BlockUnitary BlockUnitary::symmetric(int d, const Mat& uq, const std::vector<Mat>& upper) {
    const int k = d % 2 ? (d - 1) / 2 : d / 2;
    if (static_cast<int>(upper.size()) != k)
        throw DimensionMismatch("symmetric assembly needs blocks for i = 1..k");
    BlockUnitary u;
    u.d = d;
    u.blocks.assign(d, Mat());
    u.blocks[0] = uq;
    for (int i = 1; i <= k; ++i) u.blocks[i] = upper[i - 1];
    for (int i = 1; i <= k; ++i) {
        if (d - i == i) continue;  // even-d midpoint has no partner
        const Mat pi = cyclic_permutation(d, i);
        u.blocks[d - i] = pi * upper[i - 1] * pi.transpose();
    }
    return u;
}

bool BlockUnitary::orthogonal(double tol) const {
    for (const Mat& b : blocks) {
        if (b.rows() != d || b.cols() != d) return false;
        if ((b.transpose() * b - Mat::Identity(d, d)).cwiseAbs().maxCoeff() > tol)
            return false;
    }
    return true;
}

Mat BlockUnitary::dense() const {
    Mat u = Mat::Zero(d * d, d * d);
    for (int i = 0; i < d; ++i) {
        // subspace coordinate j corresponds to the product-basis flat index
        // j*d + (j+i) mod d
        for (int r = 0; r < d; ++r) {
            const int row = r * d + (r + i) % d;
            for (int c = 0; c < d; ++c) {
                const int col = c * d + (c + i) % d;
                u(row, col) = blocks[i](r, c);
            }
        }
    }
    return u;
}

Mat JointState::dense() const {
    Mat rho = Mat::Zero(d * d, d * d);
    for (int i = 0; i < d; ++i) {
        for (int r = 0; r < d; ++r) {
            const int row = r * d + (r + i) % d;
            for (int c = 0; c < d; ++c) {
                const int col = c * d + (c + i) % d;
                rho(row, col) = blocks[i](r, c);
            }
        }
    }
    return rho;
}

JointState JointState::from_dense(const Mat& rho, int d, double tol) {
    if (rho.rows() != d * d || rho.cols() != d * d)
        throw DimensionMismatch("dense state must be d^2 x d^2");
    JointState st;
    st.d = d;
    Mat seen = rho;
    for (int i = 0; i < d; ++i) {
        Mat b(d, d);
        for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c) {
                const int row = r * d + (r + i) % d;
                const int col = c * d + (c + i) % d;
                b(r, c) = rho(row, col);
                seen(row, col) = 0.0;
            }
        st.blocks.push_back(b);
    }
    if (seen.cwiseAbs().maxCoeff() > tol)
        throw std::invalid_argument("state has weight outside the LCS blocks");
    return st;
}

double JointState::trace() const {
    double t = 0.0;
    for (const Mat& b : blocks) t += b.trace();
    return t;
}

std::vector<double> JointState::eigenvalues() const {
    std::vector<double> ev;
    ev.reserve(d * d);
    for (const Mat& b : blocks) {
        Eigen::SelfAdjointEigenSolver<Mat> es(b);
        for (int i = 0; i < b.rows(); ++i) ev.push_back(es.eigenvalues()[i]);
    }
    std::sort(ev.begin(), ev.end(), std::greater<double>());
    return ev;
}

double JointState::min_eigenvalue() const {
    const auto ev = eigenvalues();
    return ev.empty() ? 0.0 : ev.back();
}

JointState assemble_and_apply(const BlockUnitary& blocks,
                              const spectra::EnergySpectrum& spec,
                              spectra::InverseTemperature beta) {
    const int d = spec.dim();
    if (blocks.d != d || static_cast<int>(blocks.blocks.size()) != d)
        throw DimensionMismatch("block count must equal d");
    for (const Mat& b : blocks.blocks)
        if (b.rows() != d || b.cols() != d) throw DimensionMismatch("block size must be d");

    const Vec p = spectra::thermal_vector(spec, beta).probs;
    const auto dec = lcs::decompose(lcs::JointDiagonal::product(p));

    JointState st;
    st.d = d;
    st.blocks.reserve(d);
    for (int i = 0; i < d; ++i) {
        const Vec& sub = i == 0 ? dec.q : dec.r_i(i);
        st.blocks.push_back(blocks.blocks[i] * sub.asDiagonal() * blocks.blocks[i].transpose());
    }
    return st;
}

std::pair<Vec, Vec> marginal_diagonals(const JointState& state) {
    const int d = state.d;
    Vec pa = Vec::Zero(d), pb = Vec::Zero(d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            const double v = state.blocks[i](j, j);
            pa[j] += v;             // |j, j+i> has A-index j
            pb[(j + i) % d] += v;   // and B-index j+i
        }
    }
    return {pa, pb};
}

std::pair<Mat, Mat> partial_trace_marginals(const Mat& dense, int d) {
    if (dense.rows() != d * d || dense.cols() != d * d)
        throw DimensionMismatch("dense state must be d^2 x d^2");
    Mat rho_a = Mat::Zero(d, d), rho_b = Mat::Zero(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k) {
                rho_a(i, j) += dense(i * d + k, j * d + k);
                rho_b(i, j) += dense(k * d + i, k * d + j);
            }
    return {rho_a, rho_b};
}

StuReport verify_stu(const BlockUnitary& blocks, const spectra::EnergySpectrum& spec,
                     spectra::InverseTemperature beta,
                     spectra::InverseTemperature beta_prime, double tol) {
    StuReport rep;
    rep.tol = tol;
    const Vec p = spectra::thermal_vector(spec, beta).probs;
    const Vec target = spectra::thermal_vector(spec, beta_prime).probs;

    const JointState st = assemble_and_apply(blocks, spec, beta);
    auto [pa, pb] = marginal_diagonals(st);
    rep.marginal_a = pa;
    rep.marginal_b = pb;
    rep.deviation_a = linf(pa, target);
    rep.deviation_b = linf(pb, target);
    // block form cannot place reduced-state weight off the diagonal
    rep.offdiag_leakage = 0.0;

    rep.entropy_before = 2.0 * spectra::entropy(p);
    {
        double s = 0.0;
        for (double ev : st.eigenvalues())
            if (ev > 0.0) s -= ev * std::log(ev);
        rep.entropy_after = s;
    }
    const double e0 = 2.0 * spectra::mean_energy(p, spec);
    rep.delta_e = spectra::mean_energy(pa, spec) + spectra::mean_energy(pb, spec) - e0;
    rep.delta_i = spectra::entropy(pa) + spectra::entropy(pb) - 2.0 * spectra::entropy(p);
    rep.pass = rep.deviation_a <= tol && rep.deviation_b <= tol;
    return rep;
}

}  // namespace stuforge::block_unitary
