// block_unitary.hpp - assembling per-subspace orthogonal blocks into a
// two-system unitary, applying it to joint thermal states, partial traces,
// and STU certification.
#pragma once

#include "stuforge/common.hpp"
#include "stuforge/lcs.hpp"
#include "stuforge/spectra.hpp"

#include <utility>
#include <vector>

namespace stuforge::block_unitary {

// blocks[0] = U_q on span{|jj>}, blocks[i] = U_{r_i} on span{|j, j+i>}.
struct BlockUnitary {
    int d = 0;
    std::vector<Mat> blocks;

    static BlockUnitary identity(int d);
    // Fill blocks 0..k from the given matrices and the partners d-i by the
    // conjugation U_{r_{d-i}} = Pi^i U_{r_i} Pi^{-i} that keeps both
    // marginals equal. For even d, upper.back() is the midpoint block.
    static BlockUnitary symmetric(int d, const Mat& uq, const std::vector<Mat>& upper);
    bool orthogonal(double tol = 1e-10) const;
    // the full d^2 x d^2 orthogonal matrix in the product basis |ij>
    Mat dense() const;
};

// Joint state in block form: one real symmetric d x d matrix per subspace,
// in the subspace coordinates j (basis vector |j, j+i>).
struct JointState {
    int d = 0;
    std::vector<Mat> blocks;

    Mat dense() const;
    // inverse of dense(); rejects matrices with weight outside the LCS
    // block structure
    static JointState from_dense(const Mat& rho, int d, double tol = 1e-12);
    double trace() const;
    double min_eigenvalue() const;
    std::vector<double> eigenvalues() const;  // union over blocks, sorted desc
};

struct StuReport {
    Vec marginal_a;
    Vec marginal_b;
    double deviation_a = 0.0;        // || diag(rho_A) - thermal(beta') ||_inf
    double deviation_b = 0.0;
    double offdiag_leakage = 0.0;    // max |off-diagonal| of reduced states
    double entropy_before = 0.0;     // global
    double entropy_after = 0.0;
    double delta_e = 0.0;            // invested energy
    double delta_i = 0.0;            // mutual information change
    double tol = 1e-9;
    bool pass = false;
};

// U (tau(beta) x tau(beta)) U^T in block form. Throws DimensionMismatch.
JointState assemble_and_apply(const BlockUnitary& blocks,
                              const spectra::EnergySpectrum& spec,
                              spectra::InverseTemperature beta);

// Exact partial traces; block-form marginals are diagonal by construction.
std::pair<Vec, Vec> marginal_diagonals(const JointState& state);
// Dense-path partial traces of an arbitrary d^2 x d^2 matrix.
std::pair<Mat, Mat> partial_trace_marginals(const Mat& dense, int d);

StuReport verify_stu(const BlockUnitary& blocks, const spectra::EnergySpectrum& spec,
                     spectra::InverseTemperature beta,
                     spectra::InverseTemperature beta_prime, double tol = default_tol());

}  // namespace stuforge::block_unitary
