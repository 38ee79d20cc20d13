// stu_norm.hpp - the "passing on the norm" route: subspace norm bookkeeping,
// the strong/weak transformability conditions, the alpha convex split of
// M_q, and the builder valid under them (always in d=3, decreasing gaps in
// d=4).
#pragma once

#include "stuforge/block_unitary.hpp"
#include "stuforge/common.hpp"
#include "stuforge/spectra.hpp"

#include <vector>

namespace stuforge::stu_norm {

struct SubspaceNorms {
    double norm_r = 0.0;  // ||r_i(beta)||
    double norm_b = 0.0;  // ||r_i(beta')||
    bool r_majorizes_b = false;       // r_i/||r_i|| majorises b_i/||b_i||
    bool q_majorizes_folded_b = false;  // q^ majorises (1+Pi^i) b_i / (2||b_i||)
    double d_norm_r_d_beta = 0.0;     // central finite difference at beta
};

struct NormReport {
    int d = 0;
    double norm_q = 0.0;  // ||q(beta)||
    double norm_a = 0.0;  // ||q(beta')||
    double d_norm_q_d_beta = 0.0;
    std::vector<SubspaceNorms> subspaces;  // i = 1..k
    bool norm_accounting_ok = false;  // ||q|| + 2 sum' ||r_i|| = 1
};

NormReport decomposition_norms(const spectra::EnergySpectrum& spec,
                               spectra::InverseTemperature beta,
                               spectra::InverseTemperature beta_prime);

struct Conditions {
    bool cond_i = false;          // norm monotonicity: ||q|| >= ||a||, r^_i > b^_i
    bool cond_ii_strong = false;  // ||r_i|| <= ||b_i|| and q^ > (1+Pi^i)b_i/(2||b_i||)
    bool cond_ii_weak = false;    // a + f~ nonnegative and majorised by q
    std::string witness;          // first failing check, empty when all hold
};

Conditions check_conditions(const spectra::EnergySpectrum& spec,
                            spectra::InverseTemperature beta,
                            spectra::InverseTemperature beta_prime);

// alpha_0 = ||a||/||q||, alpha_i = 2 c_i (||b_i|| - ||r_i||)/||q||; sums to 1.
struct AlphaSplit {
    double alpha0 = 0.0;
    std::vector<double> alpha;  // i = 1..k
    double sum() const;
};

AlphaSplit alpha_split(const spectra::EnergySpectrum& spec,
                       spectra::InverseTemperature beta,
                       spectra::InverseTemperature beta_prime);

// Builds blocks realizing thermal(beta') from thermal(beta) under
// cond_i && cond_ii_strong; throws ConditionsNotMet naming the failing flag.
block_unitary::BlockUnitary build_stu_norm(const spectra::EnergySpectrum& spec,
                                           spectra::InverseTemperature beta,
                                           spectra::InverseTemperature beta_prime);

}  // namespace stuforge::stu_norm
