// oracle.hpp - brute-force cross-checks: random block-unitary sampling
// against the polytope enumeration, and agreement between the independent
// STU builders.
#pragma once

#include "stuforge/block_unitary.hpp"
#include "stuforge/common.hpp"
#include "stuforge/spectra.hpp"
#include "stuforge/stu_geometric.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace stuforge::oracle {

// Deterministic random orthogonal matrix (QR-orthogonalized Gaussian with
// sign-fixed diagonal).
Mat random_orthogonal(int d, std::uint64_t seed);
// Random orthogonal commuting with Pi^{d/2} (even d), for midpoint blocks.
Mat random_midpoint_orthogonal(int d, std::uint64_t seed);

struct ReachabilitySample {
    std::uint64_t seed = 0;
    int count = 0;
    std::vector<Vec> points;           // reduced coordinates of sampled marginals
    int inside = 0;                    // certified inside the vertex polytope
    double worst_gap = 0.0;            // largest infeasibility gap among escapes
    double max_marginal_asymmetry = 0.0;  // ||pA - pB||_inf over samples
};

// Draws random symmetric-constrained block unitaries and certifies every
// sampled marginal against the exhaustive vertex polytope.
ReachabilitySample sample_reachable(const spectra::EnergySpectrum& spec,
                                    spectra::InverseTemperature beta, int count,
                                    std::uint64_t seed);

struct MethodResult {
    std::string method;
    bool built = false;
    bool pass = false;
    double deviation = 0.0;
    double delta_e = 0.0;
    double delta_i = 0.0;
    std::string error;  // set when the method refuses to build
};

struct CrossMethodReport {
    std::vector<MethodResult> methods;
    bool all_built_agree = false;  // every successful builder passed, and all
                                   // produced the same marginals
    double max_delta_e_spread = 0.0;
};

// Builds STUs via every method applicable at this dimension and compares.
CrossMethodReport cross_method_check(const spectra::EnergySpectrum& spec,
                                     spectra::InverseTemperature beta,
                                     spectra::InverseTemperature beta_prime);

}  // namespace stuforge::oracle
