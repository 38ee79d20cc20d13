// copies.hpp - the finite-copies round-robin protocol: pairing schedule and
// exact small-n simulation with per-round thermality and freshness checks.
#pragma once

#include "stuforge/block_unitary.hpp"
#include "stuforge/common.hpp"
#include "stuforge/spectra.hpp"

#include <string>
#include <vector>

namespace stuforge::copies {

// Round j (0-based) pairs A_i with B_{(i+j) mod n}; every (A_i, B_j) pair
// occurs exactly once across the n rounds.
struct PairingSchedule {
    int n = 0;
    std::vector<std::vector<std::pair<int, int>>> rounds;
    bool no_repeat() const;
};

PairingSchedule pairing_schedule(int n);

enum class StepMethod { geometric, norm, majorised };
StepMethod parse_method(const std::string& name);

struct RoundTrace {
    double beta_target = 0.0;        // scheduled beta after this round
    double max_marginal_deviation = 0.0;  // worst single-party deviation from
                                          // thermal(beta_target)
    double fitted_beta = 0.0;        // from the worst marginal's energy
    double product_deviation = 0.0;  // next round's interacting pairs vs product
    double global_entropy = 0.0;
};

struct ProtocolTrace {
    int n = 0;
    int d = 0;
    bool exact = true;
    std::vector<RoundTrace> rounds;
};

// Evolves the full 2n-party state exactly (d^{2n} <= 1024), applying the
// per-round STU built by the chosen method for beta_{j-1} -> beta_j.
// schedule holds the n target betas. Throws DimensionBudgetExceeded or
// StepUnbuildable.
ProtocolTrace simulate_copies(const spectra::EnergySpectrum& spec,
                              spectra::InverseTemperature beta, int n,
                              const std::vector<double>& schedule, StepMethod method);

}  // namespace stuforge::copies
