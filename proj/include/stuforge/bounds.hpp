// bounds.hpp - optimal correlation/energy trade-offs: the thermal upper
// bound curve, the asymmetric pure-state optimum, and the subadditivity
// constraint on unequal marginal entropies.
#pragma once

#include "stuforge/common.hpp"
#include "stuforge/spectra.hpp"

#include <vector>

namespace stuforge::bounds {

struct CurvePoint {
    double delta_e = 0.0;
    double delta_i = 0.0;   // optimal mutual-information gain
    double beta_bar = 0.0;  // saturating inverse temperature
};

// For each delta_e, beta_bar solves <E>(beta_bar) = <E>(beta) + delta_e/2
// (clamped at the uniform budget) and delta_i = 2[S(beta_bar) - S(beta)].
std::vector<CurvePoint> max_correlation_curve(const spectra::EnergySpectrum& spec,
                                              spectra::InverseTemperature beta,
                                              const std::vector<double>& delta_e_grid);

struct AsymmetricProblem {
    spectra::EnergySpectrum spectrum_a;
    spectra::EnergySpectrum spectrum_b;
    double budget = 0.0;  // c >= 0
};

struct AsymmetricSolution {
    double beta_of_c = 0.0;  // +inf at c = 0
    Vec schmidt_probs;
    std::vector<double> effective_spectrum;  // E~_i = E^A_i + E^B_i, i < min(dA, dB)
    double mutual_information = 0.0;         // 2 S(rho_opt)
    double identity_residual = 0.0;          // |2S - (2 beta c + 2 ln Z~)|
    bool uniform_branch = false;             // c at or above the beta = 0 budget
};

// Optimal correlations from the joint ground state under the energy budget;
// thermal in the effective spectrum at beta(c). Throws InvalidBudget.
AsymmetricSolution asym_pure_optimum(const AsymmetricProblem& problem);

// |S_A' - S_B'| <= S_A + S_B (global-entropy constraint on reachable
// marginal entropies for product inputs).
bool subadditivity_check(double s_a, double s_b, double s_a_after, double s_b_after);

}  // namespace stuforge::bounds
