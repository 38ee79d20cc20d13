#include "stuforge/bounds.hpp"

#include <cmath>

namespace stuforge::bounds {

std::vector<CurvePoint> max_correlation_curve(const spectra::EnergySpectrum& spec,
                                              spectra::InverseTemperature beta,
                                              const std::vector<double>& delta_e_grid) {
    const Vec p = spectra::thermal_vector(spec, beta).probs;
    const double e0 = spectra::mean_energy(p, spec);
    const double s0 = spectra::entropy(p);
    const double e_max = spec.mean_energy();  // per-side energy at beta = 0

    std::vector<CurvePoint> out;
    out.reserve(delta_e_grid.size());
    for (double de : delta_e_grid) {
        if (de < 0.0) throw OutOfRange("delta_E must be >= 0");
        CurvePoint pt;
        pt.delta_e = de;
        const double target = e0 + 0.5 * de;
        spectra::InverseTemperature bb{0.0};
        if (target < e_max) bb = spectra::beta_for_energy(spec, target);
        pt.beta_bar = bb.beta;
        const Vec pb = spectra::thermal_vector(spec, bb).probs;
        pt.delta_i = 2.0 * (spectra::entropy(pb) - s0);
        out.push_back(pt);
    }
    return out;
}

AsymmetricSolution asym_pure_optimum(const AsymmetricProblem& problem) {
    if (problem.budget < 0.0) throw InvalidBudget("budget must be >= 0");
    const int d = std::min(problem.spectrum_a.dim(), problem.spectrum_b.dim());
    std::vector<double> eff(d);
    for (int i = 0; i < d; ++i)
        eff[i] = problem.spectrum_a.energy(i) + problem.spectrum_b.energy(i);

    AsymmetricSolution sol;
    sol.effective_spectrum = eff;

    // H~ proportional to identity: every feasible budget reaches 2 ln d
    if (eff.back() == 0.0) {
        sol.beta_of_c = 0.0;
        sol.uniform_branch = true;
        sol.schmidt_probs = Vec::Constant(d, 1.0 / d);
        sol.mutual_information = 2.0 * std::log(static_cast<double>(d));
        sol.identity_residual = 0.0;
        return sol;
    }

    const auto eff_spec = spectra::EnergySpectrum::from_levels(eff, /*normalize=*/false);
    const double c = problem.budget;
    spectra::InverseTemperature bc{0.0};
    if (c <= 0.0) {
        bc = spectra::InverseTemperature::infinite();
    } else if (c >= eff_spec.mean_energy()) {
        sol.uniform_branch = true;
    } else {
        bc = spectra::beta_for_energy(eff_spec, c);
    }
    sol.beta_of_c = bc.beta;
    const Vec probs = spectra::thermal_vector(eff_spec, bc).probs;
    sol.schmidt_probs = probs;
    sol.mutual_information = 2.0 * spectra::entropy(probs);
    if (!bc.is_infinite()) {
        // 2S = 2 beta(c) c + 2 ln Z~, with c the saturated constraint value
        const double z = spectra::partition_function(eff_spec, bc.beta);
        const double cc = sol.uniform_branch ? spectra::mean_energy(probs, eff_spec) : c;
        const double via_budget = 2.0 * bc.beta * cc + 2.0 * std::log(z);
        sol.identity_residual = std::abs(sol.mutual_information - via_budget);
    }
    return sol;
}

bool subadditivity_check(double s_a, double s_b, double s_a_after, double s_b_after) {
    if (s_a < 0.0 || s_b < 0.0 || s_a_after < 0.0 || s_b_after < 0.0)
        throw OutOfRange("entropies must be nonnegative");
    return std::abs(s_a_after - s_b_after) <= s_a + s_b + 1e-12;
}

}  // namespace stuforge::bounds
