// spectra.hpp - Hamiltonian spectra, thermal distributions, entropies,
// energies, and inverse-temperature root finding.
#pragma once

#include "stuforge/common.hpp"

#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace stuforge::spectra {

// Sorted local energy levels with E_0 = 0. By default energies are expressed
// in units of E_1 (so E_1 = 1 after construction); raw mode keeps the input
// scale. Degenerate ground levels (E_1 = 0) are kept as-is.
class EnergySpectrum {
  public:
    static EnergySpectrum from_levels(std::vector<double> levels, bool normalize = true);
    // Comma-separated ascending reals, first entry 0, e.g. "0,1,2.5,4".
    static EnergySpectrum parse(const std::string& csv, bool normalize = true);

    int dim() const { return static_cast<int>(energies_.size()); }
    double energy(int i) const { return energies_.at(i); }
    const std::vector<double>& levels() const { return energies_; }
    double gap(int i) const { return energies_.at(i + 1) - energies_.at(i); }
    bool equally_spaced(double tol = 1e-12) const;
    double max_energy() const { return energies_.back(); }
    // <E> at beta = 0.
    double mean_energy() const;
    Vec as_vec() const;

  private:
    explicit EnergySpectrum(std::vector<double> e) : energies_(std::move(e)) {}
    std::vector<double> energies_;
};

// beta in [0, +inf]; +inf is the exact ground-state limit.
struct InverseTemperature {
    double beta = 0.0;
    static InverseTemperature infinite() {
        return {std::numeric_limits<double>::infinity()};
    }
    bool is_infinite() const { return std::isinf(beta); }
};

struct ThermalDistribution {
    Vec probs;
    double beta = 0.0;
};

// p_i = e^{-beta E_i} / Z. beta = +inf spreads mass uniformly over the
// degenerate lowest level; beta = 0 is uniform.
ThermalDistribution thermal_vector(const EnergySpectrum& spec, InverseTemperature beta);

double entropy(const Vec& p);  // -sum p ln p, 0 ln 0 := 0
// (entropy in nats, energy in spectrum units)
std::pair<double, double> entropy_and_energy(const Vec& p, const EnergySpectrum& spec);
double mean_energy(const Vec& p, const EnergySpectrum& spec);
double partition_function(const EnergySpectrum& spec, double beta);

// Inverts <E>(beta) = target by bisection on [0, beta_hi] with a doubling
// bracket; <E> is strictly decreasing for nondegenerate spectra.
// Throws OutOfRange for targets outside [<E>(inf), <E>(0)].
InverseTemperature beta_for_energy(const EnergySpectrum& spec, double target_energy,
                                   double tol = 1e-10);

}  // namespace stuforge::spectra
