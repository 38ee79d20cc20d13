#include "stuforge/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace stuforge::spectra {

EnergySpectrum EnergySpectrum::from_levels(std::vector<double> levels, bool normalize) {
    if (levels.size() < 2) throw std::invalid_argument("spectrum needs d >= 2 levels");
    for (std::size_t i = 0; i + 1 < levels.size(); ++i) {
        if (levels[i + 1] < levels[i])
            throw std::invalid_argument("energies must be nondecreasing");
    }
    if (levels.front() < 0.0) throw std::invalid_argument("energies must be nonnegative");
    if (levels.front() != 0.0)
        throw std::invalid_argument("first energy must be 0 (shift the Hamiltonian)");
    if (normalize && levels[1] > 0.0) {
        const double e1 = levels[1];
        for (double& e : levels) e /= e1;
        levels[1] = 1.0;  // exact after normalization
    }
    return EnergySpectrum(std::move(levels));
}

EnergySpectrum EnergySpectrum::parse(const std::string& csv, bool normalize) {
    std::vector<double> levels;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        std::size_t pos = 0;
        const double v = std::stod(tok, &pos);
        levels.push_back(v);
    }
    return from_levels(std::move(levels), normalize);
}

bool EnergySpectrum::equally_spaced(double tol) const {
    const double g0 = gap(0);
    for (int i = 1; i + 1 < dim(); ++i)
        if (std::abs(gap(i) - g0) > tol) return false;
    return true;
}

double EnergySpectrum::mean_energy() const {
    double s = 0.0;
    for (double e : energies_) s += e;
    return s / static_cast<double>(dim());
}

Vec EnergySpectrum::as_vec() const {
    Vec v(dim());
    for (int i = 0; i < dim(); ++i) v[i] = energies_[i];
    return v;
}

ThermalDistribution thermal_vector(const EnergySpectrum& spec, InverseTemperature beta) {
    if (!(beta.beta >= 0.0)) throw std::invalid_argument("beta must be >= 0");
    const int d = spec.dim();
    Vec p(d);
    if (beta.is_infinite()) {
        // uniform over the degenerate lowest level (E_0 = 0 exactly)
        int deg = 0;
        for (int i = 0; i < d; ++i)
            if (spec.energy(i) == 0.0) ++deg;
        for (int i = 0; i < d; ++i) p[i] = spec.energy(i) == 0.0 ? 1.0 / deg : 0.0;
        return {p, beta.beta};
    }
    // E_0 = 0, so the shifted weights e^{-beta(E_i - E_0)} never overflow and
    // Z >= 1; underflow of high levels is the correct limit.
    double z = 0.0;
    for (int i = 0; i < d; ++i) {
        p[i] = std::exp(-beta.beta * spec.energy(i));
        z += p[i];
    }
    p /= z;
    return {p, beta.beta};
}

double entropy(const Vec& p) {
    double s = 0.0;
    for (int i = 0; i < p.size(); ++i) {
        if (p[i] > 0.0) s -= p[i] * std::log(p[i]);
    }
    return s;
}

double mean_energy(const Vec& p, const EnergySpectrum& spec) {
    if (p.size() != spec.dim()) throw LengthMismatch("distribution/spectrum size");
    double e = 0.0;
    for (int i = 0; i < p.size(); ++i) e += p[i] * spec.energy(i);
    return e;
}

std::pair<double, double> entropy_and_energy(const Vec& p, const EnergySpectrum& spec) {
    return {entropy(p), mean_energy(p, spec)};
}

double partition_function(const EnergySpectrum& spec, double beta) {
    double z = 0.0;
    for (int i = 0; i < spec.dim(); ++i) z += std::exp(-beta * spec.energy(i));
    return z;
}

InverseTemperature beta_for_energy(const EnergySpectrum& spec, double target, double tol) {
    const double e_hot = spec.mean_energy();  // <E>(0), maximal
    const double scale = std::max(1.0, std::abs(target));
    if (target > e_hot + tol * scale || target < -tol * scale)
        throw OutOfRange("target energy outside [<E>(inf), <E>(0)] = [0, " +
                         std::to_string(e_hot) + "]");
    if (target >= e_hot) return {0.0};
    if (target <= 0.0) return InverseTemperature::infinite();

    auto energy_at = [&](double b) {
        return mean_energy(thermal_vector(spec, {b}).probs, spec);
    };
    double lo = 0.0, hi = 1.0;
    int guard = 0;
    while (energy_at(hi) > target) {
        hi *= 2.0;
        if (++guard > 600) return InverseTemperature::infinite();
    }
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (energy_at(mid) > target)
            lo = mid;
        else
            hi = mid;
        // resolve beta fully; the energy criterion alone leaves beta loose
        // where <E>(beta) flattens out
        if (hi - lo <= 1e-14 * std::max(1.0, hi) &&
            std::abs(energy_at(mid) - target) <= tol * scale)
            return {mid};
    }
    return {0.5 * (lo + hi)};
}

}  // namespace stuforge::spectra
