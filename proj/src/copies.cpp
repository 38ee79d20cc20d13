#include "stuforge/copies.hpp"

#include "stuforge/stu_geometric.hpp"
#include "stuforge/stu_majorised.hpp"
#include "stuforge/stu_norm.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <limits>
#include <set>

namespace stuforge::copies {

PairingSchedule pairing_schedule(int n) {
    if (n < 1) throw std::invalid_argument("need n >= 1 copies");
    PairingSchedule s;
    s.n = n;
    for (int j = 0; j < n; ++j) {
        std::vector<std::pair<int, int>> round;
        for (int i = 0; i < n; ++i) round.emplace_back(i, (i + j) % n);
        s.rounds.push_back(std::move(round));
    }
    return s;
}

bool PairingSchedule::no_repeat() const {
    std::set<std::pair<int, int>> seen;
    for (const auto& round : rounds) {
        std::set<int> a_used, b_used;
        for (const auto& [a, b] : round) {
            if (!seen.insert({a, b}).second) return false;
            if (!a_used.insert(a).second || !b_used.insert(b).second) return false;
        }
    }
    return static_cast<int>(seen.size()) == n * n;
}

StepMethod parse_method(const std::string& name) {
    if (name == "geometric") return StepMethod::geometric;
    if (name == "norm") return StepMethod::norm;
    if (name == "majorised") return StepMethod::majorised;
    throw std::invalid_argument("unknown step method: " + name);
}

namespace {

block_unitary::BlockUnitary build_step(const spectra::EnergySpectrum& spec, double from,
                                       double to, StepMethod method) {
    try {
        switch (method) {
            case StepMethod::geometric:
                return stu_geometric::build_stu_geometric(spec, {from}, {to});
            case StepMethod::norm:
                return stu_norm::build_stu_norm(spec, {from}, {to});
            case StepMethod::majorised: {
                const Vec target = spectra::thermal_vector(spec, {to}).probs;
                return stu_majorised::reach_majorised_marginal_d3(spec, {from}, target);
            }
        }
    } catch (const std::exception& e) {
        throw StepUnbuildable(std::string("step ") + std::to_string(from) + " -> " +
                              std::to_string(to) + ": " + e.what());
    }
    throw StepUnbuildable("unreachable");
}

// dense multi-site state utilities; sites are the 2n tensor factors of
// local dimension d, ordered A_0..A_{n-1}, B_0..B_{n-1}
struct MultiState {
    int d;
    int sites;
    Mat rho;  // D x D with D = d^sites

    long dim() const {
        long v = 1;
        for (int i = 0; i < sites; ++i) v *= d;
        return v;
    }
};

// apply the two-site orthogonal u (d^2 x d^2, site order (s1, s2)) as
// rho -> U rho U^T
void apply_two_site(MultiState& st, const Mat& u, int s1, int s2) {
    const int d = st.d;
    const long D = st.rho.rows();
    // strides for row-major site indexing: site 0 is the slowest index
    std::vector<long> stride(st.sites);
    long acc = 1;
    for (int s = st.sites - 1; s >= 0; --s) {
        stride[s] = acc;
        acc *= d;
    }
    const long st1 = stride[s1], st2 = stride[s2];
    // enumerate base indices with sites s1, s2 zeroed
    std::vector<long> bases;
    bases.reserve(D / (d * d));
    for (long idx = 0; idx < D; ++idx) {
        const long v1 = (idx / st1) % d, v2 = (idx / st2) % d;
        if (v1 == 0 && v2 == 0) bases.push_back(idx);
    }
    const int dd = d * d;
    std::vector<long> fiber(dd);
    std::vector<double> tmp(dd);
    // left multiply: rows mix within (s1, s2) fibers
    Mat next = st.rho;
    for (long base : bases) {
        for (int a = 0; a < d; ++a)
            for (int b = 0; b < d; ++b) fiber[a * d + b] = base + a * st1 + b * st2;
        for (long col = 0; col < D; ++col) {
            for (int r = 0; r < dd; ++r) {
                double acc2 = 0.0;
                for (int c = 0; c < dd; ++c) acc2 += u(r, c) * st.rho(fiber[c], col);
                tmp[r] = acc2;
            }
            for (int r = 0; r < dd; ++r) next(fiber[r], col) = tmp[r];
        }
    }
    // right multiply by U^T: columns mix
    Mat out = next;
    for (long base : bases) {
        for (int a = 0; a < d; ++a)
            for (int b = 0; b < d; ++b) fiber[a * d + b] = base + a * st1 + b * st2;
        for (long row = 0; row < D; ++row) {
            for (int c = 0; c < dd; ++c) {
                double acc2 = 0.0;
                for (int k = 0; k < dd; ++k) acc2 += next(row, fiber[k]) * u(c, k);
                tmp[c] = acc2;
            }
            for (int c = 0; c < dd; ++c) out(row, fiber[c]) = tmp[c];
        }
    }
    st.rho = std::move(out);
}

// reduced state on the listed sites (order preserved)
Mat reduce_to(const MultiState& st, const std::vector<int>& keep) {
    const int d = st.d;
    const long D = st.rho.rows();
    std::vector<long> stride(st.sites);
    long acc = 1;
    for (int s = st.sites - 1; s >= 0; --s) {
        stride[s] = acc;
        acc *= d;
    }
    long kd = 1;
    for (std::size_t i = 0; i < keep.size(); ++i) kd *= d;
    Mat out = Mat::Zero(kd, kd);
    // map each global index to (kept sub-index, traced sub-index)
    std::vector<long> kept_of(D), traced_of(D);
    for (long idx = 0; idx < D; ++idx) {
        long kidx = 0;
        for (int s : keep) kidx = kidx * d + (idx / stride[s]) % d;
        long tidx = 0;
        for (int s = 0; s < st.sites; ++s) {
            bool is_kept = false;
            for (int ks : keep)
                if (ks == s) is_kept = true;
            if (!is_kept) tidx = tidx * d + (idx / stride[s]) % d;
        }
        kept_of[idx] = kidx;
        traced_of[idx] = tidx;
    }
    for (long i = 0; i < D; ++i)
        for (long j = 0; j < D; ++j)
            if (traced_of[i] == traced_of[j]) out(kept_of[i], kept_of[j]) += st.rho(i, j);
    return out;
}

}  // namespace

ProtocolTrace simulate_copies(const spectra::EnergySpectrum& spec,
                              spectra::InverseTemperature beta, int n,
                              const std::vector<double>& schedule, StepMethod method) {
    const int d = spec.dim();
    if (static_cast<int>(schedule.size()) != n)
        throw std::invalid_argument("schedule must list n target betas");
    double dim = std::pow(static_cast<double>(d), 2.0 * n);
    if (dim > 1024.0 + 0.5)
        throw DimensionBudgetExceeded("exact simulation requires d^(2n) <= 1024");

    ProtocolTrace trace;
    trace.n = n;
    trace.d = d;

    MultiState st;
    st.d = d;
    st.sites = 2 * n;
    const Vec p0 = spectra::thermal_vector(spec, beta).probs;
    const long D = static_cast<long>(dim + 0.5);
    // product initial state: diagonal with tensor weights
    Vec diag = Vec::Ones(D);
    {
        std::vector<long> stride(st.sites);
        long acc = 1;
        for (int s = st.sites - 1; s >= 0; --s) {
            stride[s] = acc;
            acc *= d;
        }
        for (long idx = 0; idx < D; ++idx) {
            double w = 1.0;
            for (int s = 0; s < st.sites; ++s) w *= p0[(idx / stride[s]) % d];
            diag[idx] = w;
        }
    }
    st.rho = diag.asDiagonal();

    const auto sched = pairing_schedule(n);
    double prev = beta.beta;
    for (int j = 0; j < n; ++j) {
        const double target = schedule[j];
        if (target > prev)
            throw StepUnbuildable("schedule must be nonincreasing in beta");
        const auto blocks = build_step(spec, prev, target, method);
        const Mat u = blocks.dense();
        for (const auto& [ai, bi] : sched.rounds[j])
            apply_two_site(st, u, ai, n + bi);

        RoundTrace rt;
        rt.beta_target = target;
        const Vec pt = spectra::thermal_vector(spec, {target}).probs;
        double worst = 0.0;
        double worst_energy = 0.0;
        for (int s = 0; s < st.sites; ++s) {
            const Mat rho = reduce_to(st, {s});
            Vec diag_s(d);
            for (int i = 0; i < d; ++i) diag_s[i] = rho(i, i);
            const double dev = linf(diag_s, pt);
            if (dev >= worst) {
                worst = dev;
                worst_energy = spectra::mean_energy(diag_s, spec);
            }
        }
        rt.max_marginal_deviation = worst;
        try {
            rt.fitted_beta = spectra::beta_for_energy(spec, worst_energy).beta;
        } catch (const OutOfRange&) {
            // drifted marginals can leave the thermal energy window entirely
            rt.fitted_beta = std::numeric_limits<double>::quiet_NaN();
        }
        // freshness of next round's interacting pairs
        if (j + 1 < n) {
            double pd = 0.0;
            for (const auto& [ai, bi] : sched.rounds[j + 1]) {
                const Mat pair = reduce_to(st, {ai, n + bi});
                const Mat ra = reduce_to(st, {ai});
                const Mat rb = reduce_to(st, {n + bi});
                Mat prod = Mat::Zero(d * d, d * d);
                for (int i1 = 0; i1 < d; ++i1)
                    for (int j1 = 0; j1 < d; ++j1)
                        for (int i2 = 0; i2 < d; ++i2)
                            for (int j2 = 0; j2 < d; ++j2)
                                prod(i1 * d + i2, j1 * d + j2) = ra(i1, j1) * rb(i2, j2);
                pd = std::max(pd, (pair - prod).cwiseAbs().maxCoeff());
            }
            rt.product_deviation = pd;
        }
        {
            Eigen::SelfAdjointEigenSolver<Mat> es(st.rho);
            double s = 0.0;
            for (int i = 0; i < es.eigenvalues().size(); ++i) {
                const double ev = es.eigenvalues()[i];
                if (ev > 1e-300) s -= ev * std::log(ev);
            }
            rt.global_entropy = s;
        }
        trace.rounds.push_back(rt);
        prev = target;
    }
    return trace;
}

}  // namespace stuforge::copies
