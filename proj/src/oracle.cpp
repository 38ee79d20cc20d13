#include "stuforge/oracle.hpp"

#include "stuforge/stu_majorised.hpp"
#include "stuforge/stu_norm.hpp"

#include <Eigen/QR>

#include <cmath>
#include <limits>
#include <random>

namespace stuforge::oracle {

Mat random_orthogonal(int d, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Mat g(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) g(i, j) = gauss(gen);
    Eigen::HouseholderQR<Mat> qr(g);
    Mat q = qr.householderQ();
    const Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < d; ++j)
        if (r(j, j) < 0.0) q.col(j) *= -1.0;
    return q;
}

Mat random_midpoint_orthogonal(int d, std::uint64_t seed) {
    if (d % 2 != 0) throw DimensionMismatch("midpoint block exists for even d only");
    const int h = d / 2;
    // eigenbasis of Pi^{d/2}: symmetric / antisymmetric pairs (j, j + d/2)
    Mat v = Mat::Zero(d, d);
    const double inv = 1.0 / std::sqrt(2.0);
    for (int j = 0; j < h; ++j) {
        v(j, j) = inv;
        v(j + h, j) = inv;          // symmetric combination
        v(j, h + j) = inv;
        v(j + h, h + j) = -inv;     // antisymmetric combination
    }
    Mat block = Mat::Zero(d, d);
    block.topLeftCorner(h, h) = random_orthogonal(h, seed * 2 + 1);
    block.bottomRightCorner(h, h) = random_orthogonal(h, seed * 2 + 2);
    return v * block * v.transpose();
}

ReachabilitySample sample_reachable(const spectra::EnergySpectrum& spec,
                                    spectra::InverseTemperature beta, int count,
                                    std::uint64_t seed) {
    const int d = spec.dim();
    if (d > 4) throw UnsupportedDimension("reachability sampling covers d <= 4");
    const auto vs = stu_geometric::vertex_set(spec, beta);
    const int k = d % 2 ? (d - 1) / 2 : d / 2;

    ReachabilitySample out;
    out.seed = seed;
    out.count = count;
    std::mt19937_64 gen(seed);
    for (int s = 0; s < count; ++s) {
        const Mat uq = random_orthogonal(d, gen());
        std::vector<Mat> upper;
        for (int i = 1; i <= k; ++i) {
            if (d % 2 == 0 && i == k)
                upper.push_back(random_midpoint_orthogonal(d, gen()));
            else
                upper.push_back(random_orthogonal(d, gen()));
        }
        const auto blocks = block_unitary::BlockUnitary::symmetric(d, uq, upper);
        const auto st = block_unitary::assemble_and_apply(blocks, spec, beta);
        const auto [pa, pb] = block_unitary::marginal_diagonals(st);
        out.max_marginal_asymmetry = std::max(out.max_marginal_asymmetry, linf(pa, pb));
        const Vec x = stu_geometric::to_coords(pa);
        out.points.push_back(x);
        const auto cert = stu_geometric::hull_membership(x, vs);
        if (cert.feasible)
            ++out.inside;
        else
            out.worst_gap = std::max(out.worst_gap, cert.infeasibility_gap);
    }
    return out;
}

CrossMethodReport cross_method_check(const spectra::EnergySpectrum& spec,
                                     spectra::InverseTemperature beta,
                                     spectra::InverseTemperature beta_prime) {
    const int d = spec.dim();
    CrossMethodReport rep;
    const Vec target = spectra::thermal_vector(spec, beta_prime).probs;

    auto push = [&](const std::string& name, auto&& builder) {
        MethodResult r;
        r.method = name;
        try {
            const auto blocks = builder();
            const auto v = block_unitary::verify_stu(blocks, spec, beta, beta_prime);
            r.built = true;
            r.pass = v.pass;
            r.deviation = std::max(v.deviation_a, v.deviation_b);
            r.delta_e = v.delta_e;
            r.delta_i = v.delta_i;
        } catch (const std::exception& e) {
            r.error = e.what();
        }
        rep.methods.push_back(r);
    };

    if (d == 3)
        push("majorised", [&] {
            return stu_majorised::reach_majorised_marginal_d3(spec, beta, target);
        });
    if (d >= 2)
        push("norm", [&] { return stu_norm::build_stu_norm(spec, beta, beta_prime); });
    if (d >= 2 && d <= 5)
        push("geometric",
             [&] { return stu_geometric::build_stu_geometric(spec, beta, beta_prime); });

    rep.all_built_agree = true;
    double emin = std::numeric_limits<double>::infinity(), emax = -emin;
    int built = 0;
    for (const auto& m : rep.methods) {
        if (!m.built) continue;
        ++built;
        if (!m.pass) rep.all_built_agree = false;
        emin = std::min(emin, m.delta_e);
        emax = std::max(emax, m.delta_e);
    }
    if (built == 0)
        rep.all_built_agree = false;
    else
        rep.max_delta_e_spread = emax - emin;
    return rep;
}

}  // namespace stuforge::oracle
