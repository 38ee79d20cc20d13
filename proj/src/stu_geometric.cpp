#include "stuforge/stu_geometric.hpp"

#include "stuforge/lcs.hpp"
#include "stuforge/majorize.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

namespace stuforge::stu_geometric {

namespace {

using block_unitary::BlockUnitary;
using lcs::LcsDecomposition;

LcsDecomposition dec_at(const spectra::EnergySpectrum& spec, double beta) {
    const Vec p = spectra::thermal_vector(spec, {beta}).probs;
    return lcs::decompose(lcs::JointDiagonal::product(p));
}

std::vector<std::vector<int>> all_permutations(int d) {
    std::vector<int> base(d);
    std::iota(base.begin(), base.end(), 0);
    std::vector<std::vector<int>> out;
    do {
        out.push_back(base);
    } while (std::next_permutation(base.begin(), base.end()));
    return out;
}

// lift a per-subspace recipe to blocks, Horn-lifting each on its actual
// subspace vector (midpoint targets symmetrized)
BlockUnitary lift_construction(const LcsDecomposition& dec, const VertexConstruction& c) {
    const int d = dec.d;
    const Mat uq = majorize::horn_lift(dec.q, c.mq * dec.q);
    std::vector<Mat> upper;
    for (int i = 1; i <= dec.k(); ++i) {
        Vec target = c.mr[i - 1] * dec.r_i(i);
        if (dec.is_midpoint(i)) {
            const Mat shift = Mat::Identity(d, d) + cyclic_permutation(d, i);
            target = 0.5 * (shift * target);
        }
        upper.push_back(majorize::horn_lift(dec.r_i(i), target));
    }
    return BlockUnitary::symmetric(d, uq, upper);
}

}  // namespace

Vec to_coords(const Vec& p) {
    const int d = static_cast<int>(p.size());
    Vec x(d - 1);
    double partial = 0.0;
    for (int n = 0; n < d - 1; ++n) {
        partial += p[n];
        x[n] = (n + 1) * p[n + 1] - partial;
    }
    return x;
}

Vec from_coords(const Vec& x) {
    const int d = static_cast<int>(x.size()) + 1;
    // invert the triangular system together with sum(p) = 1
    Vec p(d);
    // x_n = (n+1) p_{n+1} - s_n with s_n = sum_{i<=n} p_i; s_{n+1} = s_n + p_{n+1}
    // p_{n+1} = (x_n + s_n)/(n+1)
    // p_0 from normalization afterwards: solve forward with p_0 unknown:
    // s_0 = p_0; every p_{n+1} is affine in p_0 with slope from recursion.
    // Simpler: p_0 coefficient tracking.
    Vec val(d), slope(d);
    val[0] = 0.0;
    slope[0] = 1.0;  // p_0 = 0 + 1 * p0
    double sv = 0.0, ss = 1.0;  // s_0 value/slope
    for (int n = 0; n < d - 1; ++n) {
        val[n + 1] = (x[n] + sv) / (n + 1);
        slope[n + 1] = ss / (n + 1);
        sv += val[n + 1];
        ss += slope[n + 1];
    }
    // sum p = sv_total + ss_total * p0 ... recompute totals including p_0
    double tot_v = 0.0, tot_s = 0.0;
    for (int i = 0; i < d; ++i) {
        tot_v += val[i];
        tot_s += slope[i];
    }
    const double p0 = (1.0 - tot_v) / tot_s;
    for (int i = 0; i < d; ++i) p[i] = val[i] + slope[i] * p0;
    if (p.minCoeff() < -1e-12)
        throw InvalidPreimage("coordinates have no probability preimage");
    return p.cwiseMax(0.0);
}

PolytopeVertexSet vertex_set(const spectra::EnergySpectrum& spec,
                             spectra::InverseTemperature beta, bool force) {
    const int d = spec.dim();
    if (d > 5 || (d == 5 && !force))
        throw TooLarge("exhaustive vertex enumeration limited to d <= 4 (use force for d = 5)");
    const auto dec = dec_at(spec, beta.beta);
    const int k = dec.k();
    const auto perms = all_permutations(d);
    const int np = static_cast<int>(perms.size());

    // precompute shifted images (1+Pi^n) P r_n for every permutation P
    std::vector<Mat> shifts(k + 1);
    for (int n = 1; n <= k; ++n)
        shifts[n] = Mat::Identity(d, d) + cyclic_permutation(d, n);
    std::vector<std::vector<Vec>> images(k + 1);
    images[0].reserve(np);
    for (const auto& s : perms) {
        Vec v(d);
        for (int j = 0; j < d; ++j) v[s[j]] = dec.q[j];
        images[0].push_back(v);
    }
    for (int n = 1; n <= k; ++n) {
        images[n].reserve(np);
        for (const auto& s : perms) {
            Vec v(d);
            for (int j = 0; j < d; ++j) v[s[j]] = dec.r_i(n)[j];
            images[n].push_back(dec.prefactor(n) * (shifts[n] * v));
        }
    }

    PolytopeVertexSet set;
    set.d = d;
    std::vector<int> label(k + 1, 0);
    std::vector<LabeledVertex> raw;
    while (true) {
        Vec p = images[0][label[0]];
        for (int n = 1; n <= k; ++n) p += images[n][label[n]];
        raw.push_back({to_coords(p), label});
        int pos = k;
        while (pos >= 0 && ++label[pos] == np) {
            label[pos] = 0;
            --pos;
        }
        if (pos < 0) break;
    }
    set.raw_count = static_cast<int>(raw.size());

    std::sort(raw.begin(), raw.end(), [](const LabeledVertex& a, const LabeledVertex& b) {
        for (int i = 0; i < a.coords.size(); ++i) {
            if (a.coords[i] < b.coords[i] - 1e-12) return true;
            if (a.coords[i] > b.coords[i] + 1e-12) return false;
        }
        return false;
    });
    for (const auto& v : raw) {
        if (!set.vertices.empty() &&
            linf(set.vertices.back().coords, v.coords) <= 1e-12)
            continue;
        set.vertices.push_back(v);
    }
    return set;
}

MembershipCertificate hull_membership(const Vec& point,
                                      const PolytopeVertexSet& vertices) {
    const int m = static_cast<int>(point.size()) + 1;
    const int n = static_cast<int>(vertices.vertices.size());
    if (n == 0) throw std::invalid_argument("empty vertex set");
    if (vertices.vertices[0].coords.size() != point.size())
        throw DimensionMismatch("coordinate dimension mismatch");
    Mat a(m, n);
    Vec b(m);
    for (int j = 0; j < n; ++j) {
        a.block(0, j, m - 1, 1) = vertices.vertices[j].coords;
        a(m - 1, j) = 1.0;
    }
    b.head(m - 1) = point;
    b[m - 1] = 1.0;
    const auto f = simplex::solve_feasibility(a, b);
    MembershipCertificate cert;
    cert.feasible = f.feasible;
    if (f.feasible) {
        cert.weights.assign(f.solution.data(), f.solution.data() + n);
        Vec rec = Vec::Zero(point.size());
        for (int j = 0; j < n; ++j) rec += f.solution[j] * vertices.vertices[j].coords;
        cert.reconstruction_error = linf(rec, point);
    } else {
        cert.infeasibility_gap = f.gap;
    }
    return cert;
}

double CurveCoefficients::sum() const {
    double s = 0.0;
    for (double v : a) s += v;
    return s;
}

CurveCoefficients curve_coefficients(const spectra::EnergySpectrum& spec,
                                     spectra::InverseTemperature beta,
                                     spectra::InverseTemperature beta_prime) {
    const int d = spec.dim();
    const Vec x = to_coords(spectra::thermal_vector(spec, beta).probs);
    const Vec xp = to_coords(spectra::thermal_vector(spec, beta_prime).probs);
    CurveCoefficients out;
    out.a.assign(d, 0.0);
    Vec ratio(d - 1);
    for (int i = 0; i < d - 1; ++i) {
        if (std::abs(x[i]) < 1e-13)
            throw DegenerateCoordinate("x_" + std::to_string(i) + "(beta) = 0");
        ratio[i] = xp[i] / x[i];
    }
    out.a[0] = ratio[0];
    for (int i = 1; i < d - 1; ++i) out.a[i] = ratio[i] - ratio[i - 1];
    out.a[d - 1] = 1.0 - ratio[d - 2];
    return out;
}

Vec coordinate_rate_functions(const spectra::EnergySpectrum& spec, double beta) {
    const int d = spec.dim();
    if (d == 3) {
        const double e1 = spec.energy(1), e2 = spec.energy(2);
        const double u = std::exp(-beta * e1), v = std::exp(-beta * e2);
        Vec f(2);
        f[0] = e1 * u * (2.0 + v) + e2 * v * (1.0 - u);
        f[1] = 3.0 * ((e2 - e1) * u * v + e2 * v);
        return f;
    }
    if (d == 4) {
        const double e1 = spec.energy(1), e2 = spec.energy(2), e3 = spec.energy(3);
        const double u = std::exp(-beta * e1), v = std::exp(-beta * e2),
                     w = std::exp(-beta * e3);
        Vec f(3);
        f[0] = e1 * u * (2.0 + v + w) + (e2 * v + e3 * w) * (1.0 - u);
        f[1] = 3.0 * (e2 - e1) * u * v + 3.0 * e2 * v + e3 * w * (1.0 + u - 2.0 * v) +
               w * (2.0 * e2 * v - e1 * u);
        f[2] = 4.0 * w * (e3 + u * (e3 - e1) + v * (e3 - e2));
        return f;
    }
    throw UnsupportedDimension("closed-form rate functions exist for d = 3, 4");
}

Vec coordinate_rate_derivatives(const spectra::EnergySpectrum& spec, double beta) {
    const int d = spec.dim();
    if (d == 3) {
        const double e1 = spec.energy(1), e2 = spec.energy(2);
        const double u = std::exp(-beta * e1), v = std::exp(-beta * e2);
        Vec g(2);
        g[0] = (e2 * e2 - e1 * e1) * u * v - 2.0 * e1 * e1 * u - e2 * e2 * v;
        g[1] = 3.0 * (-(e2 * e2 - e1 * e1) * u * v - e2 * e2 * v);
        return g;
    }
    if (d == 4) {
        const double e1 = spec.energy(1), e2 = spec.energy(2), e3 = spec.energy(3);
        const double u = std::exp(-beta * e1), v = std::exp(-beta * e2),
                     w = std::exp(-beta * e3);
        Vec g(3);
        g[0] = -e1 * e1 * u * (2.0 + v + w) - (e2 * e2 * v + e3 * e3 * w) * (1.0 - u);
        g[1] = e1 * e1 * u * (3.0 * v + w) - e2 * e2 * v * (3.0 + 3.0 * u + 2.0 * w) -
               e3 * e3 * w * (1.0 + u - 2.0 * v);
        g[2] = 4.0 * w * (e1 * e1 * u + e2 * e2 * v - e3 * e3 * (1.0 + u + v));
        return g;
    }
    throw UnsupportedDimension("closed-form rate derivatives exist for d = 3, 4");
}

ConvexityReport convexity_certify(const spectra::EnergySpectrum& spec, double beta_lo,
                                  double beta_hi, int samples) {
    const int d = spec.dim();
    if (d != 3 && d != 4)
        throw UnsupportedDimension("convexity certification covers d = 3, 4");
    ConvexityReport rep;
    rep.samples = samples;
    rep.analytic_matches_fd = true;
    rep.first_derivative_signs = true;
    rep.second_derivative_signs = true;

    for (int s = 0; s < samples; ++s) {
        const double beta =
            beta_lo * std::pow(beta_hi / beta_lo, s / std::max(1.0, samples - 1.0));
        const double z = spectra::partition_function(spec, beta);
        const Vec f = coordinate_rate_functions(spec, beta);
        const Vec g = coordinate_rate_derivatives(spec, beta);

        // Richardson-extrapolated central differences of dx_n/dbeta against
        // -f_n / Z^2. Differencing O(1) coordinates floors the absolute FD
        // noise near 1e-12, so derivatives below 1e-5 are held to an
        // absolute 1e-9 instead of the relative bound.
        const double h = 1e-3 * std::max(1.0, beta);
        auto coords_at = [&](double b) {
            return to_coords(spectra::thermal_vector(spec, {b}).probs);
        };
        const Vec d1 = (coords_at(beta + h) - coords_at(beta - h)) / (2.0 * h);
        const Vec d2 = (coords_at(beta + h / 2) - coords_at(beta - h / 2)) / h;
        const Vec fd_all = (4.0 * d2 - d1) / 3.0;
        for (int n = 0; n < d - 1; ++n) {
            const double fd = fd_all[n];
            const double an = -f[n] / (z * z);
            if (std::abs(an) >= 1e-5) {
                const double rel = std::abs(fd - an) / std::abs(an);
                rep.max_rel_error = std::max(rep.max_rel_error, rel);
                if (rel > 1e-6) rep.analytic_matches_fd = false;
            } else if (std::abs(fd - an) > 1e-9) {
                rep.analytic_matches_fd = false;
            }
        }
        // sign conditions: f_n >= 0 gives dx_m/dx_n >= 0
        if (f.minCoeff() < -1e-12) rep.first_derivative_signs = false;
        // convexity combinations f_m g_n - f_n g_m over ordered pairs n < m
        for (int n = 0; n < d - 1; ++n)
            for (int m = n + 1; m < d - 1; ++m) {
                const double comb = f[m] * g[n] - f[n] * g[m];
                if (comb < -1e-10 * std::max(1.0, std::abs(f[m] * g[n])))
                    rep.second_derivative_signs = false;
            }
    }
    return rep;
}

namespace {

Mat two_mix(int d, int a, int b, double m) {
    Mat t = Mat::Identity(d, d);
    t(a, a) = m;
    t(b, b) = m;
    t(a, b) = 1.0 - m;
    t(b, a) = 1.0 - m;
    return t;
}

// v_j in probability coordinates: first j+1 entries averaged.
Vec head_average(const Vec& p, int j) {
    Vec v = p;
    const double s = p.head(j + 1).sum() / (j + 1);
    for (int i = 0; i <= j; ++i) v[i] = s;
    return v;
}

// d = 4 five-point recipe reaching (0, 0, z(beta)).
VertexConstruction quart_v2_construction(const LcsDecomposition& dec) {
    const int d = 4;
    const Mat i4 = Mat::Identity(4, 4);
    const Mat pi7 = (Mat(4, 4) << 0, 1, 0, 0,
                                  1, 0, 0, 0,
                                  0, 0, 1, 0,
                                  0, 0, 0, 1).finished();
    const Mat pi9 = (Mat(4, 4) << 0, 1, 0, 0,
                                  0, 0, 1, 0,
                                  1, 0, 0, 0,
                                  0, 0, 0, 1).finished();
    const Mat pi13 = (Mat(4, 4) << 0, 0, 1, 0,
                                   1, 0, 0, 0,
                                   0, 1, 0, 0,
                                   0, 0, 0, 1).finished();
    const std::vector<std::array<Mat, 3>> labels = {
        {i4, i4, i4},    // A
        {pi7, i4, i4},   // B
        {pi13, pi7, i4}, // C
        {pi9, pi7, i4},  // D
        {pi9, i4, i4},   // E
    };
    PolytopeVertexSet five;
    five.d = d;
    for (const auto& l : labels) {
        const Vec p = lcs::symmetric_transform(dec, l[0], {l[1], l[2]});
        five.vertices.push_back({to_coords(p), {}});
    }
    const Vec z_only = five.vertices[0].coords;  // shares z with the target
    Vec target(3);
    target << 0.0, 0.0, z_only[2];
    const auto cert = hull_membership(target, five);
    if (!cert.feasible)
        throw SignCheckFailure("five-point hull for v_2 unexpectedly infeasible");
    VertexConstruction c;
    c.mq = Mat::Zero(d, d);
    c.mr = {Mat::Zero(d, d), Mat::Zero(d, d)};
    for (std::size_t l = 0; l < labels.size(); ++l) {
        c.mq += cert.weights[l] * labels[l][0];
        c.mr[0] += cert.weights[l] * labels[l][1];
        c.mr[1] += cert.weights[l] * labels[l][2];
    }
    return c;
}

// d = 5 corrector families (one free mixing parameter each); returns the
// recipe when some parameter value makes v - p + q - correction majorised
// by q, scanning the feasible interval.
struct D5Corrector {
    int subspace;  // 1 or 2 (which r_i carries the T-mix)
    int a, b;      // mixed coordinates
};

std::optional<VertexConstruction> d5_vertex_construction(
    const LcsDecomposition& dec, const Vec& p, const Vec& vertex, const D5Corrector& cor,
    std::string* detail = nullptr) {
    const int d = 5;
    const Mat i5 = Mat::Identity(d, d);
    const Vec& r = dec.r_i(cor.subspace);
    const Mat shift = i5 + cyclic_permutation(d, cor.subspace);
    const Vec base = vertex - p + dec.q;
    for (int step = 0; step <= 256; ++step) {
        const double mu = step / 256.0;
        const Mat m = two_mix(d, cor.a, cor.b, 1.0 - mu);
        const Vec lhs = base - shift * ((m - i5) * r);
        bool ok = lhs.minCoeff() >= -1e-13;
        if (ok) {
            try {
                ok = majorize::majorizes(dec.q, lhs);
            } catch (const SumMismatch&) {
                ok = false;
            }
        }
        if (ok) {
            VertexConstruction c;
            c.mq = majorize::hlp_construct(dec.q, lhs).matrix;
            c.mr = {i5, i5};
            c.mr[cor.subspace - 1] = m;
            return c;
        }
    }
    if (detail) *detail = "no mixing parameter yields a majorised M_q target";
    return std::nullopt;
}

}  // namespace

namespace {

// construction reaching curve vertex v_j from thermal(beta); d <= 5
VertexConstruction curve_vertex_construction(const LcsDecomposition& dec, const Vec& p,
                                             int j) {
    const int d = dec.d;
    const int k = dec.k();
    const Mat id = Mat::Identity(d, d);
    if (j == 0) return {id, std::vector<Mat>(k, id)};
    if (j == d - 1)
        return {uniform_circulant(d), std::vector<Mat>(k, uniform_circulant(d))};
    if (d == 3 || d == 4) {
        if (j == 1) {
            const double m = 1.0 - 1.0 / (2.0 * (p[0] + p[1]));
            return {two_mix(d, 0, 1, m), std::vector<Mat>(k, id)};
        }
        if (d == 4 && j == 2) return quart_v2_construction(dec);
    }
    if (d == 5 && j >= 1 && j <= 3) {
        const std::array<D5Corrector, 3> cors = {{{2, 1, 3}, {1, 0, 1}, {1, 1, 2}}};
        auto c = d5_vertex_construction(dec, p, head_average(p, j), cors[j - 1]);
        if (!c)
            throw ConditionsNotMet("d=5 vertex v_" + std::to_string(j) +
                                   " not constructible in this region");
        return *c;
    }
    throw UnsupportedDimension("curve vertex constructions cover d <= 5");
}

}  // namespace

std::vector<VertexConstruction> curve_vertex_constructions(
    const spectra::EnergySpectrum& spec, spectra::InverseTemperature beta) {
    const int d = spec.dim();
    const Vec p = spectra::thermal_vector(spec, beta).probs;
    const auto dec = dec_at(spec, beta.beta);
    std::vector<VertexConstruction> cons;
    for (int j = 0; j < d; ++j)
        cons.push_back(curve_vertex_construction(dec, p, j));
    return cons;
}

std::vector<BlockUnitary> reach_boundary_vertices(const spectra::EnergySpectrum& spec,
                                                  spectra::InverseTemperature beta) {
    const int d = spec.dim();
    if (d != 3 && d != 4)
        throw UnsupportedDimension("boundary vertex constructions cover d = 3, 4");
    if (d == 4) {
        const auto checks = quart_sign_checks(spec, beta);
        if (!checks.all_hold)
            throw SignCheckFailure("d=4 five-point sign checks failed");
    }
    const auto dec = dec_at(spec, beta.beta);
    const auto cons = curve_vertex_constructions(spec, beta);
    std::vector<BlockUnitary> out;
    for (int j = 1; j <= d - 2; ++j) out.push_back(lift_construction(dec, cons[j]));
    return out;
}

QuartSignChecks quart_sign_checks(const spectra::EnergySpectrum& spec,
                                  spectra::InverseTemperature beta) {
    if (spec.dim() != 4) throw UnsupportedDimension("sign checks are for d = 4");
    const Vec p = spectra::thermal_vector(spec, beta).probs;
    const double p0 = p[0], p1 = p[1], p2 = p[2];
    QuartSignChecks s;
    s.x_b = (p0 - p1) * (2.0 * p0 + 2.0 * p1 - 1.0);
    s.x_c = (p0 - p1) * (2.0 * p0 + 2.0 * p1 + p2 - 1.0) + (p1 - p2) * (p0 + p1 + p2);
    s.y_d = 3.0 * (p0 - p1) * (p0 + p1 + p2 - 1.0 / 3.0) +
            3.0 * (p1 - p2) * (p0 + p1 + p2 - 2.0 / 3.0);
    s.x_e = -((p0 - p1) * (1.0 - p0 - p1) + (p1 - p2) * (p1 + p2));

    // cross products evaluated from the actual vertex geometry
    const auto dec = dec_at(spec, beta.beta);
    const Mat i4 = Mat::Identity(4, 4);
    const Mat pi7 = (Mat(4, 4) << 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1).finished();
    const Mat pi9 = (Mat(4, 4) << 0, 1, 0, 0, 0, 0, 1, 0, 1, 0, 0, 0, 0, 0, 0, 1).finished();
    const Mat pi13 = (Mat(4, 4) << 0, 0, 1, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1).finished();
    auto pt = [&](const Mat& mq, const Mat& m1) {
        return to_coords(lcs::symmetric_transform(dec, mq, {m1, i4}));
    };
    const Vec a = pt(i4, i4), c = pt(pi13, pi7), dd = pt(pi9, pi7), e = pt(pi9, i4);
    auto cross_z = [](const Vec& x, const Vec& yv, const Vec& zv) {
        return (yv[0] - x[0]) * (zv[1] - x[1]) - (yv[1] - x[1]) * (zv[0] - x[0]);
    };
    Vec origin(3);
    origin << 0.0, 0.0, a[2];
    s.cross_aoe = cross_z(a, origin, e);
    s.cross_eod = cross_z(e, origin, dd);
    s.cross_doc = cross_z(dd, origin, c);
    s.all_hold = s.x_b >= -1e-12 && s.x_c >= -1e-12 && s.y_d >= -1e-12 &&
                 s.x_e <= 1e-12 && s.cross_aoe >= -1e-12 && s.cross_eod >= -1e-12 &&
                 s.cross_doc >= -1e-12;
    return s;
}

block_unitary::BlockUnitary build_stu_geometric(const spectra::EnergySpectrum& spec,
                                                spectra::InverseTemperature beta,
                                                spectra::InverseTemperature beta_prime) {
    const int d = spec.dim();
    if (d < 2 || d > 5)
        throw UnsupportedDimension("geometric builder covers d in {2, 3, 4} (d = 5 conditional)");
    if (beta_prime.beta > beta.beta)
        throw std::invalid_argument("requires beta' <= beta");
    const auto dec = dec_at(spec, beta.beta);
    const int k = dec.k();

    std::vector<double> weights;
    std::vector<VertexConstruction> cons;
    try {
        const auto coef = curve_coefficients(spec, beta, beta_prime);
        const Vec p = spectra::thermal_vector(spec, beta).probs;
        for (int j = 0; j < d; ++j) {
            if (std::abs(coef.a[j]) < 1e-15) continue;
            cons.push_back(curve_vertex_construction(dec, p, j));
            weights.push_back(coef.a[j]);
        }
    } catch (const DegenerateCoordinate&) {
        // flat direction: express the target directly over the full vertex set
        cons.clear();
        weights.clear();
        const auto vs = vertex_set(spec, beta, /*force=*/d == 5);
        const Vec target = to_coords(spectra::thermal_vector(spec, beta_prime).probs);
        const auto cert = hull_membership(target, vs);
        if (!cert.feasible)
            throw ConditionsNotMet("degenerate-coordinate fallback: target outside polytope");
        const auto perms = all_permutations(d);
        for (std::size_t l = 0; l < vs.vertices.size(); ++l) {
            if (cert.weights[l] <= 0.0) continue;
            VertexConstruction c;
            c.mq = majorize::permutation_matrix(perms[vs.vertices[l].labels[0]]);
            for (int n = 1; n <= k; ++n)
                c.mr.push_back(
                    majorize::permutation_matrix(perms[vs.vertices[l].labels[n]]));
            cons.push_back(c);
            weights.push_back(cert.weights[l]);
        }
    }

    Mat mq = Mat::Zero(d, d);
    std::vector<Mat> mr(k, Mat::Zero(d, d));
    for (std::size_t l = 0; l < cons.size(); ++l) {
        if (weights[l] == 0.0) continue;
        mq += weights[l] * cons[l].mq;
        for (int n = 0; n < k; ++n) mr[n] += weights[l] * cons[l].mr[n];
    }
    return lift_construction(dec, {mq, mr});
}

D5Report d5_region_check(const spectra::EnergySpectrum& spec,
                         spectra::InverseTemperature beta,
                         std::optional<spectra::InverseTemperature> beta_prime) {
    if (spec.dim() != 5) throw UnsupportedDimension("region check is for d = 5");
    const Vec p = spectra::thermal_vector(spec, beta).probs;
    const double p0 = p[0], p1 = p[1], p2 = p[2], p3 = p[3], p4 = p[4];
    D5Report rep;
    rep.a2 = std::max(0.0, (p0 - p1) * (0.5 - p0 - p1));
    const double lead = (p0 - p1) * (0.5 - p0 - p1);
    rep.ratio1_ok = rep.a2 == 0.0 || lead <= p0 * p1 - p2 * p3 + 1e-14;
    rep.ratio2_ok = rep.a2 == 0.0 || lead <= p4 * (p0 - p3) + 1e-14;
    {
        const double a1 = rep.a2 == 0.0 || p0 * p1 - p2 * p3 <= 0.0
                              ? 0.0
                              : lead * p2 * (p1 - p3) / (p0 * p1 - p2 * p3);
        rep.lastappcond_ok = a1 <= p0 * p0 - p2 * p2 - (p0 - p1) / 2.0 + 1e-14;
    }
    rep.reld5d4_ok =
        p0 + p1 - 2.0 * p2 - 3.0 * (p0 * p0 - p2 * p2) <= 3.0 * p1 * (p0 - p2) + 1e-14;
    rep.proofd5last_ok = p0 + p1 + p2 - 3.0 * p3 - 4.0 * (p0 * p0 - p3 * p3) <=
                         4.0 * p2 * (p1 - p3) + 1e-14;
    rep.suff_v2_ok = p0 + p1 + p2 >= 2.0 / 3.0;
    rep.suff_v3_ok = p0 + p2 + p3 >= 0.75;

    const auto dec = dec_at(spec, beta.beta);
    const std::array<D5Corrector, 3> cors = {{{2, 1, 3}, {1, 0, 1}, {1, 1, 2}}};
    const std::array<bool, 3> conds = {rep.ratio1_ok && rep.ratio2_ok && rep.lastappcond_ok,
                                       rep.reld5d4_ok, rep.proofd5last_ok};
    rep.region_verified = true;
    for (int j = 1; j <= 3; ++j) {
        D5VertexStatus st;
        st.name = "v" + std::to_string(j);
        st.condition_ok = conds[j - 1];
        std::string detail;
        st.constructible =
            d5_vertex_construction(dec, p, head_average(p, j), cors[j - 1], &detail)
                .has_value();
        st.detail = st.constructible ? "" : detail;
        if (!st.constructible) rep.region_verified = false;
        rep.vertices.push_back(st);
    }
    if (rep.region_verified && beta_prime) {
        const auto blocks = build_stu_geometric(spec, beta, *beta_prime);
        rep.stu = block_unitary::verify_stu(blocks, spec, beta, *beta_prime);
    }
    return rep;
}

}  // namespace stuforge::stu_geometric
