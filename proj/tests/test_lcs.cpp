#include "stuforge/lcs.hpp"

#include "stuforge/majorize.hpp"
#include "stuforge/spectra.hpp"

#include "doctest.h"

#include <random>

using namespace stuforge;
using namespace stuforge::lcs;

namespace {

Vec thermal3(double beta) {
    const auto spec = spectra::EnergySpectrum::parse("0,1,2");
    return spectra::thermal_vector(spec, {beta}).probs;
}

Mat random_doubly_stochastic(int d, std::mt19937_64& gen) {
    // convex mixture of random permutations
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<int> sigma(d);
    std::iota(sigma.begin(), sigma.end(), 0);
    Mat m = Mat::Zero(d, d);
    double total = 0.0;
    for (int t = 0; t < 4; ++t) {
        std::shuffle(sigma.begin(), sigma.end(), gen);
        const double w = u(gen) + 0.05;
        m += w * majorize::permutation_matrix(sigma);
        total += w;
    }
    return m / total;
}

}  // namespace

TEST_CASE("uniform joint decomposes into equal thirds") {
    const Vec p = Vec::Constant(3, 1.0 / 3);
    const auto dec = decompose(JointDiagonal::product(p));
    for (int j = 0; j < 3; ++j) {
        CHECK(dec.q[j] == doctest::Approx(1.0 / 9).epsilon(1e-14));
        CHECK(dec.r_i(1)[j] == doctest::Approx(1.0 / 9).epsilon(1e-14));
        CHECK(dec.r_i(2)[j] == doctest::Approx(1.0 / 9).epsilon(1e-14));
    }
    CHECK(dec.symmetric);
}

TEST_CASE("product joint components are the pairwise products") {
    const Vec p = thermal3(0.7);
    const auto dec = decompose(JointDiagonal::product(p));
    for (int j = 0; j < 3; ++j) {
        CHECK(dec.q[j] == doctest::Approx(p[j] * p[j]).epsilon(1e-14));
        CHECK(dec.r_i(1)[j] == doctest::Approx(p[j] * p[(j + 1) % 3]).epsilon(1e-14));
        CHECK(dec.r_i(2)[j] == doctest::Approx(p[j] * p[(j + 2) % 3]).epsilon(1e-14));
    }
    // symmetry relation r_{d-i} = Pi^i r_i
    const Vec lhs = dec.r_i(2);
    const Vec rhs = cyclic_permutation(3, 1) * dec.r_i(1);
    CHECK(linf(lhs, rhs) < 1e-14);
}

TEST_CASE("subspace norms for E=(0,1,2) at beta = 1") {
    const Vec p = thermal3(1.0);
    const auto dec = decompose(JointDiagonal::product(p));
    // oracle: norms from the thermal vector directly
    const double nq = p[0] * p[0] + p[1] * p[1] + p[2] * p[2];
    const double nr = p[0] * p[1] + p[1] * p[2] + p[2] * p[0];
    CHECK(dec.norm_q() == doctest::Approx(nq).epsilon(1e-13));
    CHECK(dec.norm_r(1) == doctest::Approx(nr).epsilon(1e-13));
    CHECK(dec.norm_q() == doctest::Approx(0.5105430579).epsilon(1e-7));
    CHECK(dec.norm_r(1) == doctest::Approx(0.2447284711).epsilon(1e-7));
    CHECK(dec.norm_r(2) == doctest::Approx(dec.norm_r(1)).epsilon(1e-13));
    CHECK(dec.norm_q() + 2 * dec.norm_r(1) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("reconstruct inverts decompose") {
    const auto spec = spectra::EnergySpectrum::parse("0,1,2,3");
    const Vec p = spectra::thermal_vector(spec, {1.0}).probs;
    const auto dec = decompose(JointDiagonal::product(p));
    auto [pa, pb] = reconstruct_marginals(dec);
    CHECK(linf(pa, p) < 1e-14);
    CHECK(linf(pb, p) < 1e-14);
}

TEST_CASE("pure q joint reconstructs to q") {
    Vec q(3);
    q << 0.5, 0.3, 0.2;
    Vec entries = Vec::Zero(9);
    for (int j = 0; j < 3; ++j) entries[j * 3 + j] = q[j];
    const auto dec = decompose(JointDiagonal::from_entries(3, entries));
    auto [pa, pb] = reconstruct_marginals(dec);
    CHECK(linf(pa, q) < 1e-14);
    CHECK(linf(pb, q) < 1e-14);
}

TEST_CASE("symmetric transform preserves normalization and equal marginals") {
    std::mt19937_64 gen(5);
    for (int d : {3, 4, 5}) {
        std::vector<double> levels{0.0, 1.0};
        for (int i = 2; i < d; ++i) levels.push_back(levels.back() + 0.8);
        const auto spec = spectra::EnergySpectrum::from_levels(levels);
        const Vec p = spectra::thermal_vector(spec, {1.3}).probs;
        const auto dec = decompose(JointDiagonal::product(p));
        const int k = dec.k();
        for (int trial = 0; trial < 20; ++trial) {
            const Mat mq = random_doubly_stochastic(d, gen);
            std::vector<Mat> ms;
            for (int i = 0; i < k; ++i) ms.push_back(random_doubly_stochastic(d, gen));
            const Vec out = symmetric_transform(dec, mq, ms);
            CHECK(std::abs(out.sum() - 1.0) < 1e-12);

            // the paired realization and the formula agree: apply the
            // constraint M_{r_{d-i}} = Pi^i M_{r_i} Pi^{-i} explicitly
            Vec pa = mq * dec.q, pb = mq * dec.q;
            for (int i = 1; i < d; ++i) {
                Mat mi;
                const int k_lim = dec.k();
                if (i <= k_lim && !(dec.is_midpoint(i)))
                    mi = ms[i - 1];
                else if (dec.is_midpoint(i)) {
                    const Mat shift = Mat::Identity(d, d) + cyclic_permutation(d, i);
                    mi = 0.5 * shift * ms[i - 1];
                } else {
                    const Mat pi = cyclic_permutation(d, d - i);
                    mi = pi * ms[d - i - 1] * pi.transpose();
                }
                pa += mi * dec.r_i(i);
                pb += cyclic_permutation(d, i) * (mi * dec.r_i(i));
            }
            CHECK(linf(pa, pb) < 1e-12);
            CHECK(linf(pa, out) < 1e-12);
        }
    }
}

TEST_CASE("circulant matrices reach cyclic mixtures of the marginal") {
    std::mt19937_64 gen(9);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const auto spec = spectra::EnergySpectrum::parse("0,1,2.4");
    const Vec p = spectra::thermal_vector(spec, {0.9}).probs;
    const auto dec = decompose(JointDiagonal::product(p));
    for (int trial = 0; trial < 25; ++trial) {
        Vec w(3);
        for (int i = 0; i < 3; ++i) w[i] = u(gen) + 1e-3;
        w /= w.sum();
        Mat circ = Mat::Zero(3, 3);
        for (int i = 0; i < 3; ++i) circ += w[i] * cyclic_permutation(3, i);
        const Vec out = symmetric_transform(dec, circ, {circ});
        CHECK(linf(out, circ * p) < 1e-13);
    }
    // equal-weight mixture of all cyclic permutations is maximally mixing
    const Vec out = symmetric_transform(dec, uniform_circulant(3),
                                        {uniform_circulant(3)});
    CHECK(linf(out, Vec::Constant(3, 1.0 / 3)) < 1e-14);
}

TEST_CASE("Latin-square family validation") {
    CHECK_THROWS_AS(latin_square_lcs({{0, 1, 2}, {0, 1, 2}, {2, 0, 1}}), NotLatinSquare);
    CHECK_THROWS_AS(latin_square_lcs({{0, 1, 1}, {1, 2, 0}, {2, 0, 1}}), NotLatinSquare);
    CHECK_NOTHROW(latin_square_lcs({{0, 1, 2}, {1, 2, 0}, {2, 0, 1}}));
}

TEST_CASE("cyclic family reproduces the decompose path") {
    const int d = 4;
    const auto spec = spectra::EnergySpectrum::parse("0,1,2,3");
    const Vec p = spectra::thermal_vector(spec, {0.8}).probs;
    const auto joint = JointDiagonal::product(p);
    // P_i = (Pi^{-1})^i acts on indices as j -> j + i
    std::vector<std::vector<int>> perms;
    for (int i = 0; i < d; ++i) {
        std::vector<int> s(d);
        for (int j = 0; j < d; ++j) s[j] = (j + i) % d;
        perms.push_back(s);
    }
    const auto family = latin_square_lcs(perms);
    std::mt19937_64 gen(13);
    std::vector<Mat> ms;
    for (int i = 0; i < d; ++i) ms.push_back(random_doubly_stochastic(d, gen));
    auto [pa, pb] = general_marginals(family, ms, joint);

    const auto dec = decompose(joint);
    Vec ref_a = ms[0] * dec.q, ref_b = ms[0] * dec.q;
    for (int i = 1; i < d; ++i) {
        ref_a += ms[i] * dec.r_i(i);
        ref_b += cyclic_permutation(d, i) * (ms[i] * dec.r_i(i));
    }
    CHECK(linf(pa, ref_a) < 1e-13);
    CHECK(linf(pb, ref_b) < 1e-13);
    CHECK(std::abs(pa.sum() - 1.0) < 1e-12);
    CHECK(std::abs(pb.sum() - 1.0) < 1e-12);
}

TEST_CASE("non-cyclic Latin square gives valid but unequal marginals") {
    const auto family = latin_square_lcs({{0, 1, 2}, {2, 0, 1}, {1, 2, 0}});
    const Vec p = thermal3(1.0);
    const auto joint = JointDiagonal::product(p);
    std::vector<Mat> ident(3, Mat::Identity(3, 3));
    auto [pa, pb] = general_marginals(family, ident, joint);
    CHECK(std::abs(pa.sum() - 1.0) < 1e-12);
    CHECK(std::abs(pb.sum() - 1.0) < 1e-12);
    CHECK(linf(pa, p) < 1e-14);  // identity maps reproduce both marginals
    CHECK(linf(pb, p) < 1e-14);

    // acting on one subspace without the partner constraint desynchronizes
    // the marginals
    const auto transpositions = latin_square_lcs({{0, 2, 1}, {1, 0, 2}, {2, 1, 0}});
    std::vector<Mat> ms = ident;
    ms[1] = (Mat(3, 3) << 1.0, 0.0, 0.0,
                          0.0, 0.7, 0.3,
                          0.0, 0.3, 0.7).finished();
    auto [qa, qb] = general_marginals(transpositions, ms, joint);
    CHECK(std::abs(qa.sum() - 1.0) < 1e-12);
    CHECK(std::abs(qb.sum() - 1.0) < 1e-12);
    CHECK(linf(qa, qb) > 1e-4);
}
