#include "stuforge/majorize.hpp"

#include "doctest.h"

#include <numeric>
#include <random>

using namespace stuforge;
using namespace stuforge::majorize;

namespace {

Vec random_prob(int d, std::mt19937_64& gen) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Vec p(d);
    for (int i = 0; i < d; ++i) p[i] = u(gen) + 1e-4;
    return p / p.sum();
}

Mat random_birkhoff_mixture(int d, int terms, std::mt19937_64& gen) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<int> sigma(d);
    std::iota(sigma.begin(), sigma.end(), 0);
    Mat m = Mat::Zero(d, d);
    double total = 0.0;
    for (int t = 0; t < terms; ++t) {
        std::shuffle(sigma.begin(), sigma.end(), gen);
        const double w = u(gen) + 0.02;
        m += w * permutation_matrix(sigma);
        total += w;
    }
    return m / total;
}

}  // namespace

TEST_CASE("majorizes basics") {
    Vec y(3), x(3);
    y << 1, 0, 0;
    x << 1.0 / 3, 1.0 / 3, 1.0 / 3;
    CHECK(majorizes(y, x));
    CHECK(!majorizes(x, y));
    CHECK(majorizes(x, x));
    y << 0.5, 0.3, 0.2;
    x << 0.4, 0.35, 0.25;
    CHECK(majorizes(y, x));  // partial sums 0.5 >= 0.4, 0.8 >= 0.75
    Vec bad(2);
    bad << 0.5, 0.5;
    CHECK_THROWS_AS(majorizes(y, bad), LengthMismatch);
    Vec off(3);
    off << 0.5, 0.3, 0.3;
    CHECK_THROWS_AS(majorizes(y, off), SumMismatch);
}

TEST_CASE("hlp_construct on pinned cases") {
    {
        Vec y(2), x(2);
        y << 1, 0;
        x << 0.5, 0.5;
        const auto res = hlp_construct(y, x);
        CHECK(res.steps.size() == 1);
        CHECK(res.steps[0].t == doctest::Approx(0.5));
        CHECK((res.matrix - Mat::Constant(2, 2, 0.5)).cwiseAbs().maxCoeff() < 1e-14);
    }
    {
        Vec y(3);
        y << 0.2, 0.5, 0.3;
        const auto res = hlp_construct(y, y);
        CHECK(res.steps.empty());
        CHECK((res.matrix - Mat::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-14);
    }
    {
        Vec y(3), x(3);
        y << 0.6, 0.3, 0.1;
        x << 0.4, 0.35, 0.25;
        const auto res = hlp_construct(y, x);
        CHECK(linf(res.matrix * y, x) < 1e-12);
        CHECK(is_doubly_stochastic(res.matrix));
        CHECK(res.mixing_steps() <= 2);
    }
    {
        Vec y(3), x(3);
        y << 0.6, 0.3, 0.1;
        x << 0.5, 0.4, 0.1;
        CHECK_THROWS_AS(hlp_construct(x, y), NotMajorised);
    }
}

TEST_CASE("hlp_construct on random pairs, including unsorted targets") {
    std::mt19937_64 gen(21);
    for (int trial = 0; trial < 300; ++trial) {
        const int d = 2 + static_cast<int>(gen() % 5);
        const Vec y = random_prob(d, gen);
        const Vec x = random_birkhoff_mixture(d, 3, gen) * y;
        REQUIRE(majorizes(y, x));
        const auto res = hlp_construct(y, x);
        CHECK(linf(res.matrix * y, x) <= 1e-10);
        CHECK(is_doubly_stochastic(res.matrix));
        CHECK(res.mixing_steps() <= d - 1);
    }
}

TEST_CASE("birkhoff_decompose basics") {
    {
        const auto parts = birkhoff_decompose(Mat::Identity(3, 3));
        REQUIRE(parts.size() == 1);
        CHECK(parts[0].first == doctest::Approx(1.0));
        CHECK((permutation_matrix(parts[0].second) - Mat::Identity(3, 3))
                  .cwiseAbs()
                  .maxCoeff() < 1e-14);
    }
    {
        const Mat m = 0.5 * (Mat::Identity(3, 3) + cyclic_permutation(3, 1));
        const auto parts = birkhoff_decompose(m);
        REQUIRE(parts.size() == 2);
        CHECK(parts[0].first == doctest::Approx(0.5));
        CHECK(parts[1].first == doctest::Approx(0.5));
        Mat rec = Mat::Zero(3, 3);
        for (const auto& [w, s] : parts) rec += w * permutation_matrix(s);
        CHECK((rec - m).cwiseAbs().maxCoeff() < 1e-12);
    }
    Mat bad(2, 2);
    bad << 0.9, 0.0, 0.1, 1.0;
    CHECK_THROWS_AS(birkhoff_decompose(bad), NotDoublyStochastic);
}

TEST_CASE("birkhoff round trip on random mixtures") {
    std::mt19937_64 gen(33);
    for (int trial = 0; trial < 100; ++trial) {
        const int d = 2 + static_cast<int>(gen() % 5);
        const Mat m = random_birkhoff_mixture(d, 3, gen);
        const auto parts = birkhoff_decompose(m);
        CHECK(static_cast<int>(parts.size()) <= (d - 1) * (d - 1) + 1);
        Mat rec = Mat::Zero(d, d);
        double wsum = 0.0;
        for (const auto& [w, s] : parts) {
            CHECK(w > 0.0);
            wsum += w;
            rec += w * permutation_matrix(s);
        }
        CHECK(wsum == doctest::Approx(1.0).epsilon(1e-9));
        CHECK((rec - m).cwiseAbs().maxCoeff() <= 1e-9);
    }
}

TEST_CASE("horn_lift pinned cases") {
    {
        Vec y(2), x(2);
        y << 1, 0;
        x << 0.5, 0.5;
        const Mat u = horn_lift(y, x);
        CHECK((u.transpose() * u - Mat::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);
        const Vec diag = (u * y.asDiagonal() * u.transpose()).diagonal();
        CHECK(linf(diag, x) < 1e-12);
        // rotation by pi/4 up to signs
        CHECK(std::abs(std::abs(u(0, 0)) - std::sqrt(0.5)) < 1e-12);
    }
    {
        Vec y(3);
        y << 0.5, 0.2, 0.3;
        const Mat u = horn_lift(y, y);
        CHECK((u * y.asDiagonal() * u.transpose()).diagonal().isApprox(y, 1e-12));
    }
    {
        Vec y(3), x(3);
        y << 0.6, 0.3, 0.1;
        x << 1.0 / 3, 1.0 / 3, 1.0 / 3;
        const Mat u = horn_lift(y, x);
        const Vec diag = (u * y.asDiagonal() * u.transpose()).diagonal();
        CHECK(linf(diag, x) < 1e-9);
    }
}

TEST_CASE("horn_lift property sweep over d = 2..6") {
    std::mt19937_64 gen(55);
    for (int d = 2; d <= 6; ++d) {
        for (int trial = 0; trial < 1000; ++trial) {
            const Vec y = random_prob(d, gen);
            const Vec x = random_birkhoff_mixture(d, 3, gen) * y;
            const Mat u = horn_lift(y, x);
            CHECK((u.transpose() * u - Mat::Identity(d, d)).cwiseAbs().maxCoeff() <=
                  1e-10);
            const Vec diag = (u * y.asDiagonal() * u.transpose()).diagonal();
            CHECK(linf(diag, x) <= 1e-9);
            // |U|^2 is doubly stochastic and contracts in majorisation order
            const Mat m2 = u.cwiseProduct(u);
            CHECK(is_doubly_stochastic(m2, 1e-9));
            CHECK(majorizes(y, m2 * y));
        }
    }
    std::mt19937_64 gen2(56);
    Vec y = random_prob(4, gen2);
    Vec x = random_prob(4, gen2);
    x[0] = y.maxCoeff() + 0.2;  // force non-majorised
    x /= x.sum();
    x *= y.sum() / x.sum();
    if (!majorizes(y, x)) CHECK_THROWS_AS(horn_lift(y, x), NotMajorised);
}
