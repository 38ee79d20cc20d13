#include "stuforge/oracle.hpp"

#include "doctest.h"

#include <cmath>

using namespace stuforge;
using namespace stuforge::oracle;
using spectra::EnergySpectrum;

TEST_CASE("random orthogonal generation is deterministic and orthogonal") {
    for (int d : {2, 3, 4, 6}) {
        const Mat u = random_orthogonal(d, 123);
        CHECK((u.transpose() * u - Mat::Identity(d, d)).cwiseAbs().maxCoeff() < 1e-12);
        const Mat v = random_orthogonal(d, 123);
        CHECK((u - v).cwiseAbs().maxCoeff() == 0.0);  // bit-for-bit
        const Mat w = random_orthogonal(d, 124);
        CHECK((u - w).cwiseAbs().maxCoeff() > 1e-3);
    }
    const Mat m = random_midpoint_orthogonal(4, 9);
    CHECK((m.transpose() * m - Mat::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-12);
    const Mat pi2 = cyclic_permutation(4, 2);
    CHECK((m * pi2 - pi2 * m).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("empty and identity samples") {
    const auto spec = EnergySpectrum::parse("0,1,2");
    const auto none = sample_reachable(spec, {1.0}, 0, 7);
    CHECK(none.points.empty());
    CHECK(none.inside == 0);
}

TEST_CASE("sampled marginals stay inside the vertex polytope") {
    {
        const auto spec = EnergySpectrum::parse("0,1,2");
        const auto s = sample_reachable(spec, {1.0}, 300, 7);
        CHECK(s.inside == 300);
        CHECK(s.max_marginal_asymmetry < 1e-10);
    }
    {
        const auto spec = EnergySpectrum::parse("0,1,2,3.5");
        const auto s = sample_reachable(spec, {0.8}, 60, 11);
        CHECK(s.inside == 60);
        CHECK(s.max_marginal_asymmetry < 1e-10);
    }
}

TEST_CASE("determinism of sampling") {
    const auto spec = EnergySpectrum::parse("0,1,2");
    const auto s1 = sample_reachable(spec, {1.0}, 10, 42);
    const auto s2 = sample_reachable(spec, {1.0}, 10, 42);
    REQUIRE(s1.points.size() == s2.points.size());
    for (std::size_t i = 0; i < s1.points.size(); ++i)
        CHECK((s1.points[i] - s2.points[i]).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("cross-method agreement in d = 3") {
    const auto spec = EnergySpectrum::parse("0,1,2");
    const auto rep = cross_method_check(spec, {1.0}, {0.5});
    REQUIRE(rep.methods.size() == 3);
    for (const auto& m : rep.methods) {
        CHECK(m.built);
        CHECK(m.pass);
        CHECK(m.deviation <= 1e-9);
    }
    CHECK(rep.all_built_agree);
    CHECK(rep.max_delta_e_spread <= 1e-9);
}

TEST_CASE("cross-method agreement in d = 4 by gap regime") {
    {
        const auto spec = EnergySpectrum::parse("0,1,1.8,2.4");  // decreasing gaps
        const auto rep = cross_method_check(spec, {1.5}, {0.7});
        int built = 0;
        for (const auto& m : rep.methods)
            if (m.built) {
                ++built;
                CHECK(m.pass);
            }
        CHECK(built == 2);  // norm + geometric
        CHECK(rep.all_built_agree);
    }
    {
        const auto spec = EnergySpectrum::from_levels({0.0, 0.01, 0.02, 50.0}, false);
        const auto rep = cross_method_check(spec, {1.0}, {0.5});
        bool norm_refused = false, geometric_ok = false;
        for (const auto& m : rep.methods) {
            if (m.method == "norm") norm_refused = !m.built && !m.error.empty();
            if (m.method == "geometric") geometric_ok = m.built && m.pass;
        }
        CHECK(norm_refused);
        CHECK(geometric_ok);
    }
}
