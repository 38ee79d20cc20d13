#include "stuforge/stu_majorised.hpp"

#include "stuforge/majorize.hpp"

#include "doctest.h"

#include <numeric>
#include <random>

using namespace stuforge;
using namespace stuforge::stu_majorised;
using spectra::EnergySpectrum;

namespace {

Mat random_ds(int d, std::mt19937_64& gen) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<int> sigma(d);
    std::iota(sigma.begin(), sigma.end(), 0);
    Mat m = Mat::Zero(d, d);
    double total = 0.0;
    for (int t = 0; t < 5; ++t) {
        std::shuffle(sigma.begin(), sigma.end(), gen);
        const double w = u(gen) + 0.01;
        m += w * majorize::permutation_matrix(sigma);
        total += w;
    }
    return m / total;
}

}  // namespace

TEST_CASE("companion of the fixed permutations") {
    const auto& perms = permutations_d3();
    {
        const auto res = companion_matrix_d3(perms[5]);  // ordering index 6
        CHECK((res.companion - perms[1]).cwiseAbs().maxCoeff() < 1e-12);  // index 2
        CHECK(res.residual < 1e-12);
    }
    {
        const auto res = companion_matrix_d3(Mat::Identity(3, 3));
        CHECK((res.companion - Mat::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-12);
    }
    {
        // the remaining anticyclic relations: 2 -> 4 and 4 -> 6
        CHECK((companion_matrix_d3(perms[1]).companion - perms[3]).cwiseAbs().maxCoeff() <
              1e-12);
        CHECK((companion_matrix_d3(perms[3]).companion - perms[5]).cwiseAbs().maxCoeff() <
              1e-12);
        // cyclic ones commute and stay put
        CHECK((companion_matrix_d3(perms[4]).companion - perms[4]).cwiseAbs().maxCoeff() <
              1e-12);
    }
}

TEST_CASE("companion residual on 1000 random doubly stochastic matrices") {
    std::mt19937_64 gen(41);
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const auto res = companion_matrix_d3(random_ds(3, gen));
        CHECK(majorize::is_doubly_stochastic(res.companion, 1e-9));
        worst = std::max(worst, res.residual);
    }
    CHECK(worst <= 1e-10);
}

TEST_CASE("reach_majorised_marginal_d3 end to end") {
    const auto spec = EnergySpectrum::parse("0,1,2");
    const Vec p = spectra::thermal_vector(spec, {1.0}).probs;
    {
        const auto blocks = reach_majorised_marginal_d3(spec, {1.0}, p);
        const auto rep = block_unitary::verify_stu(blocks, spec, {1.0}, {1.0});
        CHECK(rep.pass);
    }
    {
        const Vec uniform = Vec::Constant(3, 1.0 / 3);
        const auto blocks = reach_majorised_marginal_d3(spec, {1.0}, uniform);
        const auto rep = block_unitary::verify_stu(blocks, spec, {1.0}, {0.0});
        CHECK(rep.pass);
    }
    {
        const Vec target = spectra::thermal_vector(spec, {0.5}).probs;
        const auto blocks = reach_majorised_marginal_d3(spec, {1.0}, target);
        const auto rep = block_unitary::verify_stu(blocks, spec, {1.0}, {0.5});
        CHECK(rep.pass);
        CHECK(rep.deviation_a <= 1e-9);
    }
}

TEST_CASE("random majorised targets are reached beyond the thermal family") {
    std::mt19937_64 gen(43);
    const auto spec = EnergySpectrum::parse("0,1,3.1");
    const Vec p = spectra::thermal_vector(spec, {1.4}).probs;
    const auto dec =
        lcs::decompose(lcs::JointDiagonal::product(p));
    for (int trial = 0; trial < 50; ++trial) {
        const Vec target = random_ds(3, gen) * p;
        REQUIRE(majorize::majorizes(p, target));
        const auto blocks = reach_majorised_marginal_d3(spec, {1.4}, target);
        const auto st = block_unitary::assemble_and_apply(blocks, spec, {1.4});
        auto [pa, pb] = block_unitary::marginal_diagonals(st);
        CHECK(linf(pa, target) <= 1e-9);
        CHECK(linf(pb, target) <= 1e-9);
    }
    Vec not_majorised(3);
    not_majorised << p[0] + 0.2, p[1], p[2] - 0.2;
    std::sort(not_majorised.data(), not_majorised.data() + 3, std::greater<double>());
    CHECK_THROWS_AS(reach_majorised_marginal_d3(spec, {1.4}, not_majorised),
                    NotMajorised);
}

TEST_CASE("d4 counterexample certificates") {
    const auto rep = counterexamples_d4();
    CHECK(rep.matrix_infeasible);
    CHECK(rep.matrix_gap > 1e-6);
    CHECK(rep.vector_infeasible);
    CHECK(rep.vector_gap > 1e-6);
    CHECK(rep.identity_feasible);
    CHECK(rep.cyclic_feasible);
}

TEST_CASE("certificates are stable under row shuffles") {
    for (unsigned seed = 1; seed <= 10; ++seed) {
        const auto rep = counterexamples_d4(seed);
        CHECK(rep.matrix_infeasible);
        CHECK(rep.matrix_gap > 1e-6);
        CHECK(rep.vector_infeasible);
        CHECK(rep.identity_feasible);
        CHECK(rep.cyclic_feasible);
    }
}

TEST_CASE("feasible companions reproduce the defining relation") {
    // identity control: extract the solution and check M(1+Pi) = (1+Pi)M~
    const auto f = companion_feasibility_d4(Mat::Identity(4, 4));
    REQUIRE(f.feasible);
    Mat mt(4, 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) mt(i, j) = f.solution[i * 4 + j];
    const Mat shift = Mat::Identity(4, 4) + cyclic_permutation(4, 1);
    CHECK((shift - shift * mt).cwiseAbs().maxCoeff() < 1e-9);
    CHECK(majorize::is_doubly_stochastic(mt, 1e-9));
}
