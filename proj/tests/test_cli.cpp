#include "doctest.h"

#include "json.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <sys/wait.h>

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;
};

RunResult run(const std::string& args) {
    const std::string cmd = std::string(STUFORGE_CLI_PATH) + " " + args + " 2>/dev/null";
    RunResult res;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf{};
    while (fgets(buf.data(), buf.size(), pipe)) res.output += buf.data();
    const int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

}  // namespace

TEST_CASE("stu builders exit 0 and emit valid reports") {
    for (const char* cmd :
         {"stu geometric --energies 0,1,2 --beta 1 --beta-prime 0.5",
          "stu norm --energies 0,1,2 --beta 1 --beta-prime 0.5",
          "stu majorised --energies 0,1,2 --beta 1 --beta-prime 0.5"}) {
        const auto res = run(cmd);
        CHECK(res.exit_code == 0);
        const auto j = nlohmann::json::parse(res.output);
        CHECK(j["report"]["pass"].get<bool>());
        CHECK(j["report"]["deviation_a"].get<double>() <= 1e-9);
        CHECK(j["config"]["tolerance"].get<double>() == 1e-9);
        // marginals re-validate as a normalized distribution
        double sum = 0.0;
        for (const auto& v : j["report"]["marginal_a"]) sum += v.get<double>();
        CHECK(std::abs(sum - 1.0) < 1e-10);
    }
}

TEST_CASE("usage errors exit 64") {
    CHECK(run("stu geometric --energies 0,1,2").exit_code == 64);  // missing --beta
    CHECK(run("bogus").exit_code == 64);
    CHECK(run("spectra --beta 1").exit_code == 64);  // missing --energies
}

TEST_CASE("verified negatives exit 1, build refusal too") {
    // increasing-gap d=4 spectrum: norm conditions verifiably fail
    const auto neg = run(
        "stu norm --energies 0,0.01,0.02,50 --raw-units --beta 1 --beta-prime 0.5 "
        "--check-only");
    CHECK(neg.exit_code == 1);
    const auto j = nlohmann::json::parse(neg.output);
    CHECK(!j["conditions"]["cond_ii_strong"].get<bool>());

    const auto build = run(
        "stu norm --energies 0,0.01,0.02,50 --raw-units --beta 1 --beta-prime 0.5");
    CHECK(build.exit_code == 1);  // refuses with ConditionsNotMet
}

TEST_CASE("counterexample certificate exits 0 when confirmed") {
    const auto res = run("stu majorised --counterexample-d4");
    CHECK(res.exit_code == 0);
    const auto j = nlohmann::json::parse(res.output);
    CHECK(j["matrix_infeasible"].get<bool>());
    CHECK(j["matrix_gap"].get<double>() > 1e-6);
    CHECK(j["vector_infeasible"].get<bool>());
    CHECK(j["identity_control_feasible"].get<bool>());
}

TEST_CASE("csv emission") {
    const auto res =
        run("stu geometric --energies 0,1,2 --beta 1 --beta-prime 0.5 --format csv");
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("beta,beta_prime,deviation_a") == 0);

    const auto curve = run("bounds curve --energies 0,1,2 --beta 1 --grid 5");
    CHECK(curve.exit_code == 0);
    CHECK(curve.output.find("delta_e,delta_i,beta_bar") == 0);
    int lines = 0;
    for (char c : curve.output)
        if (c == '\n') ++lines;
    CHECK(lines == 6);  // header + 5 rows

    const auto verts = run("polytope --energies 0,1,2 --beta 1.35 --emit-vertices");
    CHECK(verts.exit_code == 0);
    CHECK(verts.output.find("x0,x1,labels") == 0);
}

TEST_CASE("bounds asym json") {
    const auto res =
        run("bounds asym --energies-a 0,1 --energies-b 0,1,2 --budget 0.5");
    CHECK(res.exit_code == 0);
    const auto j = nlohmann::json::parse(res.output);
    CHECK(j["beta_of_c"].get<double>() == doctest::Approx(std::log(3.0) / 2).epsilon(1e-9));
    CHECK(j["identity_residual"].get<double>() <= 1e-9);
}

TEST_CASE("copies simulate json trace") {
    const auto res = run(
        "copies simulate --energies 0,1,2 --beta 1.5 --n 2 --schedule 1.0,0.55 "
        "--method geometric");
    CHECK(res.exit_code == 0);
    const auto j = nlohmann::json::parse(res.output);
    REQUIRE(j["rounds"].size() == 2);
    CHECK(j["rounds"][0]["max_marginal_deviation"].get<double>() <= 1e-9);
}

TEST_CASE("oracle and lemmas subcommands") {
    const auto s = run("oracle sample --energies 0,1,2 --beta 1 --count 50 --seed 3");
    CHECK(s.exit_code == 0);
    const auto js = nlohmann::json::parse(s.output);
    CHECK(js["inside"].get<int>() == 50);

    const auto x = run("oracle cross --energies 0,1,2 --beta 1 --beta-prime 0.5");
    CHECK(x.exit_code == 0);

    const auto l = run("lemmas check-all --samples 40 --jobs 2");
    CHECK(l.exit_code == 0);
    const auto jl = nlohmann::json::parse(l.output);
    CHECK(jl["pass"].get<bool>());
    CHECK(jl["grid_points"].get<long>() == 40 * 10);
}

TEST_CASE("STUFORGE_TOL env override reaches the report") {
    const std::string cmd = std::string("STUFORGE_TOL=1e-6 ") + STUFORGE_CLI_PATH +
                            " stu geometric --energies 0,1,2 --beta 1 --beta-prime "
                            "0.5 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string output;
    std::array<char, 4096> buf{};
    while (fgets(buf.data(), buf.size(), pipe)) output += buf.data();
    pclose(pipe);
    const auto j = nlohmann::json::parse(output);
    CHECK(j["report"]["tolerance"].get<double>() == 1e-6);
}

TEST_CASE("d5 report subcommand") {
    const auto res = run(
        "stu geometric --energies 0,1,2,3,4 --beta 1 --beta-prime 0.5 --d5-report");
    CHECK(res.exit_code == 0);
    const auto j = nlohmann::json::parse(res.output);
    CHECK(j["region_verified"].get<bool>());
    CHECK(j["report"]["pass"].get<bool>());

    const auto unres = run("stu geometric --energies 0,1,2,3,4 --beta 0.05 --d5-report");
    CHECK(unres.exit_code == 1);
    const auto ju = nlohmann::json::parse(unres.output);
    CHECK(!ju["region_verified"].get<bool>());
}
