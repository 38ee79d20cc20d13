// stuforge - construct and certify symmetrically thermalizing unitaries,
// polytope memberships, correlation bounds, and the finite-copies protocol.

#include "stuforge/bounds.hpp"
#include "stuforge/lcs.hpp"
#include "stuforge/copies.hpp"
#include "stuforge/oracle.hpp"
#include "stuforge/spectra.hpp"
#include "stuforge/stu_geometric.hpp"
#include "stuforge/stu_majorised.hpp"
#include "stuforge/stu_norm.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <atomic>
#include <iomanip>
#include <iostream>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

using namespace stuforge;
using nlohmann::json;
using spectra::EnergySpectrum;
using spectra::InverseTemperature;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitNegative = 1;  // verified negative result
constexpr int kExitFailed = 2;    // STU verification failed
constexpr int kExitUsage = 64;

json to_json(const Vec& v) {
    json a = json::array();
    for (int i = 0; i < v.size(); ++i) a.push_back(v[i]);
    return a;
}

// row-major matrix serialization with a declared tolerance field
json matrix_json(const Mat& m, double tol) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(row);
    }
    return {{"rows", rows}, {"tolerance", tol}};
}

json decomposition_json(const lcs::LcsDecomposition& dec) {
    json rs = json::array();
    json norms_r = json::array();
    for (int i = 1; i < dec.d; ++i) {
        rs.push_back(to_json(dec.r_i(i)));
        norms_r.push_back(dec.norm_r(i));
    }
    return {{"d", dec.d},
            {"q", to_json(dec.q)},
            {"r", rs},
            {"norms", {{"q", dec.norm_q()}, {"r_i", norms_r}}}};
}

json stu_report_json(const block_unitary::StuReport& r) {
    return {
        {"marginal_a", to_json(r.marginal_a)},
        {"marginal_b", to_json(r.marginal_b)},
        {"deviation_a", r.deviation_a},
        {"deviation_b", r.deviation_b},
        {"offdiag_leakage", r.offdiag_leakage},
        {"entropy_before", r.entropy_before},
        {"entropy_after", r.entropy_after},
        {"delta_e", r.delta_e},
        {"delta_i", r.delta_i},
        {"tolerance", r.tol},
        {"pass", r.pass},
    };
}

json config_json(const std::string& cmd, const json& extra) {
    json c = {{"command", cmd}, {"tolerance", default_tol()}};
    if (extra.is_object()) c.update(extra);
    return c;
}

void emit_csv_report(const block_unitary::StuReport& r, double beta, double beta_prime) {
    std::cout << std::setprecision(17);
    std::cout << "beta,beta_prime,deviation_a,deviation_b,delta_e,delta_i,pass\n";
    std::cout << beta << ',' << beta_prime << ',' << r.deviation_a << ','
              << r.deviation_b << ',' << r.delta_e << ',' << r.delta_i << ','
              << (r.pass ? 1 : 0) << '\n';
}

std::vector<double> parse_csv_doubles(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (!tok.empty()) out.push_back(std::stod(tok));
    }
    return out;
}

struct LemmaSuiteResult {
    long grid_points = 0;
    long lemma2_violations = 0;
    long lemma3_violations = 0;
    long lemma4_violations = 0;
    long coeff_violations = 0;
    bool convexity_ok = true;
};

LemmaSuiteResult run_lemma_suite(int samples_per_cell, int jobs) {
    LemmaSuiteResult total;
    std::mutex mu;
    std::atomic<int> next_cell{0};
    // independent cells: (d, gap regime) for d = 2..6
    std::vector<std::pair<int, bool>> cells;
    for (int d = 2; d <= 6; ++d) {
        cells.emplace_back(d, false);
        cells.emplace_back(d, true);
    }
    auto worker = [&] {
        LemmaSuiteResult local;
        for (int cell = next_cell.fetch_add(1); cell < static_cast<int>(cells.size());
             cell = next_cell.fetch_add(1)) {
            const auto [d, decreasing] = cells[cell];
            std::mt19937_64 gen(2000 + cell);  // deterministic per cell
            std::uniform_real_distribution<double> gap(0.05, 4.0), bu(0.05, 4.0),
                shrink(0.05, 1.0);
            for (int s = 0; s < samples_per_cell; ++s) {
                std::vector<double> levels{0.0, 1.0};
                double g = 1.0;
                for (int i = 2; i < d; ++i) {
                    g = decreasing ? g * shrink(gen) : gap(gen);
                    levels.push_back(levels.back() + g);
                }
                const auto spec = EnergySpectrum::from_levels(levels);
                double b1 = bu(gen), b2 = bu(gen);
                if (b1 < b2) std::swap(b1, b2);
                ++local.grid_points;
                const auto rep = stu_norm::decomposition_norms(spec, {b1}, {b2});
                if (rep.norm_q < rep.norm_a - 1e-10) ++local.lemma2_violations;
                for (const auto& sub : rep.subspaces)
                    if (!sub.r_majorizes_b) ++local.lemma2_violations;
                const auto cond = stu_norm::check_conditions(spec, {b1}, {b2});
                if (d == 3 && !cond.cond_ii_strong) ++local.lemma3_violations;
                if (d == 4 && decreasing && !cond.cond_ii_strong)
                    ++local.lemma4_violations;
                try {
                    const auto coef =
                        stu_geometric::curve_coefficients(spec, {b1}, {b2});
                    double sum = 0.0;
                    for (double a : coef.a) {
                        if (a < -1e-12) ++local.coeff_violations;
                        sum += a;
                    }
                    if (std::abs(sum - 1.0) > 1e-10) ++local.coeff_violations;
                } catch (const DegenerateCoordinate&) {
                }
            }
        }
        const std::scoped_lock lock(mu);
        total.grid_points += local.grid_points;
        total.lemma2_violations += local.lemma2_violations;
        total.lemma3_violations += local.lemma3_violations;
        total.lemma4_violations += local.lemma4_violations;
        total.coeff_violations += local.coeff_violations;
    };
    std::vector<std::thread> threads;
    for (int t = 0; t < std::max(1, jobs); ++t) threads.emplace_back(worker);
    for (auto& t : threads) t.join();

    for (const char* desc : {"0,1,2.3", "0,1,1.8,2.2", "0,1,2,3"}) {
        const auto spec = EnergySpectrum::parse(desc);
        const auto rep = stu_geometric::convexity_certify(spec, 0.05, 10.0, 64);
        if (!rep.analytic_matches_fd || !rep.first_derivative_signs ||
            !rep.second_derivative_signs)
            total.convexity_ok = false;
    }
    return total;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"symmetrically thermalizing unitaries: construction and certification"};
    app.require_subcommand(1);

    std::string energies, energies_b, format = "json", method = "geometric", schedule;
    double beta = -1.0, beta_prime = -1.0, budget = -1.0, max_delta_e = -1.0;
    std::string target;
    bool raw_units = false, check_only = false, counterexample = false;
    bool emit_vertices = false, force = false, d5_report = false;
    int grid = 50, count = 1000, ncopies = 1, jobs = 1, samples = 400;
    std::uint64_t seed = 7;

    auto add_spectrum = [&](CLI::App* cmd) {
        cmd->add_option("--energies", energies,
                        "comma-separated ascending levels, first 0 (e.g. 0,1,2.5)")
            ->required();
        cmd->add_flag("--raw-units", raw_units, "keep raw energy units (no E_1 = 1)");
    };

    bool decompose_flag = false;
    auto* sp = app.add_subcommand("spectra", "thermal state, entropy and energy");
    add_spectrum(sp);
    sp->add_option("--beta", beta, "inverse temperature")->required();
    sp->add_flag("--decompose", decompose_flag, "include the subspace decomposition");

    auto* stu = app.add_subcommand("stu", "construct and verify STUs");
    stu->require_subcommand(1);
    auto* stu_maj = stu->add_subcommand("majorised", "d=3 majorised-marginals route");
    stu_maj->add_option("--energies", energies, "spectrum");
    stu_maj->add_flag("--raw-units", raw_units);
    stu_maj->add_option("--beta", beta, "initial inverse temperature");
    stu_maj->add_option("--beta-prime", beta_prime, "target inverse temperature");
    stu_maj->add_option("--target", target, "explicit majorised target vector (csv)");
    stu_maj->add_flag("--counterexample-d4", counterexample,
                      "emit the d=4 infeasibility certificates instead");
    auto* stu_norm_cmd = stu->add_subcommand("norm", "passing-on-the-norm route");
    add_spectrum(stu_norm_cmd);
    stu_norm_cmd->add_option("--beta", beta)->required();
    stu_norm_cmd->add_option("--beta-prime", beta_prime)->required();
    stu_norm_cmd->add_flag("--check-only", check_only, "report conditions, do not build");
    auto* stu_geo =
        stu->add_subcommand("geometric", "geometric route (d <= 4, d = 5 conditional)");
    add_spectrum(stu_geo);
    stu_geo->add_option("--beta", beta)->required();
    stu_geo->add_option("--beta-prime", beta_prime);
    stu_geo->add_flag("--d5-report", d5_report, "emit the d=5 region check report");
    for (auto* c : {stu_maj, stu_norm_cmd, stu_geo})
        c->add_option("--format", format, "json|csv");

    auto* poly = app.add_subcommand("polytope", "reachable-marginal vertex set");
    add_spectrum(poly);
    poly->add_option("--beta", beta)->required();
    poly->add_flag("--emit-vertices", emit_vertices, "write reduced-coordinate CSV");
    poly->add_flag("--force", force, "allow the d=5 exhaustive enumeration");

    auto* bnd = app.add_subcommand("bounds", "correlation/energy trade-off");
    bnd->require_subcommand(1);
    auto* curve = bnd->add_subcommand("curve", "optimal delta_I(delta_E) curve");
    add_spectrum(curve);
    curve->add_option("--beta", beta)->required();
    curve->add_option("--grid", grid, "number of grid points");
    curve->add_option("--max-delta-e", max_delta_e, "grid upper end (default: full budget)");
    auto* asym = bnd->add_subcommand("asym", "asymmetric pure-state optimum");
    asym->add_option("--energies-a", energies, "spectrum of A")->required();
    asym->add_option("--energies-b", energies_b, "spectrum of B")->required();
    asym->add_option("--budget", budget, "energy budget c")->required();
    asym->add_flag("--raw-units", raw_units);

    auto* cps = app.add_subcommand("copies", "finite-copies round-robin protocol");
    cps->require_subcommand(1);
    auto* sim = cps->add_subcommand("simulate", "exact multi-copy simulation");
    add_spectrum(sim);
    sim->add_option("--beta", beta)->required();
    sim->add_option("--n", ncopies, "copy count")->required();
    sim->add_option("--schedule", schedule, "comma list of n target betas")->required();
    sim->add_option("--method", method, "geometric|norm|majorised");

    auto* orc = app.add_subcommand("oracle", "brute-force cross-checks");
    orc->require_subcommand(1);
    auto* osample = orc->add_subcommand("sample", "random-block reachability sampling");
    add_spectrum(osample);
    osample->add_option("--beta", beta)->required();
    osample->add_option("--count", count, "samples");
    osample->add_option("--seed", seed, "RNG seed");
    auto* ocross = orc->add_subcommand("cross", "cross-method consistency");
    add_spectrum(ocross);
    ocross->add_option("--beta", beta)->required();
    ocross->add_option("--beta-prime", beta_prime)->required();

    auto* lem = app.add_subcommand("lemmas", "lemma grid suites");
    lem->require_subcommand(1);
    bool emit_grid_csv = false;
    auto* lall = lem->add_subcommand("check-all", "run every lemma grid");
    lall->add_option("--samples", samples, "grid points per cell");
    lall->add_option("--jobs", jobs, "parallel workers over independent cells");
    lall->add_flag("--emit-csv", emit_grid_csv,
                   "emit one CSV row per grid point instead of the summary");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        const auto parse_spec = [&](const std::string& s) {
            return EnergySpectrum::parse(s, !raw_units);
        };

        if (sp->parsed()) {
            const auto spec = parse_spec(energies);
            const auto t = spectra::thermal_vector(spec, {beta});
            auto [s, e] = spectra::entropy_and_energy(t.probs, spec);
            json out = {
                {"config",
                 config_json("spectra", {{"energies", energies}, {"beta", beta}})},
                {"probs", to_json(t.probs)},
                {"entropy", s},
                {"energy", e},
                {"partition_function", spectra::partition_function(spec, beta)},
                {"equally_spaced", spec.equally_spaced()},
            };
            if (decompose_flag) {
                const auto dec =
                    lcs::decompose(lcs::JointDiagonal::product(t.probs));
                out["decomposition"] = decomposition_json(dec);
            }
            std::cout << out.dump(2) << '\n';
            return kExitPass;
        }

        if (stu_maj->parsed()) {
            if (counterexample) {
                const auto rep = stu_majorised::counterexamples_d4();
                json out = {
                    {"config", config_json("stu majorised --counterexample-d4", {})},
                    {"matrix", matrix_json(stu_majorised::counterexample_matrix_d4(), 0.0)},
                    {"matrix_infeasible", rep.matrix_infeasible},
                    {"matrix_gap", rep.matrix_gap},
                    {"vector_infeasible", rep.vector_infeasible},
                    {"vector_gap", rep.vector_gap},
                    {"identity_control_feasible", rep.identity_feasible},
                    {"cyclic_control_feasible", rep.cyclic_feasible},
                };
                std::cout << out.dump(2) << '\n';
                const bool confirmed = rep.matrix_infeasible && rep.vector_infeasible &&
                                       rep.identity_feasible && rep.cyclic_feasible;
                return confirmed ? kExitPass : kExitFailed;
            }
            if (energies.empty() || beta < 0.0) {
                std::cerr << "stu majorised needs --energies and --beta\n";
                return kExitUsage;
            }
            const auto spec = parse_spec(energies);
            Vec tv;
            double bp = beta_prime;
            if (!target.empty()) {
                const auto vals = parse_csv_doubles(target);
                tv = Vec(vals.size());
                for (std::size_t i = 0; i < vals.size(); ++i) tv[i] = vals[i];
                bp = -1.0;
            } else if (beta_prime >= 0.0) {
                tv = spectra::thermal_vector(spec, {beta_prime}).probs;
            } else {
                std::cerr << "stu majorised needs --beta-prime or --target\n";
                return kExitUsage;
            }
            const auto blocks =
                stu_majorised::reach_majorised_marginal_d3(spec, {beta}, tv);
            if (bp >= 0.0) {
                const auto rep = block_unitary::verify_stu(blocks, spec, {beta}, {bp});
                if (format == "csv")
                    emit_csv_report(rep, beta, bp);
                else {
                    json out = {{"config", config_json("stu majorised",
                                                       {{"energies", energies},
                                                        {"beta", beta},
                                                        {"beta_prime", bp}})},
                                {"report", stu_report_json(rep)}};
                    std::cout << out.dump(2) << '\n';
                }
                return rep.pass ? kExitPass : kExitFailed;
            }
            const auto st = block_unitary::assemble_and_apply(blocks, spec, {beta});
            auto [pa, pb] = block_unitary::marginal_diagonals(st);
            const double dev = std::max(linf(pa, tv), linf(pb, tv));
            json out = {{"config", config_json("stu majorised", {{"energies", energies},
                                                                 {"beta", beta},
                                                                 {"target", target}})},
                        {"marginal_a", to_json(pa)},
                        {"marginal_b", to_json(pb)},
                        {"deviation", dev},
                        {"pass", dev <= default_tol()}};
            std::cout << out.dump(2) << '\n';
            return dev <= default_tol() ? kExitPass : kExitFailed;
        }

        if (stu_norm_cmd->parsed()) {
            const auto spec = parse_spec(energies);
            const auto cond = stu_norm::check_conditions(spec, {beta}, {beta_prime});
            json cj = {{"cond_i", cond.cond_i},
                       {"cond_ii_strong", cond.cond_ii_strong},
                       {"cond_ii_weak", cond.cond_ii_weak},
                       {"witness", cond.witness}};
            if (check_only) {
                json out = {{"config", config_json("stu norm --check-only",
                                                   {{"energies", energies},
                                                    {"beta", beta},
                                                    {"beta_prime", beta_prime}})},
                            {"conditions", cj}};
                std::cout << out.dump(2) << '\n';
                return (cond.cond_i && cond.cond_ii_strong) ? kExitPass : kExitNegative;
            }
            const auto blocks = stu_norm::build_stu_norm(spec, {beta}, {beta_prime});
            const auto rep = block_unitary::verify_stu(blocks, spec, {beta}, {beta_prime});
            if (format == "csv")
                emit_csv_report(rep, beta, beta_prime);
            else {
                json out = {{"config", config_json("stu norm", {{"energies", energies},
                                                                {"beta", beta},
                                                                {"beta_prime", beta_prime}})},
                            {"conditions", cj},
                            {"report", stu_report_json(rep)}};
                std::cout << out.dump(2) << '\n';
            }
            return rep.pass ? kExitPass : kExitFailed;
        }

        if (stu_geo->parsed()) {
            const auto spec = parse_spec(energies);
            if (d5_report) {
                std::optional<InverseTemperature> bp;
                if (beta_prime >= 0.0) bp = InverseTemperature{beta_prime};
                const auto rep = stu_geometric::d5_region_check(spec, {beta}, bp);
                json verts = json::array();
                for (const auto& v : rep.vertices)
                    verts.push_back({{"name", v.name},
                                     {"condition_ok", v.condition_ok},
                                     {"constructible", v.constructible},
                                     {"detail", v.detail}});
                json out = {{"config", config_json("stu geometric --d5-report",
                                                   {{"energies", energies},
                                                    {"beta", beta}})},
                            {"a2", rep.a2},
                            {"ratio1_ok", rep.ratio1_ok},
                            {"ratio2_ok", rep.ratio2_ok},
                            {"lastappcond_ok", rep.lastappcond_ok},
                            {"reld5d4_ok", rep.reld5d4_ok},
                            {"proofd5last_ok", rep.proofd5last_ok},
                            {"sufficient_v2_ok", rep.suff_v2_ok},
                            {"sufficient_v3_ok", rep.suff_v3_ok},
                            {"vertices", verts},
                            {"region_verified", rep.region_verified}};
                if (rep.stu) out["report"] = stu_report_json(*rep.stu);
                std::cout << out.dump(2) << '\n';
                if (!rep.region_verified) return kExitNegative;
                return (!rep.stu || rep.stu->pass) ? kExitPass : kExitFailed;
            }
            if (beta_prime < 0.0) {
                std::cerr << "stu geometric needs --beta-prime\n";
                return kExitUsage;
            }
            const auto blocks =
                stu_geometric::build_stu_geometric(spec, {beta}, {beta_prime});
            const auto rep = block_unitary::verify_stu(blocks, spec, {beta}, {beta_prime});
            if (format == "csv")
                emit_csv_report(rep, beta, beta_prime);
            else {
                json out = {{"config", config_json("stu geometric",
                                                   {{"energies", energies},
                                                    {"beta", beta},
                                                    {"beta_prime", beta_prime}})},
                            {"report", stu_report_json(rep)}};
                std::cout << out.dump(2) << '\n';
            }
            return rep.pass ? kExitPass : kExitFailed;
        }

        if (poly->parsed()) {
            const auto spec = parse_spec(energies);
            const auto vs = stu_geometric::vertex_set(spec, {beta}, force);
            if (emit_vertices) {
                std::cout << std::setprecision(17);
                std::cout << "x0";
                for (int n = 1; n < spec.dim() - 1; ++n) std::cout << ",x" << n;
                std::cout << ",labels\n";
                for (const auto& v : vs.vertices) {
                    for (int n = 0; n < v.coords.size(); ++n) {
                        if (n) std::cout << ',';
                        std::cout << v.coords[n];
                    }
                    std::cout << ",\"";
                    for (std::size_t l = 0; l < v.labels.size(); ++l) {
                        if (l) std::cout << ' ';
                        std::cout << v.labels[l];
                    }
                    std::cout << "\"\n";
                }
            } else {
                json out = {{"config", config_json("polytope", {{"energies", energies},
                                                                {"beta", beta}})},
                            {"raw_count", vs.raw_count},
                            {"deduplicated", vs.vertices.size()}};
                std::cout << out.dump(2) << '\n';
            }
            return kExitPass;
        }

        if (curve->parsed()) {
            const auto spec = parse_spec(energies);
            const Vec p = spectra::thermal_vector(spec, {beta}).probs;
            double hi = max_delta_e;
            if (hi <= 0.0)
                hi = 2.0 * (spec.mean_energy() - spectra::mean_energy(p, spec));
            std::vector<double> grid_vals;
            for (int i = 0; i < grid; ++i)
                grid_vals.push_back(hi * i / std::max(1, grid - 1));
            const auto pts = bounds::max_correlation_curve(spec, {beta}, grid_vals);
            std::cout << std::setprecision(17) << "delta_e,delta_i,beta_bar\n";
            for (const auto& pt : pts)
                std::cout << pt.delta_e << ',' << pt.delta_i << ',' << pt.beta_bar
                          << '\n';
            return kExitPass;
        }

        if (asym->parsed()) {
            const auto sa = parse_spec(energies);
            const auto sb = EnergySpectrum::parse(energies_b, !raw_units);
            const auto sol = bounds::asym_pure_optimum({sa, sb, budget});
            json out = {{"config", config_json("bounds asym", {{"energies_a", energies},
                                                               {"energies_b", energies_b},
                                                               {"budget", budget}})},
                        {"beta_of_c", std::isinf(sol.beta_of_c) ? json("inf")
                                                                : json(sol.beta_of_c)},
                        {"schmidt_probs", to_json(sol.schmidt_probs)},
                        {"effective_spectrum", sol.effective_spectrum},
                        {"mutual_information", sol.mutual_information},
                        {"identity_residual", sol.identity_residual},
                        {"uniform_branch", sol.uniform_branch}};
            std::cout << out.dump(2) << '\n';
            return kExitPass;
        }

        if (sim->parsed()) {
            const auto spec = parse_spec(energies);
            const auto sched = parse_csv_doubles(schedule);
            const auto trace = copies::simulate_copies(spec, {beta}, ncopies, sched,
                                                       copies::parse_method(method));
            json rounds = json::array();
            bool all_ok = true;
            for (const auto& r : trace.rounds) {
                rounds.push_back({{"beta_target", r.beta_target},
                                  {"max_marginal_deviation", r.max_marginal_deviation},
                                  {"fitted_beta", r.fitted_beta},
                                  {"product_deviation", r.product_deviation},
                                  {"global_entropy", r.global_entropy}});
                if (r.max_marginal_deviation > default_tol()) all_ok = false;
            }
            json out = {{"config", config_json("copies simulate",
                                               {{"energies", energies},
                                                {"beta", beta},
                                                {"n", ncopies},
                                                {"schedule", schedule},
                                                {"method", method}})},
                        {"exact", trace.exact},
                        {"rounds", rounds}};
            std::cout << out.dump(2) << '\n';
            return all_ok ? kExitPass : kExitFailed;
        }

        if (osample->parsed()) {
            const auto spec = parse_spec(energies);
            const auto s = oracle::sample_reachable(spec, {beta}, count, seed);
            json out = {{"config", config_json("oracle sample", {{"energies", energies},
                                                                 {"beta", beta},
                                                                 {"count", count},
                                                                 {"seed", seed}})},
                        {"inside", s.inside},
                        {"count", s.count},
                        {"worst_gap", s.worst_gap},
                        {"max_marginal_asymmetry", s.max_marginal_asymmetry}};
            std::cout << out.dump(2) << '\n';
            return s.inside == s.count ? kExitPass : kExitFailed;
        }

        if (ocross->parsed()) {
            const auto spec = parse_spec(energies);
            const auto rep = oracle::cross_method_check(spec, {beta}, {beta_prime});
            json methods = json::array();
            for (const auto& m : rep.methods)
                methods.push_back({{"method", m.method},
                                   {"built", m.built},
                                   {"pass", m.pass},
                                   {"deviation", m.deviation},
                                   {"delta_e", m.delta_e},
                                   {"delta_i", m.delta_i},
                                   {"error", m.error}});
            json out = {{"config", config_json("oracle cross", {{"energies", energies},
                                                                {"beta", beta},
                                                                {"beta_prime", beta_prime}})},
                        {"methods", methods},
                        {"all_built_agree", rep.all_built_agree},
                        {"max_delta_e_spread", rep.max_delta_e_spread}};
            std::cout << out.dump(2) << '\n';
            return rep.all_built_agree ? kExitPass : kExitFailed;
        }

        if (lall->parsed()) {
            if (emit_grid_csv) {
                std::cout << std::setprecision(17)
                          << "seed,d,beta,beta_prime,cond_i,cond_ii_strong,cond_ii_weak\n";
                for (int cell = 0; cell < 10; ++cell) {
                    const int d = 2 + cell / 2;
                    const bool decreasing = cell % 2;
                    std::mt19937_64 gen(2000 + cell);
                    std::uniform_real_distribution<double> gap(0.05, 4.0), bu(0.05, 4.0),
                        shrink(0.05, 1.0);
                    for (int s2 = 0; s2 < samples; ++s2) {
                        std::vector<double> levels{0.0, 1.0};
                        double g = 1.0;
                        for (int i = 2; i < d; ++i) {
                            g = decreasing ? g * shrink(gen) : gap(gen);
                            levels.push_back(levels.back() + g);
                        }
                        const auto spec2 = EnergySpectrum::from_levels(levels);
                        double b1 = bu(gen), b2 = bu(gen);
                        if (b1 < b2) std::swap(b1, b2);
                        const auto cond = stu_norm::check_conditions(spec2, {b1}, {b2});
                        std::cout << (2000 + cell) << ',' << d << ',' << b1 << ',' << b2
                                  << ',' << cond.cond_i << ',' << cond.cond_ii_strong
                                  << ',' << cond.cond_ii_weak << '\n';
                    }
                }
                return kExitPass;
            }
            const auto res = run_lemma_suite(samples, jobs);
            const long total = res.lemma2_violations + res.lemma3_violations +
                               res.lemma4_violations + res.coeff_violations;
            json out = {{"config", config_json("lemmas check-all",
                                               {{"samples", samples}, {"jobs", jobs}})},
                        {"grid_points", res.grid_points},
                        {"lemma2_violations", res.lemma2_violations},
                        {"lemma3_violations", res.lemma3_violations},
                        {"lemma4_violations", res.lemma4_violations},
                        {"coefficient_violations", res.coeff_violations},
                        {"convexity_ok", res.convexity_ok},
                        {"pass", total == 0 && res.convexity_ok}};
            std::cout << out.dump(2) << '\n';
            return (total == 0 && res.convexity_ok) ? kExitPass : kExitFailed;
        }
    } catch (const ConditionsNotMet& e) {
        std::cerr << "verified negative: " << e.what() << '\n';
        return kExitNegative;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
