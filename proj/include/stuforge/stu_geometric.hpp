// stu_geometric.hpp - the geometric route: reduced coordinates, the
// reachable-marginal polytope, LP membership certificates, thermal-curve
// convex coefficients, explicit boundary-vertex constructions for d = 3, 4,
// the general builder, and the recursive d = 5 region check.
#pragma once

#include "stuforge/block_unitary.hpp"
#include "stuforge/common.hpp"
#include "stuforge/simplex.hpp"
#include "stuforge/spectra.hpp"

#include <optional>
#include <string>
#include <vector>

namespace stuforge::stu_geometric {

// x_n = (n+1) p_{n+1} - sum_{i<=n} p_i for n = 0..d-2; the last coordinate
// -1 is implied by normalization.
Vec to_coords(const Vec& p);
// Inverse map; throws InvalidPreimage when the preimage has negative entries.
Vec from_coords(const Vec& x);

struct LabeledVertex {
    Vec coords;               // reduced coordinates, length d-1
    std::vector<int> labels;  // permutation index per subspace (q, r_1..r_k)
};

struct PolytopeVertexSet {
    int d = 0;
    std::vector<LabeledVertex> vertices;  // deduplicated
    int raw_count = 0;                    // before dedup
};

// All (d!)^{k+1} labeled points Pi^(i0) q + sum c_n (1+Pi^n) Pi^(in) r_n,
// deduplicated at 1e-12. Exhaustive enumeration is limited to d <= 4 unless
// force is set (d = 5 costs (5!)^3 ~ 1.7M points).
PolytopeVertexSet vertex_set(const spectra::EnergySpectrum& spec,
                             spectra::InverseTemperature beta, bool force = false);

struct MembershipCertificate {
    bool feasible = false;
    std::vector<double> weights;  // over the vertex list when feasible
    double reconstruction_error = 0.0;
    double infeasibility_gap = 0.0;
};

MembershipCertificate hull_membership(const Vec& point_coords,
                                      const PolytopeVertexSet& vertices);

// a_i >= 0 with sum 1 expressing p(beta') over the curve vertices
// v_0..v_{d-1}; throws DegenerateCoordinate when some x_i(beta) = 0.
struct CurveCoefficients {
    std::vector<double> a;
    double sum() const;
};

CurveCoefficients curve_coefficients(const spectra::EnergySpectrum& spec,
                                     spectra::InverseTemperature beta,
                                     spectra::InverseTemperature beta_prime);

// Analytic first derivatives of the reduced coordinates along the thermal
// curve: dx_n/dbeta = -f_n(beta)/Z^2 (closed forms for d = 3 and d = 4).
Vec coordinate_rate_functions(const spectra::EnergySpectrum& spec, double beta);
Vec coordinate_rate_derivatives(const spectra::EnergySpectrum& spec, double beta);

struct ConvexityReport {
    bool analytic_matches_fd = false;   // 1e-6 relative agreement
    double max_rel_error = 0.0;
    bool first_derivative_signs = false;   // dy/dx >= 0 etc.
    bool second_derivative_signs = false;  // convexity combinations >= 0
    int samples = 0;
};

ConvexityReport convexity_certify(const spectra::EnergySpectrum& spec, double beta_lo,
                                  double beta_hi, int samples = 64);

// A per-subspace doubly stochastic recipe for one reachable point.
struct VertexConstruction {
    Mat mq;
    std::vector<Mat> mr;  // i = 1..k
};

// Constructions for the curve vertices v_0..v_{d-1} (d in {2,3,4}; d=5 via
// the recursive route when the region checks pass).
std::vector<VertexConstruction> curve_vertex_constructions(
    const spectra::EnergySpectrum& spec, spectra::InverseTemperature beta);

// The d in {3,4} boundary-vertex blocks (one per v_1..v_{d-2}).
std::vector<block_unitary::BlockUnitary> reach_boundary_vertices(
    const spectra::EnergySpectrum& spec, spectra::InverseTemperature beta);

// Sign data backing the d=4 five-point construction.
struct QuartSignChecks {
    double x_b = 0.0;      // >= 0
    double x_c = 0.0;      // >= 0
    double y_d = 0.0;      // >= 0
    double x_e = 0.0;      // <= 0
    double cross_aoe = 0.0;  // (AO x AE)_z >= 0
    double cross_eod = 0.0;  // (EO x ED)_z >= 0
    double cross_doc = 0.0;  // (DO x DC)_z >= 0
    bool all_hold = false;
};

QuartSignChecks quart_sign_checks(const spectra::EnergySpectrum& spec,
                                  spectra::InverseTemperature beta);

block_unitary::BlockUnitary build_stu_geometric(const spectra::EnergySpectrum& spec,
                                                spectra::InverseTemperature beta,
                                                spectra::InverseTemperature beta_prime);

// d = 5 recursive region check and conditional construction.
struct D5VertexStatus {
    std::string name;        // "v1", "v2", "v3"
    bool condition_ok = false;   // the closed-form inequality for this vertex
    bool constructible = false;  // full majorisation feasibility
    std::string detail;
};

struct D5Report {
    double a2 = 0.0;  // max{0, (p0-p1)(1/2 - p0 - p1)}
    bool ratio1_ok = false;       // (p0-p1)(1/2-p0-p1) <= p0 p1 - p2 p3
    bool ratio2_ok = false;       // (p0-p1)(1/2-p0-p1) <= p4 (p0 - p3)
    bool lastappcond_ok = false;  // a1 bound
    bool reld5d4_ok = false;      // v2 inequality
    bool proofd5last_ok = false;  // v3 inequality
    bool suff_v2_ok = false;      // p0+p1+p2 >= 2/3
    bool suff_v3_ok = false;      // p0+p2+p3 >= 3/4
    std::vector<D5VertexStatus> vertices;
    bool region_verified = false;  // all three vertices constructible
    // present when region_verified and a beta' was requested
    std::optional<block_unitary::StuReport> stu;
};

D5Report d5_region_check(const spectra::EnergySpectrum& spec,
                         spectra::InverseTemperature beta,
                         std::optional<spectra::InverseTemperature> beta_prime = {});

}  // namespace stuforge::stu_geometric
