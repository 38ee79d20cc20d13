// stu_majorised.hpp - the d=3 majorised-marginals route: companion matrices
// for M(1+Pi) = (1+Pi)M~, the constructive reach of any majorised marginal,
// and the d=4 infeasibility certificates that block the generalisation.
#pragma once

#include "stuforge/block_unitary.hpp"
#include "stuforge/common.hpp"
#include "stuforge/simplex.hpp"
#include "stuforge/spectra.hpp"

#include <array>
#include <vector>

namespace stuforge::stu_majorised {

// The six 3x3 permutations in the fixed ordering used throughout:
// 1 = identity, 2 = swap(1,2), 3 = Pi^2, 4 = swap(0,2), 5 = Pi, 6 = swap(0,1).
const std::array<Mat, 6>& permutations_d3();

struct CompanionResult {
    Mat companion;    // M~ with M (1+Pi) = (1+Pi) M~
    double residual;  // || M(1+Pi) - (1+Pi)M~ ||_max
};

// Birkhoff-decomposes M over the six permutations and remaps the anticyclic
// components 6 -> 2, 2 -> 4, 4 -> 6 (cyclic ones commute and stay put).
CompanionResult companion_matrix_d3(const Mat& m);

// Blocks reaching both marginals = target for any target majorised by
// thermal(beta): M_q = HLP(p -> target), M_r from the companion relation,
// each block Horn-lifted on its subspace vector.
block_unitary::BlockUnitary reach_majorised_marginal_d3(
    const spectra::EnergySpectrum& spec, spectra::InverseTemperature beta,
    const Vec& target);

struct CounterexampleReport {
    // matrix relation: no doubly stochastic M~ with M(1+Pi) = (1+Pi)M~ for the
    // fixed 4x4 permutation M
    bool matrix_infeasible = false;
    double matrix_gap = 0.0;
    // vector relaxation at v = (1,0,0,0) is infeasible too
    bool vector_infeasible = false;
    double vector_gap = 0.0;
    // controls: identity and Pi admit companions
    bool identity_feasible = false;
    bool cyclic_feasible = false;
};

// The 4x4 permutation the infeasibility certificates are built around.
Mat counterexample_matrix_d4();

// Phase-1 LP feasibility of the companion equations in d=4; optional row
// shuffle seed re-orders the equality constraints (certificates must be
// order-independent).
CounterexampleReport counterexamples_d4(unsigned shuffle_seed = 0);

// Feasibility of M~ >= 0 doubly stochastic with M(1+Pi) = (1+Pi)M~ in d=4.
simplex::Feasibility companion_feasibility_d4(const Mat& m, unsigned shuffle_seed = 0);

}  // namespace stuforge::stu_majorised
