// common.hpp - shared aliases, error types, and tolerance handling
#pragma once

#include <Eigen/Dense>

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace stuforge {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Verification tolerance, honoring the STUFORGE_TOL environment override.
inline double default_tol() {
    if (const char* s = std::getenv("STUFORGE_TOL")) {
        char* end = nullptr;
        const double v = std::strtod(s, &end);
        if (end != s && v > 0.0) return v;
    }
    return 1e-9;
}

struct LengthMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct SumMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct NotMajorised : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct NotDoublyStochastic : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct NotLatinSquare : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct DimensionMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct OutOfRange : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct InvalidPreimage : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct ConditionsNotMet : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct CompanionFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct UnsupportedDimension : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct DegenerateCoordinate : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct TooLarge : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct SignCheckFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InvalidBudget : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct DimensionBudgetExceeded : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct StepUnbuildable : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// d x d cyclic permutation, (Pi)_{ij} = delta_{i, j+1 mod d}; Pi^power.
Mat cyclic_permutation(int d, int power);

// Uniform circulant (1/d) sum_j Pi^j; maps any nonnegative vector to the
// uniform vector carrying the same 1-norm.
Mat uniform_circulant(int d);

inline double linf(const Vec& a, const Vec& b) {
    return (a - b).lpNorm<Eigen::Infinity>();
}

}  // namespace stuforge
