#pragma once

#include "fpt/forcefield.hpp"
#include "fpt/hseries.hpp"

#include <optional>
#include <string>
#include <vector>

namespace fpt {

/// One entry of an accelerated sequence. `r` is the index of the last ratio
/// used; unstable entries (near-zero denominator) carry NaN.
struct AccelTerm {
    unsigned r = 0;
    double value = 0.0;
    bool stable = true;
};

struct DecayEstimate {
    double y_plus = 0.0;
    std::vector<double> x;      ///< x_r = h_r/h_{r+1}, r = 1..r_max-1 (x[0] is x_1)
    std::vector<double> delta;  ///< delta_r = x_r - x_{r-1}, r = 2..r_max-1
    std::vector<AccelTerm> a0;
    std::vector<AccelTerm> a1;
    double lambda = 0.0;
    /// True when no stable A1 term existed and lambda is the last raw ratio.
    bool fallback = false;
};

/// x_r = h_r(y_plus)/h_{r+1}(y_plus). Throws InputError when y_plus is off the grid.
std::vector<double> ratio_sequence(const HTable& table, double y_plus);

/// x_r + delta_r^2/(delta_{r-1} - delta_r).
std::vector<AccelTerm> aitken_A0(std::span<const double> x);
/// x_r + delta_r (delta_r + delta_{r-1})/(delta_{r-1} - delta_r).
std::vector<AccelTerm> aitken_A1(std::span<const double> x);

struct EstimateOptions {
    unsigned r_max = 4;
    double Z = -10.0;
    double step = 1.0 / 32.0;
};

/// Algorithm 1 at one barrier: builds the table on a grid with y_plus as a node,
/// takes the first stable A1 term.
DecayEstimate estimate_lambda(const ForceField& field, const InvariantMeasure& measure,
                              double y_plus, const EstimateOptions& options = {});

/// Same, reusing a table that already has y_plus as a node.
DecayEstimate estimate_lambda(const HTable& table, double y_plus);

enum class AsymptoticSide { kFarLeft, kFarRight };

/// far_left: psi^2/(4 Psi^2) at y_plus; far_right: -A(y_plus) psi(y_plus).
double lambda_asymptotic(const ForceField& field, const InvariantMeasure& measure,
                         double y_plus, AsymptoticSide side);

struct ExactLambda {
    std::optional<double> value;
    std::string note;
};

/// Exact decay rates of the built-in models. Throws NumericError when a
/// bracket cannot be found.
ExactLambda lambda_exact(const BuiltinParams& params, double y_plus);

/// lambda_{n+1} = lambda_n + gamma(a - gamma) - 2 gamma^2 n, starting at
/// lambda_1 = gamma(a - gamma), for A = -a tanh(gamma y); n_max entries.
std::vector<double> tanh_eigenvalue_ladder(double amplitude, double gamma, unsigned n_max);

}  // namespace fpt
