#pragma once

#include "fpt/forcefield.hpp"

#include <optional>
#include <string>
#include <vector>

namespace fpt::cli {

struct ValidationOptions {
    std::optional<double> tau_max;  ///< default 12/lambda
    double dy = 1.0 / 200.0;
    double dtau = 1e-3;
    std::optional<double> theta;
    std::optional<double> lambda;
    std::size_t max_curve_points = 800;
};

/// Formula density against the PDE oracle at one (barrier, start) pair.
/// A failure inside the case is recorded in `error` instead of thrown.
struct ValidationCase {
    double y_plus = 0.0;
    double y0 = 0.0;
    double tau_max = 0.0;
    double lambda = 0.0;
    double theta = 0.0;
    double nu = 0.0;
    double rho = 0.0;
    std::string lambda_source;
    double l1 = 0.0;
    double sup = 0.0;
    double tail_slope = 0.0;        ///< fitted -d ln f_pde/d tau on the tail window
    double tail_slope_error = 0.0;  ///< |tail_slope - lambda| / lambda
    double normalization_residual = 0.0;
    std::string error;

    std::vector<double> tau;  ///< thinned curve for CSV output
    std::vector<double> f_formula;
    std::vector<double> f_pde;
};

ValidationCase validate_case(const Model& model, double y_plus, double y0,
                             const ValidationOptions& options = {});

/// Least-squares slope of ln f over the samples with tau in [lo, hi] and f > 0.
double log_slope(const std::vector<double>& tau, const std::vector<double>& f, double lo,
                 double hi);

}  // namespace fpt::cli
