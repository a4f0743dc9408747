#pragma once

#include "fpt/forcefield.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace fpt {

/// Declarative description of a model, as read from a JSON document:
///
///   {"type": "builtin", "name": "dry_friction", "mu": 1}
///   {"type": "builtin", "name": "tanh", "alpha": 2, "gamma": 1, "form": "alpha_over_gamma"}
///   {"type": "table", "y": [...], "A": [...]}
///   {"type": "expr", "drift": "-y^3 - y", "drift_prime": "-3*y^2 - 1", "kinks": []}
///   {"type": "sde", "mu_x": "-x", "sigma_x": "0.5", "x_lo": -8, "x_hi": 8, "x_ref": 0}
///
/// Every form accepts an optional "kappa" (default 1) and "label".
struct ModelSpec {
    std::string type = "builtin";
    std::string label;
    double kappa = 1.0;

    BuiltinParams builtin;

    std::vector<double> table_y;
    std::vector<double> table_a;

    std::string drift;
    std::string drift_prime;
    std::vector<double> kinks;

    std::string mu_x;
    std::string sigma_x;
    std::string sigma_x_prime;
    double x_lo = -10.0;
    double x_hi = 10.0;
    double x_ref = 0.0;
};

ModelSpec builtin_spec(BuiltinKind kind, double mu = 1.0, double alpha = 2.0, double gamma = 1.0);

/// Throws InputError on malformed JSON, unknown types or missing fields.
ModelSpec parse_model_spec(std::string_view json_text);
std::string to_json(const ModelSpec& spec);

Model build_model(const ModelSpec& spec);

}  // namespace fpt
