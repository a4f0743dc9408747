#pragma once

#include "fpt/model_spec.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace fpt::cli {

/// Everything a command needs; serializes to JSON and back without loss.
struct RunConfig {
    std::string command;
    std::string oracle = "pde";  ///< pde | tree | mc
    ModelSpec model;
    std::string out;     ///< empty: stdout
    std::string report;  ///< validate: JSON report path, empty: stdout
    std::uint64_t seed = 1;

    double barrier = 0.0;
    double start = -1.0;
    std::vector<double> barriers{-1.0, 0.0, 1.0, 2.0};
    std::vector<double> offsets{1.0, 2.0, 4.0};
    std::string sweep;  ///< "lo:hi:n"

    unsigned rmax = 4;
    double Z = -10.0;
    double step = 1.0 / 32.0;
    bool exact = false;

    double tmax = 10.0;
    unsigned n = 200;
    bool validate = false;
    std::optional<double> theta;
    std::optional<double> lambda;

    double dy = 1.0 / 200.0;
    double dtau = 1e-3;
    std::size_t paths = 100000;
    double dt = 1e-3;
    bool bridge = true;

    double s = 0.5;
    double y = 0.0;
    bool zero = false;

    std::string regime;
    unsigned terms = 1;

    bool operator==(const RunConfig& other) const;
};

std::string to_json(const RunConfig& config);
/// Throws InputError on malformed input; missing keys keep their defaults.
RunConfig parse_run_config(const std::string& json_text);

struct Sweep {
    double lo = 0.0;
    double hi = 0.0;
    unsigned n = 1;
};
/// "lo:hi:n" with n >= 2; throws InputError otherwise.
Sweep parse_sweep(const std::string& text);

}  // namespace fpt::cli
