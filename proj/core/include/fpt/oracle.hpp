#pragma once

#include "fpt/forcefield.hpp"

#include <cstdint>
#include <limits>
#include <vector>

namespace fpt {

/// Crank-Nicolson solution of F_tau = A F_y + F_yy on [y_min, y_plus] with
/// F(., y_plus) = 1, F(., y_min) = 0, F(0, y < y_plus) = 0.
struct PdeOptions {
    double y_min_offset = 12.0;  ///< y_min = y_plus - offset
    double dy = 1.0 / 200.0;
    double dtau = 1e-3;
    double tau_max = 10.0;
    /// After tau_grow the step is multiplied by `growth` each step, up to dtau_max.
    double tau_grow = std::numeric_limits<double>::infinity();
    double growth = 1.0;
    double dtau_max = 0.05;
    unsigned rannacher_steps = 2;  ///< leading CN steps replaced by 2x implicit half-steps
    std::vector<double> probes;    ///< starts recorded at every step; must be grid nodes
    unsigned slice_every = 0;      ///< store full F, f slices every n steps (0: none)
};

struct SolutionGrid {
    std::vector<double> y_nodes;      ///< ascending, last node is y_plus
    std::vector<double> tau;          ///< step end times (tau[0] = 0)
    std::vector<double> probes;
    std::vector<std::vector<double>> F_probe;  ///< [probe][step]
    std::vector<std::vector<double>> f_probe;  ///< [probe][step], f = A F_y + F_yy
    std::vector<double> slice_tau;
    std::vector<std::vector<double>> F;  ///< [slice][node]
    std::vector<std::vector<double>> f;  ///< [slice][node]
};

/// Throws InputError for bad grids or off-grid probes, NumericError when F
/// leaves [-1e-6, 1 + 1e-6].
SolutionGrid solve_pde(const ForceField& field, double y_plus, const PdeOptions& options);

/// Trinomial forward induction with the barrier on a lattice node.
struct TreeResult {
    double dy = 0.0;
    std::vector<double> tau;       ///< step end times
    std::vector<double> absorbed;  ///< mass absorbed during each step
    std::vector<double> F;         ///< cumulative absorbed mass
};

/// Throws InputError when a branch probability leaves [0, 1].
TreeResult solve_tree(const ForceField& field, double y_plus, double y0, double dtau,
                      double tau_max, double y_min_offset = 12.0);

struct McOptions {
    double dt = 1e-3;
    std::size_t n_paths = 100000;
    double tau_max = 50.0;
    bool bridge = true;
    std::uint64_t seed = 1;
    unsigned threads = 0;  ///< 0: hardware concurrency
};

struct McResult {
    std::vector<double> samples;  ///< hitting times, in path order
    std::size_t censored = 0;     ///< paths still alive at tau_max
    double dt = 0.0;
    std::size_t n_paths = 0;
};

/// Euler-Maruyama paths of dY = A dtau + sqrt(2) dW with an optional Brownian
/// bridge crossing test. Paths are simulated in fixed chunks, each seeded from
/// (seed, chunk index), so results do not depend on the thread count.
McResult simulate(const ForceField& field, double y_plus, double y0, const McOptions& options);

/// Kolmogorov distance between the empirical CDF of `samples` (out of n_total
/// paths) and a CDF given on an increasing tau grid (linear interpolation).
double kolmogorov_distance(std::vector<double> samples, std::size_t n_total,
                           const std::vector<double>& tau, const std::vector<double>& cdf);

}  // namespace fpt
