#pragma once

#include "fpt/forcefield.hpp"

#include <cstddef>
#include <vector>

namespace fpt {

/// Uniform grid z_j = Z + j*step covering [Z, z_max].
struct HGrid {
    double Z = -10.0;
    double step = 1.0 / 32.0;
    double z_max = 0.0;

    /// Same spacing with Z moved left (by less than one step) so that y is a node.
    HGrid aligned_to(double y) const;
};

/// Taylor coefficients h_r(z_j), r = 1..r_max, of H(s, z) = sum_r (-s)^r h_r(z).
class HTable {
public:
    HTable(HGrid grid, std::vector<double> z, std::vector<std::vector<double>> h);

    const HGrid& grid() const { return grid_; }
    unsigned r_max() const { return static_cast<unsigned>(h_.size()); }
    std::span<const double> nodes() const { return z_; }
    std::span<const double> column(unsigned r) const;  ///< h_r at every node
    double at_node(unsigned r, std::size_t j) const { return column(r)[j]; }

    /// h_r(z): exact at nodes, monotone-cubic interpolation of log h_r between.
    /// Throws InputError for r out of range or z off the grid.
    double operator()(unsigned r, double z) const;

    /// Index of the node equal to z (to 1e-9 of a step), or npos.
    std::size_t node_index(double z) const;
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

private:
    HGrid grid_;
    std::vector<double> z_;
    std::vector<std::vector<double>> h_;
    std::vector<MonotoneCubic> log_h_;
};

/// h_1(y) = Psi(y)/psi(y).
double h1(const InvariantMeasure& measure, double y);

/// Algorithm 1: seed h_r(Z) = c_{r-1} h_1(Z)^{2r-1}, then march right with the
/// logarithmic trapezium rule for int psi * sum_k h_k h_{r-k}.
/// Throws NumericError when a convolution sum is not positive or h_1 is not finite.
HTable build_table(const ForceField& field, const InvariantMeasure& measure, const HGrid& grid,
                   unsigned r_max);

/// z -> h_r(z) for quadrature over the table.
RealFn cumulant_integrand(const HTable& table, unsigned r);

}  // namespace fpt
