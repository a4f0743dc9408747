#pragma once

#include "fpt/forcefield.hpp"
#include "fpt/hseries.hpp"

#include <string_view>
#include <vector>

namespace fpt {

/// Cumulants of the first-passage time from y0 to y_plus in dimensionless time;
/// divide kappa_r by time_scale^r for physical time.
struct CumulantSet {
    double y0 = 0.0;
    double y_plus = 0.0;
    std::vector<double> kappa;  ///< kappa[0] is the mean
    double time_scale = 1.0;
    double mean_direct = 0.0;   ///< int Psi/psi, independent of the table

    double mean() const { return kappa.at(0); }
    double variance() const { return kappa.at(1); }
    double skewness() const;
    double in_time(unsigned r) const;  ///< kappa_r / time_scale^r
};

/// kappa_r = r! * int_{y0}^{y_plus} h_r(z) dz over the interpolated table.
/// Throws InputError unless Z <= y0 <= y_plus <= last node and r_max <= table.r_max().
CumulantSet cumulants(const HTable& table, const InvariantMeasure& measure, double y0,
                      double y_plus, unsigned r_max, double time_scale = 1.0);

enum class OuMeanRegime { kLowReversion, kSubThreshold, kSupraThreshold, kMedial };
std::string_view to_string(OuMeanRegime r);
OuMeanRegime parse_ou_mean_regime(std::string_view name);

/// Asymptotic forms of the OU mean hitting time. `terms` counts the leading
/// term; divergent sums stop early at their smallest term. Warns when the
/// geometry does not fit the regime.
double ou_mean_regime(double y0, double y_plus, OuMeanRegime regime, unsigned terms = 1);

/// int_{y0}^{y_plus} Phi/phi by quadrature: the exact OU mean.
double ou_mean_exact(double y0, double y_plus);

}  // namespace fpt
