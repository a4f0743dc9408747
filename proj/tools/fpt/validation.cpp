#include "fpt/validation.hpp"

#include "fpt/density.hpp"
#include "fpt/error.hpp"
#include "fpt/oracle.hpp"

#include <algorithm>
#include <cmath>

namespace fpt::cli {

double log_slope(const std::vector<double>& tau, const std::vector<double>& f, double lo,
                 double hi) {
    double n = 0.0, sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < tau.size(); ++i) {
        if (tau[i] < lo || tau[i] > hi || !(f[i] > 0.0)) continue;
        const double y = std::log(f[i]);
        n += 1.0;
        sx += tau[i];
        sy += y;
        sxx += tau[i] * tau[i];
        sxy += tau[i] * y;
    }
    if (n < 3.0) throw NumericError("log_slope: fewer than three positive samples in the window");
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

ValidationCase validate_case(const Model& model, double y_plus, double y0,
                             const ValidationOptions& o) {
    ValidationCase c;
    c.y_plus = y_plus;
    c.y0 = y0;
    try {
        const auto dm = make_density_model(model, y0, y_plus, {.theta = o.theta, .lambda = o.lambda});
        c.lambda = dm.lambda;
        c.theta = dm.theta;
        c.nu = dm.nu;
        c.rho = dm.rho;
        c.lambda_source = dm.lambda_source;
        c.normalization_residual = dm.normalization_residual;
        c.tau_max = o.tau_max.value_or(12.0 / dm.lambda);

        PdeOptions po;
        po.dy = o.dy;
        po.dtau = o.dtau;
        po.tau_max = c.tau_max;
        po.y_min_offset = std::max(12.0, 3.0 * (y_plus - y0));
        po.tau_grow = 1.0;
        po.growth = 1.002;
        po.dtau_max = std::max(o.dtau, std::min(0.05, c.tau_max / 2000.0));
        po.probes = {y0};
        const auto pde = solve_pde(model.field, y_plus, po);
        const auto& tau = pde.tau;
        const auto& fp = pde.f_probe[0];

        std::vector<double> ff(tau.size(), 0.0);
        for (std::size_t i = 1; i < tau.size(); ++i) ff[i] = eval_density(dm, tau[i]);

        for (std::size_t i = 0; i < tau.size(); ++i) {
            const double d = std::abs(ff[i] - fp[i]);
            c.sup = std::max(c.sup, d);
            if (i > 0) {
                c.l1 += 0.5 * (tau[i] - tau[i - 1]) * (d + std::abs(ff[i - 1] - fp[i - 1]));
            }
        }
        const double hi = std::min(c.tau_max, 12.0 / dm.lambda);
        const double lo = std::min(8.0 / dm.lambda, 2.0 * hi / 3.0);
        c.tail_slope = -log_slope(tau, fp, lo, hi);
        c.tail_slope_error = std::abs(c.tail_slope - dm.lambda) / dm.lambda;

        const std::size_t stride = std::max<std::size_t>(1, tau.size() / o.max_curve_points);
        for (std::size_t i = 0; i < tau.size(); i += stride) {
            c.tau.push_back(tau[i]);
            c.f_formula.push_back(ff[i]);
            c.f_pde.push_back(fp[i]);
        }
    } catch (const Error& e) {
        c.error = e.what();
    }
    return c;
}

}  // namespace fpt::cli
