#include "fpt/oracle.hpp"

#include "fpt/error.hpp"

#include <cmath>
#include <sstream>

namespace fpt {

namespace {

/// Solves a tridiagonal system in place (Thomas algorithm). `lower[0]` and
/// `upper[n-1]` are ignored.
void thomas(const std::vector<double>& lower, std::vector<double> diag,
            const std::vector<double>& upper, std::vector<double>& rhs) {
    const std::size_t n = diag.size();
    for (std::size_t i = 1; i < n; ++i) {
        const double w = lower[i] / diag[i - 1];
        diag[i] -= w * upper[i - 1];
        rhs[i] -= w * rhs[i - 1];
    }
    rhs[n - 1] /= diag[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) rhs[i] = (rhs[i] - upper[i] * rhs[i + 1]) / diag[i];
}

}  // namespace

SolutionGrid solve_pde(const ForceField& field, double y_plus, const PdeOptions& o) {
    if (!(o.dy > 0.0) || !(o.dtau > 0.0) || !(o.tau_max > 0.0) || !(o.y_min_offset > 0.0)) {
        throw InputError("solve_pde: dy, dtau, tau_max and the domain must be positive");
    }
    const auto n_cells = static_cast<std::size_t>(std::llround(o.y_min_offset / o.dy));
    if (n_cells < 4) throw InputError("solve_pde: fewer than four cells");

    SolutionGrid g;
    g.y_nodes.resize(n_cells + 1);
    for (std::size_t k = 0; k <= n_cells; ++k) {
        g.y_nodes[n_cells - k] = y_plus - static_cast<double>(k) * o.dy;
    }
    std::vector<std::size_t> probe_index;
    for (double p : o.probes) {
        const double k = (y_plus - p) / o.dy;
        const double kr = std::round(k);
        if (std::abs(k - kr) > 1e-6 || kr < 1.0 || kr >= static_cast<double>(n_cells)) {
            std::ostringstream os;
            os << "solve_pde: probe " << p << " is not an interior grid node (dy = " << o.dy << ")";
            throw InputError(os.str());
        }
        probe_index.push_back(n_cells - static_cast<std::size_t>(kr));
        g.probes.push_back(p);
    }
    g.F_probe.assign(o.probes.size(), {});
    g.f_probe.assign(o.probes.size(), {});

    // interior unknowns i = 1..n_cells-1; operator L F_i = a_i F_{i-1} + c_i F_i + e_i F_{i+1}
    const std::size_t m = n_cells - 1;
    const double inv_dy2 = 1.0 / (o.dy * o.dy);
    std::vector<double> lo(m), mid(m), up(m), drift(n_cells + 1);
    for (std::size_t k = 0; k <= n_cells; ++k) drift[k] = field.drift(g.y_nodes[k]);
    for (std::size_t i = 0; i < m; ++i) {
        const double a = drift[i + 1];
        lo[i] = inv_dy2 - 0.5 * a / o.dy;
        mid[i] = -2.0 * inv_dy2;
        up[i] = inv_dy2 + 0.5 * a / o.dy;
    }

    std::vector<double> F(n_cells + 1, 0.0);
    F[n_cells] = 1.0;

    auto density_at = [&](std::size_t k) {
        return drift[k] * (F[k + 1] - F[k - 1]) / (2.0 * o.dy) +
               (F[k + 1] - 2.0 * F[k] + F[k - 1]) * inv_dy2;
    };
    auto record = [&](double tau) {
        g.tau.push_back(tau);
        for (std::size_t p = 0; p < probe_index.size(); ++p) {
            g.F_probe[p].push_back(F[probe_index[p]]);
            g.f_probe[p].push_back(tau > 0.0 ? density_at(probe_index[p]) : 0.0);
        }
    };
    auto slice = [&](double tau) {
        g.slice_tau.push_back(tau);
        g.F.push_back(F);
        std::vector<double> f(n_cells + 1, 0.0);
        for (std::size_t k = 1; k < n_cells; ++k) f[k] = density_at(k);
        g.f.push_back(std::move(f));
    };
    record(0.0);
    if (o.slice_every) slice(0.0);

    // theta-scheme step: (I - th dt L) F^{n+1} = (I + (1-th) dt L) F^n, boundary F = 1 at top
    std::vector<double> rhs(m), d(m), l(m), u(m);
    auto step = [&](double dt, double th) {
        for (std::size_t i = 0; i < m; ++i) {
            const std::size_t k = i + 1;
            const double lf = lo[i] * F[k - 1] + mid[i] * F[k] + up[i] * F[k + 1];
            rhs[i] = F[k] + (1.0 - th) * dt * lf;
            l[i] = -th * dt * lo[i];
            d[i] = 1.0 - th * dt * mid[i];
            u[i] = -th * dt * up[i];
        }
        rhs[m - 1] -= u[m - 1] * 1.0;  // F at y_plus
        thomas(l, d, u, rhs);
        for (std::size_t i = 0; i < m; ++i) F[i + 1] = rhs[i];
    };

    double tau = 0.0;
    double dt = o.dtau;
    std::size_t n = 0;
    while (tau < o.tau_max - 1e-12) {
        if (tau >= o.tau_grow) dt = std::min(dt * o.growth, o.dtau_max);
        dt = std::min(dt, o.tau_max - tau);
        if (n < o.rannacher_steps) {
            step(0.5 * dt, 1.0);
            step(0.5 * dt, 1.0);
        } else {
            step(dt, 0.5);
        }
        tau += dt;
        ++n;
        for (double v : F) {
            if (v < -1e-6 || v > 1.0 + 1e-6 || !std::isfinite(v)) {
                std::ostringstream os;
                os << "solve_pde: F = " << v << " left [0, 1] at tau = " << tau
                   << "; reduce dtau or dy";
                throw NumericError(os.str());
            }
        }
        record(tau);
        if (o.slice_every && n % o.slice_every == 0) slice(tau);
    }
    return g;
}

}  // namespace fpt
