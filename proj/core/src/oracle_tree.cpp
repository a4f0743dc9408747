#include "fpt/oracle.hpp"

#include "fpt/error.hpp"

#include <cmath>
#include <sstream>

namespace fpt {

TreeResult solve_tree(const ForceField& field, double y_plus, double y0, double dtau,
                      double tau_max, double y_min_offset) {
    if (!(y0 < y_plus)) throw InputError("solve_tree: the start must lie below the barrier");
    if (!(dtau > 0.0) || !(tau_max > 0.0)) throw InputError("solve_tree: dtau, tau_max > 0");
    const double b = y_plus - y0;
    const double v = 2.0 * dtau;
    const double levels = std::ceil(b / std::sqrt(3.0 * v));
    const double dy = b / levels;
    const auto start = static_cast<std::size_t>(levels);
    const auto depth = std::max<std::size_t>(
        start + 2, static_cast<std::size_t>(std::ceil((b + y_min_offset) / dy)));

    // node k sits at y_plus - k dy; k = 0 is the absorbing barrier
    std::vector<double> pu(depth + 1), pm(depth + 1), pd(depth + 1);
    for (std::size_t k = 1; k <= depth; ++k) {
        const double y = y_plus - static_cast<double>(k) * dy;
        const double mean = field.drift(y) * dtau;
        const double second = (v + mean * mean) / (dy * dy);
        pu[k] = 0.5 * second + 0.5 * mean / dy;
        pd[k] = 0.5 * second - 0.5 * mean / dy;
        pm[k] = 1.0 - second;
        if (pu[k] < 0.0 || pd[k] < 0.0 || pm[k] < 0.0) {
            std::ostringstream os;
            os << "solve_tree: branch probability out of range at y = " << y
               << "; use a smaller dtau";
            throw InputError(os.str());
        }
    }

    TreeResult out;
    out.dy = dy;
    std::vector<double> p(depth + 2, 0.0);
    std::vector<double> next(depth + 2, 0.0);
    p[start] = 1.0;
    const auto steps = static_cast<std::size_t>(std::ceil(tau_max / dtau - 1e-9));
    double total = 0.0;
    for (std::size_t n = 1; n <= steps; ++n) {
        std::fill(next.begin(), next.end(), 0.0);
        for (std::size_t k = 1; k <= depth; ++k) {
            if (p[k] == 0.0) continue;
            next[k - 1] += pu[k] * p[k];
            next[k] += pm[k] * p[k];
            if (k < depth) next[k + 1] += pd[k] * p[k];  // mass leaving the bottom is dropped
        }
        const double hit = next[0];
        next[0] = 0.0;
        std::swap(p, next);
        total += hit;
        out.tau.push_back(static_cast<double>(n) * dtau);
        out.absorbed.push_back(hit);
        out.F.push_back(total);
    }
    return out;
}

}  // namespace fpt
