#include "fpt/hseries.hpp"

#include "fpt/error.hpp"

#include <cmath>
#include <sstream>

namespace fpt {

HGrid HGrid::aligned_to(double y) const {
    HGrid g = *this;
    const double n = std::ceil((y - Z) / step - 1e-9);
    g.Z = y - n * step;
    g.z_max = std::max(z_max, y);
    return g;
}

HTable::HTable(HGrid grid, std::vector<double> z, std::vector<std::vector<double>> h)
    : grid_(grid), z_(std::move(z)), h_(std::move(h)) {
    log_h_.reserve(h_.size());
    for (const auto& col : h_) {
        if (col.size() != z_.size()) throw InputError("HTable: column length mismatch");
        std::vector<double> logs(col.size());
        for (std::size_t j = 0; j < col.size(); ++j) logs[j] = std::log(col[j]);
        log_h_.emplace_back(z_, std::move(logs));
    }
}

std::span<const double> HTable::column(unsigned r) const {
    if (r < 1 || r > h_.size()) {
        std::ostringstream os;
        os << "HTable: r = " << r << " outside 1.." << h_.size();
        throw InputError(os.str());
    }
    return h_[r - 1];
}

double HTable::operator()(unsigned r, double z) const {
    const auto col = column(r);
    if (const auto j = node_index(z); j != npos) return col[j];
    return std::exp(log_h_[r - 1](z));
}

std::size_t HTable::node_index(double z) const {
    const double t = (z - z_.front()) / grid_.step;
    const double j = std::round(t);
    if (j < 0.0 || j >= static_cast<double>(z_.size()) || std::abs(t - j) > 1e-9) return npos;
    return static_cast<std::size_t>(j);
}

double h1(const InvariantMeasure& measure, double y) {
    const double v = measure.mills(y);
    if (!(v > 0.0) || !std::isfinite(v)) {
        const auto [lo, hi] = measure.support();
        std::ostringstream os;
        os << "h1: Psi/psi is not a positive finite number at y = " << y
           << "; psi is representable on [" << lo << ", " << hi << "]";
        throw NumericError(os.str());
    }
    return v;
}

HTable build_table(const ForceField& field, const InvariantMeasure& measure, const HGrid& grid,
                   unsigned r_max) {
    if (r_max < 2) throw InputError("build_table: r_max must be at least 2");
    if (!(grid.step > 0.0) || !(grid.z_max > grid.Z)) {
        throw InputError("build_table: need step > 0 and Z < z_max");
    }
    const auto cls = classify(field, measure, grid.z_max);
    if (cls.s_minus == Tristate::kNo) {
        warn("field '" + field.label() + "' is not in S_minus; h_r seeds may be inaccurate");
    }
    if (cls.completely_absorbing == Tristate::kNo) {
        warn("field '" + field.label() + "' is not completely absorbing; h_1 = Psi/psi assumed");
    }

    const auto n = static_cast<std::size_t>(std::ceil((grid.z_max - grid.Z) / grid.step - 1e-9));
    std::vector<double> z(n + 1);
    for (std::size_t j = 0; j <= n; ++j) z[j] = grid.Z + grid.step * static_cast<double>(j);

    std::vector<double> log_psi(z.size());
    for (std::size_t j = 0; j < z.size(); ++j) log_psi[j] = measure.log_psi(z[j]);

    std::vector<std::vector<double>> h(r_max, std::vector<double>(z.size()));
    for (std::size_t j = 0; j < z.size(); ++j) h[0][j] = h1(measure, z[j]);

    const double dz = grid.step;
    std::vector<double> conv(z.size());
    for (unsigned r = 2; r <= r_max; ++r) {
        for (std::size_t j = 0; j < z.size(); ++j) {
            double c = 0.0;
            for (unsigned k = 1; k < r; ++k) c += h[k - 1][j] * h[r - k - 1][j];
            if (!(c > 0.0) || !std::isfinite(c)) {
                std::ostringstream os;
                os << "build_table: convolution for r = " << r << " is " << c << " at z = " << z[j]
                   << " (node " << j << " of " << z.size() << ")";
                throw NumericError(os.str());
            }
            conv[j] = c;
        }
        auto& hr = h[r - 1];
        hr[0] = catalan(r - 1) * std::pow(h[0][0], 2.0 * r - 1.0);
        for (std::size_t j = 0; j + 1 < z.size(); ++j) {
            const double log_a = log_psi[j] - log_psi[j + 1];
            const double a = std::exp(log_a);
            const double dlog = std::log(conv[j + 1]) - std::log(conv[j]) - log_a;
            double increment = 0.0;
            if (std::abs(dlog) < 1e-12) {
                increment = 0.5 * dz * (conv[j + 1] + a * conv[j]);
            } else {
                increment = dz * (conv[j + 1] - a * conv[j]) / dlog;
            }
            hr[j + 1] = a * hr[j] + increment;
        }
    }
    return HTable(grid, std::move(z), std::move(h));
}

RealFn cumulant_integrand(const HTable& table, unsigned r) {
    (void)table.column(r);
    return [t = std::make_shared<const HTable>(table), r](double z) { return (*t)(r, z); };
}

}  // namespace fpt
