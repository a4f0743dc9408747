#include "fpt/decay.hpp"

#include "fpt/error.hpp"
#include "fpt/oupcf.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace fpt {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

template <class Correction>
std::vector<AccelTerm> accelerate(std::span<const double> x, Correction correction) {
    std::vector<AccelTerm> out;
    // x[i] is x_{i+1}; the first term needs x_1, x_2, x_3
    for (std::size_t i = 2; i < x.size(); ++i) {
        const double d_prev = x[i - 1] - x[i - 2];
        const double d = x[i] - x[i - 1];
        AccelTerm t;
        t.r = static_cast<unsigned>(i + 1);
        if (std::abs(d_prev - d) < 1e3 * kEps * std::abs(x[i])) {
            t.stable = false;
            t.value = std::numeric_limits<double>::quiet_NaN();
        } else {
            t.value = x[i] + correction(d_prev, d) / (d_prev - d);
        }
        out.push_back(t);
    }
    return out;
}

}  // namespace

std::vector<double> ratio_sequence(const HTable& table, double y_plus) {
    const auto j = table.node_index(y_plus);
    if (j == HTable::npos) {
        std::ostringstream os;
        os << "ratio_sequence: y_plus = " << y_plus << " is not a node of the table";
        throw InputError(os.str());
    }
    std::vector<double> x;
    for (unsigned r = 1; r < table.r_max(); ++r) {
        x.push_back(table.at_node(r, j) / table.at_node(r + 1, j));
    }
    return x;
}

std::vector<AccelTerm> aitken_A0(std::span<const double> x) {
    return accelerate(x, [](double, double d) { return d * d; });
}

std::vector<AccelTerm> aitken_A1(std::span<const double> x) {
    return accelerate(x, [](double d_prev, double d) { return d * (d + d_prev); });
}

DecayEstimate estimate_lambda(const HTable& table, double y_plus) {
    DecayEstimate e;
    e.y_plus = y_plus;
    e.x = ratio_sequence(table, y_plus);
    for (std::size_t i = 1; i < e.x.size(); ++i) e.delta.push_back(e.x[i] - e.x[i - 1]);
    e.a0 = aitken_A0(e.x);
    e.a1 = aitken_A1(e.x);
    for (const auto& t : e.a1) {
        if (t.stable) {
            e.lambda = t.value;
            return e;
        }
    }
    e.fallback = true;
    e.lambda = e.x.back();
    return e;
}

DecayEstimate estimate_lambda(const ForceField& field, const InvariantMeasure& measure,
                              double y_plus, const EstimateOptions& options) {
    if (options.r_max < 4) throw InputError("estimate_lambda: r_max must be at least 4");
    HGrid grid{options.Z, options.step, y_plus};
    if (!(y_plus > grid.Z)) throw InputError("estimate_lambda: barrier must lie right of Z");
    const auto table = build_table(field, measure, grid.aligned_to(y_plus), options.r_max);
    return estimate_lambda(table, y_plus);
}

double lambda_asymptotic(const ForceField& field, const InvariantMeasure& measure,
                         double y_plus, AsymptoticSide side) {
    if (side == AsymptoticSide::kFarLeft) {
        const double m = measure.mills(y_plus);
        return 1.0 / (4.0 * m * m);
    }
    return -field.drift_from_below(y_plus) * measure.psi(y_plus);
}

ExactLambda lambda_exact(const BuiltinParams& p, double y_plus) {
    switch (p.kind) {
        case BuiltinKind::kOu:
            return {rightmost_zero(y_plus), "zero of s -> D_s(y_plus)"};
        case BuiltinKind::kAbm:
            return {0.25 * p.mu * p.mu, "mu^2/4 for every barrier"};
        case BuiltinKind::kDryFriction: {
            const double mu = p.mu;
            if (y_plus * mu <= 1.0) return {0.25 * mu * mu, "branch point mu^2/4"};
            // w = sqrt(mu^2 + 4s) solves w/mu - 1 + exp(-w y_plus) = 0 on (0, mu)
            auto g = [mu, y_plus](double w) { return w / mu - 1.0 + std::exp(-w * y_plus); };
            const double w_min = std::log(mu * y_plus) / y_plus;
            const double w = bisect(g, w_min, mu, 1e-15, 1e-15);
            return {0.25 * (mu * mu - w * w), "simple pole"};
        }
        case BuiltinKind::kTanh: {
            const double a = p.tanh_amplitude();
            const double g = p.gamma;
            if (std::abs(y_plus) > 1e-12) {
                return {std::nullopt, "no polynomial eigenvalue available for y_plus != 0"};
            }
            if (!(a > g)) return {std::nullopt, "no polynomial eigenvalue available (a <= gamma)"};
            return {g * (a - g), "Romanovski n = 1, P_1(w) = w"};
        }
    }
    return {std::nullopt, "unknown model"};
}

std::vector<double> tanh_eigenvalue_ladder(double amplitude, double gamma, unsigned n_max) {
    std::vector<double> out;
    double lambda = gamma * (amplitude - gamma);
    for (unsigned n = 1; n <= n_max; ++n) {
        out.push_back(lambda);
        lambda += gamma * (amplitude - gamma) - 2.0 * gamma * gamma * n;
    }
    return out;
}

}  // namespace fpt
