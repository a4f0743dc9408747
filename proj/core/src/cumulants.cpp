#include "fpt/cumulants.hpp"

#include "fpt/error.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <limits>
#include <sstream>

namespace fpt {

namespace {

/// Sum of a0 + sum_{k=1}^{terms-1} a_k, stopping before the terms start to grow.
template <class Term>
double truncated_series(double leading, unsigned terms, Term term) {
    double sum = leading;
    double previous = std::numeric_limits<double>::infinity();
    for (unsigned k = 1; k < terms; ++k) {
        const double t = term(k);
        if (std::abs(t) > previous) break;
        sum += t;
        previous = std::abs(t);
    }
    return sum;
}

double double_factorial_odd(unsigned k) {  // (2k-1)!!
    double v = 1.0;
    for (unsigned i = 1; i <= k; ++i) v *= 2.0 * i - 1.0;
    return v;
}

double fixed_gk(const RealFn& f, double a, double b) {
    if (a == b) return 0.0;
    return boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, a, b, 0);
}

}  // namespace

double CumulantSet::skewness() const { return kappa.at(2) / std::pow(kappa.at(1), 1.5); }

double CumulantSet::in_time(unsigned r) const {
    return kappa.at(r - 1) / std::pow(time_scale, static_cast<double>(r));
}

CumulantSet cumulants(const HTable& table, const InvariantMeasure& measure, double y0,
                      double y_plus, unsigned r_max, double time_scale) {
    const auto z = table.nodes();
    if (!(y0 <= y_plus)) throw InputError("cumulants: need y0 <= y_plus");
    if (y0 < z.front() || y_plus > z.back()) {
        std::ostringstream os;
        os << "cumulants: [" << y0 << ", " << y_plus << "] is not inside the table grid ["
           << z.front() << ", " << z.back() << "]";
        throw InputError(os.str());
    }
    if (r_max < 1 || r_max > table.r_max()) throw InputError("cumulants: r_max out of range");
    if (!(time_scale > 0.0)) throw InputError("cumulants: time scale must be positive");

    // cell boundaries: y0, interior nodes, y_plus
    std::vector<double> cuts{y0};
    for (double node : z) {
        if (node > y0 && node < y_plus) cuts.push_back(node);
    }
    cuts.push_back(y_plus);

    CumulantSet out;
    out.y0 = y0;
    out.y_plus = y_plus;
    out.time_scale = time_scale;
    double factorial = 1.0;
    for (unsigned r = 1; r <= r_max; ++r) {
        factorial *= r;
        const auto f = cumulant_integrand(table, r);
        double total = 0.0;
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i) total += fixed_gk(f, cuts[i], cuts[i + 1]);
        out.kappa.push_back(factorial * total);
    }
    out.mean_direct = integrate([&measure](double y) { return measure.mills(y); }, y0, y_plus,
                                measure.kinks(), 1e-12, 14);
    return out;
}

std::string_view to_string(OuMeanRegime r) {
    switch (r) {
        case OuMeanRegime::kLowReversion: return "low_reversion";
        case OuMeanRegime::kSubThreshold: return "sub_threshold";
        case OuMeanRegime::kSupraThreshold: return "supra_threshold";
        case OuMeanRegime::kMedial: return "medial";
    }
    return "?";
}

OuMeanRegime parse_ou_mean_regime(std::string_view name) {
    if (name == "low_reversion") return OuMeanRegime::kLowReversion;
    if (name == "sub_threshold") return OuMeanRegime::kSubThreshold;
    if (name == "supra_threshold") return OuMeanRegime::kSupraThreshold;
    if (name == "medial") return OuMeanRegime::kMedial;
    throw InputError("unknown OU mean regime '" + std::string(name) + "'");
}

double ou_mean_regime(double y0, double y_plus, OuMeanRegime regime, unsigned terms) {
    if (!(y0 < y_plus)) throw InputError("ou_mean_regime: need y0 < y_plus");
    if (terms == 0) throw InputError("ou_mean_regime: terms must be at least 1");
    switch (regime) {
        case OuMeanRegime::kLowReversion:
            if (std::abs(y0) > 0.5 || std::abs(y_plus) > 0.5) {
                warn("low_reversion regime expects |y0|, |y_plus| small");
            }
            return (std::sqrt(kPi / 2.0) + 0.5 * (y_plus + y0)) * (y_plus - y0);
        case OuMeanRegime::kSubThreshold: {
            if (y_plus < 2.0) warn("sub_threshold regime expects y_plus >> 1");
            const double inv2 = 1.0 / (y_plus * y_plus);
            const double lead = kSqrt2Pi * std::exp(0.5 * y_plus * y_plus) / y_plus;
            return lead * truncated_series(1.0, terms, [&](unsigned k) {
                       return double_factorial_odd(k) * std::pow(inv2, k);
                   });
        }
        case OuMeanRegime::kSupraThreshold: {
            if (!(y_plus < 0.0) || y_plus > -2.0) {
                warn("supra_threshold regime expects y0 < y_plus << 0");
            }
            const double lead = 0.5 * std::log((y0 * y0) / (y_plus * y_plus));
            return truncated_series(lead, terms, [&](unsigned r) {
                const double sign = r % 2 == 0 ? 1.0 : -1.0;
                return sign * double_factorial_odd(r) / (2.0 * r) *
                       (std::pow(y_plus, -2.0 * r) - std::pow(y0, -2.0 * r));
            });
        }
        case OuMeanRegime::kMedial: {
            if (y_plus != 0.0 || y0 > -2.0) warn("medial regime expects y_plus = 0 and y0 << 0");
            const double lead = 0.5 * (std::log(2.0 * y0 * y0) + kEulerGamma);
            return truncated_series(lead, terms, [&](unsigned r) {
                const double sign = r % 2 == 0 ? 1.0 : -1.0;
                return -sign * double_factorial_odd(r) / (2.0 * r * std::pow(y0, 2.0 * r));
            });
        }
    }
    throw InputError("unknown regime");
}

double ou_mean_exact(double y0, double y_plus) {
    return integrate([](double z) { return mills_ratio(-z); }, y0, y_plus, 1e-13);
}

}  // namespace fpt
