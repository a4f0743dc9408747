#include "fpt/density.hpp"

#include "fpt/decay.hpp"
#include "fpt/error.hpp"

#include <boost/numeric/odeint.hpp>

#include <cmath>
#include <sstream>
#include <vector>

namespace fpt {

namespace {

constexpr double kLn2 = 0.69314718055994530942;
constexpr double kLnPi = 1.14472988584940017414;
constexpr double kNormStep = 1.0 / 32.0;

/// Nodes of the ln-tau trapezium rule with the rho-free part of the integrand.
struct NormalizationNodes {
    std::vector<double> base;    ///< h * tau * f(tau) at rho = 0
    std::vector<double> weight;  ///< tanh(theta tau / 2)
};

NormalizationNodes normalization_nodes(const DensityModel& m) {
    const double b = m.distance();
    const double x_lo = std::log(b * b / 3000.0);
    const double rate = m.lambda > 0.0 ? m.lambda : m.theta;
    if (!(rate > 0.0)) throw NumericError("normalization: lambda and theta are both zero");
    const double x_hi = std::log(60.0 / rate);
    DensityModel probe = m;
    probe.rho = 0.0;
    NormalizationNodes out;
    for (double x = x_lo; x <= x_hi + 0.5 * kNormStep; x += kNormStep) {
        const double tau = std::exp(x);
        out.base.push_back(kNormStep * tau * std::exp(log_density(probe, tau)));
        out.weight.push_back(m.abm_limit ? 0.0 : std::tanh(0.5 * m.theta * tau));
    }
    return out;
}

double sum_at(const NormalizationNodes& n, double rho, double* derivative = nullptr) {
    double total = 0.0;
    double slope = 0.0;
    for (std::size_t i = 0; i < n.base.size(); ++i) {
        const double v = n.base[i] * std::exp(rho * n.weight[i]);
        total += v;
        slope += v * n.weight[i];
    }
    if (derivative) *derivative = slope;
    return total;
}

}  // namespace

FisherResult theta_fisher(const ForceField& field, const InvariantMeasure& measure) {
    FisherResult out;
    if (!measure.normalizable()) {
        out.abm_limit = true;
        return out;
    }
    // psi < e^-80 contributes nothing at double precision; skipping it keeps the
    // relative tolerance reachable when psi itself comes from quadrature
    const auto [s_lo, s_hi] = measure.support();
    double lo = 0.0;
    double hi = 0.0;
    while (lo > s_lo && measure.log_psi(lo) > -80.0) lo -= 0.25;
    while (hi < s_hi && measure.log_psi(hi) > -80.0) hi += 0.25;
    std::vector<double> breaks = linspace(lo, hi, 64);
    breaks.insert(breaks.end(), measure.kinks().begin(), measure.kinks().end());
    out.theta = integrate(
        [&](double y) {
            const double a = field.drift(y);
            return a * a * measure.psi(y);
        },
        lo, hi, breaks, 1e-11, 10);
    out.mean_minus_drift_prime = integrate(
        [&](double y) { return -field.drift_prime(y) * measure.psi(y); }, lo, hi, breaks, 1e-11,
        10);
    return out;
}

FisherResult theta_fisher(const BuiltinParams& p) {
    FisherResult out;
    switch (p.kind) {
        case BuiltinKind::kOu:
            out.theta = 1.0;
            out.mean_minus_drift_prime = 1.0;
            break;
        case BuiltinKind::kDryFriction:
            out.theta = p.mu * p.mu;
            // -A' is a point mass 2 mu at the origin with weight psi(0) = mu/2
            out.mean_minus_drift_prime = p.mu * p.mu;
            break;
        case BuiltinKind::kTanh: {
            const double a = p.tanh_amplitude();
            out.theta = a * a * p.gamma / (a + p.gamma);
            out.mean_minus_drift_prime = out.theta;
            break;
        }
        case BuiltinKind::kAbm:
            out.abm_limit = true;
            break;
    }
    return out;
}

double nu_coefficient(const ForceField& field, double theta, double lambda, double y_plus) {
    if (!(theta > 0.0)) throw InputError("nu_coefficient: theta must be positive");
    const double a = field.drift_from_below(y_plus);
    return (3.0 * theta - 2.0 * lambda + field.drift_prime(y_plus) + 0.5 * a * a) / theta;
}

DensityModel make_density_model(const Model& model, double y0, double y_plus,
                                const DensityOptions& options) {
    if (!(y0 < y_plus)) throw InputError("density: the start must lie below the barrier");
    DensityModel m{.field = model.field, .measure = model.measure};
    m.y0 = y0;
    m.y_plus = y_plus;

    if (options.theta) {
        if (*options.theta < 0.0) throw InputError("density: theta must be nonnegative");
        m.theta = *options.theta;
        m.theta_source = "user";
    } else {
        const auto fisher = model.builtin ? theta_fisher(*model.builtin)
                                          : theta_fisher(model.field, model.measure);
        m.theta = fisher.theta;
        m.theta_source = fisher.abm_limit ? "abm_limit" : "fisher";
    }
    m.abm_limit = m.theta == 0.0;

    if (options.lambda) {
        m.lambda = *options.lambda;
        m.lambda_source = "user";
    } else {
        std::optional<double> exact;
        if (model.builtin) exact = lambda_exact(*model.builtin, y_plus).value;
        if (exact) {
            m.lambda = *exact;
            m.lambda_source = "exact";
        } else {
            m.lambda = estimate_lambda(model.field, model.measure, y_plus).lambda;
            m.lambda_source = "algorithm1";
        }
    }
    if (!(m.lambda > 0.0)) throw NumericError("density: decay rate is not positive");

    m.nu = m.abm_limit ? 0.0 : nu_coefficient(model.field, m.theta, m.lambda, y_plus);
    m.log_psi_ratio = model.measure.log_psi(y_plus) - model.measure.log_psi(y0);
    if (options.calibrate) calibrate_rho(m);
    return m;
}

double log_density(const DensityModel& m, double tau) {
    if (!(tau > 0.0)) throw InputError("density: tau must be positive");
    const double b = m.distance();
    if (m.abm_limit) {
        return std::log(b) - 0.5 * (std::log(4.0 * tau * tau * tau) + kLnPi) - b * b / (4.0 * tau) +
               0.5 * m.log_psi_ratio - m.lambda * tau;
    }
    const double x = m.theta * tau;
    const double one_minus_q = -std::expm1(-2.0 * x);
    const double root_q_over = x < 350.0 ? 0.5 / std::sinh(x) : 0.0;  // sqrt(q)/(1-q)
    const double w = std::tanh(0.5 * x);                                 // (1-sqrt q)/(1+sqrt q)
    const double psi_power = 0.5 * (1.0 - w);                            // sqrt q/(1+sqrt q)
    const double log_half_one_plus = std::log1p(std::exp(-x)) - kLn2;
    return std::log(b) - m.lambda * tau - 0.5 * kLnPi - 1.5 * std::log(one_minus_q) + 0.5 * kLn2 +
           1.5 * std::log(m.theta) - 0.5 * m.theta * root_q_over * b * b +
           psi_power * m.log_psi_ratio + m.nu * log_half_one_plus + m.rho * w;
}

double eval_density(const DensityModel& m, double tau) { return std::exp(log_density(m, tau)); }

double normalization(const DensityModel& m, double rho) {
    return sum_at(normalization_nodes(m), rho);
}

double calibrate_rho(DensityModel& m) {
    const auto nodes = normalization_nodes(m);
    if (m.abm_limit) {
        m.rho = 0.0;
        m.rho_insensitive = true;
        m.normalization_residual = sum_at(nodes, 0.0) - 1.0;
        return m.rho;
    }
    auto residual = [&](double rho) { return sum_at(nodes, rho) - 1.0; };
    double lo = -20.0;
    double hi = 20.0;
    while (residual(lo) > 0.0 && lo > -600.0) lo *= 2.0;
    while (residual(hi) < 0.0 && hi < 600.0) hi *= 2.0;
    const double r_lo = residual(lo);
    const double r_hi = residual(hi);
    if (r_lo > 0.0 || r_hi < 0.0) {
        std::ostringstream os;
        os << "calibrate_rho: no bracket; normalization - 1 = " << r_lo << " at rho = " << lo
           << " and " << r_hi << " at rho = " << hi;
        throw NumericError(os.str());
    }
    double rho = 0.0;
    for (int iter = 0; iter < 200; ++iter) {
        rho = 0.5 * (lo + hi);
        const double r = residual(rho);
        if (std::abs(r) <= 1e-12 || hi - lo <= 1e-14 * (1.0 + std::abs(rho))) break;
        (r > 0.0 ? hi : lo) = rho;
    }
    double slope = 0.0;
    m.normalization_residual = sum_at(nodes, rho, &slope) - 1.0;
    m.rho = rho;
    m.rho_insensitive = slope < 1e-6;
    return rho;
}

HTildeSolution solve_h_tilde(const ForceField& field, double lambda, double y_plus, double y_min) {
    if (!(y_min < y_plus)) throw InputError("solve_h_tilde: need y_min < y_plus");
    namespace ode = boost::numeric::odeint;
    using State = std::array<double, 1>;

    const double a0 = field.drift_from_below(y_plus);
    const double h0 = 0.5 * a0;
    const double slope0 = (lambda - 0.25 * a0 * a0 + field.drift_prime(y_plus)) / 3.0;
    const double eps = 1e-4;
    const double t_end = y_plus - y_min;

    // t = y_plus - y, so dh/dt = -h'(y)
    auto rhs = [&](const State& s, State& ds, double t) {
        const double y = y_plus - t;
        const double a = field.drift(y);
        const double h = s[0];
        ds[0] = -(lambda + h * h - a * h + (2.0 * h - a) / t);
    };

    HTildeSolution out;
    out.y_plus = y_plus;
    std::vector<double> ts{0.0};
    std::vector<double> hs{h0};
    State state{h0 - eps * slope0};
    ts.push_back(eps);
    hs.push_back(state[0]);

    auto stepper = ode::make_dense_output(1e-11, 1e-11, ode::runge_kutta_dopri5<State>());
    stepper.initialize(state, eps, 1e-4);
    const double sample = 1.0 / 128.0;
    double next = sample;
    State probe{};
    while (next <= t_end + 1e-12) {
        while (stepper.current_time() < next) {
            stepper.do_step(rhs);
            if (!std::isfinite(stepper.current_state()[0]) ||
                std::abs(stepper.current_state()[0]) > 1e6) {
                out.blew_up = true;
                break;
            }
        }
        if (out.blew_up) break;
        stepper.calc_state(next, probe);
        ts.push_back(next);
        hs.push_back(probe[0]);
        next += sample;
    }
    if (out.blew_up) {
        std::ostringstream os;
        os << "Riccati solution blew up near y = " << y_plus - stepper.current_time();
        out.note = os.str();
    }
    out.y_stop = y_plus - ts.back();

    // ascending in y for interpolation
    const std::size_t n = ts.size();
    std::vector<double> ys(n);
    std::vector<double> vals(n);
    std::vector<double> cum(n);
    for (std::size_t i = 0; i < n; ++i) {
        ys[i] = y_plus - ts[n - 1 - i];
        vals[i] = hs[n - 1 - i];
    }
    // rho(y) = int_y^{y_plus} h~, accumulated from the barrier by trapezium
    cum[n - 1] = 0.0;
    for (std::size_t i = n - 1; i-- > 0;) {
        cum[i] = cum[i + 1] + 0.5 * (ys[i + 1] - ys[i]) * (vals[i] + vals[i + 1]);
    }
    auto h_fit = std::make_shared<const MonotoneCubic>(ys, vals);
    auto rho_fit = std::make_shared<const MonotoneCubic>(ys, cum);
    out.h_tilde = [h_fit](double y) { return (*h_fit)(y); };
    out.rho = [rho_fit](double y) { return (*rho_fit)(y); };
    return out;
}

double h_ansatz(const DensityModel& m, const RealFn& h_tilde, double tau, double y) {
    if (!(tau > 0.0)) throw InputError("h_ansatz: tau must be positive");
    if (!(y < m.y_plus)) throw InputError("h_ansatz: y must lie below the barrier");
    const double d = m.y_plus - y;
    const double a = m.field.drift(y);
    if (m.abm_limit) return -d / (2.0 * tau) + 0.5 * a + 1.0 / d;
    const double x = m.theta * tau;
    const double root_q_over = x < 350.0 ? 0.5 / std::sinh(x) : 0.0;
    const double w = std::tanh(0.5 * x);
    return -m.theta * root_q_over * d + 0.5 * (1.0 - w) * a + 1.0 / d + w * h_tilde(y);
}

double ou_short_time_remainder(double y0, double y_plus, double tau) {
    if (!(tau > 0.0)) throw InputError("ou_short_time_remainder: tau must be positive");
    const double z = (y_plus - y0) / std::sqrt(2.0 * tau);
    return 0.25 * tau * y_plus * z * mills_ratio(z) - tau * (y_plus - y0) / 6.0;
}

double levy_smirnov(double b, double tau) {
    return b / std::sqrt(4.0 * kPi * tau * tau * tau) * std::exp(-b * b / (4.0 * tau));
}

double inverse_gaussian_density(double mu, double b, double tau) {
    const double e = b - mu * tau;
    return b / std::sqrt(4.0 * kPi * tau * tau * tau) * std::exp(-e * e / (4.0 * tau));
}

double ou_equilibrium_density(double y0, double tau) {
    const double t = std::expm1(2.0 * tau);
    const double b = std::abs(y0);
    return b / std::sqrt(2.0 * kPi * t * t * t) * std::exp(-b * b / (2.0 * t)) * 2.0 *
           std::exp(2.0 * tau);
}

}  // namespace fpt
