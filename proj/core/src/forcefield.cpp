#include "fpt/forcefield.hpp"

#include "fpt/error.hpp"

#include <boost/math/interpolators/cardinal_cubic_b_spline.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace fpt {

namespace {

constexpr double kLogTiny = -690.0;  // psi < 1e-300
constexpr double kCacheStep = 0.125;

bool is_kink(std::span<const double> kinks, double y) {
    return std::any_of(kinks.begin(), kinks.end(), [y](double k) {
        return std::abs(y - k) <= 1e-14 * std::max(1.0, std::abs(k));
    });
}

RealFn central_difference(RealFn f) {
    return [f = std::move(f)](double y) {
        const double h = 1e-5 * std::max(1.0, std::abs(y));
        return (f(y + h) - f(y - h)) / (2.0 * h);
    };
}

/// Running integral of f from the first node, cached at nodes and completed by
/// a local Gauss-Kronrod pass on each query.
class CumulativeIntegral {
public:
    CumulativeIntegral(RealFn f, double lo, double hi, std::vector<double> kinks, double start)
        : f_(std::move(f)), kinks_(std::move(kinks)) {
        const auto n = static_cast<std::size_t>(std::ceil((hi - lo) / kCacheStep));
        nodes_ = linspace(lo, hi, std::max<std::size_t>(n, 1));
        cum_.resize(nodes_.size());
        cum_[0] = start;
        for (std::size_t i = 1; i < nodes_.size(); ++i) {
            cum_[i] = cum_[i - 1] + piece(nodes_[i - 1], nodes_[i]);
        }
    }

    double operator()(double y) const {
        if (y <= nodes_.front()) return cum_.front() - piece(y, nodes_.front());
        if (y >= nodes_.back()) return cum_.back() + piece(nodes_.back(), y);
        auto it = std::upper_bound(nodes_.begin(), nodes_.end(), y);
        const auto i = static_cast<std::size_t>(it - nodes_.begin()) - 1;
        return cum_[i] + piece(nodes_[i], y);
    }

    double lo() const { return nodes_.front(); }
    double hi() const { return nodes_.back(); }
    std::span<const double> nodes() const { return nodes_; }
    std::span<const double> values() const { return cum_; }

private:
    // 1e-12: nested quadrature leaves ~1e-13 noise in f, below which GK cannot settle
    double piece(double a, double b) const { return integrate(f_, a, b, kinks_, 1e-12, 8); }

    RealFn f_;
    std::vector<double> kinks_;
    std::vector<double> nodes_;
    std::vector<double> cum_;
};

double find_edge(const RealFn& log_psi, double start, double direction, double cap) {
    double y = start;
    for (double step = 1.0; std::abs(y - start) < cap; y += direction * step) {
        if (log_psi(y) < kLogTiny) return y;
    }
    return y;
}

/// Psi/psi at y by integrating exp(log psi(y - t) - log psi(y)) over t >= 0.
double mills_by_quadrature(const RealFn& log_psi, double y) {
    const double ref = log_psi(y);
    return integrate_to_infinity([&](double t) { return std::exp(log_psi(y - t) - ref); }, 0.0,
                                 1e-12);
}

}  // namespace

// ---------------------------------------------------------------- ForceField

ForceField::ForceField(std::string label, RealFn drift, RealFn drift_prime, double kappa,
                       std::vector<double> kinks)
    : label_(std::move(label)),
      drift_(std::move(drift)),
      drift_prime_(std::move(drift_prime)),
      kappa_(kappa),
      kinks_(std::move(kinks)) {
    if (!drift_) throw InputError("ForceField: drift function is empty");
    if (!(kappa_ > 0.0)) throw InputError("ForceField: kappa must be positive");
    if (!drift_prime_) drift_prime_ = central_difference(drift_);
    std::sort(kinks_.begin(), kinks_.end());
}

double ForceField::drift_from_below(double y) const {
    if (!is_kink(kinks_, y)) return drift_(y);
    return drift_(y - 1e-9 * std::max(1.0, std::abs(y)));
}

// ---------------------------------------------------------- InvariantMeasure

double InvariantMeasure::psi(double y) const { return std::exp(log_psi_(y)); }

InvariantMeasure InvariantMeasure::closed_form(ClosedForm parts, std::vector<double> kinks) {
    if (!parts.log_psi || !parts.Psi) throw InputError("InvariantMeasure: incomplete closed form");
    InvariantMeasure m;
    m.log_psi_ = std::move(parts.log_psi);
    m.Psi_ = std::move(parts.Psi);
    m.normalizable_ = parts.normalizable;
    m.kinks_ = std::move(kinks);
    if (parts.mills) {
        m.mills_ = std::move(parts.mills);
    } else {
        m.mills_ = [lp = m.log_psi_](double y) { return mills_by_quadrature(lp, y); };
    }
    const double lo = find_edge(m.log_psi_, 0.0, -1.0, 4000.0);
    const double hi = m.normalizable_ ? find_edge(m.log_psi_, 0.0, 1.0, 4000.0)
                                      : std::numeric_limits<double>::infinity();
    m.support_ = {lo, hi};
    return m;
}

InvariantMeasure InvariantMeasure::from_log_density(RealFn log_psi, bool normalizable,
                                                    std::vector<double> kinks) {
    if (!log_psi) throw InputError("InvariantMeasure: empty log-density");
    const double lo = find_edge(log_psi, 0.0, -1.0, 4000.0);
    const double hi = normalizable ? find_edge(log_psi, 0.0, 1.0, 4000.0) : 60.0;

    auto psi = [log_psi](double y) { return std::exp(log_psi(y)); };
    const double start = psi(lo) * mills_by_quadrature(log_psi, lo);
    auto cache = std::make_shared<const CumulativeIntegral>(psi, lo, hi, kinks, start);

    InvariantMeasure m;
    m.log_psi_ = log_psi;
    m.normalizable_ = normalizable;
    m.kinks_ = std::move(kinks);
    m.support_ = {lo, normalizable ? hi : std::numeric_limits<double>::infinity()};
    m.Psi_ = [cache, log_psi, lo](double y) {
        if (y < lo) return std::exp(log_psi(y)) * mills_by_quadrature(log_psi, y);
        return (*cache)(y);
    };
    m.mills_ = [cache, log_psi, lo](double y) {
        if (y < lo) return mills_by_quadrature(log_psi, y);
        return std::exp(std::log((*cache)(y)) - log_psi(y));
    };
    return m;
}

InvariantMeasure InvariantMeasure::from_drift(const ForceField& field) {
    std::vector<double> kinks(field.kinks().begin(), field.kinks().end());
    auto drift = [field](double y) { return field.drift(y); };

    // log of the unnormalized density, grown until both tails are negligible.
    double half_width = 32.0;
    std::shared_ptr<const CumulativeIntegral> log_u;
    bool left_ok = false;
    bool right_ok = false;
    double log_max = 0.0;
    for (; half_width <= 1024.0; half_width *= 2.0) {
        log_u = std::make_shared<const CumulativeIntegral>(drift, -half_width, half_width, kinks,
                                                           0.0);
        // cumulative starts at -half_width; shift so that log_u(0) = 0.
        const double at_zero = (*log_u)(0.0);
        const auto vals = log_u->values();
        log_max = *std::max_element(vals.begin(), vals.end()) - at_zero;
        left_ok = vals.front() - at_zero - log_max < kLogTiny;
        right_ok = vals.back() - at_zero - log_max < kLogTiny;
        if (left_ok && right_ok) break;
        if (left_ok && half_width >= 256.0) break;
    }
    if (!left_ok) {
        throw InputError("field '" + field.label() +
                         "': invariant density does not decay as y -> -infinity");
    }
    const double at_zero = (*log_u)(0.0);
    RealFn log_unnorm = [log_u, at_zero](double y) { return (*log_u)(y) - at_zero; };
    if (!right_ok) return from_log_density(log_unnorm, false, std::move(kinks));

    const double lo = log_u->lo();
    const double hi = log_u->hi();
    const double mass = integrate([&](double y) { return std::exp(log_unnorm(y) - log_max); }, lo,
                                  hi, linspace(lo, hi, 64), 1e-13, 14);
    const double log_norm = log_max + std::log(mass);
    RealFn log_psi = [log_unnorm, log_norm](double y) { return log_unnorm(y) - log_norm; };
    return from_log_density(std::move(log_psi), true, std::move(kinks));
}

// ------------------------------------------------------------------ builtins

double BuiltinParams::tanh_amplitude() const {
    return form == TanhForm::kAlphaTanhGammaY ? alpha : alpha / gamma;
}

std::string_view to_string(BuiltinKind kind) {
    switch (kind) {
        case BuiltinKind::kOu: return "ou";
        case BuiltinKind::kDryFriction: return "dry_friction";
        case BuiltinKind::kTanh: return "tanh";
        case BuiltinKind::kAbm: return "abm";
    }
    return "?";
}

BuiltinKind parse_builtin_kind(std::string_view name) {
    if (name == "ou") return BuiltinKind::kOu;
    if (name == "dry_friction" || name == "dry-friction" || name == "df") {
        return BuiltinKind::kDryFriction;
    }
    if (name == "tanh") return BuiltinKind::kTanh;
    if (name == "abm") return BuiltinKind::kAbm;
    throw InputError("unknown built-in model '" + std::string(name) + "'");
}

Model builtin(const BuiltinParams& p) {
    switch (p.kind) {
        case BuiltinKind::kOu: {
            ForceField f("ou", [](double y) { return -y; }, [](double) { return -1.0; });
            auto m = InvariantMeasure::closed_form(
                {.log_psi = log_normal_pdf,
                 .Psi = normal_cdf,
                 .mills = [](double y) { return mills_ratio(-y); },
                 .normalizable = true});
            return {std::move(f), std::move(m), p};
        }
        case BuiltinKind::kDryFriction: {
            const double mu = p.mu;
            if (!(mu > 0.0)) throw InputError("dry_friction: mu must be positive");
            ForceField f(
                "dry_friction",
                [mu](double y) { return y > 0.0 ? -mu : (y < 0.0 ? mu : 0.0); },
                [](double) { return 0.0; }, 1.0, {0.0});
            const double log_half_mu = std::log(0.5 * mu);
            auto m = InvariantMeasure::closed_form(
                {.log_psi = [mu, log_half_mu](double y) { return log_half_mu - mu * std::abs(y); },
                 .Psi =
                     [mu](double y) {
                         return y < 0.0 ? 0.5 * std::exp(mu * y) : 1.0 - 0.5 * std::exp(-mu * y);
                     },
                 .mills =
                     [mu](double y) {
                         return y < 0.0 ? 1.0 / mu : (2.0 * std::exp(mu * y) - 1.0) / mu;
                     },
                 .normalizable = true},
                {0.0});
            return {std::move(f), std::move(m), p};
        }
        case BuiltinKind::kTanh: {
            const double a = p.tanh_amplitude();
            const double g = p.gamma;
            if (!(g > 0.0) || !(a > 0.0)) {
                throw InputError("tanh: amplitude and gamma must be positive");
            }
            ForceField f(
                "tanh", [a, g](double y) { return -a * std::tanh(g * y); },
                [a, g](double y) {
                    const double c = std::cosh(g * y);
                    return -a * g / (c * c);
                });
            // psi = gamma cosh(gamma y)^{-a/gamma} / B(a/(2 gamma), 1/2)
            const double power = a / g;
            const double log_beta =
                std::lgamma(0.5 * power) + std::lgamma(0.5) - std::lgamma(0.5 * power + 0.5);
            const double log_c = std::log(g) - log_beta;
            RealFn log_psi = [log_c, power, g](double y) {
                return log_c - power * log_cosh(g * y);
            };
            if (std::abs(power - 2.0) < 1e-14) {
                auto m = InvariantMeasure::closed_form(
                    {.log_psi = log_psi,
                     .Psi = [g](double y) { return 1.0 / (1.0 + std::exp(-2.0 * g * y)); },
                     .mills = [g](double y) { return (1.0 + std::exp(2.0 * g * y)) / (2.0 * g); },
                     .normalizable = true});
                return {std::move(f), std::move(m), p};
            }
            auto m = InvariantMeasure::from_log_density(log_psi, true);
            return {std::move(f), std::move(m), p};
        }
        case BuiltinKind::kAbm: {
            const double mu = p.mu;
            if (!(mu > 0.0)) throw InputError("abm: mu must be positive");
            ForceField f("abm", [mu](double) { return mu; }, [](double) { return 0.0; });
            auto m = InvariantMeasure::closed_form(
                {.log_psi = [mu](double y) { return mu * y; },
                 .Psi = [mu](double y) { return std::exp(mu * y) / mu; },
                 .mills = [mu](double) { return 1.0 / mu; },
                 .normalizable = false});
            return {std::move(f), std::move(m), p};
        }
    }
    throw InputError("unknown built-in kind");
}

Model model_from_drift(std::string label, RealFn drift, RealFn drift_prime, double kappa,
                       std::vector<double> kinks) {
    ForceField f(std::move(label), std::move(drift), std::move(drift_prime), kappa,
                 std::move(kinks));
    auto m = InvariantMeasure::from_drift(f);
    return {std::move(f), std::move(m), std::nullopt};
}

Model model_from_table(std::string label, std::vector<double> y, std::vector<double> a,
                       double kappa) {
    if (y.size() != a.size() || y.size() < 2) {
        throw InputError("table field: need at least two (y, A) pairs");
    }
    const double y_lo = y.front();
    const double y_hi = y.back();
    const double a_lo = a.front();
    const double a_hi = a.back();
    auto spline = std::make_shared<const MonotoneCubic>(std::move(y), std::move(a));
    RealFn drift = [spline, y_lo, y_hi, a_lo, a_hi](double x) {
        if (x <= y_lo) return a_lo;
        if (x >= y_hi) return a_hi;
        return (*spline)(x);
    };
    RealFn drift_prime = [spline, y_lo, y_hi](double x) {
        if (x <= y_lo || x >= y_hi) return 0.0;
        return spline->derivative(x);
    };
    return model_from_drift(std::move(label), std::move(drift), std::move(drift_prime), kappa);
}

// ------------------------------------------------------------------ Lamperti

struct LampertiMap::Data {
    SdeSpec spec;
    std::vector<double> xs;
    std::vector<double> ys;  // y at nodes, y(x_ref) = 0
    double scale = 0.0;      // sqrt(2 kappa)

    double integrand(double x) const { return scale / spec.sigma_x(x); }
};

LampertiMap LampertiMap::build(const SdeSpec& spec) {
    if (!spec.mu_x || !spec.sigma_x) throw InputError("lamperti: mu_X and sigma_X are required");
    if (!(spec.kappa > 0.0)) throw InputError("lamperti: kappa must be positive");
    if (!(spec.x_hi > spec.x_lo)) throw InputError("lamperti: need x_lo < x_hi");
    if (spec.x_ref < spec.x_lo || spec.x_ref > spec.x_hi) {
        throw InputError("lamperti: x_ref must lie in [x_lo, x_hi]");
    }
    auto d = std::make_shared<Data>();
    d->spec = spec;
    d->scale = std::sqrt(2.0 * spec.kappa);
    d->xs = linspace(spec.x_lo, spec.x_hi, std::max<std::size_t>(spec.nodes, 4));
    for (double x : d->xs) {
        const double s = spec.sigma_x(x);
        if (!(s > 0.0) || !std::isfinite(s)) {
            std::ostringstream os;
            os << "lamperti: sigma_X vanishes or is invalid at x = " << x;
            throw InputError(os.str());
        }
    }
    auto f = [raw = d.get()](double x) { return raw->integrand(x); };
    d->ys.resize(d->xs.size());
    d->ys[0] = 0.0;
    for (std::size_t i = 1; i < d->xs.size(); ++i) {
        d->ys[i] = d->ys[i - 1] + integrate(f, d->xs[i - 1], d->xs[i], 1e-14, 12);
    }
    // shift so that y(x_ref) = 0
    auto it = std::upper_bound(d->xs.begin(), d->xs.end(), spec.x_ref);
    const auto i = std::min<std::size_t>(static_cast<std::size_t>(it - d->xs.begin()),
                                         d->xs.size()) - 1;
    const double at_ref = d->ys[i] + integrate(f, d->xs[i], spec.x_ref, 1e-14, 12);
    for (double& y : d->ys) y -= at_ref;
    LampertiMap map;
    map.data_ = std::move(d);
    return map;
}

double LampertiMap::dy_dx(double x) const { return data_->integrand(x); }
double LampertiMap::y_min() const { return data_->ys.front(); }
double LampertiMap::y_max() const { return data_->ys.back(); }

double LampertiMap::y_of_x(double x) const {
    const auto& d = *data_;
    if (x < d.xs.front() || x > d.xs.back()) throw InputError("lamperti: x outside the interval");
    auto it = std::upper_bound(d.xs.begin(), d.xs.end(), x);
    const auto i = std::min<std::size_t>(static_cast<std::size_t>(it - d.xs.begin()),
                                         d.xs.size() - 1) - 1;
    return d.ys[i] + integrate([&d](double u) { return d.integrand(u); }, d.xs[i], x, 1e-14, 12);
}

double LampertiMap::x_of_y(double y) const {
    const auto& d = *data_;
    if (y < d.ys.front() || y > d.ys.back()) {
        std::ostringstream os;
        os << "lamperti: y = " << y << " outside [" << d.ys.front() << ", " << d.ys.back() << "]";
        throw InputError(os.str());
    }
    auto it = std::upper_bound(d.ys.begin(), d.ys.end(), y);
    const auto i = std::min<std::size_t>(static_cast<std::size_t>(it - d.ys.begin()),
                                         d.ys.size() - 1) - 1;
    double lo = d.xs[i];
    double hi = d.xs[i + 1];
    double x = lo + (hi - lo) * (y - d.ys[i]) / (d.ys[i + 1] - d.ys[i]);
    // safeguarded Newton: y(x) is increasing with slope dy_dx > 0
    for (int iter = 0; iter < 60; ++iter) {
        const double r = y_of_x(x) - y;
        if (r > 0.0) hi = x; else lo = x;
        double next = x - r / dy_dx(x);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::abs(next - x) <= 1e-15 * std::max(1.0, std::abs(x))) return next;
        x = next;
    }
    return x;
}

ForceField lamperti(const SdeSpec& spec) {
    auto map = LampertiMap::build(spec);
    RealFn sigma_prime = spec.sigma_x_prime ? spec.sigma_x_prime : central_difference(spec.sigma_x);
    const double factor = std::sqrt(2.0 / spec.kappa);
    auto exact = [&](double y) {
        const double x = map.x_of_y(y);
        return factor * (spec.mu_x(x) / spec.sigma_x(x) - 0.5 * sigma_prime(x));
    };
    // Inverting the map costs a root solve per call, and the measure and the
    // h-series call the drift millions of times, so tabulate once on a fine
    // uniform grid and interpolate with a cubic B-spline.
    const double lo = map.y_min();
    const double hi = map.y_max();
    const auto n = std::max<std::size_t>(16, static_cast<std::size_t>(std::ceil((hi - lo) * 128.0)));
    const double h = (hi - lo) / static_cast<double>(n);
    std::vector<double> values(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        values[i] = exact(std::min(hi, lo + h * static_cast<double>(i)));
        if (!std::isfinite(values[i])) {
            std::ostringstream os;
            os << "lamperti: transformed drift is not finite at y = " << lo + h * static_cast<double>(i);
            throw InputError(os.str());
        }
    }
    using Spline = boost::math::interpolators::cardinal_cubic_b_spline<double>;
    auto spline = std::make_shared<const Spline>(values.begin(), values.end(), lo, h);
    auto check = [lo, hi](double y) {
        if (y < lo || y > hi) {
            std::ostringstream os;
            os << "lamperti: y = " << y << " outside [" << lo << ", " << hi << "]";
            throw InputError(os.str());
        }
    };
    RealFn drift = [spline, check](double y) {
        check(y);
        return (*spline)(y);
    };
    RealFn drift_prime = [spline, check](double y) {
        check(y);
        return spline->prime(y);
    };
    return ForceField("lamperti", std::move(drift), std::move(drift_prime), spec.kappa);
}

// ------------------------------------------------------------ classification

std::string_view to_string(Tristate t) {
    switch (t) {
        case Tristate::kNo: return "no";
        case Tristate::kYes: return "yes";
        case Tristate::kUndetermined: return "undetermined";
    }
    return "?";
}

namespace {

// -y A(y) -> +infinity, judged from three samples at doubling distances.
Tristate diverges_up(double v1, double v2, double v3) {
    if (!std::isfinite(v1) || !std::isfinite(v2) || !std::isfinite(v3)) {
        return Tristate::kUndetermined;
    }
    if (v1 < v2 && v2 < v3) {
        // increments that shrink geometrically mean a finite limit
        return (v3 - v2) >= 0.5 * (v2 - v1) ? Tristate::kYes : Tristate::kNo;
    }
    if (v3 <= v2 && v2 <= v1) return Tristate::kNo;
    return Tristate::kUndetermined;
}

Tristate tends_to_zero(double r1, double r2, double r3) {
    r1 = std::abs(r1);
    r2 = std::abs(r2);
    r3 = std::abs(r3);
    if (!std::isfinite(r1) || !std::isfinite(r2) || !std::isfinite(r3)) {
        return Tristate::kUndetermined;
    }
    if (r3 <= r2 && r2 <= r1) return r3 < 0.05 ? Tristate::kYes : Tristate::kUndetermined;
    if (r3 > r2 && r2 > r1) return Tristate::kNo;
    return Tristate::kUndetermined;
}

Tristate both(Tristate a, Tristate b) {
    if (a == Tristate::kNo || b == Tristate::kNo) return Tristate::kNo;
    if (a == Tristate::kYes && b == Tristate::kYes) return Tristate::kYes;
    return Tristate::kUndetermined;
}

}  // namespace

Classification classify(const ForceField& field, const InvariantMeasure& measure,
                        double y_plus) {
    constexpr double kSamples[] = {20.0, 40.0, 80.0};
    Classification c;
    double minus[3];
    double plus[3];
    double ratio1[3];
    double ratio2[3];
    double left_drift[3];
    for (int i = 0; i < 3; ++i) {
        const double y = kSamples[i];
        left_drift[i] = field.drift(-y);
        minus[i] = y * left_drift[i];
        const double a = field.drift(y);
        const double ap = field.drift_prime(y);
        plus[i] = -y * a;
        ratio1[i] = a != 0.0 ? ap / a : std::numeric_limits<double>::infinity();
        ratio2[i] = a != 0.0 ? ap / (a * a) : std::numeric_limits<double>::infinity();
    }
    c.s_minus = diverges_up(minus[0], minus[1], minus[2]);
    c.s_plus_star = both(diverges_up(plus[0], plus[1], plus[2]),
                         both(tends_to_zero(ratio1[0], ratio1[1], ratio1[2]),
                              tends_to_zero(ratio2[0], ratio2[1], ratio2[2])));

    // complete absorption: liminf A >= 0 at -infinity, A bounded below below y_+
    Tristate liminf_ok = Tristate::kUndetermined;
    const double worst = std::min({left_drift[0], left_drift[1], left_drift[2]});
    if (worst >= -1e-9) {
        liminf_ok = Tristate::kYes;
    } else if (left_drift[2] < left_drift[1] && left_drift[1] < left_drift[0]) {
        liminf_ok = Tristate::kNo;
    }
    Tristate bounded = Tristate::kYes;
    for (double y = -80.0; y < y_plus; y += 0.01) {
        if (!std::isfinite(field.drift(y))) {
            bounded = Tristate::kNo;
            break;
        }
    }
    c.completely_absorbing = both(liminf_ok, bounded);
    if (!measure.normalizable()) c.notes.emplace_back("invariant density is not normalizable");
    if (c.s_minus != Tristate::kYes) c.notes.emplace_back("-y A(y) does not diverge at -infinity");
    return c;
}

}  // namespace fpt
