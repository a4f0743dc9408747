#include "fpt/numerics.hpp"

#include "fpt/error.hpp"

#include <cmath>
// Boost 1.74's pchip calls isnan unqualified.
using std::isnan;

#include <boost/math/interpolators/pchip.hpp>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cstdint>
#include <iostream>
#include <sstream>

namespace fpt {

namespace {

WarningHandler& warning_handler() {
    static WarningHandler handler = [](std::string_view msg) {
        std::cerr << "warning: " << msg << '\n';
    };
    return handler;
}

}  // namespace

void set_warning_handler(WarningHandler handler) { warning_handler() = std::move(handler); }

void warn(std::string_view message) {
    if (auto& h = warning_handler()) h(message);
}

double normal_pdf(double x) { return std::exp(-0.5 * x * x) / kSqrt2Pi; }

double log_normal_pdf(double x) { return -0.5 * x * x - std::log(kSqrt2Pi); }

double normal_cdf(double x) { return 0.5 * std::erfc(-x / kSqrt2); }

double mills_ratio(double z) {
    if (z < 30.0) {
        // erfc keeps full relative accuracy until it underflows near z = 37.
        return 0.5 * std::erfc(z / kSqrt2) / normal_pdf(z);
    }
    // Phi(-z)/phi(z) ~ 1/z * sum (-1)^k (2k-1)!! / z^{2k}
    const double inv_z2 = 1.0 / (z * z);
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 8; ++k) {
        term *= -(2.0 * k - 1.0) * inv_z2;
        sum += term;
    }
    return sum / z;
}

double catalan(unsigned r) {
    double c = 1.0;
    for (unsigned k = 0; k < r; ++k) c = c * 2.0 * (2.0 * k + 1.0) / (k + 2.0);
    return c;
}

double hermite_he(unsigned n, double y) {
    if (n == 0) return 1.0;
    double prev = 1.0;
    double cur = y;
    for (unsigned k = 1; k < n; ++k) {
        const double next = y * cur - k * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

double log_cosh(double x) {
    const double ax = std::abs(x);
    return ax + std::log1p(std::exp(-2.0 * ax)) - std::log(2.0);
}

namespace {

// Boost 1.74's adaptive driver compares the error of the rule on [-1, 1]
// against a tolerance scaled to [a, b], so narrow intervals always recurse to
// the depth limit. Bisect here instead, with Boost's rule as the kernel.
double gk_bisect(const RealFn& f, double a, double b, double abs_tol, double rel_tol,
                 unsigned depth) {
    using boost::math::quadrature::gauss_kronrod;
    double err = 0.0;
    const double k = gauss_kronrod<double, 15>::integrate(f, a, b, 0, 0.0, &err);
    err *= 0.5 * std::abs(b - a);
    if (depth == 0 || err <= abs_tol || err <= rel_tol * std::abs(k)) return k;
    const double mid = 0.5 * (a + b);
    return gk_bisect(f, a, mid, 0.5 * abs_tol, rel_tol, depth - 1) +
           gk_bisect(f, mid, b, 0.5 * abs_tol, rel_tol, depth - 1);
}

}  // namespace

double integrate(const RealFn& f, double a, double b, double rel_tol, unsigned max_depth) {
    if (a == b) return 0.0;
    using boost::math::quadrature::gauss_kronrod;
    double err = 0.0;
    const double whole = gauss_kronrod<double, 15>::integrate(f, a, b, 0, 0.0, &err);
    err *= 0.5 * std::abs(b - a);
    const double abs_tol = rel_tol * std::abs(whole);
    if (max_depth == 0 || err <= abs_tol) return whole;
    const double mid = 0.5 * (a + b);
    return gk_bisect(f, a, mid, 0.5 * abs_tol, rel_tol, max_depth - 1) +
           gk_bisect(f, mid, b, 0.5 * abs_tol, rel_tol, max_depth - 1);
}

double integrate(const RealFn& f, double a, double b, std::span<const double> breaks,
                 double rel_tol, unsigned max_depth) {
    if (a == b) return 0.0;
    const double sign = a < b ? 1.0 : -1.0;
    const double lo = std::min(a, b);
    const double hi = std::max(a, b);
    std::vector<double> pts{lo};
    for (double x : breaks) {
        if (x > lo && x < hi) pts.push_back(x);
    }
    pts.push_back(hi);
    std::sort(pts.begin(), pts.end());
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        total += integrate(f, pts[i], pts[i + 1], rel_tol, max_depth);
    }
    return sign * total;
}

double integrate_singular(const RealFn& f, double a, double b, double rel_tol) {
    if (a == b) return 0.0;
    thread_local boost::math::quadrature::tanh_sinh<double> integrator;
    return integrator.integrate(f, a, b, rel_tol);
}

double integrate_to_infinity(const RealFn& f, double a, double rel_tol) {
    boost::math::quadrature::exp_sinh<double> integrator;
    return integrator.integrate(f, a, std::numeric_limits<double>::infinity(), rel_tol);
}

double bisect(const RealFn& f, double lo, double hi, double abs_tol, double rel_tol) {
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0)) {
        std::ostringstream os;
        os << "bisect: no sign change on [" << lo << ", " << hi << "] (f = " << flo << ", "
           << fhi << ")";
        throw NumericError(os.str());
    }
    auto done = [&](double a, double b) {
        return std::abs(b - a) <= abs_tol + rel_tol * std::abs(0.5 * (a + b));
    };
    std::uintmax_t max_iter = 400;
    auto [a, b] = boost::math::tools::bisect(
        [&](double x) { return f(x); }, lo, hi, done, max_iter);
    return 0.5 * (a + b);
}

struct MonotoneCubic::Impl {
    boost::math::interpolators::pchip<std::vector<double>> spline;
};

MonotoneCubic::MonotoneCubic(std::vector<double> x, std::vector<double> y)
    : xs_(std::move(x)), ys_(std::move(y)) {
    if (xs_.size() != ys_.size() || xs_.size() < 2) {
        throw InputError("MonotoneCubic: need matching node/value arrays of size >= 2");
    }
    for (std::size_t i = 1; i < xs_.size(); ++i) {
        if (!(xs_[i] > xs_[i - 1])) throw InputError("MonotoneCubic: nodes must increase strictly");
    }
    if (xs_.size() >= 4) {
        auto xc = xs_;
        auto yc = ys_;
        impl_ = std::make_shared<const Impl>(Impl{{std::move(xc), std::move(yc)}});
    }
}

double MonotoneCubic::operator()(double x) const {
    if (x < xs_.front() || x > xs_.back()) {
        std::ostringstream os;
        os << "MonotoneCubic: query " << x << " outside [" << xs_.front() << ", " << xs_.back()
           << "]";
        throw InputError(os.str());
    }
    const auto it = std::lower_bound(xs_.begin(), xs_.end(), x);
    if (it != xs_.end() && *it == x) return ys_[static_cast<std::size_t>(it - xs_.begin())];
    if (impl_) return impl_->spline(x);
    const auto i = static_cast<std::size_t>(it - xs_.begin());
    const double t = (x - xs_[i - 1]) / (xs_[i] - xs_[i - 1]);
    return (1.0 - t) * ys_[i - 1] + t * ys_[i];
}

double MonotoneCubic::derivative(double x) const {
    if (impl_) return impl_->spline.prime(x);
    const auto it = std::upper_bound(xs_.begin(), xs_.end() - 1, x);
    const auto i = std::max<std::size_t>(1, static_cast<std::size_t>(it - xs_.begin()));
    return (ys_[i] - ys_[i - 1]) / (xs_[i] - xs_[i - 1]);
}

std::vector<double> linspace(double a, double b, std::size_t n_intervals) {
    std::vector<double> out(n_intervals + 1);
    const double h = (b - a) / static_cast<double>(n_intervals);
    for (std::size_t i = 0; i <= n_intervals; ++i) out[i] = a + h * static_cast<double>(i);
    out.back() = b;
    return out;
}

}  // namespace fpt
