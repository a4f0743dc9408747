#include "fpt/oupcf.hpp"

#include "fpt/error.hpp"
#include "fpt/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace fpt {

namespace {

/// log of int_0^inf u^{s-1} exp(y u - u^2/2) du for s > 0.
double log_base_integral(double s, double y) {
    // [0, 1]: u = v^{1/s} removes the endpoint singularity when s < 1
    double head = 0.0;
    if (s < 1.0) {
        head = integrate_singular(
                   [s, y](double v) {
                       const double u = std::pow(v, 1.0 / s);
                       return std::exp(y * u - 0.5 * u * u);
                   },
                   0.0, 1.0, 1e-14) /
               s;
    } else {
        head = integrate_singular(
            [s, y](double u) { return std::exp((s - 1.0) * std::log(u) + y * u - 0.5 * u * u); },
            0.0, 1.0, 1e-14);
    }

    // [1, inf): integrand exp(g(u)), g = (s-1) ln u + y u - u^2/2, scaled by its peak
    const double disc = y * y + 4.0 * (s - 1.0);
    double peak = 1.0;
    if (disc >= 0.0) peak = std::max(1.0, 0.5 * (y + std::sqrt(disc)));
    auto g = [s, y](double u) { return (s - 1.0) * std::log(u) + y * u - 0.5 * u * u; };
    const double g_peak = g(peak);
    const double upper = peak + 15.0;
    const double brk[] = {peak};
    const double tail = integrate([&](double u) { return std::exp(g(u) - g_peak); }, 1.0, upper,
                                  std::span<const double>(brk), 1e-13);
    if (g_peak > 0.0) return g_peak + std::log(tail + head * std::exp(-g_peak));
    return std::log(head + tail * std::exp(g_peak));
}

double integral_value(double s, double y) {
    const double log_value = log_base_integral(s, y) - std::lgamma(s);
    if (log_value > 709.0) {
        std::ostringstream os;
        os << "pcf: D_" << s << "(" << y << ") overflows a double";
        throw NumericError(os.str());
    }
    return std::exp(log_value);
}

bool is_nonpositive_integer(double s) { return s <= 0.0 && s == std::floor(s); }

}  // namespace

std::string_view to_string(PcfMethod m) {
    switch (m) {
        case PcfMethod::kIntegral: return "integral";
        case PcfMethod::kRecursion: return "recursion";
        case PcfMethod::kHermite: return "hermite";
    }
    return "?";
}

namespace {

PcfEval checked(PcfEval e) {
    if (!std::isfinite(e.value)) {
        std::ostringstream os;
        os << "pcf: D_" << e.s << "(" << e.y << ") overflows a double";
        throw NumericError(os.str());
    }
    return e;
}

}  // namespace

PcfEval pcf_eval(double s, double y) {
    if (!std::isfinite(s) || !std::isfinite(y)) throw InputError("pcf: non-finite argument");
    if (std::abs(y) > kPcfMaxArgument) {
        std::ostringstream os;
        os << "pcf: |y| = " << std::abs(y) << " exceeds the supported range " << kPcfMaxArgument;
        throw InputError(os.str());
    }
    PcfEval out{s, y, 0.0, PcfMethod::kIntegral, 1.0};
    if (is_nonpositive_integer(s)) {
        const auto r = static_cast<unsigned>(-s);
        out.value = (r % 2 == 0 ? 1.0 : -1.0) * hermite_he(r, y);
        out.method = PcfMethod::kHermite;
        return checked(out);
    }
    if (s > 0.0) {
        out.value = integral_value(s, y);
        return checked(out);
    }
    // downward recursion from the base pair (s1, s1 + 1), s1 in (0, 1)
    const double s1 = s - std::floor(s);
    double upper = integral_value(s1 + 1.0, y);  // D_{t+2}
    double lower = integral_value(s1, y);        // D_{t+1}
    double worst = std::max(std::abs(upper), std::abs(lower));
    const int steps = static_cast<int>(std::lround(s1 - s));
    for (int k = 1; k <= steps; ++k) {
        const double t = s1 - k;
        const double a = -y * lower;
        const double b = (t + 1.0) * upper;
        const double next = a + b;
        worst = std::max({worst, std::abs(a), std::abs(b)});
        upper = lower;
        lower = next;
    }
    out.value = lower;
    out.method = PcfMethod::kRecursion;
    out.cancellation = out.value != 0.0 ? worst / std::abs(out.value)
                                        : std::numeric_limits<double>::infinity();
    return checked(out);
}

double pcf(double s, double y) { return pcf_eval(s, y).value; }

double reflection_product(double s, double y, unsigned kmax) {
    if (s == std::floor(s)) throw InputError("reflection_product: s must not be an integer");
    const bool adaptive = kmax == 0;
    const unsigned limit = adaptive ? 400u : kmax;
    double coeff = 1.0;
    double sum = 0.0;
    int small_terms = 0;
    for (unsigned k = 0; k <= limit; ++k) {
        const double term = coeff * pcf(2.0 * k + 1.0, y);
        sum += term;
        if (adaptive) {
            small_terms = std::abs(term) <= 1e-17 * std::abs(sum) ? small_terms + 1 : 0;
            if (small_terms >= 3) break;
        }
        coeff *= (k + s) * (k + 1.0 - s) / (k + 1.0);
    }
    return sum;
}

double rightmost_zero(double y_plus, double scan_step) {
    if (!(scan_step > 0.0)) throw InputError("rightmost_zero: scan step must be positive");
    auto f = [y_plus](double s) { return pcf(s, y_plus); };
    double hi = 0.0;
    double f_hi = f(hi);
    std::ostringstream trace;
    trace << "rightmost_zero: no sign change of D_s(" << y_plus << ") for s in [";
    const double s_floor = -200.0;
    for (int k = 1; -k * scan_step >= s_floor; ++k) {
        const double lo = -k * scan_step;
        const double f_lo = f(lo);
        if (f_lo == 0.0) return -lo;
        if ((f_lo > 0.0) != (f_hi > 0.0)) return -bisect(f, lo, hi, 1e-15, 4e-16);
        hi = lo;
        f_hi = f_lo;
    }
    trace << s_floor << ", 0]; last value " << f_hi;
    throw NumericError(trace.str());
}

double hermite_leftmost_zero(unsigned n) {
    if (n == 0) throw InputError("hermite_leftmost_zero: n must be at least 1");
    if (n == 1) return 0.0;
    auto f = [n](double y) { return hermite_he(n, y); };
    const double step = 0.01;
    double lo = -(2.0 * std::sqrt(static_cast<double>(n)) + 2.0);
    double f_lo = f(lo);
    for (double hi = lo + step; hi <= 0.0; hi += step) {
        const double f_hi = f(hi);
        if (f_hi == 0.0) return hi;
        if ((f_hi > 0.0) != (f_lo > 0.0)) return bisect(f, lo, hi, 1e-15, 1e-15);
        lo = hi;
        f_lo = f_hi;
    }
    throw NumericError("hermite_leftmost_zero: scan found no sign change");
}

}  // namespace fpt
