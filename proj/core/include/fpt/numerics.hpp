#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <vector>

namespace fpt {

using RealFn = std::function<double(double)>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kSqrt2 = 1.41421356237309504880;
inline constexpr double kSqrt2Pi = 2.50662827463100050242;
inline constexpr double kEulerGamma = 0.57721566490153286061;

double normal_pdf(double x);
double normal_cdf(double x);
double log_normal_pdf(double x);

/// Upper-tail Mills ratio Phi(-z)/phi(z), accurate for all finite z
/// (asymptotic series beyond the erfc range).
double mills_ratio(double z);

/// Catalan number (2r)!/(r!(r+1)!) as a double.
double catalan(unsigned r);

/// Probabilists' Hermite polynomial He_n(y) by three-term recurrence.
double hermite_he(unsigned n, double y);

/// log cosh(x) without overflow.
double log_cosh(double x);

/// Adaptive Gauss-Kronrod (G7/K15) on a finite interval, relative tolerance.
double integrate(const RealFn& f, double a, double b, double rel_tol = 1e-13,
                 unsigned max_depth = 18);

/// Same, split at the supplied interior breakpoints (sorted or not; points
/// outside (a, b) are ignored).
double integrate(const RealFn& f, double a, double b, std::span<const double> breaks,
                 double rel_tol = 1e-13, unsigned max_depth = 18);

/// Tanh-sinh quadrature on a finite interval; tolerates integrable endpoint
/// singularities and never samples the endpoints themselves.
double integrate_singular(const RealFn& f, double a, double b, double rel_tol = 1e-13);

/// Integral of f over [a, +inf) by exp-sinh quadrature.
double integrate_to_infinity(const RealFn& f, double a, double rel_tol = 1e-12);

/// Bisection for a sign change of f on [lo, hi]; stops when the bracket is
/// narrower than abs_tol + rel_tol*|mid|. Throws NumericError when f(lo) and
/// f(hi) share a sign.
double bisect(const RealFn& f, double lo, double hi, double abs_tol, double rel_tol = 0.0);

/// Monotone piecewise-cubic (PCHIP) interpolant on strictly increasing nodes.
/// Queries landing exactly on a node return the stored value.
class MonotoneCubic {
public:
    MonotoneCubic() = default;
    MonotoneCubic(std::vector<double> x, std::vector<double> y);

    double operator()(double x) const;
    double derivative(double x) const;

    double x_min() const { return xs_.front(); }
    double x_max() const { return xs_.back(); }
    std::span<const double> nodes() const { return xs_; }
    std::span<const double> values() const { return ys_; }
    bool empty() const { return xs_.empty(); }

private:
    struct Impl;
    std::vector<double> xs_;
    std::vector<double> ys_;
    std::shared_ptr<const Impl> impl_;
};

/// Uniformly spaced grid helper: n+1 points from a to b inclusive.
std::vector<double> linspace(double a, double b, std::size_t n_intervals);

}  // namespace fpt
