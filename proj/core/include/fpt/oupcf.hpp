#pragma once

#include <string_view>

namespace fpt {

/// Parabolic cylinder function in the normalization
///   D_s(y) = (1/Gamma(s)) * int_0^inf u^{s-1} exp(y u - u^2/2) du,   s > 0,
/// continued to s <= 0 by D_s = -y D_{s+1} + (s+1) D_{s+2}.
/// D_1 = Phi/phi, D_{-r} = (-1)^r He_r, and d/dy D_s = s D_{s+1}.
enum class PcfMethod { kIntegral, kRecursion, kHermite };
std::string_view to_string(PcfMethod m);

struct PcfEval {
    double s = 0.0;
    double y = 0.0;
    double value = 0.0;
    PcfMethod method = PcfMethod::kIntegral;
    /// Largest |term| in the downward recursion over |value|; 1 when no recursion ran.
    double cancellation = 1.0;
};

inline constexpr double kPcfMaxArgument = 40.0;

/// Throws InputError for non-finite input or |y| > 40 and NumericError when the
/// value overflows a double.
PcfEval pcf_eval(double s, double y);
double pcf(double s, double y);

/// Truncated reflection series
///   sum_{k=0}^{kmax} Gamma(k+s) Gamma(k+1-s) / (k! Gamma(s) Gamma(1-s)) * D_{2k+1}(y),
/// which converges to D_s(y) D_{1-s}(y). kmax = 0 sums until the terms are
/// negligible (at most 400). Throws InputError for integer s.
double reflection_product(double s, double y, unsigned kmax = 0);

/// Exact OU decay rate: lambda = -s for the zero of s -> D_s(y_plus) with the
/// largest s < 0. Scans downward from 0 in steps of `scan_step`, then bisects.
double rightmost_zero(double y_plus, double scan_step = 0.05);

/// Smallest real zero of He_n.
double hermite_leftmost_zero(unsigned n);

}  // namespace fpt
