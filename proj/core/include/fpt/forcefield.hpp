#pragma once

#include "fpt/numerics.hpp"

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fpt {

/// Drift field A of the unit-diffusion SDE dY = kappa*A(Y) dt + sqrt(2 kappa) dW,
/// written in dimensionless time tau = kappa*t.
///
/// `kinks` lists points where A is not differentiable. At a kink, drift_prime()
/// returns whatever the supplied derivative returns there; builders use the
/// average of the one-sided limits, except dry friction which uses 0.
class ForceField {
public:
    ForceField(std::string label, RealFn drift, RealFn drift_prime, double kappa = 1.0,
               std::vector<double> kinks = {});

    double drift(double y) const { return drift_(y); }
    double drift_prime(double y) const { return drift_prime_(y); }

    /// Value of A approached from below: differs from drift() only at kinks.
    /// Used for boundary quantities where y_+ is read as the limit y_+ -> y from below.
    double drift_from_below(double y) const;

    double kappa() const { return kappa_; }
    const std::string& label() const { return label_; }
    std::span<const double> kinks() const { return kinks_; }

private:
    std::string label_;
    RealFn drift_;
    RealFn drift_prime_;
    double kappa_;
    std::vector<double> kinks_;
};

/// Invariant density psi (psi'/psi = A) with its cumulative Psi.
///
/// For non-normalizable fields (arithmetic Brownian motion) psi is the
/// unnormalized density e^{mu y} and Psi its integral from -infinity.
class InvariantMeasure {
public:
    struct ClosedForm {
        RealFn log_psi;
        RealFn Psi;
        RealFn mills;  ///< Psi/psi; computed by quadrature when empty
        bool normalizable = true;
    };

    /// Closed-form density and cumulative.
    static InvariantMeasure closed_form(ClosedForm parts, std::vector<double> kinks = {});

    /// Psi by adaptive quadrature from a left cutoff where psi < 1e-300, cached at
    /// grid nodes and completed by a local quadrature on each query.
    /// `log_psi` must already be normalized when `normalizable` is true.
    static InvariantMeasure from_log_density(RealFn log_psi, bool normalizable,
                                             std::vector<double> kinks = {});

    /// log psi = integral of A from 0, normalized numerically when possible.
    static InvariantMeasure from_drift(const ForceField& field);

    double psi(double y) const;
    double log_psi(double y) const { return log_psi_(y); }
    double Psi(double y) const { return Psi_(y); }
    /// Psi(y)/psi(y) without underflow (the first Taylor coefficient h_1).
    double mills(double y) const { return mills_(y); }
    bool normalizable() const { return normalizable_; }

    /// Interval outside of which psi < 1e-300 (right end is +inf-like for
    /// non-normalizable measures and is then reported as the search cap).
    std::pair<double, double> support() const { return support_; }
    std::span<const double> kinks() const { return kinks_; }

private:
    InvariantMeasure() = default;

    RealFn log_psi_;
    RealFn Psi_;
    RealFn mills_;
    bool normalizable_ = true;
    std::pair<double, double> support_{-40.0, 40.0};
    std::vector<double> kinks_;
};

enum class BuiltinKind { kOu, kDryFriction, kTanh, kAbm };

/// The tanh drift is written two ways in the literature:
///   kAlphaTanhGammaY        A(y) = -alpha tanh(gamma y)
///   kAlphaOverGammaTanhGammaY A(y) = -(alpha/gamma) tanh(gamma y)
/// The amplitude is alpha in the first form and alpha/gamma in the second.
enum class TanhForm { kAlphaTanhGammaY, kAlphaOverGammaTanhGammaY };

struct BuiltinParams {
    BuiltinKind kind = BuiltinKind::kOu;
    double mu = 1.0;     ///< dry friction and ABM
    double alpha = 2.0;  ///< tanh
    double gamma = 1.0;  ///< tanh
    TanhForm form = TanhForm::kAlphaTanhGammaY;

    /// Amplitude a in A(y) = -a tanh(gamma y), whichever form was given.
    double tanh_amplitude() const;
};

/// A force field together with its invariant measure.
struct Model {
    ForceField field;
    InvariantMeasure measure;
    std::optional<BuiltinParams> builtin;
};

std::string_view to_string(BuiltinKind kind);
BuiltinKind parse_builtin_kind(std::string_view name);

/// Built-in fields: OU A=-y, dry friction A=-mu sgn y, tanh, ABM A=mu.
/// Throws InputError for nonpositive mu, or alpha/gamma out of range.
Model builtin(const BuiltinParams& params);

/// A field defined by its drift; the derivative falls back to central
/// differences when `drift_prime` is empty. The measure is built numerically.
Model model_from_drift(std::string label, RealFn drift, RealFn drift_prime = {},
                       double kappa = 1.0, std::vector<double> kinks = {});

/// Tabulated drift: sorted (y, A) pairs, monotone-cubic interpolation, held
/// constant beyond the ends.
Model model_from_table(std::string label, std::vector<double> y, std::vector<double> a,
                       double kappa = 1.0);

/// General SDE dX = mu_X(X) dt + sigma_X(X) dW on [x_lo, x_hi].
struct SdeSpec {
    RealFn mu_x;
    RealFn sigma_x;
    RealFn sigma_x_prime;  ///< optional; central differences when empty
    double kappa = 1.0;
    double x_lo = -10.0;
    double x_hi = 10.0;
    double x_ref = 0.0;  ///< maps to y = 0
    std::size_t nodes = 2000;
};

/// Monotone map x -> y with dy/dx = sqrt(2 kappa)/sigma_X(x), y(x_ref) = 0.
class LampertiMap {
public:
    static LampertiMap build(const SdeSpec& spec);

    double y_of_x(double x) const;
    double x_of_y(double y) const;
    double dy_dx(double x) const;
    double y_min() const;
    double y_max() const;

private:
    struct Data;
    std::shared_ptr<const Data> data_;
};

/// Transformed drift A(y) = sqrt(2/kappa) * (mu_X/sigma_X - sigma_X'/2) at x = x(y).
/// Throws InputError when sigma_X vanishes on the interval.
ForceField lamperti(const SdeSpec& spec);

enum class Tristate { kNo, kYes, kUndetermined };
std::string_view to_string(Tristate t);

struct Classification {
    Tristate s_minus = Tristate::kUndetermined;
    Tristate s_plus_star = Tristate::kUndetermined;
    Tristate completely_absorbing = Tristate::kUndetermined;
    std::vector<std::string> notes;
};

/// Heuristic regularity classes from samples at |y| in {20, 40, 80}.
/// `y_plus` is the barrier used for the lower-boundedness condition.
Classification classify(const ForceField& field, const InvariantMeasure& measure,
                        double y_plus = 0.0);

}  // namespace fpt
