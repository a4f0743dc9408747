#pragma once

#include "fpt/forcefield.hpp"

#include <optional>
#include <string>

namespace fpt {

struct FisherResult {
    double theta = 0.0;          ///< <A^2> under psi
    double mean_minus_drift_prime = 0.0;  ///< <-A'> under psi (equal to theta for smooth A)
    bool abm_limit = false;      ///< psi not normalizable; theta set to 0
};

FisherResult theta_fisher(const ForceField& field, const InvariantMeasure& measure);

/// <A^2> in closed form for the built-in fields: 1 for OU, mu^2 for dry friction,
/// a^2 gamma/(a + gamma) for -a tanh(gamma y), 0 (constant-drift limit) for ABM.
FisherResult theta_fisher(const BuiltinParams& params);

/// [3 theta - 2 lambda + A'(y_plus) + A(y_plus)^2/2] / theta, with A taken
/// from below at a kink.
double nu_coefficient(const ForceField& field, double theta, double lambda, double y_plus);

struct DensityOptions {
    std::optional<double> theta;   ///< default: Fisher information
    std::optional<double> lambda;  ///< default: exact when known, else Algorithm 1
    bool calibrate = true;
};

/// Global first-passage density approximation for a start y0 below y_plus:
///
///   f(tau) = (y_plus - y0) e^{-lambda tau} / sqrt(pi (1-q)^3 / 2 theta^3)
///            * exp(-theta sqrt(q) (y0-y_plus)^2 / 2(1-q))
///            * (psi(y_plus)/psi(y0))^{sqrt(q)/(1+sqrt(q))}
///            * ((1+sqrt(q))/2)^nu * exp(rho (1-sqrt(q))/(1+sqrt(q))),   q = e^{-2 theta tau}.
///
/// theta = 0 is the constant-drift limit, where the q-dependent factors are
/// replaced by their limits and f is an inverse Gaussian.
struct DensityModel {
    ForceField field;
    InvariantMeasure measure;
    double y0 = 0.0;
    double y_plus = 0.0;
    double theta = 0.0;
    double lambda = 0.0;
    double nu = 0.0;
    double rho = 0.0;
    double log_psi_ratio = 0.0;  ///< ln psi(y_plus) - ln psi(y0)
    std::string theta_source{};
    std::string lambda_source{};
    bool abm_limit = false;
    bool rho_insensitive = false;       ///< normalization barely depends on rho
    double normalization_residual = 0.0;

    double distance() const { return y_plus - y0; }
};

/// Builds and, unless disabled, calibrates the model. Throws InputError for
/// y0 >= y_plus and NumericError when calibration fails.
DensityModel make_density_model(const Model& model, double y0, double y_plus,
                                const DensityOptions& options = {});

/// Integral of f over (0, inf) at the given rho, by the trapezium rule in ln tau.
double normalization(const DensityModel& model, double rho);

/// Sets model.rho so that the density integrates to one; returns it.
double calibrate_rho(DensityModel& model);

/// Throws InputError for tau <= 0.
double eval_density(const DensityModel& model, double tau);
double log_density(const DensityModel& model, double tau);

/// Solution of the regularized Riccati equation
///   h~' = lambda + h~^2 - A h~ + (2 h~ - A)/(y_plus - y)
/// integrated leftward from the barrier.
struct HTildeSolution {
    double y_plus = 0.0;
    double y_stop = 0.0;  ///< leftmost point reached
    bool blew_up = false;
    std::string note;
    RealFn h_tilde;       ///< valid on [y_stop, y_plus]
    RealFn rho;           ///< y -> int_y^{y_plus} h~
};

HTildeSolution solve_h_tilde(const ForceField& field, double lambda, double y_plus, double y_min);

/// The ansatz for -d/dy ln f at (tau, y), with h~ supplied.
double h_ansatz(const DensityModel& model, const RealFn& h_tilde, double tau, double y);

/// OU remainder of the linearized short-time equation with z = (y_plus - y)/sqrt(2 tau):
/// (tau y_plus/4) z Phi(-z)/phi(z) - tau (y_plus - y)/6.
double ou_short_time_remainder(double y0, double y_plus, double tau);

/// b / sqrt(4 pi tau^3) exp(-b^2 / 4 tau).
double levy_smirnov(double b, double tau);

/// First-passage density over distance b for constant drift mu toward the barrier.
double inverse_gaussian_density(double mu, double b, double tau);

/// Exact OU density from y0 < 0 to the equilibrium level 0, by the time change
/// T = e^{2 tau} - 1 of the Brownian hitting density.
double ou_equilibrium_density(double y0, double tau);

}  // namespace fpt
