#include "fpt/decay.hpp"
#include "fpt/density.hpp"
#include "fpt/error.hpp"
#include "fpt/numerics.hpp"
#include "fpt/oupcf.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace {

fpt::BuiltinParams params(fpt::BuiltinKind kind, double mu = 1.0, double alpha = 2.0,
                          double gamma = 1.0) {
    fpt::BuiltinParams p;
    p.kind = kind;
    p.mu = mu;
    p.alpha = alpha;
    p.gamma = gamma;
    return p;
}

TEST(Fisher, ClosedFormsAgreeWithQuadrature) {
    for (const auto& p : {params(fpt::BuiltinKind::kOu), params(fpt::BuiltinKind::kDryFriction, 1.7),
                          params(fpt::BuiltinKind::kTanh, 1.0, 3.0, 1.5)}) {
        const auto m = fpt::builtin(p);
        const auto num = fpt::theta_fisher(m.field, m.measure);
        const auto closed = fpt::theta_fisher(p);
        EXPECT_NEAR(num.theta / closed.theta, 1.0, 1e-8) << to_string(p.kind);
    }
    EXPECT_EQ(fpt::theta_fisher(params(fpt::BuiltinKind::kOu)).theta, 1.0);
    EXPECT_EQ(fpt::theta_fisher(params(fpt::BuiltinKind::kDryFriction, 1.7)).theta, 1.7 * 1.7);
    EXPECT_TRUE(fpt::theta_fisher(params(fpt::BuiltinKind::kAbm)).abm_limit);
}

TEST(Fisher, TanhInTheAlternativeParameterization) {
    // A = -(alpha/gamma) tanh(gamma y): <A^2> = alpha^2/(alpha + gamma^2)
    auto p = params(fpt::BuiltinKind::kTanh, 1.0, 3.0, 1.5);
    p.form = fpt::TanhForm::kAlphaOverGammaTanhGammaY;
    EXPECT_NEAR(fpt::theta_fisher(p).theta, 9.0 / (3.0 + 2.25), 1e-14);
}

TEST(Fisher, SmoothFieldsSatisfyTheIntegrationByPartsIdentity) {
    const auto p = params(fpt::BuiltinKind::kTanh, 1.0, 3.0, 1.5);
    const auto m = fpt::builtin(p);
    const auto r = fpt::theta_fisher(m.field, m.measure);
    EXPECT_NEAR(r.mean_minus_drift_prime / r.theta, 1.0, 1e-8);
}

TEST(Nu, KnownValues) {
    const auto ou = fpt::builtin(params(fpt::BuiltinKind::kOu));
    EXPECT_EQ(fpt::nu_coefficient(ou.field, 1.0, 1.0, 0.0), 0.0);
    const double l = fpt::rightmost_zero(1.0);
    EXPECT_NEAR(fpt::nu_coefficient(ou.field, 1.0, l, 1.0), 3.0 - 2.0 * l - 1.0 + 0.5, 1e-15);
    EXPECT_NEAR(fpt::nu_coefficient(ou.field, 1.0, l, 1.0), 1.724, 1e-3);
    const auto df = fpt::builtin(params(fpt::BuiltinKind::kDryFriction));
    // the kink at 0 contributes A' = 0 and A from below = 1
    EXPECT_NEAR(fpt::nu_coefficient(df.field, 1.0, 0.25, 0.0), 3.0 - 0.5 + 0.5, 1e-15);
}

TEST(Density, OuAtEquilibriumIsExact) {
    const auto m = fpt::builtin(params(fpt::BuiltinKind::kOu));
    for (double y0 : {-0.5, -1.0, -2.5}) {
        const auto d = fpt::make_density_model(m, y0, 0.0);
        EXPECT_EQ(d.nu, 0.0);
        EXPECT_NEAR(d.rho, 0.0, 1e-6);
        for (double tau : {2e-3, 0.1, 1.0, 5.0, 10.0}) {
            const double exact = fpt::ou_equilibrium_density(y0, tau);
            if (exact < 1e-250) {
                EXPECT_LT(fpt::eval_density(d, tau), 1e-249);
                continue;
            }
            EXPECT_NEAR(fpt::eval_density(d, tau) / exact, 1.0, 1e-6)
                << y0 << " " << tau;
        }
    }
}

TEST(Density, AbmIsInverseGaussian) {
    const auto m = fpt::builtin(params(fpt::BuiltinKind::kAbm, 0.8));
    const auto d = fpt::make_density_model(m, -1.5, 0.0);
    EXPECT_TRUE(d.abm_limit);
    for (double tau : {1e-3, 0.3, 2.0, 10.0}) {
        EXPECT_NEAR(fpt::eval_density(d, tau) / fpt::inverse_gaussian_density(0.8, 1.5, tau), 1.0,
                    1e-10);
    }
}

TEST(Density, NormalizesToOne) {
    for (const auto& p : {params(fpt::BuiltinKind::kOu), params(fpt::BuiltinKind::kTanh),
                          params(fpt::BuiltinKind::kDryFriction)}) {
        const auto m = fpt::builtin(p);
        const auto d = fpt::make_density_model(m, -1.0, 1.0);
        EXPECT_NEAR(fpt::normalization(d, d.rho), 1.0, 1e-8) << to_string(p.kind);
        EXPECT_TRUE(std::isfinite(d.rho));
    }
}

TEST(Density, RhoBarelyMattersNearTheBarrier) {
    const auto m = fpt::builtin(params(fpt::BuiltinKind::kOu));
    const auto d = fpt::make_density_model(m, 1.0 - 1e-4, 1.0);
    EXPECT_NEAR(fpt::normalization(d, d.rho + 1.0), 1.0, 1e-3);
}

TEST(Density, ShortTimeLevySmirnovLaw) {
    const auto m = fpt::builtin(params(fpt::BuiltinKind::kOu));
    const double tau = 1e-4;
    const auto sym = fpt::make_density_model(m, -0.05, 0.05);
    EXPECT_NEAR(fpt::eval_density(sym, tau) / fpt::levy_smirnov(0.1, tau), 1.0, 0.01);
    // off the symmetric pair the limit carries (psi(y_plus)/psi(y0))^(1/2)
    const auto d = fpt::make_density_model(m, 0.9, 1.0);
    const double factor = std::exp(0.5 * d.log_psi_ratio);
    EXPECT_NEAR(fpt::eval_density(d, tau) / fpt::levy_smirnov(0.1, tau), factor, 0.01 * factor);
    EXPECT_LT(factor, 0.96);
}

TEST(Density, RejectsBadArguments) {
    const auto m = fpt::builtin(params(fpt::BuiltinKind::kOu));
    EXPECT_THROW(fpt::make_density_model(m, 1.0, 0.5), fpt::InputError);
    const auto d = fpt::make_density_model(m, -1.0, 0.0);
    EXPECT_THROW(fpt::eval_density(d, 0.0), fpt::InputError);
}

TEST(HTilde, VanishesForOuAtEquilibrium) {
    const auto m = fpt::builtin(params(fpt::BuiltinKind::kOu));
    const auto sol = fpt::solve_h_tilde(m.field, 1.0, 0.0, -4.0);
    ASSERT_FALSE(sol.blew_up);
    for (double y = -4.0; y <= -0.1; y += 0.05) EXPECT_LE(std::abs(sol.h_tilde(y)), 1e-6) << y;
}

TEST(HTilde, BoundaryValueAndSlope) {
    const auto m = fpt::builtin(params(fpt::BuiltinKind::kTanh));
    const double yp = 0.7;
    const double lambda = 0.6;
    const auto sol = fpt::solve_h_tilde(m.field, lambda, yp, -3.0);
    const double a = m.field.drift(yp);
    EXPECT_NEAR(sol.h_tilde(yp), a / 2.0, 1e-12);
    const double slope = (lambda - a * a / 4.0 + m.field.drift_prime(yp)) / 3.0;
    const double h = 1e-3;
    EXPECT_NEAR((sol.h_tilde(yp) - sol.h_tilde(yp - h)) / h, slope, 1e-2);
}

TEST(HAnsatz, LimitsInTimeAndSpace) {
    const auto m = fpt::builtin(params(fpt::BuiltinKind::kTanh));
    const auto d = fpt::make_density_model(m, -1.0, 0.5);
    const auto sol = fpt::solve_h_tilde(m.field, d.lambda, d.y_plus, -3.0);
    const double y = -0.8;
    const double yp = d.y_plus;
    const double tau = 1e-6;
    const double laurent = (y - yp) / (2.0 * tau) + m.field.drift(y) / 2.0 + 1.0 / (yp - y);
    EXPECT_NEAR(fpt::h_ansatz(d, sol.h_tilde, tau, y) - laurent, 0.0, 1e-3);
    EXPECT_NEAR(fpt::h_ansatz(d, sol.h_tilde, 200.0, y), 1.0 / (yp - y) + sol.h_tilde(y), 1e-10);
    for (double tau2 : {0.1, 1.0, 10.0}) {
        const double yy = yp - 1e-7;
        EXPECT_NEAR((yp - yy) * fpt::h_ansatz(d, sol.h_tilde, tau2, yy), 1.0, 1e-5);
    }
}

TEST(ShortTimeRemainder, Limits) {
    EXPECT_EQ(fpt::ou_short_time_remainder(0.7, 0.7, 0.3), 0.0);
    EXPECT_NEAR(fpt::ou_short_time_remainder(-1.2, 0.0, 0.4), 0.4 * -1.2 / 6.0, 1e-15);
    const double yp = 1.0;
    const double tau = 0.01;
    const double y = yp - 8.0 * std::sqrt(2.0 * tau);
    EXPECT_NEAR(fpt::ou_short_time_remainder(y, yp, tau), tau * (yp / 4.0 - (yp - y) / 6.0),
                tau * yp / 4.0 * 0.02);
}

}  // namespace
