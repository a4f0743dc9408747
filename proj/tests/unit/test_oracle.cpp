#include "fpt/density.hpp"
#include "fpt/error.hpp"
#include "fpt/oracle.hpp"
#include "fpt/oupcf.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

namespace {

fpt::Model make(fpt::BuiltinKind kind, double mu = 1.0) {
    fpt::BuiltinParams p;
    p.kind = kind;
    p.mu = mu;
    return fpt::builtin(p);
}

double sup_error(const fpt::SolutionGrid& s, const std::function<double(double)>& exact) {
    double worst = 0.0;
    for (std::size_t i = 1; i < s.tau.size(); ++i) {
        worst = std::max(worst, std::abs(s.f_probe[0][i] - exact(s.tau[i])));
    }
    return worst;
}

TEST(Pde, AbmMatchesTheInverseGaussian) {
    const auto m = make(fpt::BuiltinKind::kAbm);
    fpt::PdeOptions o;
    o.tau_max = 5.0;
    o.probes = {-1.0};
    const auto s = fpt::solve_pde(m.field, 0.0, o);
    EXPECT_LE(sup_error(s, [](double t) { return fpt::inverse_gaussian_density(1.0, 1.0, t); }),
              1e-3);
}

TEST(Pde, OuMatchesTheEquilibriumClosedForm) {
    const auto m = make(fpt::BuiltinKind::kOu);
    fpt::PdeOptions o;
    o.tau_max = 5.0;
    o.probes = {-1.0};
    const auto s = fpt::solve_pde(m.field, 0.0, o);
    EXPECT_LE(sup_error(s, [](double t) { return fpt::ou_equilibrium_density(-1.0, t); }), 1e-3);
}

TEST(Pde, CompletelyAbsorbsAndStaysBounded) {
    const auto m = make(fpt::BuiltinKind::kOu);
    const double lambda = fpt::rightmost_zero(0.5);
    fpt::PdeOptions o;
    o.tau_max = 10.0 / lambda;
    o.tau_grow = 1.0;
    o.growth = 1.002;
    o.probes = {-1.0};
    const auto s = fpt::solve_pde(m.field, 0.5, o);
    const auto& F = s.F_probe[0];
    EXPECT_GE(F.back(), 0.999);
    for (std::size_t i = 1; i < F.size(); ++i) {
        EXPECT_GE(F[i], F[i - 1] - 1e-12);
        EXPECT_LE(F[i], 1.0 + 1e-9);
    }
}

TEST(Pde, OffGridProbeIsRejected) {
    const auto m = make(fpt::BuiltinKind::kOu);
    fpt::PdeOptions o;
    o.tau_max = 0.1;
    o.probes = {-1.0 + 1e-3};
    EXPECT_THROW(fpt::solve_pde(m.field, 0.0, o), fpt::InputError);
}

TEST(Tree, AgreesWithThePde) {
    const auto m = make(fpt::BuiltinKind::kOu);
    const auto tree = fpt::solve_tree(m.field, 1.0, 0.0, 1e-3, 6.0);
    fpt::PdeOptions o;
    o.tau_max = 6.0;
    o.probes = {0.0};
    const auto pde = fpt::solve_pde(m.field, 1.0, o);
    for (double t : {1.0, 3.0, 6.0}) {
        auto it = std::lower_bound(pde.tau.begin(), pde.tau.end(), t - 1e-9);
        const double Fp = pde.F_probe[0][static_cast<std::size_t>(it - pde.tau.begin())];
        auto jt = std::lower_bound(tree.tau.begin(), tree.tau.end(), t - 1e-9);
        const double Ft = tree.F[static_cast<std::size_t>(jt - tree.tau.begin())];
        EXPECT_NEAR(Ft / Fp, 1.0, 5e-3) << t;
    }
}

TEST(Tree, AbmKolmogorovDistance) {
    const auto m = make(fpt::BuiltinKind::kAbm);
    const auto tree = fpt::solve_tree(m.field, 0.0, -1.0, 1e-3, 20.0);
    double worst = 0.0;
    for (std::size_t i = 0; i < tree.tau.size(); ++i) {
        // inverse Gaussian CDF for drift 1, distance 1, diffusion coefficient 2
        const double t = tree.tau[i];
        const double s = std::sqrt(2.0 * t);
        const double cdf = 0.5 * std::erfc(-(t - 1.0) / s / std::sqrt(2.0)) +
                           std::exp(1.0) * 0.5 * std::erfc((t + 1.0) / s / std::sqrt(2.0));
        worst = std::max(worst, std::abs(tree.F[i] - cdf));
    }
    EXPECT_LE(worst, 0.01);
}

TEST(Tree, RejectsStepsThatBreakTheProbabilities) {
    const auto m = make(fpt::BuiltinKind::kAbm, 50.0);
    EXPECT_THROW(fpt::solve_tree(m.field, 0.0, -1.0, 0.1, 1.0), fpt::InputError);
}

TEST(MonteCarlo, IsReproducibleAcrossThreadCounts) {
    const auto m = make(fpt::BuiltinKind::kOu);
    fpt::McOptions o;
    o.n_paths = 3000;
    o.tau_max = 20.0;
    o.seed = 99;
    o.threads = 1;
    const auto a = fpt::simulate(m.field, 1.0, 0.0, o);
    o.threads = 4;
    const auto b = fpt::simulate(m.field, 1.0, 0.0, o);
    EXPECT_EQ(a.samples, b.samples);
    EXPECT_EQ(a.censored, b.censored);
    o.seed = 100;
    EXPECT_NE(fpt::simulate(m.field, 1.0, 0.0, o).samples, a.samples);
    for (double t : a.samples) {
        EXPECT_GT(t, 0.0);
        EXPECT_LE(t, o.tau_max);
    }
    EXPECT_EQ(a.samples.size() + a.censored, o.n_paths);
}

TEST(MonteCarlo, StartNextToTheBarrierHitsAlmostAtOnce) {
    const auto m = make(fpt::BuiltinKind::kOu);
    fpt::McOptions o;
    o.n_paths = 2001;
    o.tau_max = 10.0;
    auto r = fpt::simulate(m.field, 0.0, -1e-3, o);
    std::nth_element(r.samples.begin(), r.samples.begin() + 1000, r.samples.end());
    EXPECT_LT(r.samples[1000], 0.01);
}

TEST(Kolmogorov, DistanceOfAPerfectSample) {
    std::vector<double> tau{0.0, 1.0};
    std::vector<double> cdf{0.0, 1.0};
    std::vector<double> samples;
    for (int i = 0; i < 1000; ++i) samples.push_back((i + 0.5) / 1000.0);
    EXPECT_LE(fpt::kolmogorov_distance(samples, 1000, tau, cdf), 1e-3 + 1e-12);
}

}  // namespace
