#include "fpt/error.hpp"
#include "fpt/forcefield.hpp"
#include "fpt/hseries.hpp"
#include "fpt/numerics.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace {

fpt::Model make(fpt::BuiltinKind kind, double mu = 1.0) {
    fpt::BuiltinParams p;
    p.kind = kind;
    p.mu = mu;
    return fpt::builtin(p);
}

fpt::HTable table_for(const fpt::Model& m, double z_max, unsigned r_max, double Z = -10.0,
                      double step = 1.0 / 32.0) {
    fpt::HGrid g;
    g.Z = Z;
    g.step = step;
    g.z_max = z_max;
    return fpt::build_table(m.field, m.measure, g, r_max);
}

TEST(H1, ClosedForms) {
    const auto ou = make(fpt::BuiltinKind::kOu);
    EXPECT_NEAR(fpt::h1(ou.measure, 0.0), std::sqrt(M_PI / 2.0), 1e-14);
    EXPECT_NEAR(fpt::h1(ou.measure, -1.3), fpt::normal_cdf(-1.3) / fpt::normal_pdf(-1.3), 1e-13);
    const auto abm = make(fpt::BuiltinKind::kAbm, 2.0);
    EXPECT_NEAR(fpt::h1(abm.measure, 0.7), 0.5, 1e-12);
}

TEST(HTable, AbmCoefficientsAreScaledCatalanNumbers) {
    for (double mu : {0.5, 1.0, 2.0}) {
        const auto m = make(fpt::BuiltinKind::kAbm, mu);
        const auto t = table_for(m, 2.0, 6);
        for (unsigned r = 1; r <= 6; ++r) {
            const double exact = fpt::catalan(r - 1) * std::pow(mu, 1.0 - 2.0 * r);
            for (double z : {-5.0, 0.0, 2.0}) {
                EXPECT_NEAR(t(r, z) / exact, 1.0, 5e-3) << "mu=" << mu << " r=" << r;
            }
        }
    }
}

TEST(HTable, AllEntriesArePositive) {
    for (auto kind : {fpt::BuiltinKind::kOu, fpt::BuiltinKind::kDryFriction,
                      fpt::BuiltinKind::kTanh}) {
        const auto m = make(kind);
        const auto t = table_for(m, 3.0, 8);
        for (unsigned r = 1; r <= 8; ++r) {
            for (double v : t.column(r)) EXPECT_GT(v, 0.0);
        }
    }
}

TEST(HTable, LeftEdgeSeedIsCatalanScaled) {
    const auto m = make(fpt::BuiltinKind::kOu);
    const auto t = table_for(m, 0.0, 5, -12.0);
    const double h1z = t.at_node(1, 0);
    for (unsigned r = 2; r <= 5; ++r) {
        EXPECT_NEAR(t.at_node(r, 0) / std::pow(h1z, 2.0 * r - 1.0), fpt::catalan(r - 1),
                    1e-12 * fpt::catalan(r - 1));
    }
}

TEST(HTable, RightTailFollowsTheFarFieldForm) {
    const auto m = make(fpt::BuiltinKind::kOu);
    const auto t = table_for(m, 3.0, 2);
    const double y = 3.0;
    const double far = 1.0 / m.measure.psi(y);
    EXPECT_NEAR(t(1, y) / far, 1.0, 0.1);
}

TEST(HTable, NodesAreExactAndInterpolationIsBracketed) {
    const auto m = make(fpt::BuiltinKind::kOu);
    const auto t = table_for(m, 1.0, 4);
    const auto j = t.node_index(0.5);
    ASSERT_NE(j, fpt::HTable::npos);
    for (unsigned r = 1; r <= 4; ++r) {
        EXPECT_EQ(t(r, 0.5), t.at_node(r, j));
        const double mid = t(r, 0.5 + t.grid().step / 2.0);
        EXPECT_GT(mid, t.at_node(r, j));
        EXPECT_LT(mid, t.at_node(r, j + 1));
    }
    EXPECT_THROW(t(5, 0.0), fpt::InputError);
    EXPECT_THROW(t(1, 1.5), fpt::InputError);
}

TEST(HTable, FirstCoefficientMatchesTheMillsRatio) {
    const auto m = make(fpt::BuiltinKind::kOu);
    const auto t = table_for(m, 1.0, 2);
    const auto f = fpt::cumulant_integrand(t, 1);
    for (double z : {-3.0, -0.5, 0.8, 0.8125}) {
        EXPECT_NEAR(f(z) / fpt::mills_ratio(-z), 1.0, 1e-7);
    }
}

TEST(HTable, SecondCoefficientMatchesDirectQuadrature) {
    const auto m = make(fpt::BuiltinKind::kOu);
    const auto t = table_for(m, 0.0, 2);
    // h_2(0) = (1/psi(0)) int_{-inf}^0 psi h_1^2
    const double direct =
        fpt::integrate([](double z) {
            const double h = fpt::mills_ratio(-z);
            return fpt::normal_pdf(z) * h * h;
        }, -40.0, 0.0) / fpt::normal_pdf(0.0);
    EXPECT_NEAR(t(2, 0.0) / direct, 1.0, 1e-3);
}

TEST(HTable, HalvingTheStepBarelyMovesTheCoefficients) {
    const auto m = make(fpt::BuiltinKind::kOu);
    const auto coarse = table_for(m, 2.0, 6);
    const auto fine = table_for(m, 2.0, 6, -10.0, 1.0 / 64.0);
    for (double y : {-2.0, 0.0, 2.0}) {
        for (unsigned r = 1; r <= 6; ++r) {
            EXPECT_NEAR(coarse(r, y) / fine(r, y), 1.0, 1e-3) << "r=" << r << " y=" << y;
        }
    }
}

TEST(HTable, LeftCutoffBarelyMovesTheCoefficients) {
    const auto m = make(fpt::BuiltinKind::kOu);
    const auto a = table_for(m, 1.0, 6, -10.0);
    const auto b = table_for(m, 1.0, 6, -14.0);
    for (unsigned r = 1; r <= 6; ++r) EXPECT_NEAR(a(r, 1.0) / b(r, 1.0), 1.0, 1e-4) << r;
}

TEST(HGrid, AlignmentPutsTheBarrierOnANode) {
    fpt::HGrid g;
    g.z_max = 0.3;
    const auto a = g.aligned_to(0.3);
    EXPECT_LE(a.Z, g.Z);
    EXPECT_GT(a.Z, g.Z - g.step);
    const double k = (0.3 - a.Z) / a.step;
    EXPECT_NEAR(k, std::round(k), 1e-9);
}

}  // namespace
