#include "fpt/error.hpp"
#include "fpt/numerics.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace {

TEST(Numerics, MillsRatioMatchesErfcAndAsymptoticBranch) {
    EXPECT_NEAR(fpt::mills_ratio(0.0), std::sqrt(M_PI / 2.0), 1e-15);
    // the series branch takes over at 30; both sides must agree there
    const double below = 0.5 * std::erfc(29.999 / std::sqrt(2.0)) / fpt::normal_pdf(29.999);
    EXPECT_NEAR(fpt::mills_ratio(29.999) / below, 1.0, 1e-12);
    EXPECT_NEAR(fpt::mills_ratio(1e3), 1e-3 * (1.0 - 1e-6 + 3e-12), 1e-18);
}

TEST(Numerics, CatalanNumbers) {
    const double expected[] = {1, 1, 2, 5, 14, 42, 132, 429};
    for (unsigned r = 0; r < 8; ++r) EXPECT_EQ(fpt::catalan(r), expected[r]);
}

TEST(Numerics, HermiteHe) {
    EXPECT_EQ(fpt::hermite_he(0, 3.0), 1.0);
    EXPECT_EQ(fpt::hermite_he(2, 3.0), 8.0);
    EXPECT_EQ(fpt::hermite_he(3, 2.0), 2.0);
    EXPECT_NEAR(fpt::hermite_he(4, 1.5), std::pow(1.5, 4) - 6 * 1.5 * 1.5 + 3, 1e-14);
}

TEST(Numerics, LogCoshIsStableForLargeArguments) {
    EXPECT_NEAR(fpt::log_cosh(0.3), std::log(std::cosh(0.3)), 1e-16);
    EXPECT_NEAR(fpt::log_cosh(-800.0), 800.0 - std::log(2.0), 1e-12);
}

TEST(Numerics, IntegrateNarrowIntervalsWithoutExhaustingTheDepth) {
    int calls = 0;
    const double v = fpt::integrate(
        [&](double x) {
            ++calls;
            return std::cos(x);
        },
        0.3, 0.31, 1e-14, 12);
    EXPECT_NEAR(v, std::sin(0.31) - std::sin(0.3), 1e-16);
    EXPECT_LE(calls, 45);
}

TEST(Numerics, IntegrateSplitsAtBreaksAndHandlesReversedLimits) {
    auto f = [](double x) { return std::abs(x); };
    const double breaks[] = {0.0};
    EXPECT_NEAR(fpt::integrate(f, -1.0, 2.0, breaks), 2.5, 1e-14);
    EXPECT_NEAR(fpt::integrate(f, 2.0, -1.0, breaks), -2.5, 1e-14);
}

TEST(Numerics, IntegrateSingularAndInfinite) {
    EXPECT_NEAR(fpt::integrate_singular([](double u) { return 1.0 / std::sqrt(u); }, 0.0, 1.0),
                2.0, 1e-12);
    EXPECT_NEAR(fpt::integrate_to_infinity([](double u) { return std::exp(-u); }, 1.0),
                std::exp(-1.0), 1e-13);
}

TEST(Numerics, BisectFindsRootAndRejectsMissingBracket) {
    EXPECT_NEAR(fpt::bisect([](double x) { return x * x - 2.0; }, 0.0, 2.0, 1e-15),
                std::sqrt(2.0), 1e-14);
    EXPECT_THROW(fpt::bisect([](double x) { return x * x + 1.0; }, -1.0, 1.0, 1e-12),
                 fpt::NumericError);
}

TEST(Numerics, MonotoneCubicIsExactAtNodesAndMonotoneBetween) {
    std::vector<double> x{0, 1, 2, 3, 4};
    std::vector<double> y{0, 0.1, 0.2, 3, 3.1};
    fpt::MonotoneCubic m(x, y);
    for (std::size_t i = 0; i < x.size(); ++i) EXPECT_EQ(m(x[i]), y[i]);
    double prev = -1.0;
    for (double t = 0.0; t <= 4.0; t += 0.01) {
        const double v = m(t);
        EXPECT_GE(v, prev);
        prev = v;
    }
    EXPECT_THROW(m(4.5), fpt::InputError);
    EXPECT_THROW(fpt::MonotoneCubic({0, 0}, {1, 2}), fpt::InputError);
}

TEST(Numerics, WarningHandlerCanBeReplaced) {
    std::string seen;
    fpt::set_warning_handler([&](std::string_view m) { seen = m; });
    fpt::warn("hello");
    EXPECT_EQ(seen, "hello");
    fpt::set_warning_handler([](std::string_view) {});
}

}  // namespace
