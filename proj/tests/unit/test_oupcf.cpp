#include "fpt/error.hpp"
#include "fpt/numerics.hpp"
#include "fpt/oupcf.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

namespace {

TEST(Pcf, OrderOneIsTheMillsRatio) {
    for (double y : {-3.0, -0.5, 0.0, 1.2, 4.0}) {
        EXPECT_NEAR(fpt::pcf(1.0, y) / (fpt::normal_cdf(y) / fpt::normal_pdf(y)), 1.0, 1e-12);
    }
    EXPECT_NEAR(fpt::pcf(1.0, 0.0), 1.2533141373155003, 1e-13);
}

TEST(Pcf, NegativeIntegerOrdersAreHermitePolynomials) {
    for (double y : {-2.0, -0.3, 0.7, 2.5}) {
        EXPECT_NEAR(fpt::pcf(-2.0, y), y * y - 1.0, 1e-12);
        EXPECT_NEAR(fpt::pcf(-3.0, y), -(y * y * y - 3.0 * y), 1e-11);
    }
}

TEST(Pcf, DerivativeRaisesTheOrder) {
    const double h = 1e-5;
    for (double s : {-2.7, -1.3, -0.4, 0.6, 1.5}) {
        for (double y : {-1.5, 0.0, 1.0}) {
            const double fd = (fpt::pcf(s, y + h) - fpt::pcf(s, y - h)) / (2.0 * h);
            EXPECT_NEAR(fd, s * fpt::pcf(s + 1.0, y), 1e-7 * (1.0 + std::abs(fd)))
                << "s=" << s << " y=" << y;
        }
    }
}

TEST(Pcf, ThreeTermRecurrenceHolds) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> us(-3.0, 0.0);
    std::uniform_real_distribution<double> uy(-3.0, 3.0);
    for (int i = 0; i < 200; ++i) {
        const double s = us(rng);
        const double y = uy(rng);
        const double a = fpt::pcf(s, y);
        const double b = y * fpt::pcf(s + 1.0, y);
        const double c = (s + 1.0) * fpt::pcf(s + 2.0, y);
        const double scale = std::max({std::abs(a), std::abs(b), std::abs(c)});
        EXPECT_LE(std::abs(a + b - c), 1e-9 * scale) << "s=" << s << " y=" << y;
    }
}

TEST(Pcf, RejectsOutOfRangeArguments) {
    EXPECT_THROW(fpt::pcf(0.5, 41.0), fpt::InputError);
    EXPECT_THROW(fpt::pcf(std::nan(""), 0.0), fpt::InputError);
}

TEST(Reflection, MatchesTheDirectProduct) {
    const double d = fpt::pcf(0.5, 0.0);
    EXPECT_NEAR(fpt::reflection_product(0.5, 0.0), d * d, 1e-8);
    EXPECT_NEAR(fpt::reflection_product(0.25, 1.0), fpt::pcf(0.25, 1.0) * fpt::pcf(0.75, 1.0),
                1e-8);
    EXPECT_NEAR(fpt::reflection_product(0.3, -0.8), fpt::reflection_product(0.7, -0.8), 1e-12);
    EXPECT_THROW(fpt::reflection_product(2.0, 0.0), fpt::InputError);
}

TEST(RightmostZero, TableValues) {
    EXPECT_EQ(fpt::rightmost_zero(0.0), 1.0);
    EXPECT_NEAR(fpt::rightmost_zero(-1.0), 2.0, 1e-12);
    EXPECT_NEAR(fpt::rightmost_zero(-std::sqrt(3.0)), 3.0, 1e-10);
    EXPECT_NEAR(fpt::rightmost_zero(2.0), 0.0973, 5e-5);
    EXPECT_NEAR(fpt::rightmost_zero(3.0), 0.0116, 5e-5);
    EXPECT_NEAR(fpt::rightmost_zero(-0.5), 1.449, 5e-4);
    EXPECT_NEAR(fpt::rightmost_zero(0.5), 0.649, 5e-4);
    EXPECT_NEAR(fpt::rightmost_zero(1.0), 0.388, 5e-4);
}

TEST(RightmostZero, IsStrictlyDecreasing) {
    double prev = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 50; ++i) {
        const double y = -3.0 + 6.0 * i / 49.0;
        const double l = fpt::rightmost_zero(y);
        EXPECT_LT(l, prev) << y;
        prev = l;
    }
}

TEST(RightmostZero, HermiteZerosGiveIntegerRates) {
    for (unsigned n = 1; n <= 5; ++n) {
        EXPECT_NEAR(fpt::rightmost_zero(fpt::hermite_leftmost_zero(n)), n, 1e-8) << n;
    }
}

TEST(HermiteZero, KnownValues) {
    EXPECT_NEAR(fpt::hermite_leftmost_zero(1), 0.0, 1e-15);
    EXPECT_NEAR(fpt::hermite_leftmost_zero(2), -1.0, 1e-14);
    EXPECT_NEAR(fpt::hermite_leftmost_zero(3), -std::sqrt(3.0), 1e-14);
    EXPECT_NEAR(fpt::hermite_leftmost_zero(5), -2.857, 1e-3);
    for (unsigned n = 2; n <= 8; ++n) {
        EXPECT_NEAR(fpt::hermite_he(n, fpt::hermite_leftmost_zero(n)), 0.0, 1e-9) << n;
    }
}

}  // namespace
