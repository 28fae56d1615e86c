#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "hawkrad/black_hole.hpp"
#include "hawkrad/errors.hpp"
#include "support/oracles.hpp"

using namespace hawkrad;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST(HorizonRadius, SchwarzschildIsTwiceTheMass) {
    EXPECT_EQ(horizon_radius(make_state(Family::Schwarzschild, 1.0)), 2.0);
    EXPECT_EQ(horizon_radius(make_state(Family::Schwarzschild, 3.5)), 7.0);
}

TEST(HorizonRadius, ReissnerNordstromLimits) {
    EXPECT_EQ(horizon_radius(make_state(Family::ReissnerNordstrom, 1.0, 0.0)), 2.0);
    EXPECT_EQ(horizon_radius(make_state(Family::ReissnerNordstrom, 1.0, 1.0)), 1.0);
}

TEST(HorizonRadius, KerrNewmanIsAreaRadius) {
    const auto s = make_state(Family::KerrNewman, 2.0, 0.5, 1.5);
    const double a = 0.75;
    const double rp = 2.0 + std::sqrt(4.0 - 0.25 - a * a);
    EXPECT_NEAR(horizon_radius(s), std::sqrt(rp * rp + a * a), 1e-14);
    EXPECT_NEAR(horizon_radius_sq(s), rp * rp + a * a, 1e-13);
}

TEST(HorizonRadius, ContinuousAtTheExtremalBoundary) {
    double prev = horizon_radius(make_state(Family::ReissnerNordstrom, 1.0, 0.9));
    for (double gap : {1e-2, 1e-4, 1e-6, 1e-8, 1e-10, 1e-12}) {
        const double r = horizon_radius(make_state(Family::ReissnerNordstrom, 1.0, 1.0 - gap));
        EXPECT_LT(r, prev);
        EXPECT_NEAR(r, 1.0, 2.0 * std::sqrt(2.0 * gap));
        prev = r;
    }
}

TEST(Discriminant, AccurateNearExtremality) {
    // Hairs on a decimal lattice: exactly extremal in intent, off by rounding
    // in binary. The discriminant must still carry full relative precision.
    using big = boost::multiprecision::cpp_bin_float_50;
    std::mt19937_64 g(31);
    std::uniform_int_distribution<int> k(1, 400);
    for (int i = 0; i < 20000; ++i) {
        const double m = k(g) * 0.1;
        const double q = (i % 2 ? 1 : -1) * (k(g) % 2 ? m : (m - 0.1 * (k(g) % 3)));
        const double j = i % 3 == 0 ? 0.0 : 0.1 * (k(g) % 7);
        const big bm = m, bq = q, bj = j;
        const big want = bm * bm - bq * bq - (bj / bm) * (bj / bm);
        const double d = extremality_discriminant(m, q, j);
        const double scale = static_cast<double>(abs(want));
        EXPECT_LE(std::fabs(static_cast<double>(big(d) - want)), 4e-16 * scale + 1e-30 * m * m)
            << m << " " << q << " " << j;
    }
}

TEST(Entropy, Examples) {
    EXPECT_NEAR(bh_entropy(make_state(Family::Schwarzschild, 1.0)), 4.0 * kPi, 1e-14);
    EXPECT_NEAR(bh_entropy(make_state(Family::Schwarzschild, 1.0, 0, 0, 1.0)), 4.0 * kPi + std::log(4.0 * kPi), 1e-13);
    EXPECT_NEAR(bh_entropy(make_state(Family::Schwarzschild, 1.0, 0, 0, 1.0)), 15.097, 5e-4);
    EXPECT_NEAR(bh_entropy(make_state(Family::ReissnerNordstrom, 1.0, 1.0)), kPi, 1e-14);
}

TEST(Entropy, MatchesExtendedPrecisionOracle) {
    std::mt19937_64 g(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 5000; ++i) {
        const double m = 100.0 * u(g) + 1e-3;
        const double q = m * 0.9 * (2 * u(g) - 1);
        const double j = m * std::sqrt(m * m - q * q) * 0.9 * (2 * u(g) - 1);
        const double alpha = (i % 3) - 1.0;
        const double want = static_cast<double>(oracle::entropy(m, q, j, alpha));
        EXPECT_NEAR(bh_entropy(make_state(Family::KerrNewman, m, q, j, alpha)), want, 1e-12 * (1 + std::fabs(want)));
    }
}

TEST(Entropy, FamilyReductionsAreBitwise) {
    std::mt19937_64 g(12);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 5000; ++i) {
        const double m = 1000.0 * u(g) + 1e-6;
        const double q = m * (2 * u(g) - 1);
        const double alpha = 3.0 * u(g) - 1.5;
        EXPECT_EQ(bh_entropy(make_state(Family::ReissnerNordstrom, m, 0.0, 0.0, alpha)),
                  bh_entropy(make_state(Family::Schwarzschild, m, 0.0, 0.0, alpha)));
        EXPECT_EQ(bh_entropy(make_state(Family::KerrNewman, m, q, 0.0, alpha)),
                  bh_entropy(make_state(Family::ReissnerNordstrom, m, q, 0.0, alpha)));
    }
}

TEST(Entropy, SchwarzschildIncreasesWithMass) {
    double prev = 0.0;
    for (int i = 1; i <= 10000; ++i) {
        const double s = bh_entropy(make_state(Family::Schwarzschild, i * 1e-3));
        EXPECT_GT(s, prev);
        prev = s;
    }
}

TEST(Entropy, AlphaRequiresPositiveArea) {
    EXPECT_EQ(bh_entropy(BlackHoleState::evaporated(Family::Schwarzschild)), 0.0);
    EXPECT_THROW(bh_entropy(BlackHoleState::evaporated(Family::Schwarzschild, 1.0)), DomainError);
}

TEST(State, RejectsInvalidInputs) {
    EXPECT_THROW(make_state(Family::Schwarzschild, 0.0), DomainError);
    EXPECT_THROW(make_state(Family::Schwarzschild, -1.0), DomainError);
    EXPECT_THROW(make_state(Family::Schwarzschild, NAN), DomainError);
    EXPECT_THROW(make_state(Family::Schwarzschild, INFINITY), DomainError);
    EXPECT_THROW(make_state(Family::Schwarzschild, 1.0, 0.1), DomainError);
    EXPECT_THROW(make_state(Family::ReissnerNordstrom, 1.0, 0.1, 0.1), DomainError);
    EXPECT_THROW(make_state(Family::ReissnerNordstrom, 1.0, 2.0), DomainError);
    EXPECT_THROW(make_state(Family::KerrNewman, 1.0, 0.8, 0.7), DomainError);
    EXPECT_THROW(make_state(Family::Schwarzschild, 1.0, 0.0, 0.0, NAN), DomainError);
    EXPECT_NO_THROW(make_state(Family::KerrNewman, 1.0, 0.6, 0.8));  // extremal
    EXPECT_NO_THROW(make_state(Family::Schwarzschild, 1.0, 0.0, 0.0, -7.0));
}

TEST(State, SuperExtremalMessageNamesTheCondition) {
    try {
        make_state(Family::ReissnerNordstrom, 1.0, 2.0);
        FAIL();
    } catch (const DomainError& e) {
        EXPECT_NE(std::string(e.what()).find("sub-extremal"), std::string::npos) << e.what();
    }
}

TEST(State, ParsesFamilyNames) {
    EXPECT_EQ(parse_family("schwarzschild"), Family::Schwarzschild);
    EXPECT_EQ(parse_family("rn"), Family::ReissnerNordstrom);
    EXPECT_EQ(parse_family("reissner-nordstrom"), Family::ReissnerNordstrom);
    EXPECT_EQ(parse_family("kn"), Family::KerrNewman);
    EXPECT_EQ(parse_family("kerr-newman"), Family::KerrNewman);
    EXPECT_THROW(parse_family("kerr"), UsageError);
    for (auto f : {Family::Schwarzschild, Family::ReissnerNordstrom, Family::KerrNewman}) {
        EXPECT_EQ(parse_family(family_name(f)), f);
    }
}

TEST(Emission, Examples) {
    const auto s = make_state(Family::Schwarzschild, 1.0);
    EXPECT_EQ(apply_emission(s, {}), s);
    EXPECT_THROW(apply_emission(s, {1.0, 0, 0}), RemnantInvalid);
    const auto rn = apply_emission(make_state(Family::ReissnerNordstrom, 2.0, 1.0), {0.5, 0.5, 0});
    EXPECT_EQ(rn.mass, 1.5);
    EXPECT_EQ(rn.charge, 0.5);
    EXPECT_EQ(rn.family, Family::ReissnerNordstrom);
}

TEST(Emission, RemnantClassification) {
    const auto s = make_state(Family::ReissnerNordstrom, 2.0, 1.0);
    EXPECT_EQ(remnant_kind(s, {0.5, 0.0, 0.0}), RemnantKind::Valid);
    EXPECT_EQ(remnant_kind(s, {1.0, 0.0, 0.0}), RemnantKind::Valid);    // extremal remnant
    EXPECT_EQ(remnant_kind(s, {1.5, 0.0, 0.0}), RemnantKind::Invalid);  // super-extremal
    EXPECT_EQ(remnant_kind(s, {2.0, 1.0, 0.0}), RemnantKind::Evaporated);
    EXPECT_EQ(remnant_kind(s, {2.5, 1.0, 0.0}), RemnantKind::Invalid);
    EXPECT_EQ(remnant_kind(make_state(Family::ReissnerNordstrom, 2.0, 1.0, 0.0, 1.0), {2.0, 1.0, 0.0}),
              RemnantKind::Invalid);
    EXPECT_TRUE(remnant_after(s, {2.0, 1.0, 0.0}).is_evaporated());
    EXPECT_THROW(apply_emission(s, {2.0, 1.0, 0.0}), RemnantInvalid);
}

TEST(Emission, SequentialApplicationEqualsCombined) {
    // Dyadic hairs keep every subtraction exact.
    std::mt19937_64 g(13);
    for (int i = 0; i < 2000; ++i) {
        const double m = static_cast<double>(512 + g() % 512) / 64.0;
        const double q = static_cast<double>(g() % 128) / 64.0 - 1.0;
        const Emission e1{static_cast<double>(g() % 64) / 64.0, static_cast<double>(g() % 16) / 64.0, 0.0};
        const Emission e2{static_cast<double>(g() % 64) / 64.0, static_cast<double>(g() % 16) / 64.0, 0.0};
        const auto s = make_state(Family::ReissnerNordstrom, m, q);
        if (remnant_kind(s, e1) != RemnantKind::Valid || remnant_kind(s, e1 + e2) != RemnantKind::Valid) continue;
        const auto s1 = apply_emission(s, e1);
        if (remnant_kind(s1, e2) != RemnantKind::Valid) continue;
        EXPECT_EQ(apply_emission(s1, e2), apply_emission(s, e1 + e2));
    }
}

TEST(Emission, PositiveEnergyLowersEntropy) {
    std::mt19937_64 g(14);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 2000; ++i) {
        const auto s = make_state(Family::Schwarzschild, 10.0 * u(g) + 0.1);
        const double w = s.mass * u(g) * 0.999 + 1e-9;
        EXPECT_LT(bh_entropy(apply_emission(s, {w, 0, 0})), bh_entropy(s));
    }
}

TEST(Temperature, Examples) {
    EXPECT_NEAR(hawking_temperature(make_state(Family::Schwarzschild, 1.0)), 1.0 / (8.0 * kPi), 1e-16);
    EXPECT_NEAR(hawking_temperature(make_state(Family::Schwarzschild, 1.0)), 0.0397887, 1e-7);
    EXPECT_NEAR(hawking_temperature(make_state(Family::Schwarzschild, 2.0)), 1.0 / (16.0 * kPi), 1e-16);
    EXPECT_THROW(hawking_temperature(make_state(Family::ReissnerNordstrom, 1.0, 1.0)), DomainError);
    EXPECT_TRUE(is_extremal(make_state(Family::ReissnerNordstrom, 1.0, 1.0)));
    EXPECT_FALSE(is_extremal(make_state(Family::ReissnerNordstrom, 1.0, 0.5)));
}

TEST(Temperature, ChargedFormulaReducesToSchwarzschild) {
    for (double m : {0.5, 1.0, 20.0}) {
        EXPECT_NEAR(hawking_temperature(make_state(Family::ReissnerNordstrom, m, 0.0)),
                    hawking_temperature(make_state(Family::Schwarzschild, m)), 1e-15);
    }
    // kappa / 2 pi with r+- = M +- sqrt(M^2 - Q^2) for RN.
    const double m = 2.0, q = 1.0;
    const double rp = m + std::sqrt(m * m - q * q), rm = m - std::sqrt(m * m - q * q);
    EXPECT_NEAR(hawking_temperature(make_state(Family::ReissnerNordstrom, m, q)),
                (rp - rm) / (4.0 * kPi * rp * rp), 1e-15);
}
