#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "hawkrad/errors.hpp"
#include "hawkrad/information.hpp"
#include "hawkrad/logspace.hpp"

using namespace hawkrad;
using boost::multiprecision::cpp_bin_float_50;

namespace {

constexpr double kPi = std::numbers::pi;

SpectrumGrid manual_unit_sum(std::vector<double> omega, std::vector<double> log_weight) {
    SpectrumGrid g;
    g.resize(omega.size());
    g.omega = std::move(omega);
    g.log_weight = std::move(log_weight);
    std::fill(g.valid.begin(), g.valid.end(), 1);
    g.normalization = Normalization::UnitSum;
    return g;
}

}  // namespace

TEST(RadiationEntropy, TrivialCases) {
    EXPECT_EQ(radiation_entropy(manual_unit_sum({0.5}, {0.0})), 0.0);
    EXPECT_NEAR(radiation_entropy(manual_unit_sum({0.1, 0.2}, {std::log(0.5), std::log(0.5)})), std::log(2.0), 1e-16);
    const auto raw = build_spectrum(make_state(Family::Schwarzschild, 1.0), {{0, 1, 8}, {}, {}}, Normalization::Raw);
    EXPECT_THROW(radiation_entropy(raw), UsageError);
}

TEST(RadiationEntropy, MatchesFiftyDigitOracle) {
    const auto s = make_state(Family::Schwarzschild, 1.0);
    const auto sp = build_spectrum(s, {{0, 1, 64}, {}, {}}, Normalization::UnitSum);
    const cpp_bin_float_50 pi = boost::math::constants::pi<cpp_bin_float_50>();
    std::vector<cpp_bin_float_50> lw;
    cpp_bin_float_50 z = 0;
    for (int i = 1; i <= 64; ++i) {
        const cpp_bin_float_50 w = cpp_bin_float_50(i) / 64;
        lw.push_back(-8 * pi * w * (1 - w / 2));
        z += exp(lw.back());
    }
    cpp_bin_float_50 h = 0;
    for (const auto& v : lw) {
        const cpp_bin_float_50 p = exp(v) / z;
        h -= p * log(p);
    }
    EXPECT_NEAR(radiation_entropy(sp), static_cast<double>(h), 1e-10);
    EXPECT_GE(radiation_entropy(sp), 0.0);
}

TEST(ConditionalEntropy, ZeroEmissionGivesHoleEntropy) {
    const auto s = make_state(Family::KerrNewman, 3.0, 1.0, 2.0, 0.5);
    const auto c = conditional_entropy(s, manual_unit_sum({0.0}, {0.0}));
    EXPECT_NEAR(c.exact, bh_entropy(s), 1e-12);
    EXPECT_NEAR(c.lowenergy, bh_entropy(s), 1e-12);
    EXPECT_EQ(c.mean_omega, 0.0);
    EXPECT_EQ(c.excluded_mass, 0.0);
}

TEST(ConditionalEntropy, LowEnergyAgreement) {
    const auto s = make_state(Family::Schwarzschild, 10.0);
    const auto sp = build_spectrum(s, {{0, 0.01, 64}, {}, {}}, Normalization::UnitSum);
    const auto c = conditional_entropy(s, sp);
    EXPECT_LE(std::fabs(c.exact - c.lowenergy) / c.exact, 1e-4);
    EXPECT_NEAR(c.remnant_energy, 10.0 - c.mean_omega, 1e-15);
}

TEST(ConditionalEntropy, GapIsFourPiVarianceForSchwarzschild) {
    const auto s = make_state(Family::Schwarzschild, 1.0);
    const auto sp = build_spectrum(s, {{0, 0.5, 40}, {}, {}}, Normalization::UnitSum);
    long double m1 = 0, m2 = 0;
    for (std::size_t i = 0; i < sp.size(); ++i) {
        const long double p = std::exp((long double)sp.log_weight[i]);
        m1 += p * sp.omega[i];
        m2 += p * sp.omega[i] * sp.omega[i];
    }
    const auto c = conditional_entropy(s, sp);
    EXPECT_NEAR(c.exact - c.lowenergy, static_cast<double>(4 * std::numbers::pi_v<long double> * (m2 - m1 * m1)), 1e-12);
}

TEST(ConditionalEntropy, GapShrinksQuadratically) {
    const auto s = make_state(Family::Schwarzschild, 1.0);
    std::vector<double> x, y;
    for (double wmax : {1e-3, 2e-3, 4e-3, 1e-2}) {
        const auto c = conditional_entropy(s, build_spectrum(s, {{0, wmax, 64}, {}, {}}, Normalization::UnitSum));
        x.push_back(std::log(wmax));
        y.push_back(std::log(c.exact - c.lowenergy));
    }
    for (std::size_t i = 1; i < x.size(); ++i) {
        EXPECT_NEAR((y[i] - y[i - 1]) / (x[i] - x[i - 1]), 2.0, 0.2);
    }
}

TEST(ConditionalEntropy, BelowHoleEntropyForFullGrid) {
    const auto s = make_state(Family::Schwarzschild, 1.0);
    const auto c = conditional_entropy(s, build_spectrum(s, {{0, 1, 64}, {}, {}}, Normalization::UnitSum));
    EXPECT_LT(c.exact, bh_entropy(s));
    EXPECT_FALSE(c.excluded_warning);
}

TEST(ConditionalEntropy, ExcludedMassIsReported) {
    // With alpha != 0 the fully evaporated remnant has no entropy.
    const auto s = make_state(Family::Schwarzschild, 0.1, 0, 0, 1.0);
    auto sp = manual_unit_sum({0.05, 0.1}, {std::log(0.5), std::log(0.5)});
    const auto c = conditional_entropy(s, sp);
    EXPECT_NEAR(c.excluded_mass, 0.5, 1e-16);
    EXPECT_TRUE(c.excluded_warning);
}

TEST(ConditionalEntropy, RequiresUnitSumAndMatchingState) {
    const auto s = make_state(Family::Schwarzschild, 1.0);
    const auto raw = build_spectrum(s, {{0, 1, 4}, {}, {}}, Normalization::Raw);
    EXPECT_THROW(conditional_entropy(s, raw), UsageError);
    const auto unit = build_spectrum(s, {{0, 1, 4}, {}, {}}, Normalization::UnitSum);
    EXPECT_THROW(conditional_entropy(make_state(Family::Schwarzschild, 2.0), unit), UsageError);
}

TEST(Correlation, ClosedForm) {
    const auto s = make_state(Family::Schwarzschild, 4.0);
    for (double w1 : {0.01, 0.5, 1.7}) {
        for (double w2 : {0.02, 0.9, 2.3}) {
            EXPECT_NEAR(pairwise_correlation(s, {w1, 0, 0}, {w2, 0, 0}), 8 * kPi * w1 * w2, 1e-12);
        }
    }
    EXPECT_EQ(pairwise_correlation(s, {1.0, 0, 0}, {}), 0.0);
}

TEST(Correlation, ReissnerNordstromExample) {
    const auto s = make_state(Family::ReissnerNordstrom, 2.0, 1.0);
    const auto area = [](double m, double q) {
        const double r = m + std::sqrt(m * m - q * q);
        return kPi * r * r;
    };
    const double s0 = area(2.0, 1.0);
    const double want = (area(1.3, 0.7) - s0) - (area(1.7, 0.8) - s0) - (area(1.6, 0.9) - s0);
    EXPECT_NEAR(pairwise_correlation(s, {0.3, 0.2, 0}, {0.4, 0.1, 0}), want, 1e-10);
}

TEST(Correlation, InvalidChannelPropagates) {
    EXPECT_THROW(pairwise_correlation(make_state(Family::Schwarzschild, 1.0), {0.7, 0, 0}, {0.6, 0, 0}), RemnantInvalid);
}

TEST(MutualInformation, CovarianceIdentityAgainstBruteForce) {
    const auto mi = mutual_information(make_state(Family::Schwarzschild, 1.0), OmegaAxis{0, 0.5, 32});
    const long double pi = std::numbers::pi_v<long double>;
    long double z = 0, e1 = 0, e2 = 0, e12 = 0;
    for (int i = 1; i <= 32; ++i) {
        for (int k = 1; k <= 32; ++k) {
            const long double a = i / 64.0L, b = k / 64.0L;
            const long double p = std::exp(-8 * pi * a * (1 - a / 2) - 8 * pi * b * ((1 - a) - b / 2));
            z += p;
            e1 += p * a;
            e2 += p * b;
            e12 += p * a * b;
        }
    }
    const long double cov = e12 / z - (e1 / z) * (e2 / z);
    EXPECT_NEAR(mi.mi_moment_form - mi.mi_product_form, static_cast<double>(8 * pi * cov), 1e-10);
    EXPECT_NEAR(mi.mean_first, static_cast<double>(e1 / z), 1e-13);
    EXPECT_NEAR(mi.mean_second, static_cast<double>(e2 / z), 1e-13);
    EXPECT_GE(mi.mi_numeric, -1e-10);
    EXPECT_EQ(mi.cells, 32u * 32u);
}

TEST(MutualInformation, NumericMatchesDirectDefinition) {
    const auto mi = mutual_information(make_state(Family::Schwarzschild, 1.0), OmegaAxis{0, 0.5, 8});
    const long double pi = std::numbers::pi_v<long double>;
    long double q[8][8], z = 0;
    for (int i = 0; i < 8; ++i) {
        for (int k = 0; k < 8; ++k) {
            const long double a = (i + 1) / 16.0L, b = (k + 1) / 16.0L;
            q[i][k] = std::exp(-8 * pi * a * (1 - a / 2) - 8 * pi * b * ((1 - a) - b / 2));
            z += q[i][k];
        }
    }
    long double r[8] = {}, c[8] = {}, info = 0;
    for (int i = 0; i < 8; ++i) {
        for (int k = 0; k < 8; ++k) {
            q[i][k] /= z;
            r[i] += q[i][k];
            c[k] += q[i][k];
        }
    }
    for (int i = 0; i < 8; ++i) {
        for (int k = 0; k < 8; ++k) info += q[i][k] * std::log(q[i][k] / (r[i] * c[k]));
    }
    EXPECT_NEAR(mi.mi_numeric, static_cast<double>(info), 1e-13);
    EXPECT_GT(mi.mi_numeric, 0.0);
}

TEST(MutualInformation, LinearEntropyFactorizes) {
    const auto mi = mutual_information(EntropyFunction::linear(2.5), {10.0, 0, 0}, OmegaAxis{0, 3, 25});
    EXPECT_NEAR(mi.mi_numeric, 0.0, 1e-14);
    EXPECT_NEAR(mi.covariance, 0.0, 1e-14);
}

TEST(MutualInformation, NeedsTwoBins) {
    EXPECT_THROW(mutual_information(make_state(Family::Schwarzschild, 1.0), OmegaAxis{0, 0.5, 1}), UsageError);
}

TEST(Ledger, SingleStepEvaporation) {
    const auto s = make_state(Family::Schwarzschild, 2.0);
    const CascadeLattice lat(s, CascadePolicy{2.0, std::nullopt, std::nullopt, 0.0, 0.0});
    const auto chain = sample_cascade(lat, 1, 0);
    ASSERT_EQ(chain.steps.size(), 1u);
    const auto l = chain_information_ledger(chain);
    EXPECT_NEAR(l.total, bh_entropy(s), 1e-12);
    EXPECT_NEAR(l.total, 16 * kPi, 1e-12);
    EXPECT_EQ(l.entries[0].prior_correlation.value(), 0.0);
}

TEST(Ledger, IdenticalTotalsAcrossEnumeratedChains) {
    const auto s = make_state(Family::Schwarzschild, 5.0);
    const CascadePolicy p{1.0, std::nullopt, std::nullopt, 0.0, 0.0};
    const CascadeLattice lat(s, p);
    for (const auto& c : enumerate_chains(s, p)) {
        const auto l = chain_information_ledger(replay_chain(lat, c.path));
        EXPECT_NEAR(l.total, 100 * kPi, 1e-9);
        EXPECT_NEAR(l.residual, 0.0, 1e-9);
        // Each step's correlation with all earlier emissions is 8 pi w_prior w.
        double prior = 0.0;
        for (std::size_t k = 0; k < c.path.size(); ++k) {
            const double w = static_cast<double>(c.path[k][0]);
            if (k > 0 && l.entries[k].prior_correlation) {
                EXPECT_NEAR(*l.entries[k].prior_correlation, 8 * kPi * prior * w, 1e-9);
            }
            prior += w;
        }
    }
}

TEST(Ledger, CorrectedEntropyWithStopMass) {
    const auto s = make_state(Family::Schwarzschild, 4.0, 0, 0, 1.0);
    const CascadeLattice lat(s, CascadePolicy{0.5, 1.0, std::nullopt, 0.0, 0.0});
    const double want = bh_entropy(s) - bh_entropy(make_state(Family::Schwarzschild, 1.0, 0, 0, 1.0));
    for (std::uint64_t i = 0; i < 50; ++i) {
        const auto l = chain_information_ledger(sample_cascade(lat, 3, i));
        EXPECT_NEAR(l.total, want, 1e-9);
        EXPECT_NEAR(l.expected, want, 1e-9);
    }
}

TEST(Ledger, IncompleteChainIsUsageError) {
    EmissionChain c;
    c.initial = make_state(Family::Schwarzschild, 1.0);
    c.terminated = Termination::MaxSteps;
    EXPECT_THROW(chain_information_ledger(c), UsageError);
}

TEST(InfoReport, FieldsAreConsistent) {
    const auto s = make_state(Family::Schwarzschild, 1.0);
    const GridSpec g{{0, 0.5, 16}, {}, {}};
    const auto r = build_info_report(s, g);
    const auto sp = build_spectrum(s, g, Normalization::UnitSum);
    EXPECT_EQ(r.s_r, radiation_entropy(sp));
    EXPECT_GE(r.s_r, 0.0);
    EXPECT_GE(r.mi_numeric, -1e-10);
    EXPECT_NEAR(r.e_r + r.e_bprime, 1.0, 1e-15);
    EXPECT_NEAR(r.correlation_max, 8 * kPi * 0.25, 1e-12);
    EXPECT_GT(r.correlation_mean, 0.0);
    EXPECT_LT(r.s_cond, bh_entropy(s));
}
