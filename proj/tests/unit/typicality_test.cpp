#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "hawkrad/errors.hpp"
#include "hawkrad/typicality.hpp"

using namespace hawkrad;

namespace {

EnergyLedger ledger_of(std::vector<SystemLevel> levels, std::map<std::int64_t, std::uint64_t> env, std::int64_t total) {
    EnergyLedger l;
    l.system_levels = std::move(levels);
    l.environment = std::move(env);
    l.total_energy = total;
    return l;
}

}  // namespace

TEST(Ledger, ValidatesInvariants) {
    EXPECT_THROW(ledger_of({}, {}, 0).validate(), DomainError);
    EXPECT_THROW(ledger_of({{0, 0}}, {{0, 1}}, 0).validate(), DomainError);       // zero degeneracy
    EXPECT_THROW(ledger_of({{2, 1}}, {{0, 1}}, 1).validate(), DomainError);       // E_U < E_b
    EXPECT_THROW(ledger_of({{0, 1}, {1, 1}}, {{1, 4}}, 1).validate(), DomainError);  // missing sector
    const auto l = ledger_of({{0, 2}, {1, 3}}, {{1, 4}, {0, 0}}, 1);
    EXPECT_NO_THROW(l.validate());
    EXPECT_EQ(l.system_dim(), 5u);
    EXPECT_EQ(l.universe_dim(), 8u);
    EXPECT_EQ(l.environment_degeneracy(1), 0u);
}

TEST(Sampling, SingleAmplitudeHasUnitMagnitude) {
    const auto l = ledger_of({{0, 1}}, {{0, 1}}, 0);
    for (std::uint64_t seed : {0u, 1u, 99u}) {
        const auto s = sample_universe_state(l, seed);
        ASSERT_EQ(s.coefficients().size(), 1u);
        EXPECT_NEAR(std::abs(s.coefficients()[0]), 1.0, 1e-15);
    }
}

TEST(Sampling, NormalizedAndDeterministic) {
    const auto l = make_lab_ledger(1, 2, 4096);
    const auto a = sample_universe_state(l, 42);
    const auto b = sample_universe_state(l, 42);
    const auto c = sample_universe_state(l, 43);
    long double n = 0;
    for (auto z : a.coefficients()) n += std::norm(z);
    EXPECT_NEAR(static_cast<double>(n), 1.0, 1e-12);
    ASSERT_EQ(a.coefficients().size(), 8192u);
    EXPECT_TRUE(std::equal(a.coefficients().begin(), a.coefficients().end(), b.coefficients().begin()));
    EXPECT_FALSE(std::equal(a.coefficients().begin(), a.coefficients().end(), c.coefficients().begin()));
    EXPECT_EQ(a.seed(), 42u);
}

TEST(Sampling, MeanSquaredAmplitudeIsInverseDimension) {
    // Three system levels, 2^12 environment states at the ground level.
    const auto l = make_lab_ledger(3, 1, 4096);
    const double dim_u = static_cast<double>(l.universe_dim());
    std::vector<double> sector_mean(3, 0.0);
    for (std::uint64_t seed = 7; seed < 107; ++seed) {
        const auto s = sample_universe_state(l, seed);
        for (std::size_t m = 0; m < s.system_dim(); ++m) {
            double acc = 0.0;
            for (auto z : s.block(m)) acc += std::norm(z);
            sector_mean[s.level_of()[m]] += acc / static_cast<double>(s.block(m).size()) / 100.0;
        }
    }
    for (double v : sector_mean) EXPECT_NEAR(v * dim_u, 1.0, 0.02);
}

TEST(Sampling, CapAndEmptyLedger) {
    EXPECT_THROW(sample_universe_state(make_lab_ledger(2, 2, 4096), 1, 1000), UsageError);
    EXPECT_THROW(sample_universe_state(ledger_of({{0, 1}}, {{0, 0}}, 0), 1), DomainError);
}

TEST(Sampling, FromCoefficientsChecksShapeAndNorm) {
    const auto l = ledger_of({{0, 2}}, {{0, 2}}, 0);
    EXPECT_THROW(PureStateSample::from_coefficients(l, {1.0, 0.0, 0.0}), DomainError);
    EXPECT_THROW(PureStateSample::from_coefficients(l, {1.0, 0.1, 0.0, 0.0}), DomainError);
    EXPECT_NO_THROW(PureStateSample::from_coefficients(l, {1.0, 0.0, 0.0, 0.0}));
}

TEST(PartialTrace, ProductStateGivesProjector) {
    const auto l = ledger_of({{0, 3}}, {{0, 2}}, 0);
    const auto s = PureStateSample::from_coefficients(l, {0, 0, 1.0, 0, 0, 0});
    const auto rho = reduce_to_system(s);
    ASSERT_EQ(rho.dim(), 3u);
    for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) EXPECT_EQ(rho.matrix(r, c), std::complex<double>(r == 1 && c == 1 ? 1.0 : 0.0));
    }
}

TEST(PartialTrace, MaximallyEntangledGivesHalfIdentity) {
    const double h = std::sqrt(0.5);
    const auto l = ledger_of({{0, 2}}, {{0, 2}}, 0);
    const auto rho = reduce_to_system(PureStateSample::from_coefficients(l, {h, 0, 0, h}));
    EXPECT_NEAR(rho.matrix(0, 0).real(), 0.5, 1e-15);
    EXPECT_NEAR(rho.matrix(1, 1).real(), 0.5, 1e-15);
    EXPECT_EQ(rho.matrix(0, 1), std::complex<double>(0.0));
    EXPECT_EQ(rho.off_diagonal_rms(), 0.0);
}

TEST(PartialTrace, CoherentSuperpositionKeepsOffDiagonal) {
    const std::complex<double> h(std::sqrt(0.5), 0.0), i(0.0, std::sqrt(0.5));
    const auto l = ledger_of({{0, 2}}, {{0, 1}}, 0);
    const auto rho = reduce_to_system(PureStateSample::from_coefficients(l, {h, i}));
    // rho = |psi><psi| with psi = (1, i) / sqrt 2
    EXPECT_NEAR(std::abs(rho.matrix(0, 1) - std::complex<double>(0.0, -0.5)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(rho.matrix(1, 0) - std::complex<double>(0.0, 0.5)), 0.0, 1e-15);
}

TEST(PartialTrace, DifferentSectorsNeverCouple) {
    const auto l = make_lab_ledger(3, 2, 64);
    const auto rho = reduce_to_system(sample_universe_state(l, 5));
    for (std::size_t r = 0; r < rho.dim(); ++r) {
        for (std::size_t c = 0; c < rho.dim(); ++c) {
            if (rho.level_of[r] != rho.level_of[c]) EXPECT_EQ(rho.matrix(r, c), std::complex<double>(0.0));
        }
    }
}

TEST(PartialTrace, TraceHermitianPositive) {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const auto rho = reduce_to_system(sample_universe_state(make_lab_ledger(3, 3, 256), seed));
        EXPECT_LE(rho.trace_error(), 1e-10);
        EXPECT_LE(rho.hermiticity_error(), 1e-12);
        EXPECT_GE(rho.min_eigenvalue(), -1e-10);
    }
}

TEST(PartialTrace, DiagonalMatchesMicrocanonicalWeights) {
    const auto l = make_lab_ledger(2, 2, 4096);
    const auto w = microcanonical_weights(l);
    double sq = 0.0, off = 0.0;
    const int seeds = 100;
    for (int seed = 0; seed < seeds; ++seed) {
        const auto rho = reduce_to_system(sample_universe_state(l, seed));
        for (std::size_t m = 0; m < rho.dim(); ++m) {
            // Each micro-state of level b carries w_b / g_b.
            const double want = w[rho.level_of[m]] / 2.0;
            sq += std::pow((rho.matrix(m, m).real() - want) / want, 2);
        }
        off += rho.off_diagonal_rms();
    }
    EXPECT_LT(std::sqrt(sq / (seeds * 4.0)), 0.05);
    EXPECT_LT(off / seeds, 3.0 / std::sqrt(4096.0));
}

TEST(Microcanonical, Examples) {
    const auto uniform = microcanonical_weights(ledger_of({{0, 1}, {1, 1}, {2, 1}}, {{0, 5}, {1, 5}, {2, 5}}, 2));
    for (double v : uniform) EXPECT_NEAR(v, 1.0 / 3.0, 1e-16);
    const auto two = microcanonical_weights(ledger_of({{0, 1}, {1, 1}}, {{1, 8}, {0, 2}}, 1));
    EXPECT_NEAR(two[0], 0.8, 1e-16);
    EXPECT_NEAR(two[1], 0.2, 1e-16);
    EXPECT_EQ(microcanonical_weights(ledger_of({{3, 4}}, {{0, 9}}, 3)), std::vector<double>{1.0});
    EXPECT_THROW(microcanonical_weights(ledger_of({{0, 1}}, {{0, 0}}, 0)), DomainError);
}

TEST(Microcanonical, DegeneracyWeighted) {
    const auto w = microcanonical_weights(ledger_of({{0, 3}, {1, 1}}, {{1, 2}, {0, 2}}, 1));
    EXPECT_NEAR(w[0], 0.75, 1e-16);
    EXPECT_NEAR(w[1], 0.25, 1e-16);
}

TEST(Lab, ConvergesWithEnvironmentSize) {
    double prev = INFINITY;
    for (std::uint64_t d : {16u, 64u, 256u, 1024u, 4096u}) {
        const auto r = run_typicality_lab(2, 2, d, 100, 1);
        EXPECT_LT(r.mean_l1_error, prev) << d;
        prev = r.mean_l1_error;
        EXPECT_NEAR(r.mean_coefficient_sq * static_cast<double>(make_lab_ledger(2, 2, d).universe_dim()), 1.0, 1e-12);
    }
    EXPECT_LT(prev, 0.05);
}

TEST(Lab, OffDiagonalHalvesWhenEnvironmentQuadruples) {
    const auto a = run_typicality_lab(2, 2, 1024, 100, 3);
    const auto b = run_typicality_lab(2, 2, 4096, 100, 3);
    const double ratio = b.mean_off_diagonal_rms / a.mean_off_diagonal_rms;
    EXPECT_GE(ratio, 0.35);
    EXPECT_LE(ratio, 0.7);
}

TEST(Lab, RejectsBadShapes) {
    EXPECT_THROW(make_lab_ledger(0, 1, 4), UsageError);
    EXPECT_THROW(make_lab_ledger(3, 1, 6), UsageError);
    EXPECT_THROW(run_typicality_lab(2, 2, 64, 0, 1), UsageError);
}

TEST(EntropySpectrum, Examples) {
    const std::vector<MacroState> zero{{0, 0, 0}};
    const auto s0 = spectrum_from_entropy(EntropyFunction::schwarzschild_area(), {3.0, 0, 0}, zero);
    EXPECT_EQ(s0.log_weight[0], 0.0);

    const std::vector<MacroState> r{{0.5, 0, 0}, {1.25, 0, 0}, {2.0, 0, 0}};
    const auto lin = spectrum_from_entropy(EntropyFunction::linear(3.0), {4.0, 0, 0}, r);
    for (std::size_t i = 0; i < r.size(); ++i) EXPECT_EQ(lin.log_weight[i], -3.0 * r[i].energy);

    const auto area = spectrum_from_entropy(EntropyFunction::schwarzschild_area(), {2.0, 0, 0}, r);
    for (std::size_t i = 0; i < r.size(); ++i) {
        const double w = r[i].energy;
        EXPECT_NEAR(area.log_weight[i], -8 * std::numbers::pi * w * (2.0 - w / 2), 1e-12);
    }
}

TEST(EntropySpectrum, OutOfDomainIsFlagged) {
    const std::vector<MacroState> r{{0.5, 0, 0}, {3.0, 0, 0}};
    const auto s = spectrum_from_entropy(EntropyFunction::schwarzschild_area(), {2.0, 0, 0}, r);
    EXPECT_EQ(s.valid[0], 1);
    EXPECT_EQ(s.valid[1], 0);
    EXPECT_EQ(s.log_weight[1], -INFINITY);
    const std::vector<MacroState> bad{{3.0, 0, 0}};
    EXPECT_THROW(spectrum_from_entropy(EntropyFunction::schwarzschild_area(), {2.0, 0, 0}, bad), DomainError);
}

TEST(EntropySpectrum, Telescopes) {
    struct Case {
        EntropyFunction f;
        bool hairs;
    };
    const std::vector<Case> cases{{EntropyFunction::linear(0.7), false},
                                  {EntropyFunction::schwarzschild_area(), false},
                                  {EntropyFunction::black_hole(Family::KerrNewman, 0.5), true}};
    for (const auto& [f, hairs] : cases) {
        const MacroState total{6.0, hairs ? 2.0 : 0.0, hairs ? 4.0 : 0.0};
        for (int i = 1; i < 12; ++i) {
            const double h = hairs ? 1.0 : 0.0;
            const MacroState r1{0.1 * i, 0.05 * i * h, 0.02 * i * h};
            const MacroState r2{0.15 * i, -0.03 * i * h, 0.1 * i * h};
            const std::vector<MacroState> a{r1}, b{r2}, ab{r1 + r2};
            const double lhs = spectrum_from_entropy(f, total, ab).log_weight[0];
            const double rhs = spectrum_from_entropy(f, total, a).log_weight[0] +
                               spectrum_from_entropy(f, total - r1, b).log_weight[0];
            EXPECT_NEAR(lhs, rhs, 1e-10) << f.name << ' ' << i;
        }
    }
}

TEST(EntropySpectrum, EvaluatorIsDeterministic) {
    const auto f = EntropyFunction::black_hole(Family::ReissnerNordstrom, -1.0);
    const MacroState m{3.0, 1.0, 0.0};
    EXPECT_EQ(f.entropy(m), f.entropy(m));
    EXPECT_TRUE(f.valid(m));
    EXPECT_FALSE(f.valid({1.0, 2.0, 0.0}));
}
