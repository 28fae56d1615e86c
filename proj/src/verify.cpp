#include "hawkrad/verify.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>

#include <boost/math/distributions/chi_squared.hpp>

#include "hawkrad/errors.hpp"
#include "hawkrad/evaporation.hpp"
#include "hawkrad/information.hpp"
#include "hawkrad/kernels.hpp"
#include "hawkrad/logspace.hpp"
#include "hawkrad/rng.hpp"
#include "hawkrad/spectrum.hpp"
#include "hawkrad/typicality.hpp"

namespace hawkrad::verify {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr long double kPiL = std::numbers::pi_v<long double>;

struct Recorder {
    const char* suite;
    std::vector<CheckResult>& out;

    // Passes when measured <= tolerance.
    void at_most(const std::string& name, double measured, double tolerance, std::string detail = {}) {
        out.push_back({suite, name, measured <= tolerance, measured, tolerance, std::move(detail)});
    }
    void at_least(const std::string& name, double measured, double bound, std::string detail = {}) {
        out.push_back({suite, name, measured >= bound, measured, bound, std::move(detail)});
    }
    void holds(const std::string& name, bool ok, std::string detail = {}) {
        out.push_back({suite, name, ok, ok ? 1.0 : 0.0, 1.0, std::move(detail)});
    }
};

// (0, 1]
double open_unit(std::mt19937_64& g) { return 1.0 - uniform01(g); }

std::vector<double> alpha_sweep(const Options& o) {
    if (o.alpha) return {*o.alpha};
    return {0.0, 1.0, -1.0};
}

// A sub-extremal hole of the given family with hairs away from the boundary.
BlackHoleState random_state(Family f, double max_mass, double alpha, std::mt19937_64& g) {
    const double m = max_mass * (0.05 + 0.95 * open_unit(g));
    double q = 0.0, j = 0.0;
    if (f != Family::Schwarzschild) q = m * 0.9 * (2.0 * uniform01(g) - 1.0);
    if (f == Family::KerrNewman) {
        const double a_max = std::sqrt(m * m - q * q);
        j = m * a_max * 0.9 * (2.0 * uniform01(g) - 1.0);
    }
    return make_state(f, m, q, j, alpha);
}

// An emission leaving a random remnant of mass fraction in (lo, 0.99).
Emission random_emission(const BlackHoleState& s, double lo, std::mt19937_64& g) {
    const auto r = random_state(s.family, 1.0, s.alpha, g);  // shape only
    const double f = lo + (0.99 - lo) * uniform01(g);
    const double m = s.mass * f;
    const double scale = m / r.mass;
    return {s.mass - m, s.charge - r.charge * scale, s.spin - r.spin * scale * scale};
}

long double radius_sq_l(long double m, long double q, long double j) {
    const long double a = j / m;
    const long double rp = m + std::sqrt(m * m - q * q - a * a);
    return rp * rp + a * a;
}

void identities(Recorder rec, const Options& o) {
    auto g = derive_stream(o.seed, 1);
    {
        double worst = 0.0;
        for (int i = 0; i < 100000; ++i) {
            const double m = 1000.0 * open_unit(g);
            const double w = m * open_unit(g);
            const double v = emission_log_weight(make_state(Family::Schwarzschild, m), {w, 0.0, 0.0});
            worst = std::max(worst, std::fabs(v + 8.0 * kPi * w * (m - w / 2.0)) / (1.0 + std::fabs(v)));
        }
        rec.at_most("parikh_wilczek_match", worst, 1e-9, "max |lw + 8 pi w (M - w/2)| / (1 + |lw|), 1e5 pairs");
    }
    {
        double worst = 0.0;
        for (int i = 0; i < 20000; ++i) {
            const auto s = random_state(Family::ReissnerNordstrom, 100.0, 0.0, g);
            const auto e = random_emission(s, 0.0, g);
            const double v = emission_log_weight(s, e);
            const long double m = s.mass, q = s.charge, w = e.omega, dq = e.charge;
            const long double rp = (m - w) + std::sqrt((m - w) * (m - w) - (q - dq) * (q - dq));
            const long double r = m + std::sqrt(m * m - q * q);
            const long double oracle = kPiL * rp * rp - kPiL * r * r;
            worst = std::max(worst, static_cast<double>(std::fabs(v - oracle) / std::max(1.0L, std::fabs(oracle))));
        }
        rec.at_most("rn_spectrum_match", worst, 1e-9, "relative error vs extended-precision closed form");
    }
    {
        double worst = 0.0;
        for (int i = 0; i < 100000; ++i) {
            const double m = 1000.0 * open_unit(g);
            const double w = std::min(1.0, m) * open_unit(g);
            const auto s = make_state(Family::Schwarzschild, m);
            const double d = thermal_log_weight(s, w) - emission_log_weight(s, {w, 0.0, 0.0});
            worst = std::max(worst, std::fabs(d + 4.0 * kPi * w * w));
        }
        rec.at_most("thermal_deviation_identity", worst, 1e-10, "max |thermal - lw + 4 pi w^2|");
    }
    {
        double worst = 0.0;
        for (double alpha : alpha_sweep(o)) {
            for (Family f : {Family::Schwarzschild, Family::ReissnerNordstrom, Family::KerrNewman}) {
                for (int i = 0; i < 3000; ++i) {
                    const auto s = random_state(f, 20.0, alpha, g);
                    const auto e1 = random_emission(s, 0.3, g);
                    const auto s1 = apply_emission(s, e1);
                    const auto e2 = random_emission(s1, 0.3, g);
                    const double lhs = emission_log_weight(s, e1 + e2);
                    const double rhs = emission_log_weight(s, e1) + emission_log_weight(s1, e2);
                    worst = std::max(worst, std::fabs(lhs - rhs));
                }
            }
        }
        rec.at_most("factorization", worst, 1e-9, "log p(e1+e2|s) = log p(e1|s) + log p(e2|s-e1)");
    }
    {
        double worst = 0.0;
        auto sweep = alpha_sweep(o);
        if (!o.alpha) sweep = {1.0, -1.0, 0.5};
        for (double alpha : sweep) {
            for (Family f : {Family::Schwarzschild, Family::ReissnerNordstrom, Family::KerrNewman}) {
                for (int i = 0; i < 2000; ++i) {
                    const auto s = random_state(f, 10.0, alpha, g);
                    const auto e = random_emission(s, 0.01, g);
                    const long double r2 = radius_sq_l(s.mass, s.charge, s.spin);
                    const long double rp2 = radius_sq_l((long double)s.mass - e.omega,
                                                        (long double)s.charge - e.charge,
                                                        (long double)s.spin - e.spin);
                    const long double prefactor = alpha * std::log(rp2 / r2);  // ln (R'/R)^(2 alpha)
                    const long double exponent = kPiL * (rp2 - r2);
                    worst = std::max(worst, static_cast<double>(std::fabs(emission_log_weight(s, e) -
                                                                          (prefactor + exponent))));
                }
            }
        }
        rec.at_most("quantum_gravity_correction", worst, 1e-10, "prefactor and exponent evaluated separately");
    }
    {
        bool ok = true;
        for (int i = 0; i < 2000; ++i) {
            const double m = 50.0 * open_unit(g);
            const double q = m * uniform01(g);
            ok &= bh_entropy(make_state(Family::ReissnerNordstrom, m)) == bh_entropy(make_state(Family::Schwarzschild, m));
            ok &= bh_entropy(make_state(Family::KerrNewman, m, q)) == bh_entropy(make_state(Family::ReissnerNordstrom, m, q));
        }
        const GridSpec grid{{0.0, 1.0, 257}, {}, {}};
        const auto a = build_spectrum(make_state(Family::Schwarzschild, 1.0), grid, Normalization::Raw);
        const auto b = build_spectrum(make_state(Family::ReissnerNordstrom, 1.0), grid, Normalization::Raw);
        ok &= a.log_weight == b.log_weight;
        rec.holds("family_reductions", ok, "bitwise RN(Q=0)=S and KN(J=0)=RN");
    }
    {
        const auto s = make_state(Family::Schwarzschild, 3.0);
        const auto spec = build_spectrum(s, {{0.0, 3.0, 1000}, {}, {}}, Normalization::Raw);
        bool ok = true;
        for (std::size_t i = 1; i < spec.size(); ++i) ok &= spec.log_weight[i] < spec.log_weight[i - 1];
        rec.holds("schwarzschild_monotonicity", ok);
    }
    {
        const auto& ref = kernels::scalar_table();
        const auto& act = kernels::active();
        bool ok = true;
        std::vector<double> x(1027), w(1027), q(1027), j(1027), r1(1027), r2(1027);
        std::vector<std::complex<double>> a(513), b(513);
        for (auto& v : x) v = 2.0 * uniform01(g) - 1.0;
        for (auto& v : a) v = {uniform01(g), uniform01(g)};
        for (auto& v : b) v = {uniform01(g), uniform01(g)};
        ok &= ref.sum(x) == act.sum(x);
        ok &= ref.max(x) == act.max(x);
        const auto i1 = ref.inner(a, b), i2 = act.inner(a, b);
        ok &= i1.re == i2.re && i1.im == i2.im;
        const auto s = make_state(Family::KerrNewman, 7.0, 2.0, 5.0);
        for (std::size_t i = 0; i < w.size(); ++i) {
            const auto e = random_emission(s, 0.01, g);
            w[i] = e.omega;
            q[i] = e.charge;
            j[i] = e.spin;
        }
        ref.area_entropy_delta({s.mass, s.charge, s.spin}, w, q, j, r1);
        act.area_entropy_delta({s.mass, s.charge, s.spin}, w, q, j, r2);
        ok &= r1 == r2;
        rec.holds("kernel_equivalence", ok, std::string("scalar vs ") + std::string(act.name));
    }
}

void typicality(Recorder rec, const Options& o) {
    const std::size_t seeds = 100;
    const auto base = run_typicality_lab(2, 2, 4096, seeds, o.seed);
    const auto quad = run_typicality_lab(2, 2, 16384, seeds, o.seed);
    rec.at_most("weight_l1_at_4096", base.mean_l1_error, 0.05, "mean ||diag(rho_B) - microcanonical||_1, 100 seeds");
    rec.at_most("off_diagonal_rms_bound", base.mean_off_diagonal_rms, 3.0 / std::sqrt(4096.0));
    const double ratio = quad.mean_off_diagonal_rms / base.mean_off_diagonal_rms;
    rec.holds("off_diagonal_scaling", ratio >= 0.35 && ratio <= 0.7,
              "rms(4 dim_O) / rms(dim_O) = " + std::to_string(ratio) + ", expected in [0.35, 0.7]");
    bool monotone = true;
    double prev = std::numeric_limits<double>::infinity();
    for (std::uint64_t d : {64u, 256u, 1024u, 4096u}) {
        const double l1 = run_typicality_lab(2, 2, d, seeds, o.seed).mean_l1_error;
        monotone &= l1 < prev;
        prev = l1;
    }
    rec.holds("weight_convergence_monotone", monotone, "dim_O in {64, 256, 1024, 4096}");
    rec.at_most("partial_trace_trace", std::max(base.max_trace_error, quad.max_trace_error), 1e-10);
    rec.at_most("partial_trace_hermitian", std::max(base.max_hermiticity_error, quad.max_hermiticity_error), 1e-12);
    rec.at_least("partial_trace_psd", std::min(base.min_eigenvalue, quad.min_eigenvalue), -1e-10);
}

void cascade(Recorder rec, const Options& o) {
    const auto s5 = make_state(Family::Schwarzschild, 5.0);
    const CascadePolicy unit{1.0, std::nullopt, std::nullopt, 0.0, 0.0};
    const auto chains = enumerate_chains(s5, unit);
    rec.holds("enumeration_count", chains.size() == 16 &&
                                       enumerate_chains(make_state(Family::Schwarzschild, 8.0), unit).size() == 128,
              "2^(n-1) compositions for n = 5, 8");
    double worst = 0.0;
    std::vector<double> norm;
    for (const auto& c : chains) {
        worst = std::max(worst, std::fabs(c.raw + 4.0 * kPi * 25.0));
        norm.push_back(c.normalized);
    }
    rec.at_most("path_independence", worst, 1e-9, "every complete chain has raw log-prob -4 pi M^2");
    rec.at_most("normalized_enumeration_sum", std::fabs(log_sum_exp(norm)), 1e-9);

    {
        double residual = 0.0;
        bool conserved = true;
        auto g = derive_stream(o.seed, 2);
        for (double alpha : alpha_sweep(o)) {
            const auto stop = alpha != 0.0 ? std::optional<double>(1.0) : std::nullopt;
            const std::vector<std::pair<BlackHoleState, CascadePolicy>> setups{
                {make_state(Family::Schwarzschild, 6.0, 0.0, 0.0, alpha), {1.0, stop, std::nullopt, 0.0, 0.0}},
                {make_state(Family::ReissnerNordstrom, 5.0, 2.0, 0.0, alpha), {1.0, stop, std::nullopt, 1.0, 0.0}},
                {make_state(Family::KerrNewman, 4.0, 1.0, 2.0, alpha), {1.0, stop, std::nullopt, 1.0, 1.0}},
            };
            for (const auto& [state, policy] : setups) {
                const CascadeLattice lattice(state, policy);
                for (std::uint64_t i = 0; i < 120; ++i) {
                    const auto chain = sample_cascade(lattice, g(), i);
                    const auto lp = chain_log_probability(chain);
                    residual = std::max(residual, std::fabs(lp.raw - (bh_entropy(chain.final_state()) -
                                                                      bh_entropy(chain.initial))));
                    std::int64_t emitted = 0;
                    for (const auto& st : chain.steps) emitted += st.quanta[0];
                    conserved &= emitted == lattice.mass_quanta() && chain.complete();
                }
            }
        }
        rec.at_most("telescoping_all_families", residual, 1e-9, "raw chain log-prob = S(final) - S(initial)");
        rec.holds("mass_conservation", conserved, "sum of emitted quanta equals M - stop_mass");
    }
    {
        // Five quanta on a small hole, where all 16 chains carry real weight.
        // With M = 5 and unit quanta one chain takes all but 4e-6 of the mass.
        const auto small = make_state(Family::Schwarzschild, 0.5);
        const CascadePolicy fine{0.1, std::nullopt, std::nullopt, 0.0, 0.0};
        const auto small_chains = enumerate_chains(small, fine);
        const std::size_t n = 200000;
        const auto report = cascade_ensemble_stats(small, fine, n, o.seed);
        double chi2 = 0.0;
        for (const auto& c : small_chains) {
            const double expected = std::exp(c.normalized) * static_cast<double>(n);
            const auto it = report.chain_counts.find(c.path);
            const double observed = it == report.chain_counts.end() ? 0.0 : static_cast<double>(it->second);
            chi2 += (observed - expected) * (observed - expected) / expected;
        }
        const boost::math::chi_squared dist(static_cast<double>(small_chains.size() - 1));
        const double p = boost::math::cdf(boost::math::complement(dist, chi2));
        rec.at_least("sampler_chi_square", p, 0.01, "p-value, 2e5 samples, M = 0.5 in 5 quanta");
    }
    {
        const auto a = sample_cascade(s5, unit, o.seed, 7);
        const auto b = sample_cascade(s5, unit, o.seed, 7);
        bool same = a.steps.size() == b.steps.size();
        for (std::size_t i = 0; same && i < a.steps.size(); ++i) {
            same = a.steps[i].quanta == b.steps[i].quanta && a.steps[i].log_prob == b.steps[i].log_prob;
        }
        rec.holds("sampler_determinism", same);
    }
}

void info(Recorder rec, const Options& o) {
    auto g = derive_stream(o.seed, 3);
    {
        double worst = 0.0;
        for (int i = 0; i < 100000; ++i) {
            const double m = 10.0 * open_unit(g);
            const double w1 = m * 0.5 * open_unit(g);
            const double w2 = (m - w1) * open_unit(g);
            const double v = pairwise_correlation(make_state(Family::Schwarzschild, m), {w1, 0, 0}, {w2, 0, 0});
            const double closed = 8.0 * kPi * w1 * w2;
            worst = std::max(worst, std::fabs(v - closed) / (1.0 + std::fabs(closed)));
        }
        rec.at_most("correlation_closed_form", worst, 1e-9, "pairwise correlation = 8 pi w1 w2");
    }
    {
        double worst = 0.0;
        const auto s = make_state(Family::Schwarzschild, 8.0);
        const CascadeLattice lat(s, {0.5, std::nullopt, std::nullopt, 0.0, 0.0});
        const auto sq = make_state(Family::Schwarzschild, 8.0, 0.0, 0.0, 1.0);
        const CascadeLattice latq(sq, {0.5, 1.0, std::nullopt, 0.0, 0.0});
        for (std::uint64_t i = 0; i < 500; ++i) {
            worst = std::max(worst, std::fabs(chain_information_ledger(sample_cascade(lat, o.seed, i)).residual));
            worst = std::max(worst, std::fabs(chain_information_ledger(sample_cascade(latq, o.seed, i)).residual));
        }
        rec.at_most("ledger_conservation", worst, 1e-9, "sum self-information = S(initial) - S(final), 1e3 cascades");
    }
    {
        const auto s = make_state(Family::Schwarzschild, 1.0);
        const OmegaAxis axis{0.0, 0.5, 32};
        const auto mi = mutual_information(s, axis);
        // Brute-force moments of the joint q(w1, w2) ~ p(w1 | M) p(w2 | M - w1).
        const auto nodes = GridSpec{axis, {}, {}}.omega_nodes();
        long double z = 0, e1 = 0, e2 = 0, e12 = 0;
        for (double a : nodes) {
            for (double b : nodes) {
                const long double lw = -8.0L * kPiL * a * (1.0L - a / 2.0L) - 8.0L * kPiL * b * ((1.0L - a) - b / 2.0L);
                const long double p = std::exp(lw);
                z += p;
                e1 += p * a;
                e2 += p * b;
                e12 += p * a * b;
            }
        }
        const long double cov = e12 / z - (e1 / z) * (e2 / z);
        const double err = std::fabs((mi.mi_moment_form - mi.mi_product_form) - static_cast<double>(8.0L * kPiL * cov));
        rec.at_most("mi_covariance_identity", err, 1e-10, "moment form - product form = 8 pi Cov(w1, w2)");
        rec.at_least("mi_nonnegative", mi.mi_numeric, -1e-10);
        const auto lin = mutual_information(EntropyFunction::linear(3.0), {10.0, 0, 0}, {0.0, 2.0, 16});
        rec.at_most("mi_zero_for_linear_entropy", std::fabs(lin.mi_numeric), 1e-12);
    }
    {
        // Well below the thermal energy scale 1 / (8 pi M), where the spectrum is nearly flat.
        const auto unit = make_state(Family::Schwarzschild, 1.0);
        std::vector<double> xs, ys;
        for (double wmax : {1e-3, 3.16227766016838e-3, 1e-2}) {
            const auto spec = build_spectrum(unit, {{0.0, wmax, 64}, {}, {}}, Normalization::UnitSum);
            const auto c = conditional_entropy(unit, spec);
            xs.push_back(std::log(wmax / unit.mass));
            ys.push_back(std::log(c.exact - c.lowenergy));
        }
        const double slope = (ys.back() - ys.front()) / (xs.back() - xs.front());
        rec.holds("lowenergy_quadratic_slope", slope > 1.8 && slope < 2.2,
                  "d ln(exact - lowenergy) / d ln(w_max / M) = " + std::to_string(slope));
        const auto s = make_state(Family::Schwarzschild, 10.0);
        const auto spec = build_spectrum(s, {{0.0, 0.01, 64}, {}, {}}, Normalization::UnitSum);
        const auto c = conditional_entropy(s, spec);
        rec.at_most("lowenergy_relative_gap", std::fabs(c.exact - c.lowenergy) / c.exact, 1e-4);
    }
    {
        const auto s = make_state(Family::Schwarzschild, 1.0);
        const auto spec = build_spectrum(s, {{0.0, 1.0, 64}, {}, {}}, Normalization::UnitSum);
        rec.holds("conditional_below_total", conditional_entropy(s, spec).exact < bh_entropy(s));
        rec.at_least("radiation_entropy_nonnegative", radiation_entropy(spec), 0.0);
    }
}

}  // namespace

Suite parse_suite(const std::string& name) {
    if (name == "identities") return Suite::Identities;
    if (name == "typicality") return Suite::Typicality;
    if (name == "cascade") return Suite::Cascade;
    if (name == "info") return Suite::Info;
    if (name == "all") return Suite::All;
    throw UsageError("unknown verify suite '" + name + "'");
}

const char* suite_name(Suite s) {
    switch (s) {
        case Suite::Identities: return "identities";
        case Suite::Typicality: return "typicality";
        case Suite::Cascade: return "cascade";
        case Suite::Info: return "info";
        case Suite::All: return "all";
    }
    return "unknown";
}

std::vector<CheckResult> run_suite(Suite suite, const Options& options) {
    if (options.alpha) make_state(Family::Schwarzschild, 1.0, 0.0, 0.0, *options.alpha);
    std::vector<CheckResult> out;
    const bool all = suite == Suite::All;
    if (all || suite == Suite::Identities) identities({"identities", out}, options);
    if (all || suite == Suite::Typicality) typicality({"typicality", out}, options);
    if (all || suite == Suite::Cascade) cascade({"cascade", out}, options);
    if (all || suite == Suite::Info) info({"info", out}, options);
    return out;
}

nlohmann::json to_json(const std::vector<CheckResult>& results) {
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& r : results) {
        checks.push_back({{"suite", r.suite},
                          {"name", r.name},
                          {"status", r.pass ? "pass" : "fail"},
                          {"measured", r.measured},
                          {"tolerance", r.tolerance},
                          {"detail", r.detail}});
    }
    return {{"all_pass", all_pass(results)}, {"checks", checks}};
}

bool all_pass(const std::vector<CheckResult>& results) {
    for (const auto& r : results) {
        if (!r.pass) return false;
    }
    return !results.empty();
}

}  // namespace hawkrad::verify
