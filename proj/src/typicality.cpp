#include "hawkrad/typicality.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include <Eigen/Eigenvalues>

#include "hawkrad/errors.hpp"
#include "hawkrad/kernels.hpp"
#include "hawkrad/rng.hpp"

namespace hawkrad {

void EnergyLedger::validate() const {
    if (system_levels.empty()) throw DomainError("energy ledger has no system levels");
    if (environment.empty()) throw DomainError("energy ledger has no environment levels");
    for (const auto& level : system_levels) {
        if (level.degeneracy < 1) throw DomainError("system degeneracies must be >= 1");
        if (level.energy > total_energy) throw DomainError("system level above the total energy");
        if (!environment.contains(total_energy - level.energy)) {
            throw DomainError("no environment entry for E_U - E_b = " +
                              std::to_string(total_energy - level.energy));
        }
    }
}

std::uint64_t EnergyLedger::environment_degeneracy(std::size_t level) const {
    return environment.at(total_energy - system_levels.at(level).energy);
}

std::size_t EnergyLedger::system_dim() const {
    std::size_t n = 0;
    for (const auto& level : system_levels) n += level.degeneracy;
    return n;
}

std::uint64_t EnergyLedger::universe_dim() const {
    std::uint64_t n = 0;
    for (std::size_t b = 0; b < system_levels.size(); ++b) {
        n += system_levels[b].degeneracy * environment_degeneracy(b);
    }
    return n;
}

PureStateSample::PureStateSample(EnergyLedger ledger, std::uint64_t seed)
    : ledger_(std::move(ledger)), seed_(seed) {
    ledger_.validate();
    offsets_.push_back(0);
    for (std::size_t b = 0; b < ledger_.system_levels.size(); ++b) {
        const auto sector = static_cast<std::size_t>(ledger_.environment_degeneracy(b));
        for (std::uint64_t g = 0; g < ledger_.system_levels[b].degeneracy; ++g) {
            level_of_.push_back(b);
            offsets_.push_back(offsets_.back() + sector);
        }
    }
}

std::span<const std::complex<double>> PureStateSample::block(std::size_t micro_state) const {
    const auto begin = offsets_.at(micro_state);
    return std::span(coefficients_).subspan(begin, offsets_.at(micro_state + 1) - begin);
}

PureStateSample PureStateSample::from_coefficients(EnergyLedger ledger,
                                                   std::vector<std::complex<double>> coefficients,
                                                   std::uint64_t seed) {
    PureStateSample s(std::move(ledger), seed);
    if (coefficients.size() != s.offsets_.back()) {
        throw DomainError("coefficient count does not match the ledger's shell dimension");
    }
    s.coefficients_ = std::move(coefficients);
    const double norm_sq = kernels::inner(s.coefficients_, s.coefficients_).re;
    if (std::fabs(norm_sq - 1.0) > 1e-12) throw DomainError("pure state is not normalized");
    return s;
}

PureStateSample sample_universe_state(const EnergyLedger& ledger, std::uint64_t seed,
                                      std::uint64_t universe_cap) {
    ledger.validate();
    const std::uint64_t dim = ledger.universe_dim();
    if (dim == 0) throw DomainError("energy shell is empty: every environment sector has Omega_O = 0");
    if (dim > universe_cap) {
        throw UsageError("universe dimension " + std::to_string(dim) + " exceeds the cap " +
                         std::to_string(universe_cap));
    }
    PureStateSample s(ledger, seed);
    s.coefficients_.resize(static_cast<std::size_t>(dim));
    std::mt19937_64 gen(mix64(seed));
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
    for (auto& c : s.coefficients_) {
        const double re = normal(gen);
        const double im = normal(gen);
        c = {re, im};
    }
    const double norm_sq = kernels::inner(s.coefficients_, s.coefficients_).re;
    const double scale = 1.0 / std::sqrt(norm_sq);
    for (auto& c : s.coefficients_) c *= scale;
    return s;
}

double ReducedDensity::trace_error() const { return std::abs(matrix.trace() - 1.0); }

double ReducedDensity::hermiticity_error() const {
    return (matrix - matrix.adjoint()).cwiseAbs().maxCoeff();
}

double ReducedDensity::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(matrix, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

double ReducedDensity::off_diagonal_rms() const {
    const auto n = matrix.rows();
    if (n < 2) return 0.0;
    double acc = 0.0;
    for (Eigen::Index r = 0; r < n; ++r) {
        for (Eigen::Index c = 0; c < n; ++c) {
            if (r != c) acc += std::norm(matrix(r, c));
        }
    }
    return std::sqrt(acc / static_cast<double>(n * (n - 1)));
}

std::vector<double> ReducedDensity::level_populations(std::size_t levels) const {
    std::vector<double> pops(levels, 0.0);
    for (std::size_t s = 0; s < dim(); ++s) {
        pops.at(level_of[s]) += matrix(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(s)).real();
    }
    return pops;
}

ReducedDensity reduce_to_system(const PureStateSample& sample) {
    const std::size_t n = sample.system_dim();
    ReducedDensity rho;
    rho.level_of.assign(sample.level_of().begin(), sample.level_of().end());
    rho.matrix = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t s = 0; s < n; ++s) {
        for (std::size_t t = s; t < n; ++t) {
            if (rho.level_of[s] != rho.level_of[t]) continue;
            // rho_st = sum_o c(s,o) conj(c(t,o)) = <c_t|c_s>
            const auto z = kernels::inner(sample.block(t), sample.block(s));
            const auto rs = static_cast<Eigen::Index>(s);
            const auto rt = static_cast<Eigen::Index>(t);
            if (s == t) {
                rho.matrix(rs, rs) = {z.re, 0.0};
            } else {
                rho.matrix(rs, rt) = {z.re, z.im};
                rho.matrix(rt, rs) = {z.re, -z.im};
            }
        }
    }
    return rho;
}

std::vector<double> microcanonical_weights(const EnergyLedger& ledger) {
    ledger.validate();
    std::vector<double> w(ledger.system_levels.size());
    double total = 0.0;
    for (std::size_t b = 0; b < w.size(); ++b) {
        w[b] = static_cast<double>(ledger.environment_degeneracy(b)) *
               static_cast<double>(ledger.system_levels[b].degeneracy);
        total += w[b];
    }
    if (!(total > 0.0)) throw DomainError("all microcanonical weights vanish");
    for (double& v : w) v /= total;
    return w;
}

EntropyFunction EntropyFunction::linear(double beta) {
    return {"linear", [beta](const MacroState& m) { return beta * m.energy; },
            [](const MacroState& m) { return m.energy >= 0.0; }};
}

EntropyFunction EntropyFunction::schwarzschild_area() {
    return {"schwarzschild-area",
            [](const MacroState& m) { return 4.0 * std::numbers::pi * m.energy * m.energy; },
            [](const MacroState& m) { return m.energy >= 0.0 && m.charge == 0.0 && m.spin == 0.0; }};
}

EntropyFunction EntropyFunction::black_hole(Family family, double alpha) {
    auto to_state = [family, alpha](const MacroState& m) {
        return BlackHoleState{family, m.energy, m.charge, m.spin, alpha};
    };
    return {"black-hole:" + std::string(family_name(family)),
            [to_state](const MacroState& m) { return bh_entropy(to_state(m)); },
            [to_state](const MacroState& m) {
                const auto s = to_state(m);
                if (s.is_evaporated()) return s.alpha == 0.0;
                try {
                    validate(s);
                    return true;
                } catch (const DomainError&) {
                    return false;
                }
            }};
}

SpectrumGrid spectrum_from_entropy(const EntropyFunction& s, const MacroState& total,
                                   std::span<const MacroState> deltas) {
    if (!s.valid(total)) throw DomainError("total macro-state outside the entropy's domain");
    const double s_total = s.entropy(total);
    SpectrumGrid g;
    g.resize(deltas.size());
    for (std::size_t i = 0; i < deltas.size(); ++i) {
        const auto& r = deltas[i];
        g.omega[i] = r.energy;
        g.charge[i] = r.charge;
        g.spin[i] = r.spin;
        const MacroState rest = total - r;
        if (s.valid(rest)) {
            g.valid[i] = 1;
            g.log_weight[i] = s.entropy(rest) - s_total;
        } else {
            g.valid[i] = 0;
            g.log_weight[i] = -std::numeric_limits<double>::infinity();
        }
    }
    if (g.valid_count() == 0) throw DomainError("every subtracted macro-state leaves the entropy's domain");
    return g;
}

EnergyLedger make_lab_ledger(std::size_t levels, std::uint64_t degeneracy, std::uint64_t env_dim) {
    if (levels == 0 || degeneracy == 0 || levels > 63) throw UsageError("bad lab ledger shape");
    if (env_dim == 0 || env_dim % (std::uint64_t{1} << (levels - 1)) != 0) {
        throw UsageError("env_dim must be a positive multiple of 2^(levels-1)");
    }
    EnergyLedger l;
    l.total_energy = static_cast<std::int64_t>(levels) - 1;
    for (std::size_t b = 0; b < levels; ++b) {
        l.system_levels.push_back({static_cast<std::int64_t>(b), degeneracy});
        l.environment[l.total_energy - static_cast<std::int64_t>(b)] = env_dim >> b;
    }
    return l;
}

TypicalityLabReport run_typicality_lab(std::size_t levels, std::uint64_t degeneracy,
                                       std::uint64_t env_dim, std::size_t seeds,
                                       std::uint64_t first_seed, std::uint64_t universe_cap) {
    if (seeds == 0) throw UsageError("typicality lab needs at least one seed");
    const auto ledger = make_lab_ledger(levels, degeneracy, env_dim);
    const auto weights = microcanonical_weights(ledger);
    TypicalityLabReport r;
    r.levels = levels;
    r.degeneracy = degeneracy;
    r.env_dim = env_dim;
    r.seeds = seeds;
    r.min_eigenvalue = std::numeric_limits<double>::infinity();
    std::vector<double> l1(seeds), rms(seeds), mean_sq(seeds);
    for (std::size_t k = 0; k < seeds; ++k) {
        const auto sample = sample_universe_state(ledger, first_seed + k, universe_cap);
        const auto rho = reduce_to_system(sample);
        const auto pops = rho.level_populations(levels);
        double err = 0.0;
        for (std::size_t b = 0; b < levels; ++b) err += std::fabs(pops[b] - weights[b]);
        l1[k] = err;
        rms[k] = rho.off_diagonal_rms();
        mean_sq[k] = kernels::inner(sample.coefficients(), sample.coefficients()).re /
                     static_cast<double>(sample.coefficients().size());
        r.max_trace_error = std::max(r.max_trace_error, rho.trace_error());
        r.max_hermiticity_error = std::max(r.max_hermiticity_error, rho.hermiticity_error());
        r.min_eigenvalue = std::min(r.min_eigenvalue, rho.min_eigenvalue());
    }
    const double n = static_cast<double>(seeds);
    r.mean_l1_error = kernels::sum(l1) / n;
    r.mean_off_diagonal_rms = kernels::sum(rms) / n;
    r.mean_coefficient_sq = kernels::sum(mean_sq) / n;
    return r;
}

}  // namespace hawkrad
