#include "hawkrad/spectrum.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "hawkrad/errors.hpp"
#include "hawkrad/kernels.hpp"
#include "hawkrad/logspace.hpp"

namespace hawkrad {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

kernels::HairBatch hairs(const BlackHoleState& s) { return {s.mass, s.charge, s.spin}; }

void check_grid_for(const BlackHoleState& state, const GridSpec& grid) {
    grid.validate();
    if (grid.omega.max > state.mass) {
        throw UsageError("omega_max exceeds the hole mass");
    }
    const bool charge_axis = grid.charge.min_quanta != 0 || grid.charge.max_quanta != 0;
    const bool spin_axis = grid.spin.min_quanta != 0 || grid.spin.max_quanta != 0;
    if (charge_axis && state.family == Family::Schwarzschild) {
        throw UsageError("Schwarzschild spectra have no charge axis");
    }
    if (spin_axis && state.family != Family::KerrNewman) {
        throw UsageError("only Kerr-Newman spectra have an angular-momentum axis");
    }
}

SpectrumGrid empty_grid(const BlackHoleState& state, const GridSpec& grid) {
    SpectrumGrid out;
    out.resize(grid.size());
    out.source = state;
    out.grid = grid;
    const auto nodes = grid.omega_nodes();
    std::size_t k = 0;
    for (double w : nodes) {
        for (std::size_t iq = 0; iq < grid.charge.size(); ++iq) {
            for (std::size_t ij = 0; ij < grid.spin.size(); ++ij, ++k) {
                out.omega[k] = w;
                out.charge[k] = grid.charge.value(iq);
                out.spin[k] = grid.spin.value(ij);
            }
        }
    }
    return out;
}

void apply_normalization(SpectrumGrid& g, Normalization normalization) {
    g.normalization = normalization;
    g.log_normalizer = 0.0;
    if (normalization == Normalization::UnitSum) {
        g.log_normalizer = normalize_log_weights(g.log_weight, g.valid);
    }
}

}  // namespace

void emission_log_weights(const BlackHoleState& state, std::span<const double> omega,
                          std::span<const double> charge, std::span<const double> spin,
                          std::span<double> out, std::span<std::uint8_t> valid) {
    validate(state);
    const std::size_t n = out.size();
    std::vector<std::size_t> live;
    live.reserve(n);
    const double area = area_entropy(state);
    const double total = bh_entropy(state);
    for (std::size_t i = 0; i < n; ++i) {
        switch (remnant_kind(state, {omega[i], charge[i], spin[i]})) {
            case RemnantKind::Valid:
                valid[i] = 1;
                live.push_back(i);
                break;
            case RemnantKind::Evaporated:
                valid[i] = 1;
                out[i] = -total;
                break;
            case RemnantKind::Invalid:
                valid[i] = 0;
                out[i] = kNegInf;
                break;
        }
    }
    if (live.empty()) return;

    std::vector<double> w(live.size()), q(live.size()), j(live.size()), d(live.size());
    for (std::size_t k = 0; k < live.size(); ++k) {
        w[k] = omega[live[k]];
        q[k] = charge[live[k]];
        j[k] = spin[live[k]];
    }
    kernels::active().area_entropy_delta(hairs(state), w, q, j, d);
    for (std::size_t k = 0; k < live.size(); ++k) {
        double v = d[k];
        // ln(R'^2 / R^2): log1p(delta / area) avoids cancellation for small
        // emissions; near total evaporation 1 + delta / area loses digits, so the
        // remnant radius is evaluated directly instead.
        if (state.alpha != 0.0) {
            const double x = d[k] / area;
            if (x > -0.5) {
                v += state.alpha * std::log1p(x);
            } else {
                const BlackHoleState rem{state.family, state.mass - w[k], state.charge - q[k],
                                         state.spin - j[k], state.alpha};
                v += state.alpha * std::log(horizon_radius_sq(rem) / horizon_radius_sq(state));
            }
        }
        out[live[k]] = v;
    }
}

double emission_log_weight(const BlackHoleState& state, const Emission& e) {
    double out = 0.0;
    std::uint8_t ok = 0;
    emission_log_weights(state, std::span(&e.omega, 1), std::span(&e.charge, 1),
                         std::span(&e.spin, 1), std::span(&out, 1), std::span(&ok, 1));
    if (ok == 0) {
        remnant_after(state, e);  // throws with a descriptive message
        throw RemnantInvalid("emission leaves an invalid remnant");
    }
    return out;
}

SpectrumGrid build_spectrum(const BlackHoleState& state, const GridSpec& grid,
                            Normalization normalization) {
    validate(state);
    check_grid_for(state, grid);
    SpectrumGrid g = empty_grid(state, grid);
    emission_log_weights(state, g.omega, g.charge, g.spin, g.log_weight, g.valid);
    if (g.valid_count() == 0) throw DomainError("every spectrum bin is a forbidden emission");
    apply_normalization(g, normalization);
    return g;
}

double thermal_log_weight(const BlackHoleState& state, double omega) {
    validate(state);
    if (state.family == Family::Schwarzschild) {
        return -(8.0 * std::numbers::pi * state.mass) * omega;
    }
    return -omega / hawking_temperature(state);
}

SpectrumGrid build_thermal_spectrum(const BlackHoleState& state, const GridSpec& grid,
                                    Normalization normalization) {
    validate(state);
    check_grid_for(state, grid);
    SpectrumGrid g = empty_grid(state, grid);
    for (std::size_t i = 0; i < g.size(); ++i) {
        g.log_weight[i] = thermal_log_weight(state, g.omega[i]);
        g.valid[i] = 1;
    }
    apply_normalization(g, normalization);
    return g;
}

SpectrumComparison compare_thermal(const SpectrumGrid& nonthermal, const SpectrumGrid& thermal) {
    if (nonthermal.size() != thermal.size() || nonthermal.grid != thermal.grid) {
        throw UsageError("spectra are on different grids");
    }
    for (std::size_t i = 0; i < nonthermal.size(); ++i) {
        if (nonthermal.omega[i] != thermal.omega[i] || nonthermal.charge[i] != thermal.charge[i] ||
            nonthermal.spin[i] != thermal.spin[i]) {
            throw UsageError("spectra are on different grids");
        }
    }
    SpectrumComparison c;
    std::vector<double> abs_diff;
    std::vector<double> kl_terms;
    for (std::size_t i = 0; i < nonthermal.size(); ++i) {
        if (nonthermal.valid[i] == 0 || thermal.valid[i] == 0) continue;
        const double diff = nonthermal.log_weight[i] - thermal.log_weight[i];
        abs_diff.push_back(std::fabs(diff));
        const double p = exp_or_zero(nonthermal.log_weight[i]);
        if (p > 0.0) kl_terms.push_back(p * diff);
    }
    c.compared_bins = abs_diff.size();
    if (!abs_diff.empty()) {
        c.max_abs_log_ratio = kernels::max(abs_diff);
        c.mean_abs_log_ratio = kernels::sum(abs_diff) / static_cast<double>(abs_diff.size());
    }
    if (nonthermal.normalization == Normalization::UnitSum &&
        thermal.normalization == Normalization::UnitSum) {
        c.kl_divergence = kernels::sum(kl_terms);
    }
    return c;
}

}  // namespace hawkrad
