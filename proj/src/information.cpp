#include "hawkrad/information.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include "hawkrad/errors.hpp"
#include "hawkrad/kernels.hpp"
#include "hawkrad/logspace.hpp"

namespace hawkrad {
namespace {

constexpr double kExcludedWarning = 1e-6;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void require_unit_sum(const SpectrumGrid& g) {
    if (g.normalization != Normalization::UnitSum) {
        throw UsageError("entropy of an unnormalized (Raw) spectrum is undefined; use UnitSum");
    }
}

// log p(first = nodes[i]) and log p(second = nodes[k] | first = nodes[i]);
// -inf marks forbidden cells.
MutualInformation mutual_information_impl(const std::vector<double>& nodes,
                                          const std::function<double(double)>& first,
                                          const std::function<double(double, double)>& second,
                                          const std::function<double(double)>& literal) {
    const std::size_t n = nodes.size();
    if (n < 2) throw UsageError("mutual information needs at least 2 bins per axis");
    std::vector<double> joint(n * n, kNegInf);
    std::vector<std::uint8_t> live(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        const double a = first(nodes[i]);
        if (a == kNegInf) continue;
        for (std::size_t k = 0; k < n; ++k) {
            const double b = second(nodes[i], nodes[k]);
            if (b == kNegInf) continue;
            joint[i * n + k] = a + b;
            live[i * n + k] = 1;
        }
    }
    const double log_total = normalize_log_weights(joint, live);
    if (log_total == kNegInf) throw DomainError("joint emission distribution is empty on this grid");

    std::vector<double> m1(n, kNegInf), m2(n, kNegInf);
    {
        std::vector<double> row(n), col(n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t k = 0; k < n; ++k) row[k] = joint[i * n + k];
            m1[i] = log_sum_exp(row);
            for (std::size_t k = 0; k < n; ++k) col[k] = joint[k * n + i];
            m2[i] = log_sum_exp(col);
        }
    }

    MutualInformation mi;
    std::vector<double> mi_terms, e1, e2, e12, lit;
    for (std::size_t i = 0; i < n; ++i) {
        e1.push_back(exp_or_zero(m1[i]) * nodes[i]);
        e2.push_back(exp_or_zero(m2[i]) * nodes[i]);
        for (std::size_t k = 0; k < n; ++k) {
            if (live[i * n + k] == 0) continue;
            ++mi.cells;
            const double q = exp_or_zero(joint[i * n + k]);
            if (q > 0.0) mi_terms.push_back(q * (joint[i * n + k] - m1[i] - m2[k]));
            e12.push_back(q * nodes[i] * nodes[k]);
            const double pj = literal(nodes[i] + nodes[k]);
            const double p1 = literal(nodes[i]);
            const double p2 = literal(nodes[k]);
            if (pj != kNegInf && p1 != kNegInf && p2 != kNegInf) {
                const double w = exp_or_zero(pj);
                if (w > 0.0) lit.push_back(w * (pj - p1 - p2));
            }
        }
    }
    constexpr double k8pi = 8.0 * std::numbers::pi;
    mi.mi_numeric = kernels::sum(mi_terms);
    mi.mean_first = kernels::sum(e1);
    mi.mean_second = kernels::sum(e2);
    const double moment = kernels::sum(e12);
    mi.covariance = moment - mi.mean_first * mi.mean_second;
    mi.mi_product_form = k8pi * mi.mean_first * mi.mean_second;
    mi.mi_moment_form = k8pi * moment;
    mi.mi_literal_form = kernels::sum(lit);
    return mi;
}

double log_weight_or_neg_inf(const BlackHoleState& s, const Emission& e) {
    if (remnant_kind(s, e) == RemnantKind::Invalid) return kNegInf;
    return emission_log_weight(s, e);
}

}  // namespace

double radiation_entropy(const SpectrumGrid& spectrum) {
    require_unit_sum(spectrum);
    std::vector<double> terms;
    terms.reserve(spectrum.size());
    for (std::size_t i = 0; i < spectrum.size(); ++i) {
        if (spectrum.valid[i] == 0) continue;
        const double p = exp_or_zero(spectrum.log_weight[i]);
        if (p > 0.0) terms.push_back(-p * spectrum.log_weight[i]);
    }
    return kernels::sum(terms);
}

ConditionalEntropy conditional_entropy(const BlackHoleState& state, const SpectrumGrid& spectrum) {
    require_unit_sum(spectrum);
    validate(state);
    if (spectrum.source && *spectrum.source != state) {
        throw UsageError("spectrum was built for a different state");
    }
    ConditionalEntropy c;
    std::vector<double> s_terms, raw_terms, w_terms, q_terms, j_terms, excluded;
    for (std::size_t i = 0; i < spectrum.size(); ++i) {
        if (spectrum.valid[i] == 0) continue;
        const double p = exp_or_zero(spectrum.log_weight[i]);
        const Emission e = spectrum.emission(i);
        double s_rem = std::numeric_limits<double>::quiet_NaN();
        try {
            s_rem = bh_entropy(remnant_after(state, e));
        } catch (const DomainError&) {
        }
        if (!std::isfinite(s_rem)) {
            excluded.push_back(p);
            continue;
        }
        s_terms.push_back(p * s_rem);
        raw_terms.push_back(exp_or_zero(spectrum.log_weight[i] + spectrum.log_normalizer) * s_rem);
        w_terms.push_back(p * e.omega);
        q_terms.push_back(p * e.charge);
        j_terms.push_back(p * e.spin);
    }
    c.exact = kernels::sum(s_terms);
    c.raw_weighted = kernels::sum(raw_terms);
    c.mean_omega = kernels::sum(w_terms);
    c.mean_charge = kernels::sum(q_terms);
    c.mean_spin = kernels::sum(j_terms);
    c.remnant_energy = state.mass - c.mean_omega;
    c.excluded_mass = kernels::sum(excluded);
    c.excluded_warning = c.excluded_mass > kExcludedWarning;
    c.lowenergy = bh_entropy(remnant_after(state, {c.mean_omega, c.mean_charge, c.mean_spin}));
    return c;
}

double pairwise_correlation(const BlackHoleState& state, const Emission& e1, const Emission& e2) {
    return emission_log_weight(state, e1 + e2) - emission_log_weight(state, e1) -
           emission_log_weight(state, e2);
}

MutualInformation mutual_information(const BlackHoleState& state, const OmegaAxis& axis) {
    validate(state);
    GridSpec grid{axis, {}, {}};
    grid.validate();
    return mutual_information_impl(
        grid.omega_nodes(), [&](double w) { return log_weight_or_neg_inf(state, {w, 0.0, 0.0}); },
        [&](double w1, double w2) {
            if (remnant_kind(state, {w1, 0.0, 0.0}) != RemnantKind::Valid) {
                return w2 == 0.0 ? 0.0 : kNegInf;
            }
            return log_weight_or_neg_inf(apply_emission(state, {w1, 0.0, 0.0}), {w2, 0.0, 0.0});
        },
        [&](double w) { return log_weight_or_neg_inf(state, {w, 0.0, 0.0}); });
}

MutualInformation mutual_information(const EntropyFunction& entropy, const MacroState& total,
                                     const OmegaAxis& axis) {
    if (!entropy.valid(total)) throw DomainError("total macro-state outside the entropy's domain");
    GridSpec grid{axis, {}, {}};
    grid.validate();
    auto log_p = [&](const MacroState& from, double w) {
        const MacroState rest = from - MacroState{w, 0.0, 0.0};
        if (!entropy.valid(rest)) return kNegInf;
        return entropy.entropy(rest) - entropy.entropy(from);
    };
    return mutual_information_impl(
        grid.omega_nodes(), [&](double w) { return log_p(total, w); },
        [&](double w1, double w2) {
            const MacroState after = total - MacroState{w1, 0.0, 0.0};
            if (!entropy.valid(after)) return kNegInf;
            return log_p(after, w2);
        },
        [&](double w) { return log_p(total, w); });
}

ChainLedger chain_information_ledger(const EmissionChain& chain) {
    if (!chain.complete()) throw UsageError("information ledger needs a complete chain");
    ChainLedger ledger;
    std::vector<double> info;
    Emission prior;
    for (std::size_t i = 0; i < chain.steps.size(); ++i) {
        const auto& step = chain.steps[i];
        LedgerEntry entry;
        entry.self_information = -step.log_weight;
        info.push_back(entry.self_information);
        if (i == 0) {
            entry.prior_correlation = 0.0;
        } else {
            try {
                entry.prior_correlation = pairwise_correlation(chain.initial, prior, step.emission);
            } catch (const DomainError&) {
                entry.prior_correlation.reset();
            }
        }
        prior = prior + step.emission;
        ledger.entries.push_back(entry);
    }
    ledger.total = kernels::sum(info);
    ledger.expected = bh_entropy(chain.initial) - bh_entropy(chain.final_state());
    ledger.residual = ledger.total - ledger.expected;
    return ledger;
}

InfoReport build_info_report(const BlackHoleState& state, const GridSpec& grid) {
    const auto spectrum = build_spectrum(state, grid, Normalization::UnitSum);
    InfoReport r;
    r.s_r = radiation_entropy(spectrum);
    const auto cond = conditional_entropy(state, spectrum);
    r.s_cond = cond.exact;
    r.s_cond_lowenergy = cond.lowenergy;
    r.s_cond_raw_weighted = cond.raw_weighted;
    r.e_r = cond.mean_omega;
    r.e_bprime = cond.remnant_energy;
    r.excluded_mass = cond.excluded_mass;
    r.excluded_warning = cond.excluded_warning;

    const auto nodes = grid.omega_nodes();
    std::vector<double> corr;
    for (double w1 : nodes) {
        for (double w2 : nodes) {
            const Emission a{w1, 0.0, 0.0}, b{w2, 0.0, 0.0};
            if (remnant_kind(state, a + b) == RemnantKind::Invalid) continue;
            corr.push_back(pairwise_correlation(state, a, b));
        }
    }
    if (!corr.empty()) {
        r.correlation_mean = kernels::sum(corr) / static_cast<double>(corr.size());
        r.correlation_max = kernels::max(corr);
    }
    if (grid.omega.bins >= 2) {
        const auto mi = mutual_information(state, grid.omega);
        r.mi_numeric = mi.mi_numeric;
        r.mi_product_form = mi.mi_product_form;
        r.mi_moment_form = mi.mi_moment_form;
        r.mi_literal_form = mi.mi_literal_form;
    }
    return r;
}

}  // namespace hawkrad
