#pragma once

// Entropy and correlation functionals of emission spectra and cascades.
// Spectra must be UnitSum wherever probability semantics are needed; each
// function says which policy it requires. 0 ln 0 = 0 throughout.

#include <optional>
#include <vector>

#include "hawkrad/evaporation.hpp"
#include "hawkrad/spectrum.hpp"
#include "hawkrad/typicality.hpp"

namespace hawkrad {

// Shannon entropy of a UnitSum spectrum's valid bins. Raw -> UsageError.
double radiation_entropy(const SpectrumGrid& spectrum);

struct ConditionalEntropy {
    double exact = 0.0;          // sum_r p(r) S(remnant r), UnitSum weights
    double lowenergy = 0.0;      // S at the mean remnant hairs
    double raw_weighted = 0.0;   // same sum with the raw weights exp(-Delta S)
    double mean_omega = 0.0;     // E_R
    double mean_charge = 0.0;
    double mean_spin = 0.0;
    double remnant_energy = 0.0; // E_B' = M - E_R
    double excluded_mass = 0.0;  // probability on bins whose remnant entropy is undefined
    bool excluded_warning = false;
};

// Requires a UnitSum spectrum built for `state`.
ConditionalEntropy conditional_entropy(const BlackHoleState& state, const SpectrumGrid& spectrum);

// ln p(e1 + e2) - ln p(e1) - ln p(e2), all conditioned on `state`.
// For Schwarzschild with alpha = 0 this is 8 pi omega1 omega2.
double pairwise_correlation(const BlackHoleState& state, const Emission& e1, const Emission& e2);

struct MutualInformation {
    double mi_numeric = 0.0;      // sum q ln(q / (q1 q2)) for q ~ p(w1) p(w2 | after w1)
    double mi_product_form = 0.0;   // 8 pi <w1>_q1 <w2>_q2
    double mi_moment_form = 0.0;  // 8 pi <w1 w2>_q
    // sum p(w1 + w2) ln[p(w1 + w2) / (p(w1) p(w2))] with raw weights; not a
    // normalized joint, kept for comparison only.
    double mi_literal_form = 0.0;
    double mean_first = 0.0;
    double mean_second = 0.0;
    double covariance = 0.0;
    std::size_t cells = 0;
};

// Joint over omega_axis x omega_axis built by sequential conditioning. Throws
// UsageError for fewer than 2 bins per axis.
MutualInformation mutual_information(const BlackHoleState& state, const OmegaAxis& axis);
MutualInformation mutual_information(const EntropyFunction& entropy, const MacroState& total,
                                     const OmegaAxis& axis);

struct LedgerEntry {
    double self_information = 0.0;         // -ln Gamma of this step
    std::optional<double> prior_correlation; // vs the sum of earlier emissions
};

struct ChainLedger {
    std::vector<LedgerEntry> entries;
    double total = 0.0;     // sum of self-information
    double expected = 0.0;  // S(initial) - S(final)
    double residual = 0.0;  // total - expected
};

// Requires a complete chain (Exhausted or StopMass); else UsageError.
ChainLedger chain_information_ledger(const EmissionChain& chain);

struct InfoReport {
    double s_r = 0.0;
    double s_cond = 0.0;
    double s_cond_lowenergy = 0.0;
    double s_cond_raw_weighted = 0.0;
    double e_r = 0.0;
    double e_bprime = 0.0;
    double correlation_mean = 0.0;
    double correlation_max = 0.0;
    double mi_numeric = 0.0;
    double mi_product_form = 0.0;
    double mi_moment_form = 0.0;
    double mi_literal_form = 0.0;
    double excluded_mass = 0.0;
    bool excluded_warning = false;
};

// Everything above for one state and grid. The correlation summary covers
// omega-axis pairs whose sum is still an admissible emission.
InfoReport build_info_report(const BlackHoleState& state, const GridSpec& grid);

}  // namespace hawkrad
