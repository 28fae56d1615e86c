#pragma once

// Non-thermal emission spectra from black-hole entropy differences. Every
// weight is kept in nats; exponentiation happens only when writing output.

#include <cstdint>
#include <optional>
#include <span>

#include "hawkrad/black_hole.hpp"
#include "hawkrad/spectrum_grid.hpp"

namespace hawkrad {

// ln Gamma(e | state) = S(remnant) - S(state), S = bh_entropy. For alpha != 0
// this single difference carries both the exponential and the
// (R'_H / R_H)^(2 alpha) prefactor. Evaluated from the emitted amounts rather
// than by subtracting two large entropies. Throws RemnantInvalid.
double emission_log_weight(const BlackHoleState& state, const Emission& e);

// Batched form of emission_log_weight. Invalid channels get valid = 0 and
// out = -inf instead of throwing. Results are bit-identical to the scalar call.
void emission_log_weights(const BlackHoleState& state, std::span<const double> omega,
                          std::span<const double> charge, std::span<const double> spin,
                          std::span<double> out, std::span<std::uint8_t> valid);

// Throws UsageError for omega_max > M or axes the family cannot carry, and
// DomainError when every bin is invalid.
SpectrumGrid build_spectrum(const BlackHoleState& state, const GridSpec& grid,
                            Normalization normalization);

// Hawking's thermal baseline: -8 pi M omega for Schwarzschild, -omega / T
// otherwise. Throws DomainError at extremality.
double thermal_log_weight(const BlackHoleState& state, double omega);

// Same grid as build_spectrum, thermal weights. Every bin is valid.
SpectrumGrid build_thermal_spectrum(const BlackHoleState& state, const GridSpec& grid,
                                    Normalization normalization);

struct SpectrumComparison {
    std::optional<double> kl_divergence;  // only when both spectra are UnitSum
    double max_abs_log_ratio = 0.0;
    double mean_abs_log_ratio = 0.0;
    std::size_t compared_bins = 0;
};

// Metrics over bins valid in both spectra. Throws UsageError on grid mismatch.
SpectrumComparison compare_thermal(const SpectrumGrid& nonthermal, const SpectrumGrid& thermal);

}  // namespace hawkrad
