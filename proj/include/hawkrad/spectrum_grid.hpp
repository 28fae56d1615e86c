#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "hawkrad/black_hole.hpp"

namespace hawkrad {

enum class Normalization { Raw, UnitSum };

// Energy nodes omega_i = min + (i + 1) (max - min) / bins, i = 0 .. bins-1,
// i.e. the grid covers (min, max] and the last node is exactly max. Nodes are
// point evaluations; no integration over bin width.
struct OmegaAxis {
    double min = 0.0;
    double max = 1.0;
    std::size_t bins = 1;

    friend bool operator==(const OmegaAxis&, const OmegaAxis&) = default;
};

// Values k * step for k in [min_quanta, max_quanta]. The default is the single
// value 0, i.e. no charge or angular-momentum emission.
struct QuantumAxis {
    std::int64_t min_quanta = 0;
    std::int64_t max_quanta = 0;
    double step = 1.0;

    std::size_t size() const { return static_cast<std::size_t>(max_quanta - min_quanta + 1); }
    double value(std::size_t i) const { return static_cast<double>(min_quanta + static_cast<std::int64_t>(i)) * step; }
    friend bool operator==(const QuantumAxis&, const QuantumAxis&) = default;
};

struct GridSpec {
    OmegaAxis omega;
    QuantumAxis charge;
    QuantumAxis spin;

    // Throws UsageError on an empty or malformed axis.
    void validate() const;
    std::size_t size() const { return omega.bins * charge.size() * spin.size(); }
    std::vector<double> omega_nodes() const;

    friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

// Discretized diagonal of the radiation density matrix, stored as parallel
// columns. Bin order is omega-major, then charge, then spin. Invalid bins
// (forbidden emission channels) keep their place with log_weight = -inf.
struct SpectrumGrid {
    std::vector<double> omega;
    std::vector<double> charge;
    std::vector<double> spin;
    std::vector<double> log_weight;
    std::vector<std::uint8_t> valid;

    Normalization normalization = Normalization::Raw;
    // Total subtracted by UnitSum normalization; raw = log_weight + log_normalizer.
    double log_normalizer = 0.0;
    std::optional<BlackHoleState> source;
    std::optional<GridSpec> grid;

    std::size_t size() const { return log_weight.size(); }
    std::size_t valid_count() const;
    Emission emission(std::size_t i) const { return {omega[i], charge[i], spin[i]}; }
    void resize(std::size_t n);
};

}  // namespace hawkrad
