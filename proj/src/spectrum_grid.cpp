#include "hawkrad/spectrum_grid.hpp"

#include <cmath>

#include "hawkrad/errors.hpp"

namespace hawkrad {

void GridSpec::validate() const {
    if (omega.bins == 0) throw UsageError("omega axis needs at least one bin");
    if (!std::isfinite(omega.min) || !std::isfinite(omega.max) || omega.min < 0.0 ||
        omega.max < omega.min) {
        throw UsageError("omega axis requires 0 <= omega_min <= omega_max");
    }
    for (const auto* axis : {&charge, &spin}) {
        if (axis->max_quanta < axis->min_quanta) throw UsageError("quantum axis is empty");
        if (!(axis->step > 0.0) || !std::isfinite(axis->step)) {
            throw UsageError("quantum axis step must be positive");
        }
    }
}

std::vector<double> GridSpec::omega_nodes() const {
    std::vector<double> nodes(omega.bins);
    const double width = omega.max - omega.min;
    for (std::size_t i = 0; i < omega.bins; ++i) {
        nodes[i] = omega.min + width * static_cast<double>(i + 1) / static_cast<double>(omega.bins);
    }
    nodes.back() = omega.max;
    return nodes;
}

std::size_t SpectrumGrid::valid_count() const {
    std::size_t n = 0;
    for (auto v : valid) n += v != 0;
    return n;
}

void SpectrumGrid::resize(std::size_t n) {
    omega.resize(n);
    charge.resize(n);
    spin.resize(n);
    log_weight.resize(n);
    valid.resize(n);
}

}  // namespace hawkrad
