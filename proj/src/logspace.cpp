#include "hawkrad/logspace.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "hawkrad/kernels.hpp"

namespace hawkrad {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

bool selected(std::span<const std::uint8_t> mask, std::size_t i) {
    return mask.empty() || mask[i] != 0;
}

}  // namespace

double log_sum_exp(std::span<const double> x, std::span<const std::uint8_t> mask) {
    std::vector<double> picked;
    if (mask.empty()) {
        picked.assign(x.begin(), x.end());
    } else {
        picked.reserve(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (mask[i] != 0) picked.push_back(x[i]);
        }
    }
    if (picked.empty()) return kNegInf;
    const double top = kernels::max(picked);
    if (top == kNegInf || !std::isfinite(top)) return top;
    for (double& v : picked) v = std::exp(v - top);
    return top + std::log(kernels::sum(picked));
}

double normalize_log_weights(std::span<double> x, std::span<const std::uint8_t> mask) {
    const double total = log_sum_exp(x, mask);
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (selected(mask, i)) x[i] -= total;
    }
    return total;
}

double exp_or_zero(double x) {
    static const double kLogMin = std::log(std::numeric_limits<double>::min());
    if (!(x >= kLogMin)) return 0.0;
    return std::exp(x);
}

}  // namespace hawkrad
