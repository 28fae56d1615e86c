#pragma once

#include <cstdint>
#include <span>

namespace hawkrad {

// log(sum exp(x_i)) over entries with mask[i] != 0 (all entries when the mask
// is empty). Returns -inf when nothing is selected.
double log_sum_exp(std::span<const double> x, std::span<const std::uint8_t> mask = {});

// Subtracts log_sum_exp from every selected entry; returns the subtracted total.
double normalize_log_weights(std::span<double> x, std::span<const std::uint8_t> mask = {});

// exp(x), or exactly 0.0 when the result would be subnormal or underflow.
double exp_or_zero(double x);

}  // namespace hawkrad
