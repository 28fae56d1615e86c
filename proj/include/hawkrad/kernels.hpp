#pragma once

// Data-parallel inner loops. Every kernel has a scalar reference and, where the
// target supports it, an AVX2 or NEON variant. The variants reproduce the
// reference bit for bit: reductions use a fixed 4-lane accumulation order and
// no fused multiply-add, so results do not depend on the selected ISA.

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

namespace hawkrad::kernels {

// Fixed hairs of the emitting hole for the batched entropy-difference kernel.
struct HairBatch {
    double mass = 0.0;
    double charge = 0.0;
    double spin = 0.0;  // angular momentum J
};

struct ComplexSum {
    double re = 0.0;
    double im = 0.0;
};

// Function table for one instruction set.
struct KernelTable {
    std::string_view name;

    // Compensated (Kahan) sum with four interleaved lanes.
    double (*sum)(std::span<const double> x);

    // Maximum element; -inf for an empty span. NaN inputs are not supported.
    double (*max)(std::span<const double> x);

    // <a|b> = sum conj(a_k) b_k.
    ComplexSum (*inner)(std::span<const std::complex<double>> a,
                        std::span<const std::complex<double>> b);

    // out_k = pi * (R_H^2(remnant_k) - R_H^2(hole)) for remnants
    // (M - omega_k, Q - q_k, J - j_k). Remnants must have M' > 0 and be
    // sub-extremal; other entries produce unspecified values.
    void (*area_entropy_delta)(const HairBatch& hole,
                               std::span<const double> omega,
                               std::span<const double> charge,
                               std::span<const double> spin,
                               std::span<double> out);
};

const KernelTable& scalar_table();

// nullptr when the variant was not compiled in or the CPU lacks support.
const KernelTable* avx2_table();
const KernelTable* neon_table();

// Best table for this CPU. HAWKRAD_SIMD=scalar in the environment forces the
// reference path.
const KernelTable& active();

inline double sum(std::span<const double> x) { return active().sum(x); }
inline double max(std::span<const double> x) { return active().max(x); }
inline ComplexSum inner(std::span<const std::complex<double>> a,
                        std::span<const std::complex<double>> b) {
    return active().inner(a, b);
}

}  // namespace hawkrad::kernels
