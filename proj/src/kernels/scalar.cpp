#include <algorithm>
#include <limits>

#include "reference.hpp"

namespace hawkrad::kernels {
namespace {

double sum_scalar(std::span<const double> x) {
    double s[4] = {0.0, 0.0, 0.0, 0.0};
    double c[4] = {0.0, 0.0, 0.0, 0.0};
    const std::size_t blocks = x.size() / 4;
    for (std::size_t b = 0; b < blocks; ++b) {
        for (int l = 0; l < 4; ++l) {
            detail::kahan_add(s[l], c[l], x[4 * b + l]);
        }
    }
    auto acc = detail::kahan_combine(s, c);
    for (std::size_t i = 4 * blocks; i < x.size(); ++i) {
        detail::kahan_add(acc.sum, acc.comp, x[i]);
    }
    return acc.sum - acc.comp;
}

double max_scalar(std::span<const double> x) {
    double m = -std::numeric_limits<double>::infinity();
    for (double v : x) m = std::max(m, v);
    return m;
}

ComplexSum inner_scalar(std::span<const std::complex<double>> a,
                        std::span<const std::complex<double>> b) {
    double re[4] = {0.0, 0.0, 0.0, 0.0};
    double im[4] = {0.0, 0.0, 0.0, 0.0};
    const std::size_t n = std::min(a.size(), b.size());
    const std::size_t pairs = n / 2;
    for (std::size_t p = 0; p < pairs; ++p) {
        for (int k = 0; k < 2; ++k) {
            const auto& u = a[2 * p + k];
            const auto& v = b[2 * p + k];
            re[2 * k] += u.real() * v.real();
            re[2 * k + 1] += u.imag() * v.imag();
            im[2 * k] += u.real() * v.imag();
            im[2 * k + 1] += u.imag() * v.real();
        }
    }
    ComplexSum acc = detail::inner_combine(re, im);
    if (n % 2 != 0) detail::inner_tail(acc, a[n - 1], b[n - 1]);
    return acc;
}

void area_entropy_delta_scalar(const HairBatch& hole, std::span<const double> omega,
                               std::span<const double> charge, std::span<const double> spin,
                               std::span<double> out) {
    const auto c = detail::hole_constants(hole);
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = detail::area_entropy_delta_one(c, omega[i], charge[i], spin[i]);
    }
}

}  // namespace

const KernelTable& scalar_table() {
    static const KernelTable table{"scalar", &sum_scalar, &max_scalar, &inner_scalar,
                                   &area_entropy_delta_scalar};
    return table;
}

}  // namespace hawkrad::kernels
