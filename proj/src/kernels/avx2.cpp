// Compiled with -mavx2 only. FMA stays disabled so every lane rounds exactly
// like the scalar reference.

#include "reference.hpp"

#if defined(__x86_64__) && defined(__AVX2__)
#define HAWKRAD_HAVE_AVX2 1
#include <immintrin.h>
#else
#define HAWKRAD_HAVE_AVX2 0
#endif

namespace hawkrad::kernels {

#if HAWKRAD_HAVE_AVX2
namespace {

double sum_avx2(std::span<const double> x) {
    __m256d s = _mm256_setzero_pd();
    __m256d c = _mm256_setzero_pd();
    const std::size_t blocks = x.size() / 4;
    const double* p = x.data();
    for (std::size_t b = 0; b < blocks; ++b) {
        const __m256d v = _mm256_loadu_pd(p + 4 * b);
        const __m256d y = _mm256_sub_pd(v, c);
        const __m256d t = _mm256_add_pd(s, y);
        c = _mm256_sub_pd(_mm256_sub_pd(t, s), y);
        s = t;
    }
    alignas(32) double sl[4];
    alignas(32) double cl[4];
    _mm256_store_pd(sl, s);
    _mm256_store_pd(cl, c);
    auto acc = detail::kahan_combine(sl, cl);
    for (std::size_t i = 4 * blocks; i < x.size(); ++i) {
        detail::kahan_add(acc.sum, acc.comp, x[i]);
    }
    return acc.sum - acc.comp;
}

double max_avx2(std::span<const double> x) {
    __m256d m = _mm256_set1_pd(-std::numeric_limits<double>::infinity());
    const std::size_t blocks = x.size() / 4;
    for (std::size_t b = 0; b < blocks; ++b) {
        m = _mm256_max_pd(m, _mm256_loadu_pd(x.data() + 4 * b));
    }
    alignas(32) double ml[4];
    _mm256_store_pd(ml, m);
    double r = std::max(std::max(ml[0], ml[1]), std::max(ml[2], ml[3]));
    for (std::size_t i = 4 * blocks; i < x.size(); ++i) r = std::max(r, x[i]);
    return r;
}

ComplexSum inner_avx2(std::span<const std::complex<double>> a,
                      std::span<const std::complex<double>> b) {
    __m256d re = _mm256_setzero_pd();
    __m256d im = _mm256_setzero_pd();
    const std::size_t n = std::min(a.size(), b.size());
    const std::size_t pairs = n / 2;
    const double* pa = reinterpret_cast<const double*>(a.data());
    const double* pb = reinterpret_cast<const double*>(b.data());
    for (std::size_t p = 0; p < pairs; ++p) {
        const __m256d va = _mm256_loadu_pd(pa + 4 * p);
        const __m256d vb = _mm256_loadu_pd(pb + 4 * p);
        const __m256d vbs = _mm256_permute_pd(vb, 0b0101);
        re = _mm256_add_pd(re, _mm256_mul_pd(va, vb));
        im = _mm256_add_pd(im, _mm256_mul_pd(va, vbs));
    }
    alignas(32) double rl[4];
    alignas(32) double il[4];
    _mm256_store_pd(rl, re);
    _mm256_store_pd(il, im);
    ComplexSum acc = detail::inner_combine(rl, il);
    if (n % 2 != 0) detail::inner_tail(acc, a[n - 1], b[n - 1]);
    return acc;
}

void area_entropy_delta_avx2(const HairBatch& hole, std::span<const double> omega,
                             std::span<const double> charge, std::span<const double> spin,
                             std::span<double> out) {
    const auto c = detail::hole_constants(hole);
    const __m256d mass = _mm256_set1_pd(c.mass);
    const __m256d chg = _mm256_set1_pd(c.charge);
    const __m256d spn = _mm256_set1_pd(c.spin);
    const __m256d two_mass = _mm256_set1_pd(c.two_mass);
    const __m256d half_mass = _mm256_set1_pd(c.half_mass);
    const __m256d two_charge = _mm256_set1_pd(c.two_charge);
    const __m256d kerr_a = _mm256_set1_pd(c.kerr_a);
    const __m256d root = _mm256_set1_pd(c.root_disc);
    const __m256d two = _mm256_set1_pd(2.0);
    const __m256d pi = _mm256_set1_pd(std::numbers::pi);
    const __m256d zero = _mm256_setzero_pd();
    const __m256d sign = _mm256_set1_pd(-0.0);

    const std::size_t blocks = out.size() / 4;
    for (std::size_t b = 0; b < blocks; ++b) {
        const std::size_t i = 4 * b;
        const __m256d w = _mm256_loadu_pd(omega.data() + i);
        const __m256d q = _mm256_loadu_pd(charge.data() + i);
        const __m256d j = _mm256_loadu_pd(spin.data() + i);

        const __m256d mp = _mm256_sub_pd(mass, w);
        const __m256d qp = _mm256_sub_pd(chg, q);
        const __m256d jp = _mm256_sub_pd(spn, j);
        const __m256d ap = _mm256_div_pd(jp, mp);
        const __m256d d_mass_sq = _mm256_xor_pd(_mm256_mul_pd(w, _mm256_sub_pd(two_mass, w)), sign);
        const __m256d d_charge_sq =
            _mm256_xor_pd(_mm256_mul_pd(q, _mm256_sub_pd(two_charge, q)), sign);
        const __m256d a_num = _mm256_blendv_pd(
            _mm256_sub_pd(_mm256_mul_pd(spn, w), _mm256_mul_pd(j, mass)),
            _mm256_sub_pd(_mm256_mul_pd(mass, jp), _mm256_mul_pd(spn, mp)),
            _mm256_cmp_pd(w, half_mass, _CMP_GT_OQ));
        const __m256d d_a = _mm256_div_pd(a_num, _mm256_mul_pd(mass, mp));
        const __m256d d_a_sq = _mm256_mul_pd(d_a, _mm256_add_pd(ap, kerr_a));
        const __m256d disc_p = _mm256_sub_pd(
            _mm256_sub_pd(_mm256_mul_pd(mp, mp), _mm256_mul_pd(qp, qp)), _mm256_mul_pd(ap, ap));
        const __m256d root_p = _mm256_sqrt_pd(
            _mm256_blendv_pd(zero, disc_p, _mm256_cmp_pd(disc_p, zero, _CMP_GT_OQ)));
        const __m256d d_disc = _mm256_sub_pd(_mm256_sub_pd(d_mass_sq, d_charge_sq), d_a_sq);
        const __m256d den = _mm256_add_pd(root_p, root);
        const __m256d positive = _mm256_cmp_pd(den, zero, _CMP_GT_OQ);
        const __m256d d_root = _mm256_blendv_pd(zero, _mm256_div_pd(d_disc, den), positive);
        const __m256d d_mass_root =
            _mm256_sub_pd(_mm256_mul_pd(mass, d_root), _mm256_mul_pd(w, root_p));
        const __m256d d_area = _mm256_add_pd(
            _mm256_sub_pd(_mm256_mul_pd(two, d_mass_sq), d_charge_sq), _mm256_mul_pd(two, d_mass_root));
        _mm256_storeu_pd(out.data() + i, _mm256_mul_pd(pi, d_area));
    }
    for (std::size_t i = 4 * blocks; i < out.size(); ++i) {
        out[i] = detail::area_entropy_delta_one(c, omega[i], charge[i], spin[i]);
    }
}

}  // namespace

const KernelTable* avx2_table() {
    static const KernelTable table{"avx2", &sum_avx2, &max_avx2, &inner_avx2,
                                   &area_entropy_delta_avx2};
    if (!__builtin_cpu_supports("avx2")) return nullptr;
    return &table;
}

#else

const KernelTable* avx2_table() { return nullptr; }

#endif

}  // namespace hawkrad::kernels
