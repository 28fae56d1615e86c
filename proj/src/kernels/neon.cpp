#include "reference.hpp"

#if defined(__aarch64__) && defined(__ARM_NEON)
#define HAWKRAD_HAVE_NEON 1
#include <arm_neon.h>
#else
#define HAWKRAD_HAVE_NEON 0
#endif

namespace hawkrad::kernels {

#if HAWKRAD_HAVE_NEON
namespace {

// Two float64x2 registers stand in for the four reference lanes.

double sum_neon(std::span<const double> x) {
    float64x2_t s0 = vdupq_n_f64(0.0), s1 = vdupq_n_f64(0.0);
    float64x2_t c0 = vdupq_n_f64(0.0), c1 = vdupq_n_f64(0.0);
    const std::size_t blocks = x.size() / 4;
    for (std::size_t b = 0; b < blocks; ++b) {
        const float64x2_t v0 = vld1q_f64(x.data() + 4 * b);
        const float64x2_t v1 = vld1q_f64(x.data() + 4 * b + 2);
        const float64x2_t y0 = vsubq_f64(v0, c0);
        const float64x2_t y1 = vsubq_f64(v1, c1);
        const float64x2_t t0 = vaddq_f64(s0, y0);
        const float64x2_t t1 = vaddq_f64(s1, y1);
        c0 = vsubq_f64(vsubq_f64(t0, s0), y0);
        c1 = vsubq_f64(vsubq_f64(t1, s1), y1);
        s0 = t0;
        s1 = t1;
    }
    double sl[4], cl[4];
    vst1q_f64(sl, s0);
    vst1q_f64(sl + 2, s1);
    vst1q_f64(cl, c0);
    vst1q_f64(cl + 2, c1);
    auto acc = detail::kahan_combine(sl, cl);
    for (std::size_t i = 4 * blocks; i < x.size(); ++i) detail::kahan_add(acc.sum, acc.comp, x[i]);
    return acc.sum - acc.comp;
}

double max_neon(std::span<const double> x) {
    const double ninf = -std::numeric_limits<double>::infinity();
    float64x2_t m0 = vdupq_n_f64(ninf), m1 = vdupq_n_f64(ninf);
    const std::size_t blocks = x.size() / 4;
    for (std::size_t b = 0; b < blocks; ++b) {
        m0 = vmaxq_f64(m0, vld1q_f64(x.data() + 4 * b));
        m1 = vmaxq_f64(m1, vld1q_f64(x.data() + 4 * b + 2));
    }
    double r = std::max(vmaxvq_f64(m0), vmaxvq_f64(m1));
    for (std::size_t i = 4 * blocks; i < x.size(); ++i) r = std::max(r, x[i]);
    return r;
}

ComplexSum inner_neon(std::span<const std::complex<double>> a,
                      std::span<const std::complex<double>> b) {
    float64x2_t re0 = vdupq_n_f64(0.0), re1 = vdupq_n_f64(0.0);
    float64x2_t im0 = vdupq_n_f64(0.0), im1 = vdupq_n_f64(0.0);
    const std::size_t n = std::min(a.size(), b.size());
    const std::size_t pairs = n / 2;
    const double* pa = reinterpret_cast<const double*>(a.data());
    const double* pb = reinterpret_cast<const double*>(b.data());
    for (std::size_t p = 0; p < pairs; ++p) {
        const float64x2_t a0 = vld1q_f64(pa + 4 * p);
        const float64x2_t a1 = vld1q_f64(pa + 4 * p + 2);
        const float64x2_t b0 = vld1q_f64(pb + 4 * p);
        const float64x2_t b1 = vld1q_f64(pb + 4 * p + 2);
        re0 = vaddq_f64(re0, vmulq_f64(a0, b0));
        re1 = vaddq_f64(re1, vmulq_f64(a1, b1));
        im0 = vaddq_f64(im0, vmulq_f64(a0, vextq_f64(b0, b0, 1)));
        im1 = vaddq_f64(im1, vmulq_f64(a1, vextq_f64(b1, b1, 1)));
    }
    double rl[4], il[4];
    vst1q_f64(rl, re0);
    vst1q_f64(rl + 2, re1);
    vst1q_f64(il, im0);
    vst1q_f64(il + 2, im1);
    ComplexSum acc = detail::inner_combine(rl, il);
    if (n % 2 != 0) detail::inner_tail(acc, a[n - 1], b[n - 1]);
    return acc;
}

void area_entropy_delta_neon(const HairBatch& hole, std::span<const double> omega,
                             std::span<const double> charge, std::span<const double> spin,
                             std::span<double> out) {
    const auto c = detail::hole_constants(hole);
    const float64x2_t mass = vdupq_n_f64(c.mass);
    const float64x2_t chg = vdupq_n_f64(c.charge);
    const float64x2_t spn = vdupq_n_f64(c.spin);
    const float64x2_t two_mass = vdupq_n_f64(c.two_mass);
    const float64x2_t half_mass = vdupq_n_f64(c.half_mass);
    const float64x2_t two_charge = vdupq_n_f64(c.two_charge);
    const float64x2_t kerr_a = vdupq_n_f64(c.kerr_a);
    const float64x2_t root = vdupq_n_f64(c.root_disc);
    const float64x2_t two = vdupq_n_f64(2.0);
    const float64x2_t pi = vdupq_n_f64(std::numbers::pi);
    const float64x2_t zero = vdupq_n_f64(0.0);

    const std::size_t blocks = out.size() / 2;
    for (std::size_t b = 0; b < blocks; ++b) {
        const std::size_t i = 2 * b;
        const float64x2_t w = vld1q_f64(omega.data() + i);
        const float64x2_t q = vld1q_f64(charge.data() + i);
        const float64x2_t j = vld1q_f64(spin.data() + i);
        const float64x2_t mp = vsubq_f64(mass, w);
        const float64x2_t qp = vsubq_f64(chg, q);
        const float64x2_t jp = vsubq_f64(spn, j);
        const float64x2_t ap = vdivq_f64(jp, mp);
        const float64x2_t d_mass_sq = vnegq_f64(vmulq_f64(w, vsubq_f64(two_mass, w)));
        const float64x2_t d_charge_sq = vnegq_f64(vmulq_f64(q, vsubq_f64(two_charge, q)));
        const float64x2_t a_num = vbslq_f64(vcgtq_f64(w, half_mass),
                                            vsubq_f64(vmulq_f64(mass, jp), vmulq_f64(spn, mp)),
                                            vsubq_f64(vmulq_f64(spn, w), vmulq_f64(j, mass)));
        const float64x2_t d_a = vdivq_f64(a_num, vmulq_f64(mass, mp));
        const float64x2_t d_a_sq = vmulq_f64(d_a, vaddq_f64(ap, kerr_a));
        const float64x2_t disc_p =
            vsubq_f64(vsubq_f64(vmulq_f64(mp, mp), vmulq_f64(qp, qp)), vmulq_f64(ap, ap));
        const float64x2_t root_p = vsqrtq_f64(vbslq_f64(vcgtq_f64(disc_p, zero), disc_p, zero));
        const float64x2_t d_disc = vsubq_f64(vsubq_f64(d_mass_sq, d_charge_sq), d_a_sq);
        const float64x2_t den = vaddq_f64(root_p, root);
        const uint64x2_t positive = vcgtq_f64(den, zero);
        const float64x2_t d_root = vbslq_f64(positive, vdivq_f64(d_disc, den), zero);
        const float64x2_t d_mass_root = vsubq_f64(vmulq_f64(mass, d_root), vmulq_f64(w, root_p));
        const float64x2_t d_area =
            vaddq_f64(vsubq_f64(vmulq_f64(two, d_mass_sq), d_charge_sq), vmulq_f64(two, d_mass_root));
        vst1q_f64(out.data() + i, vmulq_f64(pi, d_area));
    }
    for (std::size_t i = 2 * blocks; i < out.size(); ++i) {
        out[i] = detail::area_entropy_delta_one(c, omega[i], charge[i], spin[i]);
    }
}

}  // namespace

const KernelTable* neon_table() {
    static const KernelTable table{"neon", &sum_neon, &max_neon, &inner_neon,
                                   &area_entropy_delta_neon};
    return &table;
}

#else

const KernelTable* neon_table() { return nullptr; }

#endif

}  // namespace hawkrad::kernels
