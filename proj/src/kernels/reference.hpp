#pragma once

// Per-element and tail routines shared by every kernel variant. SIMD bodies
// handle full blocks and defer the remainder here, so the rounding sequence is
// defined in exactly one place.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "hawkrad/kernels.hpp"

namespace hawkrad::kernels::detail {

struct HoleConstants {
    double mass;
    double charge;
    double spin;
    double two_mass;
    double half_mass;
    double two_charge;
    double kerr_a;    // J / M
    double root_disc; // sqrt(M^2 - Q^2 - a^2)
};

inline HoleConstants hole_constants(const HairBatch& h) {
    HoleConstants c{};
    c.mass = h.mass;
    c.charge = h.charge;
    c.spin = h.spin;
    c.two_mass = 2.0 * h.mass;
    c.half_mass = 0.5 * h.mass;
    c.two_charge = 2.0 * h.charge;
    c.kerr_a = h.spin / h.mass;
    const double disc = (h.mass * h.mass - h.charge * h.charge) - c.kerr_a * c.kerr_a;
    c.root_disc = std::sqrt(disc > 0.0 ? disc : 0.0);
    return c;
}

// pi * (R'^2 - R^2) with R^2 = 2M^2 - Q^2 + 2M sqrt(M^2 - Q^2 - a^2), written in
// terms of the emitted amounts so no large entropies are subtracted.
inline double area_entropy_delta_one(const HoleConstants& c, double w, double q, double j) {
    const double mp = c.mass - w;
    const double qp = c.charge - q;
    const double jp = c.spin - j;
    const double ap = jp / mp;
    const double d_mass_sq = -(w * (c.two_mass - w));
    const double d_charge_sq = -(q * (c.two_charge - q));
    // a' - a over M M'. Past half the mass the emitted amounts nearly cancel
    // the hole's, so the remnant hairs (exact there) give the better form.
    const double a_num = w > c.half_mass ? c.mass * jp - c.spin * mp : c.spin * w - j * c.mass;
    const double d_a = a_num / (c.mass * mp);
    const double d_a_sq = d_a * (ap + c.kerr_a);
    const double disc_p = (mp * mp - qp * qp) - ap * ap;
    // Remnants within rounding of extremality are clamped onto it.
    const double root_p = std::sqrt(disc_p > 0.0 ? disc_p : 0.0);
    const double d_disc = (d_mass_sq - d_charge_sq) - d_a_sq;
    const double den = root_p + c.root_disc;
    const double d_root = den > 0.0 ? d_disc / den : 0.0;
    const double d_mass_root = c.mass * d_root - w * root_p;
    const double d_area = (2.0 * d_mass_sq - d_charge_sq) + 2.0 * d_mass_root;
    return std::numbers::pi * d_area;
}

struct KahanState {
    double sum = 0.0;
    double comp = 0.0;
};

inline KahanState kahan_combine(const double (&s)[4], const double (&c)[4]) {
    return {(s[0] + s[1]) + (s[2] + s[3]), (c[0] + c[1]) + (c[2] + c[3])};
}

inline void kahan_add(double& sum, double& comp, double x) {
    const double y = x - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
}

inline ComplexSum inner_combine(const double (&re)[4], const double (&im)[4]) {
    return {(re[0] + re[1]) + (re[2] + re[3]), (im[0] - im[1]) + (im[2] - im[3])};
}

inline void inner_tail(ComplexSum& acc, std::complex<double> a, std::complex<double> b) {
    acc.re = acc.re + (a.real() * b.real() + a.imag() * b.imag());
    acc.im = acc.im + (a.real() * b.imag() - a.imag() * b.real());
}

}  // namespace hawkrad::kernels::detail
