#include "hawkrad/black_hole.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "hawkrad/errors.hpp"

namespace hawkrad {
namespace {

constexpr double kPi = std::numbers::pi;

std::string describe(const BlackHoleState& s) {
    std::ostringstream os;
    os.precision(17);
    os << family_name(s.family) << "(M=" << s.mass << ", Q=" << s.charge << ", J=" << s.spin
       << ", alpha=" << s.alpha << ")";
    return os.str();
}

// States within a few ulps of extremality count as extremal, so lattice
// arithmetic can land exactly on the boundary.
constexpr double kExtremalSlack = 8.0 * std::numeric_limits<double>::epsilon();

bool sub_extremal(double mass, double charge, double spin) {
    return extremality_discriminant(mass, charge, spin) >= -kExtremalSlack * mass * mass;
}

double clamped_root(double mass, double charge, double spin) {
    const double d = extremality_discriminant(mass, charge, spin);
    return std::sqrt(d > 0.0 ? d : 0.0);
}

}  // namespace

std::string_view family_name(Family f) {
    switch (f) {
        case Family::Schwarzschild: return "schwarzschild";
        case Family::ReissnerNordstrom: return "rn";
        case Family::KerrNewman: return "kn";
    }
    return "unknown";
}

Family parse_family(std::string_view name) {
    if (name == "schwarzschild" || name == "s") return Family::Schwarzschild;
    if (name == "rn" || name == "reissner-nordstrom") return Family::ReissnerNordstrom;
    if (name == "kn" || name == "kerr-newman") return Family::KerrNewman;
    throw UsageError("unknown black-hole family '" + std::string(name) + "'");
}

BlackHoleState BlackHoleState::evaporated(Family family, double alpha) {
    BlackHoleState s;
    s.family = family;
    s.mass = 0.0;
    s.alpha = alpha;
    return s;
}

// Evaluated as (M^4 - M^2 Q^2 - J^2) / M^2 with error-free products, so the
// cancellation near extremality costs nothing: the root of this value sets
// R_H^2, and a rounding error of u M^2 here would become sqrt(u) M^2 there.
double extremality_discriminant(double mass, double charge, double spin) {
    const auto product = [](double x, double y, double& err) {
        const double p = x * y;
        err = std::fma(x, y, -p);
        return p;
    };
    const auto add = [](double a, double b, double& err) {
        const double s = a + b;
        const double bb = s - a;
        err += (a - (s - bb)) + (b - bb);
        return s;
    };
    double m2_lo, q2_lo, m4_lo, mq_lo, j2_lo;
    const double m2 = product(mass, mass, m2_lo);
    const double q2 = product(charge, charge, q2_lo);
    const double m4 = product(m2, m2, m4_lo);
    const double mq = product(m2, q2, mq_lo);
    const double j2 = product(spin, spin, j2_lo);
    double lo = 0.0;
    double hi = add(m4, -mq, lo);
    hi = add(hi, -j2, lo);
    lo += ((m4_lo + 2.0 * m2 * m2_lo) - (mq_lo + m2 * q2_lo + m2_lo * q2)) - j2_lo;
    const double d = (hi + lo) / m2;
    if (std::isfinite(d)) return d;
    const double a = spin / mass;
    return (mass * mass - charge * charge) - a * a;
}

void validate(const BlackHoleState& s) {
    if (!std::isfinite(s.mass) || !std::isfinite(s.charge) || !std::isfinite(s.spin)) {
        throw DomainError("non-finite hairs in " + describe(s));
    }
    if (!std::isfinite(s.alpha)) throw DomainError("alpha must be finite, got " + describe(s));
    if (!(s.mass > 0.0)) throw DomainError("mass must be positive in " + describe(s));
    if (s.family == Family::Schwarzschild && s.charge != 0.0) {
        throw DomainError("Schwarzschild hole cannot carry charge: " + describe(s));
    }
    if (s.family != Family::KerrNewman && s.spin != 0.0) {
        throw DomainError("only Kerr-Newman holes carry angular momentum: " + describe(s));
    }
    if (!sub_extremal(s.mass, s.charge, s.spin)) {
        throw DomainError("super-extremal state violates sub-extremality M^2 >= Q^2 + (J/M)^2: " +
                          describe(s));
    }
}

BlackHoleState make_state(Family family, double mass, double charge, double spin, double alpha) {
    BlackHoleState s{family, mass, charge, spin, alpha};
    validate(s);
    return s;
}

double horizon_radius_sq(const BlackHoleState& s) {
    if (s.is_evaporated()) return 0.0;
    validate(s);
    const double root = clamped_root(s.mass, s.charge, s.spin);
    return (2.0 * (s.mass * s.mass) - s.charge * s.charge) + 2.0 * (s.mass * root);
}

double horizon_radius(const BlackHoleState& s) {
    if (s.is_evaporated()) return 0.0;
    validate(s);
    switch (s.family) {
        case Family::Schwarzschild: return 2.0 * s.mass;
        case Family::ReissnerNordstrom:
            return s.mass + clamped_root(s.mass, s.charge, 0.0);
        case Family::KerrNewman: {
            const double a = s.spin / s.mass;
            const double r_plus = s.mass + clamped_root(s.mass, s.charge, s.spin);
            return std::sqrt(r_plus * r_plus + a * a);
        }
    }
    return 0.0;
}

double area_entropy(const BlackHoleState& s) { return kPi * horizon_radius_sq(s); }

double bh_entropy(const BlackHoleState& s) {
    const double area = area_entropy(s);
    if (s.alpha == 0.0) return area;
    if (!(area > 0.0)) throw DomainError("log-corrected entropy undefined at zero area: " + describe(s));
    return area + s.alpha * std::log(area);
}

RemnantKind remnant_kind(const BlackHoleState& s, const Emission& e) {
    const double m = s.mass - e.omega;
    const double q = s.charge - e.charge;
    const double j = s.spin - e.spin;
    if (!std::isfinite(m) || !std::isfinite(q) || !std::isfinite(j)) return RemnantKind::Invalid;
    if (m == 0.0 && q == 0.0 && j == 0.0) {
        return s.alpha == 0.0 ? RemnantKind::Evaporated : RemnantKind::Invalid;
    }
    if (!(m > 0.0)) return RemnantKind::Invalid;
    if (s.family == Family::Schwarzschild && q != 0.0) return RemnantKind::Invalid;
    if (s.family != Family::KerrNewman && j != 0.0) return RemnantKind::Invalid;
    if (!sub_extremal(m, q, j)) return RemnantKind::Invalid;
    return RemnantKind::Valid;
}

BlackHoleState remnant_after(const BlackHoleState& s, const Emission& e) {
    switch (remnant_kind(s, e)) {
        case RemnantKind::Valid:
            return BlackHoleState{s.family, s.mass - e.omega, s.charge - e.charge, s.spin - e.spin,
                                  s.alpha};
        case RemnantKind::Evaporated: return BlackHoleState::evaporated(s.family, s.alpha);
        case RemnantKind::Invalid: break;
    }
    std::ostringstream os;
    os.precision(17);
    os << "emission (omega=" << e.omega << ", q=" << e.charge << ", j=" << e.spin << ") from "
       << describe(s) << " leaves an invalid remnant";
    throw RemnantInvalid(os.str());
}

BlackHoleState apply_emission(const BlackHoleState& s, const Emission& e) {
    if (remnant_kind(s, e) != RemnantKind::Valid) {
        std::ostringstream os;
        os.precision(17);
        os << "emission (omega=" << e.omega << ", q=" << e.charge << ", j=" << e.spin << ") from "
           << describe(s) << " leaves no valid black hole (M' > 0, sub-extremal)";
        throw RemnantInvalid(os.str());
    }
    return BlackHoleState{s.family, s.mass - e.omega, s.charge - e.charge, s.spin - e.spin, s.alpha};
}

bool is_extremal(const BlackHoleState& s) {
    validate(s);
    return extremality_discriminant(s.mass, s.charge, s.spin) <= kExtremalSlack * s.mass * s.mass;
}

double hawking_temperature(const BlackHoleState& s) {
    if (is_extremal(s)) throw DomainError("extremal hole has zero temperature: " + describe(s));
    if (s.family == Family::Schwarzschild) return 1.0 / (8.0 * kPi * s.mass);
    const double root = clamped_root(s.mass, s.charge, s.spin);
    return root / (2.0 * kPi * horizon_radius_sq(s));
}

}  // namespace hawkrad
