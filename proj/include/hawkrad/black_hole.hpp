#pragma once

// Black-hole macro-states ("hairs"), horizon geometry and area entropy.
//
// Units are geometrized Planck units, G = c = hbar = k_B = 1, with charge
// normalized so that sub-extremality reads M^2 >= Q^2 + a^2, a = J / M.
//
// Every family uses the single entropy formula S = pi R_H^2 + alpha ln(pi R_H^2)
// where R_H is the *area radius*, R_H^2 = A_H / 4 pi. For Kerr-Newman this is
// sqrt(r_+^2 + a^2), which extrapolates the Schwarzschild/Reissner-Nordstrom
// expression to rotating holes. Written in closed form,
//
//   R_H^2 = 2M^2 - Q^2 + 2M sqrt(M^2 - Q^2 - a^2),
//
// so Q = 0 and J = 0 reduce bit-exactly to the simpler families.

#include <string>
#include <string_view>

namespace hawkrad {

enum class Family { Schwarzschild, ReissnerNordstrom, KerrNewman };

std::string_view family_name(Family f);
// Accepts "schwarzschild", "rn"/"reissner-nordstrom", "kn"/"kerr-newman".
Family parse_family(std::string_view name);

struct BlackHoleState {
    Family family = Family::Schwarzschild;
    double mass = 1.0;
    double charge = 0.0;
    double spin = 0.0;  // angular momentum J, not a = J/M
    double alpha = 0.0; // coefficient of the logarithmic entropy correction

    // The terminal state of a complete evaporation: M = Q = J = 0, S = 0.
    static BlackHoleState evaporated(Family family, double alpha = 0.0);
    bool is_evaporated() const { return mass == 0.0 && charge == 0.0 && spin == 0.0; }

    friend bool operator==(const BlackHoleState&, const BlackHoleState&) = default;
};

// Validated constructor. Throws DomainError on M <= 0, non-finite inputs,
// super-extremal hairs, or hairs the family does not carry.
BlackHoleState make_state(Family family, double mass, double charge = 0.0, double spin = 0.0,
                          double alpha = 0.0);

void validate(const BlackHoleState& s);

struct Emission {
    double omega = 0.0;
    double charge = 0.0;
    double spin = 0.0;

    friend Emission operator+(const Emission& a, const Emission& b) {
        return {a.omega + b.omega, a.charge + b.charge, a.spin + b.spin};
    }
    friend bool operator==(const Emission&, const Emission&) = default;
};

// M^2 - Q^2 - a^2; negative means super-extremal.
double extremality_discriminant(double mass, double charge, double spin);

double horizon_radius(const BlackHoleState& s);
// A_H / 4 pi, the square of the area radius.
double horizon_radius_sq(const BlackHoleState& s);

// pi R_H^2 (+ alpha ln(pi R_H^2)). Zero for the evaporated state when alpha = 0.
double bh_entropy(const BlackHoleState& s);
// pi R_H^2 only.
double area_entropy(const BlackHoleState& s);

enum class RemnantKind { Valid, Evaporated, Invalid };

// Classifies (M - omega, Q - q, J - j). Evaporated requires all three to vanish
// exactly and alpha = 0, since the logarithmic correction diverges there.
RemnantKind remnant_kind(const BlackHoleState& s, const Emission& e);

// Strict: throws RemnantInvalid unless the remnant is a valid hole with M > 0.
BlackHoleState apply_emission(const BlackHoleState& s, const Emission& e);

// Like apply_emission, but total evaporation yields BlackHoleState::evaporated.
BlackHoleState remnant_after(const BlackHoleState& s, const Emission& e);

bool is_extremal(const BlackHoleState& s);

// Schwarzschild: 1/(8 pi M). Charged/rotating: kappa / 2 pi with surface gravity
// kappa = (r_+ - r_-) / (2 (r_+^2 + a^2)) = sqrt(M^2 - Q^2 - a^2) / R_H^2.
// Throws DomainError at extremality.
double hawking_temperature(const BlackHoleState& s);

}  // namespace hawkrad
