#pragma once

// Canonical typicality on a finite universe U = B (x) O restricted to a total
// energy shell: random pure states, exact partial traces, and the
// microcanonical weights they concentrate on.
//
// Convention: coefficients are stored globally normalized, sum |c|^2 = 1. The
// "C / sqrt(Omega_U) with mean |C|^2 = 1" form is c = C / sqrt(dim_U).

#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hawkrad/spectrum_grid.hpp"

namespace hawkrad {

// Energies are integers in an arbitrary unit so sector lookups E_U - E_b are exact.
struct SystemLevel {
    std::int64_t energy = 0;
    std::uint64_t degeneracy = 1;
};

struct EnergyLedger {
    std::vector<SystemLevel> system_levels;
    // Omega_O(E_O); must contain E_U - E_b for every system level (0 allowed).
    std::map<std::int64_t, std::uint64_t> environment;
    std::int64_t total_energy = 0;

    // Throws DomainError on an empty ledger or broken invariant.
    void validate() const;
    std::uint64_t environment_degeneracy(std::size_t level) const;
    // Number of B micro-states, sum of g_b.
    std::size_t system_dim() const;
    // Number of universe micro-states on the shell, sum g_b Omega_O(E_U - E_b).
    std::uint64_t universe_dim() const;
};

constexpr std::uint64_t kDefaultUniverseCap = std::uint64_t{1} << 16;

// A pure state on the energy shell. Coefficients are laid out B micro-state by
// B micro-state; micro-state s of level b owns a contiguous block of
// Omega_O(E_U - E_b) amplitudes over that level's environment sector.
class PureStateSample {
public:
    // Takes explicit amplitudes; throws DomainError unless the shape matches the
    // ledger and the squared norm is 1 within 1e-12.
    static PureStateSample from_coefficients(EnergyLedger ledger,
                                             std::vector<std::complex<double>> coefficients,
                                             std::uint64_t seed = 0);

    const EnergyLedger& ledger() const { return ledger_; }
    std::uint64_t seed() const { return seed_; }
    std::span<const std::complex<double>> coefficients() const { return coefficients_; }
    std::size_t system_dim() const { return level_of_.size(); }
    // Level index of each B micro-state.
    std::span<const std::size_t> level_of() const { return level_of_; }
    std::span<const std::complex<double>> block(std::size_t micro_state) const;

private:
    friend PureStateSample sample_universe_state(const EnergyLedger&, std::uint64_t, std::uint64_t);
    PureStateSample(EnergyLedger ledger, std::uint64_t seed);

    EnergyLedger ledger_;
    std::uint64_t seed_ = 0;
    std::vector<std::complex<double>> coefficients_;
    std::vector<std::size_t> level_of_;
    std::vector<std::size_t> offsets_;  // system_dim + 1 entries
};

// i.i.d. complex standard normal amplitudes, globally normalized. Deterministic
// in (ledger, seed). Throws UsageError when dim_U exceeds universe_cap.
PureStateSample sample_universe_state(const EnergyLedger& ledger, std::uint64_t seed,
                                      std::uint64_t universe_cap = kDefaultUniverseCap);

struct ReducedDensity {
    Eigen::MatrixXcd matrix;          // over B micro-states
    std::vector<std::size_t> level_of;

    std::size_t dim() const { return static_cast<std::size_t>(matrix.rows()); }
    double trace_error() const;       // |tr rho - 1|
    double hermiticity_error() const; // max |rho - rho^dagger|
    double min_eigenvalue() const;
    double off_diagonal_rms() const;
    // Diagonal summed over the degenerate micro-states of each level.
    std::vector<double> level_populations(std::size_t levels) const;
};

// Exact partial trace over O, off-diagonals included. Micro-states in
// different energy sectors couple to orthogonal environment subspaces, so
// their entries are exactly zero.
ReducedDensity reduce_to_system(const PureStateSample& sample);

// weight(b) = Omega_O(E_U - E_b) g_b / sum over b'. Throws DomainError when
// every sector is empty.
std::vector<double> microcanonical_weights(const EnergyLedger& ledger);

// Macro-state argument of an entropy function: energy plus optional charges.
struct MacroState {
    double energy = 0.0;
    double charge = 0.0;
    double spin = 0.0;

    friend MacroState operator-(const MacroState& a, const MacroState& b) {
        return {a.energy - b.energy, a.charge - b.charge, a.spin - b.spin};
    }
    friend MacroState operator+(const MacroState& a, const MacroState& b) {
        return {a.energy + b.energy, a.charge + b.charge, a.spin + b.spin};
    }
};

// Deterministic entropy evaluator (nats) with its domain of validity.
struct EntropyFunction {
    std::string name;
    std::function<double(const MacroState&)> entropy;
    std::function<bool(const MacroState&)> valid;

    // S(E) = beta E on E >= 0: the perfectly thermal case.
    static EntropyFunction linear(double beta);
    // S(E) = 4 pi E^2 on E >= 0: Schwarzschild area entropy with E = M.
    static EntropyFunction schwarzschild_area();
    // bh_entropy with (M, Q, J) = (energy, charge, spin).
    static EntropyFunction black_hole(Family family, double alpha = 0.0);
};

// Raw log-weights S(total - r) - S(total) = -Delta S for each subtracted delta
// r. Deltas whose remainder falls outside the domain are flagged invalid.
// Throws DomainError if all are invalid or the total itself is invalid.
SpectrumGrid spectrum_from_entropy(const EntropyFunction& s, const MacroState& total,
                                   std::span<const MacroState> deltas);

// Ledger with `levels` system levels E_b = 0 .. levels-1 of equal degeneracy and
// environment sectors Omega_O(E_U - E_b) = env_dim / 2^b, E_U = levels - 1.
EnergyLedger make_lab_ledger(std::size_t levels, std::uint64_t degeneracy, std::uint64_t env_dim);

struct TypicalityLabReport {
    std::size_t levels = 0;
    std::uint64_t degeneracy = 0;
    std::uint64_t env_dim = 0;
    std::size_t seeds = 0;
    double mean_l1_error = 0.0;        // ||level populations - weights||_1
    double mean_off_diagonal_rms = 0.0;
    double max_trace_error = 0.0;
    double max_hermiticity_error = 0.0;
    double min_eigenvalue = 0.0;
    double mean_coefficient_sq = 0.0;  // mean |c|^2, equals 1/dim_U
};

// Averages over seeds first_seed, first_seed + 1, ...
TypicalityLabReport run_typicality_lab(std::size_t levels, std::uint64_t degeneracy,
                                       std::uint64_t env_dim, std::size_t seeds,
                                       std::uint64_t first_seed,
                                       std::uint64_t universe_cap = kDefaultUniverseCap);

}  // namespace hawkrad
