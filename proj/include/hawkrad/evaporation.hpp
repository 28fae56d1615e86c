#pragma once

// Monte Carlo evaporation cascades on an exact integer lattice.
//
// Masses live on stop_mass + k * energy_quantum, charges on n * charge_quantum
// and angular momenta on l * spin_quantum, so conservation is checked in
// integers. Each step draws one emission from the per-step UnitSum
// normalization of the raw weights Gamma = exp(S(remnant) - S(state)); both
// numbers are recorded for every step.

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "hawkrad/black_hole.hpp"

namespace hawkrad {

struct CascadePolicy {
    double energy_quantum = 1.0;
    // Defaults: 0, or the extremal mass when the hole keeps hairs it cannot emit.
    // Must be > 0 when alpha != 0.
    std::optional<double> stop_mass;
    // Defaults to ceil(M / energy_quantum); smaller values are rejected.
    std::optional<std::size_t> max_steps;
    // 0 disables charge (angular-momentum) emission.
    double charge_quantum = 0.0;
    double spin_quantum = 0.0;
};

// (mass quanta, charge quanta, spin quanta) of one emission.
using Quanta = std::array<std::int64_t, 3>;

enum class Termination { Exhausted, StopMass, MaxSteps };
const char* termination_name(Termination t);

struct ChainStep {
    Emission emission;
    Quanta quanta{};
    BlackHoleState state_after;
    double log_weight = 0.0;  // raw ln Gamma
    double log_prob = 0.0;    // per-step normalized
};

struct EmissionChain {
    BlackHoleState initial;
    std::vector<ChainStep> steps;
    Termination terminated = Termination::MaxSteps;

    const BlackHoleState& final_state() const {
        return steps.empty() ? initial : steps.back().state_after;
    }
    bool complete() const { return terminated != Termination::MaxSteps; }
};

// Validated cascade setup on the integer lattice.
class CascadeLattice {
public:
    // Throws UsageError (bad policy, off-lattice mass/charge) or DomainError.
    CascadeLattice(const BlackHoleState& state, const CascadePolicy& policy);

    struct Point {
        std::int64_t mass = 0;  // quanta above stop_mass
        std::int64_t charge = 0;
        std::int64_t spin = 0;
        friend auto operator<=>(const Point&, const Point&) = default;
    };

    struct Candidate {
        Quanta quanta;
        Emission emission;
        double log_weight;
    };

    const BlackHoleState& initial_state() const { return initial_; }
    Point initial_point() const { return start_; }
    double stop_mass() const { return stop_mass_; }
    std::size_t max_steps() const { return max_steps_; }
    std::int64_t mass_quanta() const { return start_.mass; }

    BlackHoleState state_at(const Point& p) const;
    Emission emission_of(const Quanta& q) const;
    Point after(const Point& p, const Quanta& q) const;
    bool at_stop(const Point& p) const { return p.mass == 0; }
    Termination stop_kind() const;

    // Admissible emissions from p, in lexicographic quanta order.
    std::vector<Candidate> candidates(const Point& p) const;

private:
    BlackHoleState initial_;
    CascadePolicy policy_;
    double stop_mass_ = 0.0;
    std::size_t max_steps_ = 0;
    bool charge_moves_ = false;
    bool spin_moves_ = false;
    Point start_;
};

// Deterministic in (seed, sample_index). Throws SimulationStuck when no
// emission is admissible above the stop mass.
EmissionChain sample_cascade(const BlackHoleState& state, const CascadePolicy& policy,
                             std::uint64_t seed, std::uint64_t sample_index);
EmissionChain sample_cascade(const CascadeLattice& lattice, std::uint64_t seed,
                             std::uint64_t sample_index);

// Rebuilds a chain from its emission quanta.
EmissionChain replay_chain(const CascadeLattice& lattice, const std::vector<Quanta>& path);

struct ChainLogProbability {
    double raw = 0.0;
    double normalized = 0.0;
};

ChainLogProbability chain_log_probability(const EmissionChain& chain);

struct EnumeratedChain {
    std::vector<Quanta> path;
    double raw = 0.0;
    double normalized = 0.0;
};

constexpr std::int64_t kMaxEnumerationQuanta = 20;

// Every complete chain from the initial state, depth first in candidate order.
// Throws UsageError when (M - stop_mass) / energy_quantum exceeds 20.
std::vector<EnumeratedChain> enumerate_chains(const BlackHoleState& state, const CascadePolicy& policy);

struct EnsembleReport {
    std::size_t n_samples = 0;
    std::uint64_t seed = 0;
    std::map<std::size_t, std::uint64_t> length_histogram;
    double mean_length = 0.0;
    std::map<Quanta, std::uint64_t> first_emission_histogram;
    // Only for lattices with at most kMaxEnumerationQuanta mass quanta.
    std::optional<double> chain_identity_entropy;
    std::map<std::vector<Quanta>, std::uint64_t> chain_counts;
    double mean_normalized_log_prob = 0.0;
    double mean_raw_log_prob = 0.0;
    // max |raw - (S(final) - S(initial))| over samples.
    double max_telescoping_residual = 0.0;
    std::map<std::string, std::uint64_t> terminations;
};

// Samples 0 .. n_samples-1 spread over `workers` threads; the report does not
// depend on the worker count. `sink`, when set, receives every chain in sample
// order after sampling finishes.
EnsembleReport cascade_ensemble_stats(const BlackHoleState& state, const CascadePolicy& policy,
                                      std::size_t n_samples, std::uint64_t seed,
                                      std::size_t workers = 1,
                                      const std::function<void(std::size_t, const EmissionChain&)>& sink = {});

}  // namespace hawkrad
