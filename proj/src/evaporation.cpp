#include "hawkrad/evaporation.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <thread>

#include "hawkrad/errors.hpp"
#include "hawkrad/kernels.hpp"
#include "hawkrad/logspace.hpp"
#include "hawkrad/rng.hpp"
#include "hawkrad/spectrum.hpp"

namespace hawkrad {
namespace {

// Rounds x to the nearest integer when it is one up to relative 1e-9.
std::optional<std::int64_t> as_lattice_count(double x) {
    const double r = std::round(x);
    if (!std::isfinite(x) || std::fabs(x - r) > 1e-9 * std::max(1.0, std::fabs(x))) return std::nullopt;
    return static_cast<std::int64_t>(r);
}

// Smallest mass at which (Q, J) is still sub-extremal: M^4 - Q^2 M^2 - J^2 = 0.
double extremal_mass(double charge, double spin) {
    const double q2 = charge * charge;
    return std::sqrt(0.5 * (q2 + std::sqrt(q2 * q2 + 4.0 * spin * spin)));
}

std::int64_t floor_count(double x, double quantum) {
    return static_cast<std::int64_t>(std::floor(x / quantum * (1.0 + 1e-12)));
}

}  // namespace

const char* termination_name(Termination t) {
    switch (t) {
        case Termination::Exhausted: return "exhausted";
        case Termination::StopMass: return "stop_mass";
        case Termination::MaxSteps: return "max_steps";
    }
    return "unknown";
}

CascadeLattice::CascadeLattice(const BlackHoleState& state, const CascadePolicy& policy)
    : initial_(state), policy_(policy) {
    validate(state);
    if (!(policy.energy_quantum > 0.0) || !std::isfinite(policy.energy_quantum)) {
        throw UsageError("energy quantum must be positive");
    }
    if (policy.charge_quantum < 0.0 || policy.spin_quantum < 0.0) {
        throw UsageError("charge and spin quanta must be non-negative");
    }
    charge_moves_ = policy.charge_quantum > 0.0;
    spin_moves_ = policy.spin_quantum > 0.0;
    if (charge_moves_ && state.family == Family::Schwarzschild) {
        throw UsageError("Schwarzschild cascades cannot emit charge");
    }
    if (spin_moves_ && state.family != Family::KerrNewman) {
        throw UsageError("only Kerr-Newman cascades can emit angular momentum");
    }

    if (policy.stop_mass) {
        stop_mass_ = *policy.stop_mass;
    } else {
        stop_mass_ = extremal_mass(charge_moves_ ? 0.0 : state.charge, spin_moves_ ? 0.0 : state.spin);
    }
    if (!std::isfinite(stop_mass_) || stop_mass_ < 0.0) throw UsageError("stop mass must be >= 0");
    if (stop_mass_ > state.mass) throw UsageError("stop mass exceeds the initial mass");
    if (state.alpha != 0.0 && stop_mass_ == 0.0) {
        throw UsageError("log-corrected entropy diverges at M = 0; set stop_mass > 0 when alpha != 0");
    }

    const auto k = as_lattice_count((state.mass - stop_mass_) / policy.energy_quantum);
    if (!k) throw UsageError("M - stop_mass is not an integer multiple of the energy quantum");
    start_.mass = *k;
    if (charge_moves_) {
        const auto n = as_lattice_count(state.charge / policy.charge_quantum);
        if (!n) throw UsageError("charge is not an integer multiple of the charge quantum");
        start_.charge = *n;
    }
    if (spin_moves_) {
        const auto l = as_lattice_count(state.spin / policy.spin_quantum);
        if (!l) throw UsageError("angular momentum is not an integer multiple of the spin quantum");
        start_.spin = *l;
    }

    const auto needed = static_cast<std::size_t>(std::ceil(state.mass / policy.energy_quantum - 1e-9));
    max_steps_ = policy.max_steps.value_or(needed);
    if (max_steps_ < needed || max_steps_ == 0) {
        throw UsageError("max_steps must be at least ceil(M / energy_quantum) = " + std::to_string(needed));
    }

    initial_ = state_at(start_);
    validate(initial_);
}

BlackHoleState CascadeLattice::state_at(const Point& p) const {
    BlackHoleState s = initial_;
    s.mass = stop_mass_ + static_cast<double>(p.mass) * policy_.energy_quantum;
    if (charge_moves_) s.charge = static_cast<double>(p.charge) * policy_.charge_quantum;
    if (spin_moves_) s.spin = static_cast<double>(p.spin) * policy_.spin_quantum;
    if (s.is_evaporated()) return BlackHoleState::evaporated(s.family, s.alpha);
    return s;
}

Emission CascadeLattice::emission_of(const Quanta& q) const {
    return {static_cast<double>(q[0]) * policy_.energy_quantum,
            charge_moves_ ? static_cast<double>(q[1]) * policy_.charge_quantum : 0.0,
            spin_moves_ ? static_cast<double>(q[2]) * policy_.spin_quantum : 0.0};
}

CascadeLattice::Point CascadeLattice::after(const Point& p, const Quanta& q) const {
    return {p.mass - q[0], p.charge - q[1], p.spin - q[2]};
}

Termination CascadeLattice::stop_kind() const {
    return stop_mass_ == 0.0 ? Termination::Exhausted : Termination::StopMass;
}

std::vector<CascadeLattice::Candidate> CascadeLattice::candidates(const Point& p) const {
    const BlackHoleState state = state_at(p);
    std::vector<Quanta> quanta;
    for (std::int64_t m = 1; m <= p.mass; ++m) {
        const Point mass_only{p.mass - m, 0, 0};
        const double mass_after = state_at(mass_only).mass;
        std::int64_t n_lo = 0, n_hi = 0;
        if (charge_moves_) {
            const std::int64_t bound = floor_count(mass_after, policy_.charge_quantum);
            n_lo = p.charge - bound;
            n_hi = p.charge + bound;
        }
        for (std::int64_t n = n_lo; n <= n_hi; ++n) {
            std::int64_t l_lo = 0, l_hi = 0;
            if (spin_moves_) {
                const double q_after = charge_moves_ ? static_cast<double>(p.charge - n) * policy_.charge_quantum
                                                     : state.charge;
                const double room = mass_after * mass_after - q_after * q_after;
                if (room < 0.0) continue;
                const std::int64_t bound = floor_count(mass_after * std::sqrt(room), policy_.spin_quantum);
                l_lo = p.spin - bound;
                l_hi = p.spin + bound;
            }
            for (std::int64_t l = l_lo; l <= l_hi; ++l) quanta.push_back({m, n, l});
        }
    }

    const std::size_t count = quanta.size();
    std::vector<double> w(count), q(count), j(count), lw(count);
    std::vector<std::uint8_t> ok(count);
    for (std::size_t i = 0; i < count; ++i) {
        const auto e = emission_of(quanta[i]);
        w[i] = e.omega;
        q[i] = e.charge;
        j[i] = e.spin;
    }
    emission_log_weights(state, w, q, j, lw, ok);

    // Step weights are differences of entropies at the stored lattice states,
    // not the emitted-amount form used for spectra. Lattice points that sit
    // exactly on extremality are only represented to rounding, and the root in
    // R_H^2 magnifies that to ~1e-8; evaluating every state once from the same
    // doubles makes the entropies of intermediate states cancel exactly along
    // a chain.
    const double here = bh_entropy(state);
    std::vector<Candidate> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        if (ok[i] == 0) continue;
        // The lattice remnant must agree with the floating-point one.
        const auto rest = state_at(after(p, quanta[i]));
        if (!rest.is_evaporated()) {
            try {
                validate(rest);
            } catch (const DomainError&) {
                continue;
            }
        }
        out.push_back({quanta[i], {w[i], q[i], j[i]}, bh_entropy(rest) - here});
    }
    return out;
}

namespace {

double candidates_log_total(const std::vector<CascadeLattice::Candidate>& c) {
    std::vector<double> lw(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) lw[i] = c[i].log_weight;
    return log_sum_exp(lw);
}

}  // namespace

EmissionChain sample_cascade(const CascadeLattice& lattice, std::uint64_t seed, std::uint64_t sample_index) {
    auto gen = derive_stream(seed, sample_index);
    EmissionChain chain;
    chain.initial = lattice.initial_state();
    auto p = lattice.initial_point();
    while (!lattice.at_stop(p)) {
        if (chain.steps.size() >= lattice.max_steps()) {
            chain.terminated = Termination::MaxSteps;
            return chain;
        }
        const auto cands = lattice.candidates(p);
        if (cands.empty()) {
            throw SimulationStuck("no admissible emission from M = " +
                                  std::to_string(lattice.state_at(p).mass) + " above the stop mass");
        }
        const double log_total = candidates_log_total(cands);
        const double u = uniform01(gen);
        std::size_t pick = cands.size() - 1;
        double cumulative = 0.0;
        for (std::size_t i = 0; i < cands.size(); ++i) {
            cumulative += std::exp(cands[i].log_weight - log_total);
            if (u < cumulative) {
                pick = i;
                break;
            }
        }
        const auto& c = cands[pick];
        p = lattice.after(p, c.quanta);
        chain.steps.push_back({c.emission, c.quanta, lattice.state_at(p), c.log_weight,
                               c.log_weight - log_total});
    }
    chain.terminated = lattice.stop_kind();
    return chain;
}

EmissionChain sample_cascade(const BlackHoleState& state, const CascadePolicy& policy, std::uint64_t seed,
                             std::uint64_t sample_index) {
    return sample_cascade(CascadeLattice(state, policy), seed, sample_index);
}

EmissionChain replay_chain(const CascadeLattice& lattice, const std::vector<Quanta>& path) {
    EmissionChain chain;
    chain.initial = lattice.initial_state();
    auto p = lattice.initial_point();
    for (const auto& q : path) {
        const auto cands = lattice.candidates(p);
        const auto it = std::find_if(cands.begin(), cands.end(), [&](const auto& c) { return c.quanta == q; });
        if (it == cands.end()) throw UsageError("path contains an inadmissible emission");
        const double log_total = candidates_log_total(cands);
        p = lattice.after(p, q);
        chain.steps.push_back({it->emission, q, lattice.state_at(p), it->log_weight, it->log_weight - log_total});
    }
    chain.terminated = lattice.at_stop(p) ? lattice.stop_kind() : Termination::MaxSteps;
    return chain;
}

ChainLogProbability chain_log_probability(const EmissionChain& chain) {
    std::vector<double> raw(chain.steps.size()), norm(chain.steps.size());
    for (std::size_t i = 0; i < chain.steps.size(); ++i) {
        raw[i] = chain.steps[i].log_weight;
        norm[i] = chain.steps[i].log_prob;
    }
    return {kernels::sum(raw), kernels::sum(norm)};
}

std::vector<EnumeratedChain> enumerate_chains(const BlackHoleState& state, const CascadePolicy& policy) {
    const CascadeLattice lattice(state, policy);
    if (lattice.mass_quanta() > kMaxEnumerationQuanta) {
        throw UsageError("enumeration limited to (M - stop_mass) / quantum <= 20");
    }
    struct Node {
        std::vector<CascadeLattice::Candidate> cands;
        double log_total;
    };
    std::map<CascadeLattice::Point, Node> memo;
    auto node_at = [&](const CascadeLattice::Point& p) -> const Node& {
        auto it = memo.find(p);
        if (it == memo.end()) {
            auto cands = lattice.candidates(p);
            const double total = candidates_log_total(cands);
            it = memo.emplace(p, Node{std::move(cands), total}).first;
        }
        return it->second;
    };

    std::vector<EnumeratedChain> out;
    std::vector<Quanta> path;
    std::vector<double> raw_terms, norm_terms;
    std::function<void(const CascadeLattice::Point&)> walk = [&](const CascadeLattice::Point& p) {
        if (lattice.at_stop(p)) {
            out.push_back({path, kernels::sum(raw_terms), kernels::sum(norm_terms)});
            return;
        }
        if (path.size() >= lattice.max_steps()) return;
        const Node& node = node_at(p);
        if (node.cands.empty()) throw SimulationStuck("enumeration reached a state with no admissible emission");
        for (const auto& c : node.cands) {
            path.push_back(c.quanta);
            raw_terms.push_back(c.log_weight);
            norm_terms.push_back(c.log_weight - node.log_total);
            walk(lattice.after(p, c.quanta));
            path.pop_back();
            raw_terms.pop_back();
            norm_terms.pop_back();
        }
    };
    walk(lattice.initial_point());
    return out;
}

EnsembleReport cascade_ensemble_stats(const BlackHoleState& state, const CascadePolicy& policy,
                                      std::size_t n_samples, std::uint64_t seed, std::size_t workers,
                                      const std::function<void(std::size_t, const EmissionChain&)>& sink) {
    if (n_samples == 0) throw UsageError("ensemble needs at least one sample");
    const CascadeLattice lattice(state, policy);
    const bool track_identity = lattice.mass_quanta() <= kMaxEnumerationQuanta;
    workers = std::clamp<std::size_t>(workers, 1, n_samples);

    struct Partial {
        std::map<std::size_t, std::uint64_t> lengths;
        std::map<Quanta, std::uint64_t> first;
        std::map<std::vector<Quanta>, std::uint64_t> chains;
        std::map<std::string, std::uint64_t> terminations;
    };
    std::vector<Partial> partials(workers);
    std::vector<double> raw(n_samples), norm(n_samples), residual(n_samples), length(n_samples);
    std::vector<EmissionChain> kept(sink ? n_samples : 0);
    std::vector<std::exception_ptr> errors(workers);

    auto run = [&](std::size_t w) {
        try {
            const std::size_t begin = n_samples * w / workers;
            const std::size_t end = n_samples * (w + 1) / workers;
            auto& part = partials[w];
            for (std::size_t i = begin; i < end; ++i) {
                auto chain = sample_cascade(lattice, seed, i);
                const auto lp = chain_log_probability(chain);
                raw[i] = lp.raw;
                norm[i] = lp.normalized;
                residual[i] = std::fabs(lp.raw - (bh_entropy(chain.final_state()) - bh_entropy(chain.initial)));
                length[i] = static_cast<double>(chain.steps.size());
                part.lengths[chain.steps.size()]++;
                part.terminations[termination_name(chain.terminated)]++;
                if (!chain.steps.empty()) part.first[chain.steps.front().quanta]++;
                if (track_identity) {
                    std::vector<Quanta> path;
                    path.reserve(chain.steps.size());
                    for (const auto& s : chain.steps) path.push_back(s.quanta);
                    part.chains[std::move(path)]++;
                }
                if (sink) kept[i] = std::move(chain);
            }
        } catch (...) {
            errors[w] = std::current_exception();
        }
    };
    if (workers == 1) {
        run(0);
    } else {
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(run, w);
        for (auto& t : pool) t.join();
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }

    EnsembleReport r;
    r.n_samples = n_samples;
    r.seed = seed;
    for (const auto& part : partials) {
        for (const auto& [k, v] : part.lengths) r.length_histogram[k] += v;
        for (const auto& [k, v] : part.first) r.first_emission_histogram[k] += v;
        for (const auto& [k, v] : part.chains) r.chain_counts[k] += v;
        for (const auto& [k, v] : part.terminations) r.terminations[k] += v;
    }
    const double n = static_cast<double>(n_samples);
    r.mean_length = kernels::sum(length) / n;
    r.mean_raw_log_prob = kernels::sum(raw) / n;
    r.mean_normalized_log_prob = kernels::sum(norm) / n;
    r.max_telescoping_residual = kernels::max(residual);
    if (track_identity) {
        std::vector<double> terms;
        terms.reserve(r.chain_counts.size());
        for (const auto& [path, count] : r.chain_counts) {
            const double p = static_cast<double>(count) / n;
            terms.push_back(-p * std::log(p));
        }
        r.chain_identity_entropy = kernels::sum(terms);
    }
    if (sink) {
        for (std::size_t i = 0; i < n_samples; ++i) sink(i, kept[i]);
    }
    return r;
}

}  // namespace hawkrad
