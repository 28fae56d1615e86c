#include "hawkrad/io.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>

#include <openssl/evp.h>

#include "hawkrad/errors.hpp"
#include "hawkrad/logspace.hpp"

namespace hawkrad::io {
namespace {

json axis_json(const QuantumAxis& a) {
    return {{"min_quanta", a.min_quanta}, {"max_quanta", a.max_quanta}, {"step", a.step}};
}

json quanta_json(const Quanta& q) { return json::array({q[0], q[1], q[2]}); }

// JSON has no infinities; encode them as strings.
json number(double v) {
    if (std::isfinite(v)) return v;
    return format_double(v);
}

}  // namespace

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

std::string sha256_hex(const std::string& bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
        throw NumericalError("SHA-256 digest failed");
    }
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(hex[digest[i] >> 4]);
        out.push_back(hex[digest[i] & 0xf]);
    }
    return out;
}

json to_json(const BlackHoleState& s) {
    return {{"family", std::string(family_name(s.family))},
            {"M", s.mass},
            {"Q", s.charge},
            {"J", s.spin},
            {"alpha", s.alpha}};
}

BlackHoleState state_from_json(const json& j) {
    try {
        return make_state(parse_family(j.at("family").get<std::string>()), j.at("M").get<double>(),
                          j.value("Q", 0.0), j.value("J", 0.0), j.value("alpha", 0.0));
    } catch (const json::exception& e) {
        throw UsageError(std::string("bad state record: ") + e.what());
    }
}

json to_json(const GridSpec& g) {
    return {{"omega_min", g.omega.min},
            {"omega_max", g.omega.max},
            {"bins", g.omega.bins},
            {"charge_axis", axis_json(g.charge)},
            {"spin_axis", axis_json(g.spin)}};
}

json to_json(const CascadePolicy& p) {
    json j{{"energy_quantum", p.energy_quantum},
           {"charge_quantum", p.charge_quantum},
           {"spin_quantum", p.spin_quantum},
           {"sampling", "unitsum_per_step"}};
    j["stop_mass"] = p.stop_mass ? json(*p.stop_mass) : json(nullptr);
    j["max_steps"] = p.max_steps ? json(*p.max_steps) : json(nullptr);
    return j;
}

json to_json(const SpectrumComparison& c) {
    return {{"kl_divergence", c.kl_divergence ? json(*c.kl_divergence) : json(nullptr)},
            {"max_abs_log_ratio", c.max_abs_log_ratio},
            {"mean_abs_log_ratio", c.mean_abs_log_ratio},
            {"compared_bins", c.compared_bins}};
}

json to_json(const InfoReport& r) {
    return {{"S_R", r.s_r},
            {"S_cond", r.s_cond},
            {"S_cond_lowenergy", r.s_cond_lowenergy},
            {"S_cond_raw_weighted", r.s_cond_raw_weighted},
            {"E_R", r.e_r},
            {"E_Bprime", r.e_bprime},
            {"correlation_matrix_summary", {{"mean", r.correlation_mean}, {"max", r.correlation_max}}},
            {"mi_numeric", r.mi_numeric},
            {"mi_product_form", r.mi_product_form},
            {"mi_moment_form", r.mi_moment_form},
            {"mi_literal_form", r.mi_literal_form},
            {"excluded_mass", r.excluded_mass},
            {"excluded_warning", r.excluded_warning}};
}

json to_json(const EnsembleReport& r) {
    json lengths = json::array();
    for (const auto& [len, count] : r.length_histogram) lengths.push_back({{"length", len}, {"count", count}});
    json first = json::array();
    for (const auto& [q, count] : r.first_emission_histogram) {
        first.push_back({{"quanta", quanta_json(q)}, {"count", count}});
    }
    json terms = json::object();
    for (const auto& [name, count] : r.terminations) terms[name] = count;
    return {{"n_samples", r.n_samples},
            {"seed", r.seed},
            {"mean_length", r.mean_length},
            {"length_histogram", lengths},
            {"first_emission_histogram", first},
            {"chain_identity_entropy",
             r.chain_identity_entropy ? json(*r.chain_identity_entropy) : json(nullptr)},
            {"distinct_chains", r.chain_counts.size()},
            {"mean_raw_log_prob", r.mean_raw_log_prob},
            {"mean_normalized_log_prob", r.mean_normalized_log_prob},
            {"max_telescoping_residual", r.max_telescoping_residual},
            {"terminations", terms}};
}

json to_json(const TypicalityLabReport& r) {
    return {{"levels", r.levels},
            {"degeneracy", r.degeneracy},
            {"env_dim", r.env_dim},
            {"seeds", r.seeds},
            {"mean_l1_error", r.mean_l1_error},
            {"mean_off_diagonal_rms", r.mean_off_diagonal_rms},
            {"max_trace_error", r.max_trace_error},
            {"max_hermiticity_error", r.max_hermiticity_error},
            {"min_eigenvalue", r.min_eigenvalue},
            {"mean_coefficient_sq", r.mean_coefficient_sq}};
}

json to_json(const ChainLedger& l) {
    json entries = json::array();
    for (const auto& e : l.entries) {
        entries.push_back({{"self_information", e.self_information},
                           {"prior_correlation", e.prior_correlation ? json(*e.prior_correlation) : json(nullptr)}});
    }
    return {{"entries", entries}, {"total", l.total}, {"expected", l.expected}, {"residual", l.residual}};
}

void write_spectrum_csv(std::ostream& os, const SpectrumGrid& g, const std::vector<double>& thermal,
                        const std::string& manifest_hash) {
    os << "# manifest_hash=" << manifest_hash << '\n';
    os << "omega,q,j,log_weight,weight,thermal_log_weight,valid\n";
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double weight = g.valid[i] != 0 ? exp_or_zero(g.log_weight[i]) : 0.0;
        const double th = i < thermal.size() ? thermal[i] : std::nan("");
        os << format_double(g.omega[i]) << ',' << format_double(g.charge[i]) << ',' << format_double(g.spin[i])
           << ',' << format_double(g.log_weight[i]) << ',' << format_double(weight) << ',' << format_double(th)
           << ',' << (g.valid[i] != 0 ? 1 : 0) << '\n';
    }
}

void write_chain_jsonl(std::ostream& os, std::size_t sample_index, const EmissionChain& chain,
                       const std::string& manifest_hash) {
    double mass_before = chain.initial.mass;
    for (std::size_t k = 0; k < chain.steps.size(); ++k) {
        const auto& s = chain.steps[k];
        const json rec{{"sample_index", sample_index},
                       {"step", k},
                       {"omega", s.emission.omega},
                       {"q", s.emission.charge},
                       {"j", s.emission.spin},
                       {"mass_before", mass_before},
                       {"log_weight_raw", number(s.log_weight)},
                       {"log_prob_norm", number(s.log_prob)},
                       {"manifest_hash", manifest_hash}};
        os << rec.dump() << '\n';
        mass_before = s.state_after.mass;
    }
}

json make_manifest(const json& config, const std::string& version) {
    json m{{"version", version}, {"config", config}};
    m["manifest_hash"] = sha256_hex(m.dump());
    m["timestamp"] = nullptr;
    return m;
}

void stamp_manifest(json& manifest, double wall_time_seconds) {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm utc{};
    gmtime_r(&now, &utc);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &utc);
    manifest["timestamp"] = {{"utc", buf}, {"wall_time_s", wall_time_seconds}};
}

}  // namespace hawkrad::io
