#pragma once

// Output formats: spectrum CSV, cascade JSON-lines, JSON documents and run
// manifests. Numbers in CSV use %.16e (17 significant digits, round-trip exact).

#include <cstdint>
#include <ostream>
#include <string>

#include <nlohmann/json.hpp>

#include "hawkrad/evaporation.hpp"
#include "hawkrad/information.hpp"
#include "hawkrad/spectrum.hpp"
#include "hawkrad/typicality.hpp"

namespace hawkrad::io {

using nlohmann::json;

std::string format_double(double v);
std::string sha256_hex(const std::string& bytes);

json to_json(const BlackHoleState& s);
BlackHoleState state_from_json(const json& j);
json to_json(const GridSpec& g);
json to_json(const CascadePolicy& p);
json to_json(const SpectrumComparison& c);
json to_json(const InfoReport& r);
json to_json(const EnsembleReport& r);
json to_json(const TypicalityLabReport& r);
json to_json(const ChainLedger& l);

// Columns: omega,q,j,log_weight,weight,thermal_log_weight,valid, preceded by a
// "# manifest_hash=<hex>" line. thermal_log_weight may be empty (written as nan).
void write_spectrum_csv(std::ostream& os, const SpectrumGrid& spectrum,
                        const std::vector<double>& thermal_log_weight, const std::string& manifest_hash);

// One record per step: sample_index, step, omega, q, j, mass_before,
// log_weight_raw, log_prob_norm, manifest_hash.
void write_chain_jsonl(std::ostream& os, std::size_t sample_index, const EmissionChain& chain,
                       const std::string& manifest_hash);

// Manifest = {"version", "config", "manifest_hash", "timestamp": {...}}. The
// hash covers version + config only, so reruns hash identically.
json make_manifest(const json& config, const std::string& version);
void stamp_manifest(json& manifest, double wall_time_seconds);

}  // namespace hawkrad::io
