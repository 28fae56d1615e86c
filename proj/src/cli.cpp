#include "hawkrad/cli.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "hawkrad/errors.hpp"
#include "hawkrad/information.hpp"
#include "hawkrad/io.hpp"
#include "hawkrad/spectrum.hpp"
#include "hawkrad/typicality.hpp"
#include "hawkrad/verify.hpp"

#ifndef HAWKRAD_VERSION
#define HAWKRAD_VERSION "dev"
#endif

namespace hawkrad::cli {
namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

Normalization parse_normalization(const std::string& s) {
    if (s == "raw") return Normalization::Raw;
    if (s == "unitsum") return Normalization::UnitSum;
    throw UsageError("unknown normalization '" + s + "' (raw | unitsum)");
}

std::string resolve_format(const RunConfig& cfg) {
    const std::string def = cfg.command == "spectrum" ? "csv" : cfg.command == "cascade" ? "jsonl" : "json";
    const std::string f = cfg.format.empty() ? def : cfg.format;
    if (f != def && !(cfg.command == "spectrum" && f == "json")) {
        throw UsageError("format '" + f + "' is not available for " + cfg.command);
    }
    return f;
}

BlackHoleState state_of(const RunConfig& cfg) {
    return make_state(parse_family(cfg.family), cfg.mass, cfg.charge, cfg.spin, cfg.alpha);
}

json state_config(const RunConfig& cfg) {
    return {{"family", cfg.family}, {"M", cfg.mass}, {"Q", cfg.charge}, {"J", cfg.spin}, {"alpha", cfg.alpha}};
}

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw UsageError("cannot open '" + path + "' for writing");
    return f;
}

void write_manifest(const std::string& path, json manifest, Clock::time_point t0) {
    io::stamp_manifest(manifest, std::chrono::duration<double>(Clock::now() - t0).count());
    open_out(path) << manifest.dump(2) << '\n';
}

int run_spectrum(const RunConfig& cfg, std::ostream& out, Clock::time_point t0) {
    const auto state = state_of(cfg);
    const auto norm = parse_normalization(cfg.normalization);
    const auto format = resolve_format(cfg);
    const auto spec = build_spectrum(state, cfg.grid, norm);

    std::vector<double> thermal;
    try {
        thermal = build_thermal_spectrum(state, cfg.grid, norm).log_weight;
    } catch (const DomainError&) {
        // Extremal hole: no temperature, the thermal column is written as nan.
    }

    auto manifest = io::make_manifest(config_json(cfg), HAWKRAD_VERSION);
    const std::string hash = manifest["manifest_hash"];
    if (cfg.report) manifest["info_report"] = io::to_json(build_info_report(state, cfg.grid));
    if (!thermal.empty()) manifest["thermal_comparison"] = io::to_json(compare_thermal(spec, build_thermal_spectrum(state, cfg.grid, norm)));

    auto emit = [&](std::ostream& os) {
        if (format == "csv") {
            io::write_spectrum_csv(os, spec, thermal, hash);
            return;
        }
        json rows = json::array();
        for (std::size_t i = 0; i < spec.size(); ++i) {
            rows.push_back({{"omega", spec.omega[i]},
                            {"q", spec.charge[i]},
                            {"j", spec.spin[i]},
                            {"log_weight", spec.valid[i] ? json(spec.log_weight[i]) : json(nullptr)},
                            {"valid", spec.valid[i] != 0}});
        }
        os << json{{"manifest_hash", hash}, {"log_normalizer", spec.log_normalizer}, {"bins", rows}}.dump(2) << '\n';
    };
    if (cfg.output.empty()) {
        emit(out);
        if (cfg.report) out << manifest["info_report"].dump(2) << '\n';
        return kOk;
    }
    auto f = open_out(cfg.output);
    emit(f);
    write_manifest(cfg.output + ".manifest.json", std::move(manifest), t0);
    return kOk;
}

int run_cascade(const RunConfig& cfg, std::ostream& out, Clock::time_point t0) {
    const auto state = state_of(cfg);
    resolve_format(cfg);
    if (cfg.samples == 0) throw UsageError("--samples must be at least 1");
    if (cfg.workers == 0) throw UsageError("--workers must be at least 1");

    auto manifest = io::make_manifest(config_json(cfg), HAWKRAD_VERSION);
    const std::string hash = manifest["manifest_hash"];

    std::ofstream file;
    if (!cfg.output.empty()) file = open_out(cfg.output);
    std::ostream& os = cfg.output.empty() ? out : file;

    double telescoped = 0.0;
    const auto report = cascade_ensemble_stats(
        state, cfg.policy, cfg.samples, cfg.seed, cfg.workers,
        [&](std::size_t i, const EmissionChain& chain) {
            io::write_chain_jsonl(os, i, chain, hash);
            telescoped += bh_entropy(chain.final_state()) - bh_entropy(chain.initial);
        });
    if (cfg.output.empty()) return kOk;

    auto doc = io::to_json(report);
    doc["mean_telescoped_total"] = telescoped / static_cast<double>(cfg.samples);
    doc["manifest_hash"] = hash;
    open_out(cfg.output + ".report.json") << doc.dump(2) << '\n';
    write_manifest(cfg.output + ".manifest.json", std::move(manifest), t0);
    return kOk;
}

int run_verify(const RunConfig& cfg, std::ostream& out, Clock::time_point t0) {
    resolve_format(cfg);
    verify::Options opts;
    opts.seed = cfg.seed;
    opts.alpha = cfg.verify_alpha;
    const auto results = verify::run_suite(verify::parse_suite(cfg.suite), opts);
    for (const auto& r : results) {
        out << r.suite << '.' << r.name << ": " << (r.pass ? "pass" : "FAIL") << " (measured "
            << io::format_double(r.measured) << ", tolerance " << io::format_double(r.tolerance) << ')';
        if (!r.detail.empty()) out << "  " << r.detail;
        out << '\n';
    }
    const bool ok = verify::all_pass(results);
    out << (ok ? "all checks passed" : "verification failed") << '\n';
    if (!cfg.output.empty()) {
        auto manifest = io::make_manifest(config_json(cfg), HAWKRAD_VERSION);
        auto doc = verify::to_json(results);
        doc["manifest_hash"] = manifest["manifest_hash"];
        open_out(cfg.output) << doc.dump(2) << '\n';
        write_manifest(cfg.output + ".manifest.json", std::move(manifest), t0);
    }
    return ok ? kOk : kFailure;
}

int run_typicality(const RunConfig& cfg, std::ostream& out, Clock::time_point t0) {
    resolve_format(cfg);
    const auto report = run_typicality_lab(cfg.levels, cfg.degeneracy, cfg.env_dim, cfg.lab_seeds, cfg.seed);
    auto manifest = io::make_manifest(config_json(cfg), HAWKRAD_VERSION);
    auto doc = io::to_json(report);
    doc["manifest_hash"] = manifest["manifest_hash"];
    if (cfg.output.empty()) {
        out << doc.dump(2) << '\n';
        return kOk;
    }
    open_out(cfg.output) << doc.dump(2) << '\n';
    write_manifest(cfg.output + ".manifest.json", std::move(manifest), t0);
    return kOk;
}

}  // namespace

json config_json(const RunConfig& cfg) {
    json c{{"command", cfg.command}, {"seed", cfg.seed}};
    if (cfg.command == "spectrum" || cfg.command == "cascade") c["state"] = state_config(cfg);
    if (cfg.command == "spectrum") {
        c["grid"] = io::to_json(cfg.grid);
        c["normalization"] = cfg.normalization;
        c["report"] = cfg.report;
    }
    if (cfg.command == "cascade") {
        c["policy"] = {{"energy_quantum", cfg.policy.energy_quantum},
                       {"stop_mass", optional_json(cfg.policy.stop_mass)},
                       {"max_steps", cfg.policy.max_steps ? json(*cfg.policy.max_steps) : json(nullptr)},
                       {"charge_quantum", cfg.policy.charge_quantum},
                       {"spin_quantum", cfg.policy.spin_quantum}};
        c["n_samples"] = cfg.samples;
    }
    if (cfg.command == "verify") {
        c["suite"] = cfg.suite;
        c["alpha"] = optional_json(cfg.verify_alpha);
    }
    if (cfg.command == "typicality") {
        c["levels"] = cfg.levels;
        c["degeneracy"] = cfg.degeneracy;
        c["env_dim"] = cfg.env_dim;
        c["lab_seeds"] = cfg.lab_seeds;
    }
    c["output_path"] = cfg.output;
    c["format"] = cfg.format.empty() ? json(nullptr) : json(cfg.format);
    return c;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const auto t0 = Clock::now();
    try {
        if (cfg.command == "spectrum") return run_spectrum(cfg, out, t0);
        if (cfg.command == "cascade") return run_cascade(cfg, out, t0);
        if (cfg.command == "verify") return run_verify(cfg, out, t0);
        if (cfg.command == "typicality") return run_typicality(cfg, out, t0);
        throw UsageError("unknown command '" + cfg.command + "'");
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const DomainError& e) {
        err << "invalid physics: " << e.what() << '\n';
        return kPhysics;
    } catch (const std::exception& e) {
        err << "numerical failure: " << e.what() << '\n';
        return kFailure;
    }
}

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{
        "hawkrad: non-thermal black-hole emission spectra, evaporation cascades and typicality checks.\n"
        "All quantities are in Planck units (G = c = hbar = k_B = 1); entropies are in nats."};
    app.set_config("--config", "", "Flat key = value file mirroring the long flags; flags override it");
    app.require_subcommand(1);

    RunConfig cfg;
    std::optional<double> stop_mass;
    std::optional<std::size_t> max_steps;

    app.add_option("--family", cfg.family, "schwarzschild | rn | kn")->capture_default_str();
    app.add_option("--mass", cfg.mass, "Mass M (Planck masses)")->capture_default_str();
    app.add_option("--charge", cfg.charge, "Charge Q (Planck charges)")->capture_default_str();
    app.add_option("--spin", cfg.spin, "Angular momentum J (units of hbar)")->capture_default_str();
    auto* alpha = app.add_option("--alpha", cfg.alpha,
                                 "Logarithmic entropy correction coefficient; for verify it replaces the alpha sweep")
                      ->capture_default_str();

    app.add_option("--omega-min", cfg.grid.omega.min, "Lower (excluded) end of the energy axis")->capture_default_str();
    app.add_option("--omega-max", cfg.grid.omega.max, "Upper end of the energy axis, <= M")->capture_default_str();
    app.add_option("--bins", cfg.grid.omega.bins, "Energy nodes")->capture_default_str();
    app.add_option("--q-min", cfg.grid.charge.min_quanta, "Lowest emitted charge, in charge steps")->capture_default_str();
    app.add_option("--q-max", cfg.grid.charge.max_quanta, "Highest emitted charge, in charge steps")->capture_default_str();
    app.add_option("--q-step", cfg.grid.charge.step, "Charge step (Planck charges)")->capture_default_str();
    app.add_option("--j-min", cfg.grid.spin.min_quanta, "Lowest emitted angular momentum, in steps")->capture_default_str();
    app.add_option("--j-max", cfg.grid.spin.max_quanta, "Highest emitted angular momentum, in steps")->capture_default_str();
    app.add_option("--j-step", cfg.grid.spin.step, "Angular momentum step (units of hbar)")->capture_default_str();
    app.add_option("--normalization", cfg.normalization, "raw | unitsum")->capture_default_str();
    app.add_flag("--report", cfg.report, "Add entropy and information diagnostics to the manifest");

    app.add_option("--energy-quantum", cfg.policy.energy_quantum, "Cascade energy quantum (Planck masses)")->capture_default_str();
    app.add_option("--stop-mass", stop_mass, "Cascade stops at this mass (required when alpha != 0)");
    app.add_option("--max-steps", max_steps, "Step cap, at least ceil(M / energy quantum)");
    app.add_option("--charge-quantum", cfg.policy.charge_quantum, "Cascade charge quantum, 0 disables")->capture_default_str();
    app.add_option("--spin-quantum", cfg.policy.spin_quantum, "Cascade angular momentum quantum, 0 disables")->capture_default_str();
    app.add_option("--samples", cfg.samples, "Number of cascades")->capture_default_str();
    app.add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
    app.add_option("--workers", cfg.workers, "Worker threads; output does not depend on it")->capture_default_str();

    app.add_option("--suite", cfg.suite, "identities | typicality | cascade | info | all")->capture_default_str();

    app.add_option("--levels", cfg.levels, "Typicality lab: system energy levels")->capture_default_str();
    app.add_option("--degeneracy", cfg.degeneracy, "Typicality lab: micro-states per level")->capture_default_str();
    app.add_option("--env-dim", cfg.env_dim, "Typicality lab: environment states at the ground level")->capture_default_str();
    app.add_option("--lab-seeds", cfg.lab_seeds, "Typicality lab: random states averaged")->capture_default_str();

    app.add_option("--output", cfg.output, "Output path; side files go to <path>.manifest.json etc.");
    app.add_option("--format", cfg.format, "csv | json (spectrum), jsonl (cascade), json (verify, typicality)");

    for (const char* name : {"spectrum", "cascade", "verify", "typicality"}) {
        app.add_subcommand(name)->fallthrough();
    }
    const char* const descriptions[][2] = {
        {"spectrum", "Emission log-weights on an energy (and charge, spin) grid"},
        {"cascade", "Monte Carlo evaporation cascades on an integer lattice"},
        {"verify", "Run the self-check suites"},
        {"typicality", "Random pure states and reduced system density matrices"},
    };
    for (const auto& d : descriptions) app.get_subcommand(d[0])->description(d[1]);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        return kUsage;
    }
    cfg.command = app.get_subcommands().front()->get_name();
    cfg.policy.stop_mass = stop_mass;
    cfg.policy.max_steps = max_steps;
    if (alpha->count() > 0) cfg.verify_alpha = cfg.alpha;
    return run(cfg, out, err);
}

}  // namespace hawkrad::cli
