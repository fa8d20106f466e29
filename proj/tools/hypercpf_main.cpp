// Command line front end for the hyper-parallel photonic gate simulator:
// scattering coefficients, truth-table and parity reports, block metrics,
// parameter sweeps and full protocol runs.

#include <array>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hypercpf/analysis.hpp"
#include "hypercpf/cavity.hpp"
#include "hypercpf/circuit.hpp"
#include "hypercpf/serialize.hpp"

namespace {

using namespace hypercpf;
using nlohmann::json;

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

std::string fmt(cdouble z) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "%.9g%+.9gi", z.real(), z.imag());
    return buf;
}

// --- Shared options ---------------------------------------------------------

struct CommonOpts {
    std::string config_path;
    bool json_output = false;
    std::optional<std::uint64_t> seed;
};

void add_common_options(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--config", opts.config_path, "JSON run configuration file");
    cmd->add_flag("--json", opts.json_output, "emit machine-readable JSON");
    cmd->add_option("--seed", opts.seed, "seed for sampled measurement outcomes");
}

RunConfig load_config(const CommonOpts& opts) {
    if (opts.config_path.empty()) return RunConfig{};
    std::ifstream in(opts.config_path);
    if (!in) throw ValidationError("cannot open config file \"" + opts.config_path + "\"");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ValidationError("config file \"" + opts.config_path + "\" is not valid JSON: " +
                              e.what());
    }
    return run_config_from_json(j);
}

// Physical parameter flags. Exactly one source may be given: the four direct
// coefficients, a resonant cooperativity, or explicit cavity parameters
// (optionally starting from a named preset). --ks-over-k and --resonant
// modify the latter two.
struct PhysicsOpts {
    std::optional<double> r, t, r0, t0;
    std::optional<double> cooperativity;
    std::optional<double> ks_over_k;
    std::optional<std::string> preset;
    std::optional<double> g, kappa, kappa_s, gamma, omega, omega_c, omega_x;
    bool resonant = false;
};

void add_physics_options(CLI::App* cmd, PhysicsOpts& opts) {
    cmd->add_option("--r", opts.r, "coupled-unit reflection amplitude (with --t, --r0, --t0)");
    cmd->add_option("--t", opts.t, "coupled-unit transmission amplitude");
    cmd->add_option("--r0", opts.r0, "cold-cavity reflection amplitude");
    cmd->add_option("--t0", opts.t0, "cold-cavity transmission amplitude");
    cmd->add_option("--cooperativity", opts.cooperativity,
                    "g^2/(kappa*gamma); selects the resonant parameterization");
    cmd->add_option("--ks-over-k", opts.ks_over_k, "side leakage ratio kappa_s/kappa");
    cmd->add_option("--preset", opts.preset, "named parameter set (available: realistic)");
    cmd->add_option("--g", opts.g, "NV-cavity coupling rate");
    cmd->add_option("--kappa", opts.kappa, "cavity external decay rate");
    cmd->add_option("--kappa-s", opts.kappa_s, "cavity side leakage rate");
    cmd->add_option("--gamma", opts.gamma, "NV dipole decay rate");
    cmd->add_option("--omega", opts.omega, "probe photon frequency");
    cmd->add_option("--omega-c", opts.omega_c, "cavity resonance frequency");
    cmd->add_option("--omega-x", opts.omega_x, "NV transition frequency");
    cmd->add_flag("--resonant", opts.resonant, "zero all detunings");
}

struct ResolvedPhysics {
    std::optional<ScatteringCoeffs> coeffs; // direct or resonance-derived
    std::optional<CavityParams> params;     // full physical parameter set
    std::optional<double> cooperativity;    // when known

    bool empty() const { return !coeffs && !params; }

    ScatteringCoeffs to_coeffs() const {
        if (params) return scattering_coeffs(*params);
        if (coeffs) return *coeffs;
        return ScatteringCoeffs::ideal();
    }

    PhysicsConfig to_physics_config() const {
        if (empty()) return PhysicsConfig::make_ideal();
        return PhysicsConfig::lossy(to_coeffs());
    }
};

ResolvedPhysics resolve_physics(const PhysicsOpts& p, const RunConfig& config) {
    const int direct = static_cast<int>(p.r.has_value()) + static_cast<int>(p.t.has_value()) +
                       static_cast<int>(p.r0.has_value()) + static_cast<int>(p.t0.has_value());
    const bool has_params = p.g || p.kappa || p.kappa_s || p.gamma || p.omega || p.omega_c ||
                            p.omega_x || p.preset;
    ResolvedPhysics out;
    if (direct > 0) {
        if (direct < 4)
            throw ValidationError("direct coefficients need all four of --r --t --r0 --t0");
        if (p.cooperativity || has_params || p.ks_over_k || p.resonant)
            throw ValidationError(
                "direct coefficients cannot be combined with other physics flags");
        out.coeffs = ScatteringCoeffs{*p.r, *p.t, *p.r0, *p.t0};
        return out;
    }
    if (p.cooperativity) {
        if (has_params)
            throw ValidationError(
                "give either --cooperativity or explicit cavity parameters, not both");
        out.coeffs = coeffs_at_resonance(p.ks_over_k.value_or(0.0), *p.cooperativity);
        out.cooperativity = *p.cooperativity;
        return out;
    }
    if (has_params) {
        if (p.ks_over_k && p.kappa_s)
            throw ValidationError("give either --ks-over-k or --kappa-s, not both");
        CavityParams base;
        if (p.preset) {
            if (*p.preset != "realistic")
                throw ValidationError("unknown preset \"" + *p.preset +
                                      "\"; available presets: realistic");
            base = preset_realistic(p.ks_over_k.value_or(0.1));
        }
        if (p.g) base.g = *p.g;
        if (p.kappa) base.kappa = *p.kappa;
        if (p.kappa_s) base.kappa_s = *p.kappa_s;
        if (p.gamma) base.gamma = *p.gamma;
        if (p.omega) base.omega = *p.omega;
        if (p.omega_c) base.omega_c = *p.omega_c;
        if (p.omega_x) base.omega_x = *p.omega_x;
        if (p.ks_over_k) base.kappa_s = *p.ks_over_k * base.kappa;
        if (p.resonant) base.omega = base.omega_c = base.omega_x = 0.0;
        base.validate();
        out.params = base;
        out.cooperativity = base.cooperativity();
        return out;
    }
    if (p.ks_over_k || p.resonant)
        throw ValidationError("--ks-over-k/--resonant need a physics source "
                              "(--preset, --cooperativity or cavity parameters)");
    if (config.coeffs) {
        out.coeffs = *config.coeffs;
    } else if (config.cavity) {
        out.params = *config.cavity;
        out.cooperativity = config.cavity->cooperativity();
    }
    return out;
}

// --- coeffs ------------------------------------------------------------------

int cmd_coeffs(const CommonOpts& common, const PhysicsOpts& physics) {
    const RunConfig config = load_config(common);
    const ResolvedPhysics resolved = resolve_physics(physics, config);
    if (resolved.empty())
        throw ValidationError("no physics given; pass --preset/--cooperativity/cavity "
                              "parameters, --r/--t/--r0/--t0, or a --config with cavity/coeffs");
    const ScatteringCoeffs sc = resolved.to_coeffs();
    const double coupled_flux = std::norm(sc.r) + std::norm(sc.t);
    const double cold_flux = std::norm(sc.r0) + std::norm(sc.t0);
    const bool passive = sc.passive();

    if (common.json_output) {
        json j = coeffs_to_json(sc);
        if (resolved.cooperativity) j["cooperativity"] = *resolved.cooperativity;
        j["passive"] = passive;
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    std::cout << "r  = " << fmt(sc.r) << "\n";
    std::cout << "t  = " << fmt(sc.t) << "\n";
    std::cout << "r0 = " << fmt(sc.r0) << "\n";
    std::cout << "t0 = " << fmt(sc.t0) << "\n";
    if (resolved.cooperativity)
        std::cout << "cooperativity = " << fmt(*resolved.cooperativity) << "\n";
    std::cout << "|r|^2+|t|^2 = " << fmt(coupled_flux) << ", |r0|^2+|t0|^2 = " << fmt(cold_flux)
              << (passive ? " (passive)" : " (NOT passive)") << "\n";
    return 0;
}

// --- truth-table ---------------------------------------------------------------

std::string dof_label(int packed) {
    std::string out = (packed & 1) ? "w2" : "w1";
    out += (packed & 2) ? ",m2" : ",m1";
    out += (packed & 4) ? ",s" : ",l";
    return out;
}

int cmd_truth_table(const CommonOpts& common) {
    ProtocolConfig config;
    config.mode = ProtocolMode::cpf;
    config.forced_outcomes = SpinTriplet{};
    const CVec diag = cpf_reference_diagonal();

    json rows = json::array();
    int mismatches = 0;
    for (int ia = 0; ia < 8; ++ia)
        for (int ib = 0; ib < 8; ++ib) {
            const PhotonInputSpec spec_a =
                PhotonInputSpec::basis(ia & 1, (ia >> 1) & 1, (ia >> 2) & 1);
            const PhotonInputSpec spec_b =
                PhotonInputSpec::basis(ib & 1, (ib >> 1) & 1, (ib >> 2) & 1);
            const ProtocolResult result = run_hyper_cpf(spec_a, spec_b, config);
            const CVec amps = extract_photon_dof_amplitudes(result.final_state);
            const int idx = ia + 8 * ib;
            bool ok = true;
            for (int j = 0; j < 64; ++j) {
                const cdouble want =
                    (j == idx) ? diag[static_cast<size_t>(j)] : cdouble(0.0);
                if (std::abs(amps[static_cast<size_t>(j)] - want) > 1e-10) ok = false;
            }
            if (!ok) ++mismatches;
            const int phase = diag[static_cast<size_t>(idx)].real() > 0 ? 1 : -1;
            if (common.json_output) {
                rows.push_back(json{{"a", dof_label(ia)},
                                    {"b", dof_label(ib)},
                                    {"phase", phase},
                                    {"match", ok}});
            } else {
                std::printf("%-8s | %-8s -> %+d%s\n", dof_label(ia).c_str(),
                            dof_label(ib).c_str(), phase, ok ? "" : "  MISMATCH");
            }
        }

    const bool pass = mismatches == 0;
    if (common.json_output) {
        std::cout << json{{"rows", std::move(rows)}, {"pass", pass}}.dump(2) << "\n";
    } else if (pass) {
        std::cout << "PASS: ideal pipeline matches the reference controlled-phase-flip action "
                     "on all 64 basis inputs\n";
    } else {
        std::cout << "FAIL: " << mismatches
                  << " of 64 basis inputs deviate from the reference action\n";
    }
    return pass ? 0 : 1;
}

// --- parity --------------------------------------------------------------------

void print_state_human(const StateVector& state) {
    for (int i = 0; i < state.dim(); ++i) {
        const cdouble v = state.amp(i);
        if (v == cdouble(0.0)) continue;
        const auto [am, bm, s] = state.unpack(i);
        std::cout << "  |" << PhotonMode::from_index(am, state.has_port(Photon::a)).to_string()
                  << "," << PhotonMode::from_index(bm, state.has_port(Photon::b)).to_string()
                  << "," << SpinTriplet::from_index(s).to_string() << ">  " << fmt(v) << "\n";
    }
}

int cmd_parity(const CommonOpts& common, const PhysicsOpts& physics,
               const std::optional<std::string>& force_outcome, std::optional<long> shots) {
    RunConfig config = load_config(common);
    config.mode = ProtocolMode::parity;
    if (common.seed) config.seed = common.seed;
    if (force_outcome) config.forced_outcomes = SpinTriplet::parse(*force_outcome);
    const ResolvedPhysics resolved = resolve_physics(physics, config);

    ProtocolConfig protocol = config.protocol_config();
    protocol.physics = resolved.to_physics_config();

    if (shots) {
        if (*shots < 1) throw ValidationError("--shots must be at least 1");
        if (force_outcome)
            throw ValidationError("--shots samples outcomes; it cannot be combined with "
                                  "--force-outcome");
        // Exact outcome distribution, then categorical sampling from it.
        std::array<double, 8> prob{};
        for (int outcome = 0; outcome < 8; ++outcome) {
            ProtocolConfig forced = protocol;
            forced.forced_outcomes = SpinTriplet::from_index(outcome);
            forced.record_intermediates = false;
            prob[static_cast<size_t>(outcome)] =
                run_hyper_parity(config.photon_a, config.photon_b, forced).outcome_probability;
        }
        std::array<long, 8> counts{};
        std::mt19937_64 rng(config.seed.value_or(0));
        for (long shot = 0; shot < *shots; ++shot) {
            const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
            double acc = 0.0;
            int pick = 7;
            for (int outcome = 0; outcome < 8; ++outcome) {
                acc += prob[static_cast<size_t>(outcome)];
                if (u < acc) {
                    pick = outcome;
                    break;
                }
            }
            ++counts[static_cast<size_t>(pick)];
        }
        if (common.json_output) {
            json outcomes = json::array();
            for (int outcome = 0; outcome < 8; ++outcome)
                outcomes.push_back(
                    json{{"outcome", SpinTriplet::from_index(outcome).to_string()},
                         {"probability", prob[static_cast<size_t>(outcome)]},
                         {"frequency", static_cast<double>(counts[static_cast<size_t>(outcome)]) /
                                           static_cast<double>(*shots)}});
            std::cout << json{{"shots", *shots},
                              {"seed", config.seed.value_or(0)},
                              {"outcomes", std::move(outcomes)}}
                             .dump(2)
                      << "\n";
        } else {
            std::cout << "shots = " << *shots << ", seed = " << config.seed.value_or(0) << "\n";
            std::cout << "outcome  probability  frequency\n";
            for (int outcome = 0; outcome < 8; ++outcome)
                std::printf("%s      %-11.9g  %.9g\n",
                            SpinTriplet::from_index(outcome).to_string().c_str(),
                            prob[static_cast<size_t>(outcome)],
                            static_cast<double>(counts[static_cast<size_t>(outcome)]) /
                                static_cast<double>(*shots));
        }
        return 0;
    }

    const ProtocolResult result = run_hyper_parity(config.photon_a, config.photon_b, protocol);
    if (common.json_output) {
        std::cout << result_to_json(result).dump(2) << "\n";
        return 0;
    }
    std::cout << "outcome = " << result.outcome.to_string() << "\n";
    std::cout << "parity  = " << result.parity->to_string() << "\n";
    std::cout << "outcome_probability = " << fmt(result.outcome_probability) << "\n";
    if (result.success_probability < 1.0 - 1e-12)
        std::cout << "success_probability = " << fmt(result.success_probability) << "\n";
    std::cout << "post-feed-forward state (renormalized):\n";
    print_state_human(result.final_state);
    return 0;
}

// --- block-metrics ---------------------------------------------------------------

int cmd_block_metrics(const CommonOpts& common, const PhysicsOpts& physics,
                      const std::string& method_name, int nodes, long samples) {
    const RunConfig config = load_config(common);
    const ScatteringCoeffs sc = resolve_physics(physics, config).to_coeffs();

    AveragingMethod method;
    if (method_name == "quadrature") method = AveragingMethod::quadrature(nodes);
    else if (method_name == "closed-form") method = AveragingMethod::closed_form();
    else if (method_name == "monte-carlo")
        method = AveragingMethod::monte_carlo(samples, common.seed.value_or(0));
    else
        throw ValidationError("unknown averaging method \"" + method_name +
                              "\"; use quadrature, closed-form or monte-carlo");

    const BlockMetrics metrics = average_block_metrics(sc, method);
    const double closed = block_efficiency_closed_form(sc);

    if (common.json_output) {
        json j{{"method", method_name},
               {"avg_fidelity", metrics.avg_fidelity},
               {"avg_efficiency", metrics.avg_efficiency},
               {"closed_form_efficiency", closed}};
        if (method.kind == AveragingMethod::Kind::quadrature) j["nodes"] = method.nodes;
        if (method.kind == AveragingMethod::Kind::monte_carlo) {
            j["samples"] = method.samples;
            j["seed"] = method.seed;
        }
        if (metrics.convergence_warning) j["convergence_warning"] = *metrics.convergence_warning;
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    if (method.kind == AveragingMethod::Kind::quadrature)
        std::cout << "method = quadrature (" << method.nodes << " nodes per axis)\n";
    else if (method.kind == AveragingMethod::Kind::monte_carlo)
        std::cout << "method = monte-carlo (" << method.samples << " samples, seed "
                  << method.seed << ")\n";
    else
        std::cout << "method = closed-form\n";
    std::cout << "avg_fidelity = " << fmt(metrics.avg_fidelity) << "\n";
    std::cout << "avg_efficiency = " << fmt(metrics.avg_efficiency) << "\n";
    std::cout << "closed_form_efficiency = " << fmt(closed) << "\n";
    if (metrics.convergence_warning)
        std::cout << "warning: " << *metrics.convergence_warning << "\n";
    return 0;
}

// --- sweep -----------------------------------------------------------------------

std::vector<double> parse_axis_values(const std::string& token, const std::string& axis) {
    const std::string body = token.substr(axis.size() + 1);
    double start = 0.0, stop = 0.0;
    long count = 0;
    char trailing = '\0';
    if (std::sscanf(body.c_str(), "%lf:%lf:%ld%c", &start, &stop, &count, &trailing) != 3)
        throw ValidationError("cannot parse grid axis \"" + token +
                              "\"; expected " + axis + "=start:stop:count");
    if (count < 1)
        throw ValidationError("grid axis \"" + token + "\" must have count >= 1");
    if (count == 1) {
        if (start != stop)
            throw ValidationError("single-point grid axis \"" + token +
                                  "\" must have start == stop");
        return {start};
    }
    std::vector<double> values(static_cast<size_t>(count));
    for (long i = 0; i < count; ++i)
        values[static_cast<size_t>(i)] =
            start + (stop - start) * static_cast<double>(i) / static_cast<double>(count - 1);
    return values;
}

SweepGrid parse_grid(const std::string& text) {
    SweepGrid grid;
    bool saw_ks = false, saw_coop = false;
    std::istringstream stream(text);
    std::string token;
    while (stream >> token) {
        if (token.rfind("ks=", 0) == 0) {
            if (saw_ks) throw ValidationError("grid axis \"ks\" given twice");
            grid.ks_over_k = parse_axis_values(token, "ks");
            saw_ks = true;
        } else if (token.rfind("coop=", 0) == 0) {
            if (saw_coop) throw ValidationError("grid axis \"coop\" given twice");
            grid.cooperativity = parse_axis_values(token, "coop");
            saw_coop = true;
        } else {
            throw ValidationError("unknown grid axis in \"" + token +
                                  "\"; use ks=start:stop:count coop=start:stop:count");
        }
    }
    if (!saw_ks || !saw_coop)
        throw ValidationError("--grid must set both axes, e.g. \"ks=0:0.5:26 coop=0.5:30:60\"");
    grid.validate();
    return grid;
}

int cmd_sweep(const CommonOpts& common, const std::optional<std::string>& grid_text,
              const std::string& output_path, int nodes) {
    const SweepGrid grid = grid_text ? parse_grid(*grid_text) : SweepGrid::default_grid();
    const std::vector<SweepRow> rows = sweep(grid, AveragingMethod::quadrature(nodes));
    const std::string csv = sweep_csv(rows);

    std::ofstream out(output_path, std::ios::binary);
    if (!out) throw ValidationError("cannot write sweep output to \"" + output_path + "\"");
    out << csv;
    out.close();

    if (common.json_output) {
        std::cout << json{{"rows", rows.size()},
                          {"output", output_path},
                          {"ks_points", grid.ks_over_k.size()},
                          {"coop_points", grid.cooperativity.size()}}
                         .dump(2)
                  << "\n";
    } else {
        std::cout << "wrote " << rows.size() << " rows to " << output_path << " ("
                  << grid.ks_over_k.size() << " leakage x " << grid.cooperativity.size()
                  << " cooperativity points)\n";
    }
    return 0;
}

// --- simulate ---------------------------------------------------------------------

int cmd_simulate(const CommonOpts& common, const PhysicsOpts& physics,
                 const std::optional<std::string>& mode_name,
                 const std::optional<std::string>& force_outcome, bool record_intermediates) {
    RunConfig config = load_config(common);
    if (mode_name) {
        if (*mode_name == "cpf") config.mode = ProtocolMode::cpf;
        else if (*mode_name == "parity") config.mode = ProtocolMode::parity;
        else
            throw ValidationError("mode must be \"cpf\" or \"parity\", got \"" + *mode_name +
                                  "\"");
    }
    if (common.seed) config.seed = common.seed;
    if (force_outcome) config.forced_outcomes = SpinTriplet::parse(*force_outcome);
    if (record_intermediates) config.record_intermediates = true;
    const ResolvedPhysics resolved = resolve_physics(physics, config);

    ProtocolConfig protocol = config.protocol_config();
    protocol.physics = resolved.to_physics_config();

    const ProtocolResult result =
        config.mode == ProtocolMode::cpf
            ? run_hyper_cpf(config.photon_a, config.photon_b, protocol)
            : run_hyper_parity(config.photon_a, config.photon_b, protocol);
    std::cout << result_to_json(result).dump(2) << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-photon hyper-parallel gate simulator: NV-cavity scattering, "
                 "controlled-phase-flip and parity protocols, block metrics and sweeps"};
    app.require_subcommand(1);

    CommonOpts common;
    PhysicsOpts coeffs_physics, parity_physics, metrics_physics, simulate_physics;

    CLI::App* coeffs = app.add_subcommand("coeffs", "compute scattering coefficients");
    add_common_options(coeffs, common);
    add_physics_options(coeffs, coeffs_physics);

    CLI::App* truth = app.add_subcommand(
        "truth-table", "verify the ideal gate against the reference action on all basis inputs");
    add_common_options(truth, common);

    CLI::App* parity = app.add_subcommand("parity", "run the hyper-parity protocol");
    add_common_options(parity, common);
    add_physics_options(parity, parity_physics);
    std::optional<std::string> parity_outcome;
    std::optional<long> parity_shots;
    parity->add_option("--force-outcome", parity_outcome,
                       "project onto a fixed outcome triple, e.g. +-+");
    parity->add_option("--shots", parity_shots,
                       "sample this many outcomes and report frequencies");

    CLI::App* metrics = app.add_subcommand("block-metrics", "average block fidelity/efficiency");
    add_common_options(metrics, common);
    add_physics_options(metrics, metrics_physics);
    std::string method_name = "quadrature";
    int nodes = 128;
    long samples = 100000;
    metrics->add_option("--method", method_name, "quadrature, closed-form or monte-carlo")
        ->default_val("quadrature");
    metrics->add_option("--nodes", nodes, "quadrature nodes per axis")->default_val(128);
    metrics->add_option("--samples", samples, "monte-carlo sample count")->default_val(100000);

    CLI::App* sweep_cmd = app.add_subcommand("sweep", "metric sweep over a leakage x "
                                                      "cooperativity grid, written as CSV");
    add_common_options(sweep_cmd, common);
    std::optional<std::string> grid_text;
    std::string output_path = "sweep.csv";
    int sweep_nodes = 128;
    sweep_cmd->add_option("--grid", grid_text,
                          "axes as \"ks=start:stop:count coop=start:stop:count\"");
    sweep_cmd->add_option("--output", output_path, "CSV output path")->default_val("sweep.csv");
    sweep_cmd->add_option("--nodes", sweep_nodes, "quadrature nodes per axis")->default_val(128);

    CLI::App* simulate = app.add_subcommand("simulate", "full protocol run, emitting the "
                                                        "serialized result as JSON");
    add_common_options(simulate, common);
    add_physics_options(simulate, simulate_physics);
    std::optional<std::string> simulate_mode;
    std::optional<std::string> simulate_outcome;
    bool simulate_record = false;
    simulate->add_option("--mode", simulate_mode, "cpf or parity");
    simulate->add_option("--force-outcome", simulate_outcome,
                         "project onto a fixed outcome triple, e.g. +-+");
    simulate->add_flag("--record-intermediates", simulate_record,
                       "include every pipeline stage state in the output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*coeffs) return cmd_coeffs(common, coeffs_physics);
        if (*truth) return cmd_truth_table(common);
        if (*parity) return cmd_parity(common, parity_physics, parity_outcome, parity_shots);
        if (*metrics)
            return cmd_block_metrics(common, metrics_physics, method_name, nodes, samples);
        if (*sweep_cmd) return cmd_sweep(common, grid_text, output_path, sweep_nodes);
        if (*simulate)
            return cmd_simulate(common, simulate_physics, simulate_mode, simulate_outcome,
                                simulate_record);
    } catch (const SimulatorError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
