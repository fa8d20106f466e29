#include "hypercpf/serialize.hpp"

namespace hypercpf {

namespace {

using nlohmann::json;

// Reject config objects with keys this tool does not understand; silent
// typos in physics parameters would otherwise produce plausible garbage.
void check_keys(const json& j, std::initializer_list<const char*> allowed, const char* where) {
    if (!j.is_object()) throw ValidationError(std::string(where) + " must be a JSON object");
    for (const auto& [key, value] : j.items()) {
        bool ok = false;
        for (const char* name : allowed)
            if (key == name) {
                ok = true;
                break;
            }
        if (!ok)
            throw ValidationError("unknown key \"" + key + "\" in " + where);
    }
}

double get_number(const json& j, const char* key, const char* where) {
    const auto it = j.find(key);
    if (it == j.end())
        throw ValidationError(std::string("missing key \"") + key + "\" in " + where);
    if (!it->is_number())
        throw ValidationError(std::string("key \"") + key + "\" in " + where +
                              " must be a number");
    return it->get<double>();
}

std::array<cdouble, 2> get_pair(const json& j, const char* key, const char* where) {
    const auto it = j.find(key);
    if (it == j.end())
        throw ValidationError(std::string("missing key \"") + key + "\" in " + where);
    if (!it->is_array() || it->size() != 2)
        throw ValidationError(std::string("key \"") + key + "\" in " + where +
                              " must be an array of two complex numbers");
    return {complex_from_json((*it)[0]), complex_from_json((*it)[1])};
}

} // namespace

json complex_to_json(cdouble z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

cdouble complex_from_json(const json& j) {
    check_keys(j, {"re", "im"}, "complex number");
    return {get_number(j, "re", "complex number"),
            j.contains("im") ? get_number(j, "im", "complex number") : 0.0};
}

json state_to_json(const StateVector& state) {
    json amps = json::array();
    for (int i = 0; i < state.dim(); ++i) {
        const cdouble v = state.amp(i);
        if (v == cdouble(0.0)) continue;
        amps.push_back(json{{"index", i}, {"re", v.real()}, {"im", v.imag()}});
    }
    return json{{"port_a", state.has_port(Photon::a)},
                {"port_b", state.has_port(Photon::b)},
                {"amplitudes", std::move(amps)}};
}

StateVector state_from_json(const json& j) {
    check_keys(j, {"port_a", "port_b", "amplitudes"}, "state");
    const bool port_a = j.value("port_a", false);
    const bool port_b = j.value("port_b", false);
    StateVector shape(port_a, port_b);
    CVec amps(static_cast<size_t>(shape.dim()));
    const auto it = j.find("amplitudes");
    if (it == j.end() || !it->is_array())
        throw ValidationError("state must carry an \"amplitudes\" array");
    for (const json& entry : *it) {
        check_keys(entry, {"index", "re", "im"}, "state amplitude");
        const auto idx = entry.at("index").get<long long>();
        if (idx < 0 || idx >= shape.dim())
            throw ValidationError("state amplitude index " + std::to_string(idx) +
                                  " out of range");
        amps[static_cast<size_t>(idx)] = {get_number(entry, "re", "state amplitude"),
                                          get_number(entry, "im", "state amplitude")};
    }
    return StateVector(std::move(amps), port_a, port_b);
}

json coeffs_to_json(const ScatteringCoeffs& coeffs) {
    return json{{"r", complex_to_json(coeffs.r)},
                {"t", complex_to_json(coeffs.t)},
                {"r0", complex_to_json(coeffs.r0)},
                {"t0", complex_to_json(coeffs.t0)}};
}

ScatteringCoeffs coeffs_from_json(const json& j) {
    check_keys(j, {"r", "t", "r0", "t0"}, "scattering coefficients");
    for (const char* key : {"r", "t", "r0", "t0"})
        if (!j.contains(key))
            throw ValidationError(std::string("missing key \"") + key +
                                  "\" in scattering coefficients");
    return {complex_from_json(j.at("r")), complex_from_json(j.at("t")),
            complex_from_json(j.at("r0")), complex_from_json(j.at("t0"))};
}

json cavity_to_json(const CavityParams& p) {
    return json{{"g", p.g},         {"kappa", p.kappa},     {"kappa_s", p.kappa_s},
                {"gamma", p.gamma}, {"omega", p.omega},     {"omega_c", p.omega_c},
                {"omega_x", p.omega_x}};
}

CavityParams cavity_from_json(const json& j) {
    check_keys(j, {"g", "kappa", "kappa_s", "gamma", "omega", "omega_c", "omega_x"},
               "cavity parameters");
    CavityParams p;
    if (j.contains("g")) p.g = get_number(j, "g", "cavity parameters");
    if (j.contains("kappa")) p.kappa = get_number(j, "kappa", "cavity parameters");
    if (j.contains("kappa_s")) p.kappa_s = get_number(j, "kappa_s", "cavity parameters");
    if (j.contains("gamma")) p.gamma = get_number(j, "gamma", "cavity parameters");
    if (j.contains("omega")) p.omega = get_number(j, "omega", "cavity parameters");
    if (j.contains("omega_c")) p.omega_c = get_number(j, "omega_c", "cavity parameters");
    if (j.contains("omega_x")) p.omega_x = get_number(j, "omega_x", "cavity parameters");
    p.validate();
    return p;
}

json spec_to_json(const PhotonInputSpec& spec) {
    auto pair = [](const std::array<cdouble, 2>& p) {
        return json::array({complex_to_json(p[0]), complex_to_json(p[1])});
    };
    return json{{"freq_amps", pair(spec.freq_amps)},
                {"spatial_amps", pair(spec.spatial_amps)},
                {"time_amps", pair(spec.time_amps)}};
}

PhotonInputSpec spec_from_json(const json& j) {
    check_keys(j, {"freq_amps", "spatial_amps", "time_amps"}, "photon input spec");
    PhotonInputSpec spec;
    spec.freq_amps = get_pair(j, "freq_amps", "photon input spec");
    spec.spatial_amps = get_pair(j, "spatial_amps", "photon input spec");
    spec.time_amps = get_pair(j, "time_amps", "photon input spec");
    spec.validate();
    return spec;
}

json result_to_json(const ProtocolResult& result) {
    json j{{"outcome", result.outcome.to_string()},
           {"success_probability", result.success_probability},
           {"outcome_probability", result.outcome_probability},
           {"final_state", state_to_json(result.final_state)}};
    json measurements = json::array();
    for (const MeasurementRecord& m : result.measurements)
        measurements.push_back(json{{"nv", m.nv},
                                    {"outcome", m.outcome == Spin::plus ? "+" : "-"},
                                    {"probability", m.probability}});
    j["measurements"] = std::move(measurements);
    if (result.parity) j["parity_triple"] = result.parity->to_string();
    if (result.renormalization_note) j["renormalization_note"] = *result.renormalization_note;
    if (!result.intermediates.empty()) {
        json stages = json::array();
        for (const StageRecord& record : result.intermediates)
            stages.push_back(json{{"stage", record.label}, {"state", state_to_json(record.state)}});
        j["intermediates"] = std::move(stages);
    }
    return j;
}

PhysicsConfig RunConfig::physics() const {
    if (coeffs) return PhysicsConfig::lossy(*coeffs);
    if (cavity) return PhysicsConfig::lossy(scattering_coeffs(*cavity));
    return PhysicsConfig::make_ideal();
}

ProtocolConfig RunConfig::protocol_config() const {
    ProtocolConfig config;
    config.mode = mode;
    config.physics = physics();
    config.forced_outcomes = forced_outcomes;
    config.seed = seed.value_or(0);
    config.record_intermediates = record_intermediates;
    return config;
}

RunConfig run_config_from_json(const json& j) {
    check_keys(j,
               {"mode", "seed", "forced_outcomes", "record_intermediates", "cavity", "coeffs",
                "photon_a", "photon_b"},
               "run config");
    RunConfig config;
    if (j.contains("mode")) {
        const std::string mode = j.at("mode").get<std::string>();
        if (mode == "cpf") config.mode = ProtocolMode::cpf;
        else if (mode == "parity") config.mode = ProtocolMode::parity;
        else throw ValidationError("mode must be \"cpf\" or \"parity\", got \"" + mode + "\"");
    }
    if (j.contains("seed")) {
        const json& seed = j.at("seed");
        // Signed storage of a non-negative literal is fine; anything else is not.
        const bool ok = seed.is_number_unsigned() ||
                        (seed.is_number_integer() && seed.get<std::int64_t>() >= 0);
        if (!ok) throw ValidationError("seed must be a non-negative integer");
        config.seed = seed.get<std::uint64_t>();
    }
    if (j.contains("forced_outcomes"))
        config.forced_outcomes = SpinTriplet::parse(j.at("forced_outcomes").get<std::string>());
    if (j.contains("record_intermediates")) {
        if (!j.at("record_intermediates").is_boolean())
            throw ValidationError("record_intermediates must be a boolean");
        config.record_intermediates = j.at("record_intermediates").get<bool>();
    }
    if (j.contains("cavity") && j.contains("coeffs"))
        throw ValidationError("give either cavity parameters or direct coefficients, not both");
    if (j.contains("cavity")) config.cavity = cavity_from_json(j.at("cavity"));
    if (j.contains("coeffs")) config.coeffs = coeffs_from_json(j.at("coeffs"));
    if (j.contains("photon_a")) config.photon_a = spec_from_json(j.at("photon_a"));
    if (j.contains("photon_b")) config.photon_b = spec_from_json(j.at("photon_b"));
    return config;
}

json run_config_to_json(const RunConfig& config) {
    json j{{"mode", config.mode == ProtocolMode::cpf ? "cpf" : "parity"},
           {"record_intermediates", config.record_intermediates},
           {"photon_a", spec_to_json(config.photon_a)},
           {"photon_b", spec_to_json(config.photon_b)}};
    if (config.seed) j["seed"] = *config.seed;
    if (config.forced_outcomes) j["forced_outcomes"] = config.forced_outcomes->to_string();
    if (config.cavity) j["cavity"] = cavity_to_json(*config.cavity);
    if (config.coeffs) j["coeffs"] = coeffs_to_json(*config.coeffs);
    return j;
}

} // namespace hypercpf
