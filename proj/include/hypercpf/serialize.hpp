#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "hypercpf/analysis.hpp"
#include "hypercpf/cavity.hpp"
#include "hypercpf/circuit.hpp"
#include "hypercpf/state.hpp"

namespace hypercpf {

// Complex numbers serialize as {"re": x, "im": y} everywhere.
nlohmann::json complex_to_json(cdouble z);
cdouble complex_from_json(const nlohmann::json& j);

// Sparse state dump: {"port_a", "port_b", "amplitudes": [{"index", "re", "im"}...]}
// over the packed basis; parse(emit(s)) reproduces s exactly.
nlohmann::json state_to_json(const StateVector& state);
StateVector state_from_json(const nlohmann::json& j);

nlohmann::json coeffs_to_json(const ScatteringCoeffs& coeffs);
ScatteringCoeffs coeffs_from_json(const nlohmann::json& j);

nlohmann::json cavity_to_json(const CavityParams& params);
CavityParams cavity_from_json(const nlohmann::json& j);

nlohmann::json spec_to_json(const PhotonInputSpec& spec);
PhotonInputSpec spec_from_json(const nlohmann::json& j);

nlohmann::json result_to_json(const ProtocolResult& result);

// Run configuration accepted by the command line tool. Physics is given
// either as cavity parameters (shared by the three NV units), as one direct
// scattering quadruple, or defaults to ideal.
struct RunConfig {
    ProtocolMode mode = ProtocolMode::cpf;
    std::optional<std::uint64_t> seed;
    std::optional<SpinTriplet> forced_outcomes;
    bool record_intermediates = false;
    std::optional<CavityParams> cavity;
    std::optional<ScatteringCoeffs> coeffs;
    PhotonInputSpec photon_a = PhotonInputSpec::balanced();
    PhotonInputSpec photon_b = PhotonInputSpec::balanced();

    PhysicsConfig physics() const;
    ProtocolConfig protocol_config() const;
};

// Parses a config object; unknown keys anywhere raise ValidationError.
RunConfig run_config_from_json(const nlohmann::json& j);
nlohmann::json run_config_to_json(const RunConfig& config);

} // namespace hypercpf
