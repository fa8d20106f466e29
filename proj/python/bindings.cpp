// Python bindings for the hyper-parallel gate simulator: scattering
// coefficients, protocol runs, block metrics and parameter sweeps.

#include <optional>
#include <string>
#include <vector>

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hypercpf/analysis.hpp"
#include "hypercpf/cavity.hpp"
#include "hypercpf/circuit.hpp"
#include "hypercpf/serialize.hpp"

namespace py = pybind11;
using namespace hypercpf;

namespace {

ProtocolConfig make_protocol_config(ProtocolMode mode,
                                    const std::optional<ScatteringCoeffs>& coeffs,
                                    const std::optional<std::string>& forced_outcomes,
                                    std::uint64_t seed, bool record_intermediates) {
    ProtocolConfig config;
    config.mode = mode;
    config.physics = coeffs ? PhysicsConfig::lossy(*coeffs) : PhysicsConfig::make_ideal();
    if (forced_outcomes) config.forced_outcomes = SpinTriplet::parse(*forced_outcomes);
    config.seed = seed;
    config.record_intermediates = record_intermediates;
    return config;
}

AveragingMethod make_method(const std::string& name, int nodes, long samples,
                            std::uint64_t seed) {
    if (name == "quadrature") return AveragingMethod::quadrature(nodes);
    if (name == "closed-form") return AveragingMethod::closed_form();
    if (name == "monte-carlo") return AveragingMethod::monte_carlo(samples, seed);
    throw ValidationError("unknown averaging method \"" + name +
                          "\"; use quadrature, closed-form or monte-carlo");
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Two-photon three-degree-of-freedom hyper-parallel gate simulator";

    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);

    py::class_<ScatteringCoeffs>(m, "ScatteringCoeffs")
        .def(py::init<cdouble, cdouble, cdouble, cdouble>(), py::arg("r"), py::arg("t"),
             py::arg("r0"), py::arg("t0"))
        .def_readwrite("r", &ScatteringCoeffs::r)
        .def_readwrite("t", &ScatteringCoeffs::t)
        .def_readwrite("r0", &ScatteringCoeffs::r0)
        .def_readwrite("t0", &ScatteringCoeffs::t0)
        .def_static("ideal", &ScatteringCoeffs::ideal)
        .def("passive", &ScatteringCoeffs::passive, py::arg("tol") = 1e-12)
        .def("__repr__", [](const ScatteringCoeffs& sc) {
            return "ScatteringCoeffs(r=" + std::to_string(sc.r.real()) + "+" +
                   std::to_string(sc.r.imag()) + "j, t=" + std::to_string(sc.t.real()) + "+" +
                   std::to_string(sc.t.imag()) + "j, ...)";
        });

    py::class_<CavityParams>(m, "CavityParams")
        .def(py::init<>())
        .def_readwrite("g", &CavityParams::g)
        .def_readwrite("kappa", &CavityParams::kappa)
        .def_readwrite("kappa_s", &CavityParams::kappa_s)
        .def_readwrite("gamma", &CavityParams::gamma)
        .def_readwrite("omega", &CavityParams::omega)
        .def_readwrite("omega_c", &CavityParams::omega_c)
        .def_readwrite("omega_x", &CavityParams::omega_x)
        .def("cooperativity", &CavityParams::cooperativity)
        .def("validate", &CavityParams::validate);

    m.def("scattering_coeffs", &scattering_coeffs, py::arg("params"),
          "Reflection/transmission quadruple of the input-output relation");
    m.def("coeffs_at_resonance", &coeffs_at_resonance, py::arg("ks_over_k"),
          py::arg("cooperativity"),
          "Resonant quadruple from the leakage ratio and cooperativity");
    m.def("preset_realistic", &preset_realistic, py::arg("ks_over_k") = 0.1,
          "Published NV-microcavity parameter set");

    py::class_<PhotonInputSpec>(m, "PhotonInputSpec")
        .def(py::init<>())
        .def_readwrite("freq_amps", &PhotonInputSpec::freq_amps)
        .def_readwrite("spatial_amps", &PhotonInputSpec::spatial_amps)
        .def_readwrite("time_amps", &PhotonInputSpec::time_amps)
        .def_static("basis", &PhotonInputSpec::basis, py::arg("freq"), py::arg("spatial"),
                    py::arg("timebin"))
        .def_static("balanced", &PhotonInputSpec::balanced)
        .def_static("uniform", &PhotonInputSpec::uniform, py::arg("c1"), py::arg("c2"));

    py::class_<ProtocolResult>(m, "ProtocolResult")
        .def_property_readonly(
            "outcome", [](const ProtocolResult& r) { return r.outcome.to_string(); })
        .def_readonly("success_probability", &ProtocolResult::success_probability)
        .def_readonly("outcome_probability", &ProtocolResult::outcome_probability)
        .def_property_readonly("parity",
                               [](const ProtocolResult& r) -> std::optional<std::string> {
                                   if (!r.parity) return std::nullopt;
                                   return r.parity->to_string();
                               })
        .def_readonly("renormalization_note", &ProtocolResult::renormalization_note)
        .def_property_readonly("stage_labels",
                               [](const ProtocolResult& r) {
                                   std::vector<std::string> labels;
                                   labels.reserve(r.intermediates.size());
                                   for (const StageRecord& record : r.intermediates)
                                       labels.push_back(record.label);
                                   return labels;
                               })
        .def("photon_dof_amplitudes",
             [](const ProtocolResult& r) {
                 return extract_photon_dof_amplitudes(r.final_state);
             },
             "64 post-feed-forward amplitudes over (freq, spatial, timebin) per photon")
        .def("to_json", [](const ProtocolResult& r) { return result_to_json(r).dump(); });

    m.def(
        "run_hyper_cpf",
        [](const PhotonInputSpec& spec_a, const PhotonInputSpec& spec_b,
           const std::optional<ScatteringCoeffs>& coeffs,
           const std::optional<std::string>& forced_outcomes, std::uint64_t seed,
           bool record_intermediates) {
            return run_hyper_cpf(spec_a, spec_b,
                                 make_protocol_config(ProtocolMode::cpf, coeffs,
                                                      forced_outcomes, seed,
                                                      record_intermediates));
        },
        py::arg("spec_a") = PhotonInputSpec::balanced(),
        py::arg("spec_b") = PhotonInputSpec::balanced(),
        py::kw_only(), py::arg("coeffs") = std::nullopt,
        py::arg("forced_outcomes") = std::nullopt, py::arg("seed") = 0,
        py::arg("record_intermediates") = false,
        "Run the hyper-parallel controlled-phase-flip protocol");

    m.def(
        "run_hyper_parity",
        [](const PhotonInputSpec& spec_a, const PhotonInputSpec& spec_b,
           const std::optional<ScatteringCoeffs>& coeffs,
           const std::optional<std::string>& forced_outcomes, std::uint64_t seed,
           bool record_intermediates) {
            return run_hyper_parity(spec_a, spec_b,
                                    make_protocol_config(ProtocolMode::parity, coeffs,
                                                         forced_outcomes, seed,
                                                         record_intermediates));
        },
        py::arg("spec_a") = PhotonInputSpec::balanced(),
        py::arg("spec_b") = PhotonInputSpec::balanced(),
        py::kw_only(), py::arg("coeffs") = std::nullopt,
        py::arg("forced_outcomes") = std::nullopt, py::arg("seed") = 0,
        py::arg("record_intermediates") = false,
        "Run the hyper-parity projection protocol");

    py::class_<BlockMetrics>(m, "BlockMetrics")
        .def_readonly("avg_fidelity", &BlockMetrics::avg_fidelity)
        .def_readonly("avg_efficiency", &BlockMetrics::avg_efficiency)
        .def_readonly("convergence_warning", &BlockMetrics::convergence_warning);

    m.def(
        "average_block_metrics",
        [](const ScatteringCoeffs& coeffs, const std::string& method, int nodes, long samples,
           std::uint64_t seed) {
            return average_block_metrics(coeffs, make_method(method, nodes, samples, seed));
        },
        py::arg("coeffs"), py::kw_only(), py::arg("method") = "quadrature",
        py::arg("nodes") = 128, py::arg("samples") = 100000L, py::arg("seed") = 0,
        "Average block fidelity and efficiency over the input-angle torus");
    m.def("block_fidelity", &block_fidelity, py::arg("alpha"), py::arg("beta"),
          py::arg("coeffs"), py::arg("normalized") = true);
    m.def("block_efficiency", &block_efficiency, py::arg("alpha"), py::arg("beta"),
          py::arg("coeffs"));
    m.def("block_efficiency_closed_form", &block_efficiency_closed_form, py::arg("coeffs"));

    py::class_<SweepRow>(m, "SweepRow")
        .def_readonly("ks_over_k", &SweepRow::ks_over_k)
        .def_readonly("cooperativity", &SweepRow::cooperativity)
        .def_readonly("avg_fidelity", &SweepRow::avg_fidelity)
        .def_readonly("avg_efficiency", &SweepRow::avg_efficiency)
        .def("__repr__", [](const SweepRow& row) {
            return "SweepRow(ks_over_k=" + std::to_string(row.ks_over_k) +
                   ", cooperativity=" + std::to_string(row.cooperativity) + ")";
        });

    m.def(
        "sweep",
        [](const std::vector<double>& ks_over_k, const std::vector<double>& cooperativity,
           int nodes) {
            SweepGrid grid;
            grid.ks_over_k = ks_over_k;
            grid.cooperativity = cooperativity;
            return sweep(grid, AveragingMethod::quadrature(nodes));
        },
        py::arg("ks_over_k"), py::arg("cooperativity"), py::kw_only(), py::arg("nodes") = 128,
        "Average metrics on the leakage x cooperativity grid at resonance");
    m.def("sweep_csv", &sweep_csv, py::arg("rows"));

    py::class_<ProtocolMetrics>(m, "ProtocolMetrics")
        .def_readonly("fidelity", &ProtocolMetrics::fidelity)
        .def_readonly("efficiency", &ProtocolMetrics::efficiency);
    m.def(
        "protocol_metrics",
        [](const PhotonInputSpec& spec_a, const PhotonInputSpec& spec_b,
           const ScatteringCoeffs& coeffs) {
            return protocol_metrics(spec_a, spec_b, PhysicsConfig::lossy(coeffs));
        },
        py::arg("spec_a"), py::arg("spec_b"), py::arg("coeffs"),
        "Whole-protocol fidelity and efficiency of the lossy gate vs the ideal one");

    m.def("cpf_reference_diagonal", &cpf_reference_diagonal,
          "Diagonal of the reference triple controlled-phase-flip");
}
