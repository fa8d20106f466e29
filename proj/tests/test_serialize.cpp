#include <doctest.h>

#include <random>
#include <string>

#include "hypercpf/serialize.hpp"
#include "testutil.hpp"

using namespace hypercpf;
using nlohmann::json;

namespace {

json reparse(const json& j) { return json::parse(j.dump()); }

} // namespace

TEST_CASE("complex numbers round trip through their JSON form") {
    std::mt19937_64 rng(81);
    for (int trial = 0; trial < 50; ++trial) {
        const cdouble z(testutil::uniform(rng, -10.0, 10.0), testutil::uniform(rng, -10.0, 10.0));
        const json j = reparse(complex_to_json(z));
        CHECK(complex_from_json(j) == z); // exact: dump preserves doubles
        CHECK(j.at("re").get<double>() == z.real());
        CHECK(j.at("im").get<double>() == z.imag());
    }
    // A missing imaginary part reads as zero; anything unexpected is refused.
    CHECK(complex_from_json(json{{"re", 1.5}}) == cdouble(1.5, 0.0));
    CHECK_THROWS_WITH_AS(complex_from_json(json{{"re", 0.0}, {"imag", 2.0}}),
                         "unknown key \"imag\" in complex number", ValidationError);
    CHECK_THROWS_AS(complex_from_json(json{{"im", 1.0}}), ValidationError);
    CHECK_THROWS_AS(complex_from_json(json::array({1.0, 2.0})), ValidationError);
    CHECK_THROWS_AS(complex_from_json(json{{"re", "one"}}), ValidationError);
}

TEST_CASE("states round trip sparsely and exactly") {
    std::mt19937_64 rng(82);
    const StateVector state =
        make_initial_state(testutil::random_spec(rng), testutil::random_spec(rng));
    const json j = reparse(state_to_json(state));
    CHECK(j.at("port_a").get<bool>() == false);
    CHECK(j.at("port_b").get<bool>() == false);
    // The initial product state populates exactly 8 spin components per
    // photon-pair mode combination that carries amplitude.
    CHECK(j.at("amplitudes").size() < 2048u); // zeros are dropped

    const StateVector back = state_from_json(j);
    CHECK(back.dim() == state.dim());
    CHECK(max_abs_diff(back.amplitudes(), state.amplitudes()) == 0.0);
    CHECK(back.tracked_norm() == doctest::Approx(state.tracked_norm()).epsilon(1e-14));

    // Port flags change the dimension and survive the round trip.
    const StateVector ported = with_port(state, Photon::a, Port::down);
    const json jp = reparse(state_to_json(ported));
    CHECK(jp.at("port_a").get<bool>() == true);
    const StateVector ported_back = state_from_json(jp);
    CHECK(ported_back.has_port(Photon::a));
    CHECK(!ported_back.has_port(Photon::b));
    CHECK(ported_back.dim() == 32 * 16 * 8);
    CHECK(max_abs_diff(ported_back.amplitudes(), ported.amplitudes()) == 0.0);
}

TEST_CASE("state parsing validates indices and keys") {
    const json base{{"port_a", false}, {"port_b", false}};
    json overflow = base;
    overflow["amplitudes"] = json::array({json{{"index", 2048}, {"re", 1.0}, {"im", 0.0}}});
    CHECK_THROWS_WITH_AS(state_from_json(overflow), "state amplitude index 2048 out of range",
                         ValidationError);
    json negative = base;
    negative["amplitudes"] = json::array({json{{"index", -1}, {"re", 1.0}, {"im", 0.0}}});
    CHECK_THROWS_AS(state_from_json(negative), ValidationError);
    json typo = base;
    typo["amplitudes"] = json::array({json{{"index", 0}, {"real", 1.0}}});
    CHECK_THROWS_AS(state_from_json(typo), ValidationError);
    json missing = base;
    CHECK_THROWS_WITH_AS(state_from_json(missing), "state must carry an \"amplitudes\" array",
                         ValidationError);
    json unknown = base;
    unknown["amplitudes"] = json::array();
    unknown["norm"] = 1.0;
    CHECK_THROWS_WITH_AS(state_from_json(unknown), "unknown key \"norm\" in state",
                         ValidationError);
}

TEST_CASE("scattering coefficients round trip and reject malformed input") {
    std::mt19937_64 rng(83);
    for (int trial = 0; trial < 20; ++trial) {
        const ScatteringCoeffs sc = testutil::random_passive_coeffs(rng, trial);
        const ScatteringCoeffs back = coeffs_from_json(reparse(coeffs_to_json(sc)));
        CHECK(back.r == sc.r);
        CHECK(back.t == sc.t);
        CHECK(back.r0 == sc.r0);
        CHECK(back.t0 == sc.t0);
    }
    json missing = coeffs_to_json(ScatteringCoeffs::ideal());
    missing.erase("t0");
    CHECK_THROWS_WITH_AS(coeffs_from_json(missing),
                         "missing key \"t0\" in scattering coefficients", ValidationError);
    json extra = coeffs_to_json(ScatteringCoeffs::ideal());
    extra["phase"] = 0.0;
    CHECK_THROWS_AS(coeffs_from_json(extra), ValidationError);
}

TEST_CASE("cavity parameters round trip and are validated on parse") {
    const CavityParams p = preset_realistic(0.2);
    const CavityParams back = cavity_from_json(reparse(cavity_to_json(p)));
    CHECK(back.g == p.g);
    CHECK(back.kappa == p.kappa);
    CHECK(back.kappa_s == p.kappa_s);
    CHECK(back.gamma == p.gamma);
    CHECK(back.omega == p.omega);
    CHECK(back.omega_c == p.omega_c);
    CHECK(back.omega_x == p.omega_x);

    // Omitted fields fall back to the defaults, which are themselves valid.
    CHECK(cavity_from_json(json::object()).kappa == 1.0);

    json bad = cavity_to_json(p);
    bad["g"] = -1.0;
    CHECK_THROWS_AS(cavity_from_json(bad), ValidationError);
    json extra = cavity_to_json(p);
    extra["Q"] = 1e6;
    CHECK_THROWS_WITH_AS(cavity_from_json(extra), "unknown key \"Q\" in cavity parameters",
                         ValidationError);
}

TEST_CASE("photon input specs round trip and revalidate") {
    std::mt19937_64 rng(84);
    const PhotonInputSpec spec = testutil::random_spec(rng);
    const PhotonInputSpec back = spec_from_json(reparse(spec_to_json(spec)));
    CHECK(back.freq_amps == spec.freq_amps);
    CHECK(back.spatial_amps == spec.spatial_amps);
    CHECK(back.time_amps == spec.time_amps);

    json bad = spec_to_json(spec);
    bad["freq_amps"][0] = complex_to_json(cdouble(5.0, 0.0));
    CHECK_THROWS_AS(spec_from_json(bad), NormalizationError);
    json short_pair = spec_to_json(spec);
    short_pair["time_amps"] = json::array({complex_to_json(cdouble(1.0, 0.0))});
    CHECK_THROWS_AS(spec_from_json(short_pair), ValidationError);
    json extra = spec_to_json(spec);
    extra["pol_amps"] = json::array();
    CHECK_THROWS_WITH_AS(spec_from_json(extra), "unknown key \"pol_amps\" in photon input spec",
                         ValidationError);
}

TEST_CASE("run configs parse with spec'd defaults") {
    const RunConfig config = run_config_from_json(json::object());
    CHECK(config.mode == ProtocolMode::cpf);
    CHECK(!config.seed.has_value());
    CHECK(!config.forced_outcomes.has_value());
    CHECK(!config.record_intermediates);
    CHECK(!config.cavity.has_value());
    CHECK(!config.coeffs.has_value());
    CHECK(config.photon_a.freq_amps == PhotonInputSpec::balanced().freq_amps);
    CHECK(config.physics().ideal);
    CHECK(config.protocol_config().seed == 0);
}

TEST_CASE("run configs parse every documented field") {
    const json j{{"mode", "parity"},
                 {"seed", 42},
                 {"forced_outcomes", "+-+"},
                 {"record_intermediates", true},
                 {"coeffs", coeffs_to_json(coeffs_at_resonance(0.1, 8.654))}};
    const RunConfig config = run_config_from_json(j);
    CHECK(config.mode == ProtocolMode::parity);
    CHECK(config.seed == 42u);
    REQUIRE(config.forced_outcomes.has_value());
    CHECK(config.forced_outcomes->s1 == Spin::plus);
    CHECK(config.forced_outcomes->s2 == Spin::minus);
    CHECK(config.forced_outcomes->s3 == Spin::plus);
    CHECK(config.record_intermediates);
    CHECK(!config.physics().ideal);
    CHECK(config.physics().coeffs(2).r == coeffs_at_resonance(0.1, 8.654).r);

    // Cavity parameters are the other physics source.
    const json jc{{"cavity", cavity_to_json(preset_realistic())}};
    const RunConfig with_cavity = run_config_from_json(jc);
    REQUIRE(with_cavity.cavity.has_value());
    const ScatteringCoeffs derived = scattering_coeffs(*with_cavity.cavity);
    CHECK(with_cavity.physics().coeffs(1).r == derived.r);
}

TEST_CASE("run config validation refuses ambiguous or malformed input") {
    CHECK_THROWS_WITH_AS(run_config_from_json(json{{"mode", "swap"}}),
                         "mode must be \"cpf\" or \"parity\", got \"swap\"", ValidationError);
    CHECK_THROWS_WITH_AS(run_config_from_json(json{{"seed", -1}}),
                         "seed must be a non-negative integer", ValidationError);
    CHECK_THROWS_AS(run_config_from_json(json{{"seed", 1.5}}), ValidationError);
    CHECK_THROWS_AS(run_config_from_json(json{{"forced_outcomes", "++x"}}), ValidationError);
    CHECK_THROWS_AS(run_config_from_json(json{{"record_intermediates", "yes"}}), ValidationError);
    CHECK_THROWS_WITH_AS(
        run_config_from_json(json{{"cavity", cavity_to_json(preset_realistic())},
                                  {"coeffs", coeffs_to_json(ScatteringCoeffs::ideal())}}),
        "give either cavity parameters or direct coefficients, not both", ValidationError);
    CHECK_THROWS_WITH_AS(run_config_from_json(json{{"shots", 100}}),
                         "unknown key \"shots\" in run config", ValidationError);
    CHECK_THROWS_AS(run_config_from_json(json::array()), ValidationError);
}

TEST_CASE("run configs survive a serialization round trip") {
    std::mt19937_64 rng(85);
    RunConfig config;
    config.mode = ProtocolMode::parity;
    config.seed = 7;
    config.forced_outcomes = SpinTriplet::parse("-+-");
    config.record_intermediates = true;
    config.coeffs = coeffs_at_resonance(0.05, 3.0);
    config.photon_a = testutil::random_spec(rng);
    config.photon_b = testutil::random_spec(rng);
    const json j = reparse(run_config_to_json(config));
    const RunConfig back = run_config_from_json(j);
    CHECK(run_config_to_json(back) == j); // fixpoint
    CHECK(back.mode == config.mode);
    CHECK(back.seed == config.seed);
    CHECK(back.forced_outcomes == config.forced_outcomes);
    CHECK(back.coeffs->t0 == config.coeffs->t0);
    CHECK(back.photon_b.time_amps == config.photon_b.time_amps);
}

TEST_CASE("protocol results serialize every reported field") {
    ProtocolConfig config;
    config.mode = ProtocolMode::cpf;
    config.forced_outcomes = SpinTriplet::parse("+-+");
    config.record_intermediates = true;
    const PhotonInputSpec balanced = PhotonInputSpec::balanced();
    const ProtocolResult result = run_hyper_cpf(balanced, balanced, config);
    const json j = reparse(result_to_json(result));

    CHECK(j.at("outcome").get<std::string>() == "+-+");
    CHECK(j.at("success_probability").get<double>() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(j.at("outcome_probability").get<double>() == doctest::Approx(0.125).epsilon(1e-10));
    REQUIRE(j.at("measurements").size() == 3u);
    CHECK(j.at("measurements")[0].at("nv").get<int>() == 1);
    CHECK(j.at("measurements")[1].at("outcome").get<std::string>() == "-");
    CHECK(j.at("measurements")[2].at("probability").get<double>() ==
          doctest::Approx(0.5).epsilon(1e-10));
    CHECK(!j.contains("parity_triple"));
    CHECK(!j.contains("renormalization_note"));
    REQUIRE(j.contains("intermediates"));
    CHECK(j.at("intermediates").size() == 16u);
    CHECK(j.at("intermediates")[0].at("stage").get<std::string>() == "a:block1");
    CHECK(j.at("intermediates").back().at("stage").get<std::string>() == "feed_forward");

    // The embedded final state parses back to the result's final state.
    const StateVector final_back = state_from_json(j.at("final_state"));
    CHECK(max_abs_diff(final_back.amplitudes(), result.final_state.amplitudes()) == 0.0);
}

TEST_CASE("parity results carry the parity verdict") {
    ProtocolConfig config;
    config.mode = ProtocolMode::parity;
    config.forced_outcomes = SpinTriplet::parse("+--");
    const PhotonInputSpec balanced = PhotonInputSpec::balanced();
    const json j = reparse(result_to_json(run_hyper_parity(balanced, balanced, config)));
    CHECK(j.at("parity_triple").get<std::string>() == "even,odd,odd");
    CHECK(!j.contains("intermediates"));
}

TEST_CASE("lossy results carry the renormalization note") {
    ProtocolConfig config;
    config.mode = ProtocolMode::cpf;
    config.forced_outcomes = SpinTriplet::parse("+++");
    config.physics = PhysicsConfig::lossy(coeffs_at_resonance(0.1, 8.654));
    const PhotonInputSpec balanced = PhotonInputSpec::balanced();
    const json j = reparse(result_to_json(run_hyper_cpf(balanced, balanced, config)));
    REQUIRE(j.contains("renormalization_note"));
    CHECK(j.at("renormalization_note").get<std::string>().find("renormalized") !=
          std::string::npos);
    CHECK(j.at("success_probability").get<double>() < 1.0);
}
