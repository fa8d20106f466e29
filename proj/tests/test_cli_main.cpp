// End-to-end tests of the command line tool. Takes the path of the built
// binary as argv[1], drives it through popen, and checks exit codes, human
// output, JSON payloads and file artifacts.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <json.hpp>

#include <sys/wait.h>

namespace {

using nlohmann::json;

int g_failures = 0;

#define CHECK_MSG(cond, msg)                                                                   \
    do {                                                                                       \
        if (!(cond)) {                                                                         \
            ++g_failures;                                                                      \
            std::printf("FAIL %s:%d: %s (%s)\n", __FILE__, __LINE__, #cond,                    \
                        std::string(msg).c_str());                                             \
        }                                                                                      \
    } while (0)
#define CHECK(cond) CHECK_MSG(cond, "")

std::string g_cli;

struct RunResult {
    int status = -1;
    std::string out;
};

RunResult run_cli(const std::string& args, bool merge_stderr = false) {
    const std::string cmd =
        g_cli + " " + args + (merge_stderr ? " 2>&1" : " 2>/dev/null");
    RunResult result;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (pipe == nullptr) {
        ++g_failures;
        std::printf("FAIL: popen(%s)\n", cmd.c_str());
        return result;
    }
    char buf[4096];
    size_t n = 0;
    while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) result.out.append(buf, n);
    const int rc = pclose(pipe);
    result.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    return result;
}

bool contains(const std::string& haystack, const std::string& needle) {
    return haystack.find(needle) != std::string::npos;
}

json parse_json(const RunResult& result, const std::string& what) {
    try {
        return json::parse(result.out);
    } catch (const json::parse_error& e) {
        ++g_failures;
        std::printf("FAIL: %s did not emit valid JSON (%s): %.200s\n", what.c_str(), e.what(),
                    result.out.c_str());
        return json::object();
    }
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

int count_lines_with(const std::string& text, const std::string& needle) {
    int count = 0;
    std::istringstream stream(text);
    std::string line;
    while (std::getline(stream, line))
        if (contains(line, needle)) ++count;
    return count;
}

void test_coeffs() {
    // Named preset without leakage, human readable.
    RunResult res = run_cli("coeffs --preset realistic --ks-over-k 0");
    CHECK_MSG(res.status == 0, res.out);
    CHECK_MSG(contains(res.out, "r  = 0.9453"), res.out);
    CHECK_MSG(contains(res.out, "cooperativity = 8.653846"), res.out);
    CHECK_MSG(contains(res.out, "(passive)"), res.out);

    // Same point as JSON.
    res = run_cli("coeffs --json --preset realistic --ks-over-k 0");
    CHECK_MSG(res.status == 0, res.out);
    json j = parse_json(res, "coeffs --json");
    CHECK(std::abs(j.value("cooperativity", 0.0) - 8.6538461538) < 1e-9);
    CHECK(std::abs(j["/r/re"_json_pointer].get<double>() - 0.9453781513) < 1e-9);
    CHECK(j.value("passive", false));

    // Decoupled emitter: the hot and cold cavity coincide.
    res = run_cli("coeffs --json --g 0 --ks-over-k 0 --resonant");
    CHECK_MSG(res.status == 0, res.out);
    j = parse_json(res, "coeffs --g 0");
    CHECK(std::abs(j["/r/re"_json_pointer].get<double>()) < 1e-12);
    CHECK(std::abs(j["/t/re"_json_pointer].get<double>() + 1.0) < 1e-12);
    CHECK(std::abs(j["/r0/re"_json_pointer].get<double>()) < 1e-12);
    CHECK(std::abs(j["/t0/re"_json_pointer].get<double>() + 1.0) < 1e-12);

    // Strong coupling pushes the coupled reflection toward 1.
    res = run_cli("coeffs --json --cooperativity 1e6");
    CHECK_MSG(res.status == 0, res.out);
    j = parse_json(res, "coeffs --cooperativity 1e6");
    CHECK(j["/r/re"_json_pointer].get<double>() > 1.0 - 1e-5);

    // Refusals: incomplete or conflicting physics sources.
    CHECK(run_cli("coeffs --r 0.5 --t 0.1").status == 2);
    CHECK(run_cli("coeffs").status == 2);
    CHECK(run_cli("coeffs --preset bogus").status == 2);
    CHECK(run_cli("coeffs --cooperativity 2 --g 1").status == 2);
    CHECK(run_cli("coeffs --ks-over-k 0.1").status == 2);
    CHECK(run_cli("coeffs --kappa-s 0.2 --ks-over-k 0.1 --kappa 1").status == 2);
    CHECK(run_cli("coeffs --frobnicate 1").status == 2);
    CHECK(run_cli("").status == 2);
    CHECK(run_cli("--help").status == 0);
}

void test_truth_table() {
    RunResult res = run_cli("truth-table");
    CHECK_MSG(res.status == 0, res.out);
    CHECK_MSG(contains(res.out, "PASS"), res.out);
    CHECK_MSG(count_lines_with(res.out, "->") == 64, res.out);

    res = run_cli("truth-table --json");
    CHECK_MSG(res.status == 0, res.out);
    const json j = parse_json(res, "truth-table --json");
    CHECK(j.value("pass", false));
    CHECK(j["rows"].size() == 64);
    for (const json& row : j["rows"]) {
        CHECK(row.value("match", false));
        const int phase = row.value("phase", 0);
        CHECK(phase == 1 || phase == -1);
    }
}

void test_parity() {
    // Forced outcome on balanced inputs.
    RunResult res = run_cli("parity --force-outcome +-+ --json");
    CHECK_MSG(res.status == 0, res.out);
    json j = parse_json(res, "parity --force-outcome");
    CHECK(j.value("outcome", "") == "+-+");
    CHECK(j.value("parity_triple", "") == "even,odd,even");
    CHECK(std::abs(j.value("outcome_probability", 0.0) - 0.125) < 1e-9);
    CHECK(std::abs(j.value("success_probability", 0.0) - 1.0) < 1e-12);

    res = run_cli("parity --force-outcome +-+");
    CHECK_MSG(res.status == 0, res.out);
    CHECK_MSG(contains(res.out, "outcome = +-+"), res.out);
    CHECK_MSG(contains(res.out, "parity  = even,odd,even"), res.out);
    CHECK_MSG(count_lines_with(res.out, "  |") == 8, res.out);

    // Sampling: exact probabilities plus frequencies near 1/8.
    res = run_cli("parity --shots 100000 --seed 11 --json");
    CHECK_MSG(res.status == 0, res.out);
    j = parse_json(res, "parity --shots");
    CHECK(j.value("shots", 0) == 100000);
    CHECK(j["outcomes"].size() == 8);
    double freq_sum = 0.0;
    for (const json& row : j["outcomes"]) {
        CHECK(std::abs(row.value("probability", 0.0) - 0.125) < 1e-12);
        const double freq = row.value("frequency", 0.0);
        CHECK_MSG(std::abs(freq - 0.125) < 0.005, res.out);
        freq_sum += freq;
    }
    CHECK(std::abs(freq_sum - 1.0) < 1e-12);

    // Same seed, same bytes.
    const RunResult again = run_cli("parity --shots 100000 --seed 11 --json");
    CHECK(again.status == 0 && again.out == res.out);

    // Sampled single run is reproducible under a fixed seed too.
    const RunResult s1 = run_cli("parity --seed 5 --json");
    const RunResult s2 = run_cli("parity --seed 5 --json");
    CHECK_MSG(s1.status == 0, s1.out);
    CHECK(s1.out == s2.out);

    CHECK(run_cli("parity --shots 0").status == 2);
    CHECK(run_cli("parity --shots 10 --force-outcome +++").status == 2);
    CHECK(run_cli("parity --force-outcome ++x").status == 2);
}

void test_block_metrics() {
    // Ideal scattering: both averages are exactly 1.
    RunResult res = run_cli("block-metrics --json");
    CHECK_MSG(res.status == 0, res.out);
    json j = parse_json(res, "block-metrics ideal");
    CHECK(std::abs(j.value("avg_fidelity", 0.0) - 1.0) < 1e-12);
    CHECK(std::abs(j.value("avg_efficiency", 0.0) - 1.0) < 1e-12);

    // Reference operating point.
    res = run_cli("block-metrics --cooperativity 8.654 --ks-over-k 0.1 --json");
    CHECK_MSG(res.status == 0, res.out);
    j = parse_json(res, "block-metrics headline");
    CHECK(j.value("method", "") == "quadrature");
    CHECK(j.value("nodes", 0) == 128);
    CHECK_MSG(std::abs(j.value("avg_fidelity", 0.0) - 0.9999) < 5e-4, res.out);
    CHECK_MSG(std::abs(j.value("avg_efficiency", 0.0) - 0.6601) < 5e-4, res.out);
    CHECK(std::abs(j.value("avg_efficiency", 0.0) - j.value("closed_form_efficiency", 1.0)) <
          1e-8);

    // Monte Carlo agrees loosely and echoes its sampling parameters.
    res = run_cli("block-metrics --cooperativity 8.654 --ks-over-k 0.1 --method monte-carlo "
                  "--samples 40000 --seed 12345 --json");
    CHECK_MSG(res.status == 0, res.out);
    j = parse_json(res, "block-metrics monte-carlo");
    CHECK(j.value("method", "") == "monte-carlo");
    CHECK(j.value("samples", 0) == 40000);
    CHECK(j.value("seed", -1) == 12345);
    CHECK_MSG(std::abs(j.value("avg_efficiency", 0.0) - 0.6601) < 0.01, res.out);
    CHECK_MSG(std::abs(j.value("avg_fidelity", 0.0) - 0.9999) < 0.01, res.out);

    // Human output names the method and the closed form.
    res = run_cli("block-metrics --cooperativity 8.654 --ks-over-k 0.1");
    CHECK_MSG(res.status == 0, res.out);
    CHECK_MSG(contains(res.out, "method = quadrature (128 nodes per axis)"), res.out);
    CHECK_MSG(contains(res.out, "closed_form_efficiency = 0.660"), res.out);

    CHECK(run_cli("block-metrics --method bogus").status == 2);
    CHECK(run_cli("block-metrics --r 1 --t 0 --r0 0 --t0 -1 --cooperativity 2").status == 2);
}

void test_sweep(const std::filesystem::path& dir) {
    const std::filesystem::path csv1 = dir / "sweep1.csv";
    const std::filesystem::path csv2 = dir / "sweep2.csv";

    RunResult res = run_cli("sweep --grid 'ks=0:0.1:2 coop=1:2:3' --nodes 32 --output " +
                            csv1.string() + " --json");
    CHECK_MSG(res.status == 0, res.out);
    json j = parse_json(res, "sweep small grid");
    CHECK(j.value("rows", 0) == 6);
    CHECK(j.value("ks_points", 0) == 2);
    CHECK(j.value("coop_points", 0) == 3);

    const std::string body = read_file(csv1);
    CHECK_MSG(contains(body, "ks_over_k,cooperativity,avg_fidelity,avg_efficiency\n"), body);
    CHECK_MSG(count_lines_with(body, ",") == 7, body);

    // Byte-identical rerun.
    res = run_cli("sweep --grid 'ks=0:0.1:2 coop=1:2:3' --nodes 32 --output " + csv2.string());
    CHECK_MSG(res.status == 0, res.out);
    CHECK_MSG(contains(res.out, "wrote 6 rows"), res.out);
    CHECK(read_file(csv2) == body);

    // Single-point grid hits the reference operating point.
    const std::filesystem::path csv3 = dir / "sweep3.csv";
    res = run_cli("sweep --grid 'ks=0.1:0.1:1 coop=8.654:8.654:1' --nodes 64 --output " +
                  csv3.string());
    CHECK_MSG(res.status == 0, res.out);
    double ks = -1.0, coop = -1.0, fid = -1.0, eff = -1.0;
    const std::string row = read_file(csv3);
    const size_t newline = row.find('\n');
    CHECK(newline != std::string::npos);
    CHECK(std::sscanf(row.c_str() + newline + 1, "%lf,%lf,%lf,%lf", &ks, &coop, &fid, &eff) ==
          4);
    CHECK(ks == 0.1 && coop == 8.654);
    CHECK_MSG(std::abs(fid - 0.9999) < 5e-4, row);
    CHECK_MSG(std::abs(eff - 0.6601) < 5e-4, row);

    CHECK(run_cli("sweep --grid 'ks=0:0.5:3' --output " + (dir / "x.csv").string()).status ==
          2);
    CHECK(run_cli("sweep --grid 'ks=0.2:0.1:3 coop=1:2:2' --output " +
                  (dir / "x.csv").string())
              .status == 2);
    CHECK(run_cli("sweep --grid 'ks=0:0.1:2 coop=1:2:2 ks=0:0.1:2' --output " +
                  (dir / "x.csv").string())
              .status == 2);
    CHECK(run_cli("sweep --grid 'ks=0.1:0.2:1 coop=1:2:2' --output " +
                  (dir / "x.csv").string())
              .status == 2);
}

void test_simulate(const std::filesystem::path& dir) {
    // Ideal run with staged snapshots.
    RunResult res = run_cli("simulate --mode cpf --force-outcome +++ --record-intermediates");
    CHECK_MSG(res.status == 0, res.out);
    json j = parse_json(res, "simulate ideal");
    CHECK(j.value("outcome", "") == "+++");
    CHECK(std::abs(j.value("success_probability", 0.0) - 1.0) < 1e-12);
    CHECK(std::abs(j.value("outcome_probability", 0.0) - 0.125) < 1e-12);
    CHECK(!j.contains("renormalization_note"));
    const std::vector<std::string> expected_stages{
        "a:block1", "a:he1",    "a:block2",        "a:he2",
        "a:block3_upper", "a:block3_lower", "a:he3", "b:block1",
        "b:block2", "b:block3_upper", "b:block3_lower", "he1",
        "he2",      "he3",     "measure",         "feed_forward"};
    CHECK(j["intermediates"].size() == expected_stages.size());
    for (size_t i = 0; i < expected_stages.size() && i < j["intermediates"].size(); ++i)
        CHECK_MSG(j["intermediates"][i].value("stage", "") == expected_stages[i],
                  j["intermediates"][i].dump());
    CHECK(j["/final_state/amplitudes"_json_pointer].is_array());

    // Lossy run renormalizes and says so.
    res = run_cli("simulate --mode cpf --cooperativity 8.654 --ks-over-k 0.1 "
                  "--force-outcome +++");
    CHECK_MSG(res.status == 0, res.out);
    j = parse_json(res, "simulate lossy");
    const double success = j.value("success_probability", -1.0);
    CHECK_MSG(success < 1.0 && success > 0.24, res.out);
    CHECK(contains(j.value("renormalization_note", ""), "renormalized"));

    // Byte-identical rerun.
    const RunResult again = run_cli("simulate --mode cpf --cooperativity 8.654 "
                                    "--ks-over-k 0.1 --force-outcome +++");
    CHECK(again.status == 0 && again.out == res.out);

    // Configuration file drives the parity protocol; flags still win.
    const std::filesystem::path config = dir / "parity.json";
    std::ofstream(config) << R"({"mode": "parity", "forced_outcomes": "+--"})";
    res = run_cli("simulate --config " + config.string());
    CHECK_MSG(res.status == 0, res.out);
    j = parse_json(res, "simulate config parity");
    CHECK(j.value("outcome", "") == "+--");
    CHECK(j.value("parity_triple", "") == "even,odd,odd");
    CHECK(!j.contains("intermediates"));

    res = run_cli("simulate --config " + config.string() + " --force-outcome -++");
    CHECK_MSG(res.status == 0, res.out);
    j = parse_json(res, "simulate config override");
    CHECK(j.value("outcome", "") == "-++");

    // Broken configs are refused.
    const std::filesystem::path bad = dir / "bad.json";
    std::ofstream(bad) << R"({"mode": "parity", "shots": 10})";
    CHECK(run_cli("simulate --config " + bad.string()).status == 2);
    const std::filesystem::path torn = dir / "torn.json";
    std::ofstream(torn) << "{\"mode\": ";
    CHECK(run_cli("simulate --config " + torn.string()).status == 2);
    CHECK(run_cli("simulate --config " + (dir / "missing.json").string()).status == 2);
    CHECK(run_cli("simulate --mode swap").status == 2);

    // The error channel names the problem.
    res = run_cli("simulate --mode swap", /*merge_stderr=*/true);
    CHECK_MSG(contains(res.out, "mode must be \"cpf\" or \"parity\""), res.out);
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::printf("usage: %s <path-to-cli-binary>\n", argv[0]);
        return 2;
    }
    g_cli = argv[1];

    std::error_code ec;
    const std::filesystem::path dir =
        std::filesystem::temp_directory_path(ec) / "hypercpf_cli_test";
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        std::printf("FAIL: cannot create scratch directory %s\n", dir.string().c_str());
        return 2;
    }

    test_coeffs();
    test_truth_table();
    test_parity();
    test_block_metrics();
    test_sweep(dir);
    test_simulate(dir);

    if (g_failures == 0) {
        std::printf("all command line checks passed\n");
        return 0;
    }
    std::printf("%d command line check(s) failed\n", g_failures);
    return 1;
}
