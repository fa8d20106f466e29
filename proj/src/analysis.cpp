#include "hypercpf/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <thread>

namespace hypercpf {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Branch factor of one photon component (label, spin) in the frequency
// block: only (w1, +) addresses the transition.
cdouble branch_factor(const ScatteringCoeffs& c, int label, int spin) {
    return (label == 0 && spin == 0) ? (c.t + c.r) : (c.t0 + c.r0);
}

// Averages of a block metric over the angle torus by tensor Gauss-Legendre.
template <typename F>
double quadrature_average(int nodes, F&& f) {
    std::vector<double> x, w;
    gauss_legendre(nodes, 0.0, kTwoPi, x, w);
    double acc = 0.0;
    for (int i = 0; i < nodes; ++i) {
        double row = 0.0;
        for (int j = 0; j < nodes; ++j)
            row += w[static_cast<size_t>(j)] * f(x[static_cast<size_t>(i)], x[static_cast<size_t>(j)]);
        acc += w[static_cast<size_t>(i)] * row;
    }
    return acc / (kTwoPi * kTwoPi);
}

std::pair<double, double> averages_by_quadrature(const ScatteringCoeffs& coeffs, int nodes) {
    const double fid = quadrature_average(
        nodes, [&](double a, double b) { return block_fidelity(a, b, coeffs); });
    const double eff = quadrature_average(
        nodes, [&](double a, double b) { return block_efficiency(a, b, coeffs); });
    return {fid, eff};
}

} // namespace

BlockStates block_states(double alpha, double beta, const ScatteringCoeffs& coeffs) {
    const double trig_a[2] = {std::cos(alpha), std::sin(alpha)};
    const double trig_b[2] = {std::cos(beta), std::sin(beta)};
    const double inv = 1.0 / std::sqrt(2.0);
    const ScatteringCoeffs unit = ScatteringCoeffs::ideal();
    BlockStates out{CVec(8), CVec(8), CVec(8)};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int s = 0; s < 2; ++s) {
                const size_t idx = static_cast<size_t>(i + 2 * j + 4 * s);
                const double base = trig_a[i] * trig_b[j] * inv;
                out.init[idx] = base;
                out.ideal[idx] = base * branch_factor(unit, i, s) * branch_factor(unit, j, s);
                out.real[idx] = base * branch_factor(coeffs, i, s) * branch_factor(coeffs, j, s);
            }
    return out;
}

double block_fidelity(double alpha, double beta, const ScatteringCoeffs& coeffs, bool normalized) {
    const BlockStates st = block_states(alpha, beta, coeffs);
    const cdouble ov = inner_product(st.real, st.ideal);
    if (!normalized) return std::abs(ov);
    const double n2 = squared_norm(st.real);
    if (n2 <= 0.0)
        throw ZeroStateError("lossy block output vanished; fidelity undefined at these angles");
    return std::abs(ov) / std::sqrt(n2);
}

double block_efficiency(double alpha, double beta, const ScatteringCoeffs& coeffs) {
    return squared_norm(block_states(alpha, beta, coeffs).real);
}

double block_efficiency_closed_form(const ScatteringCoeffs& coeffs) {
    const double hot2 = std::norm(coeffs.t + coeffs.r);
    const double cold2 = std::norm(coeffs.t0 + coeffs.r0);
    return (hot2 * hot2 + 2.0 * hot2 * cold2 + 5.0 * cold2 * cold2) / 8.0;
}

AveragingMethod AveragingMethod::closed_form() {
    AveragingMethod m;
    m.kind = Kind::closed_form;
    return m;
}

AveragingMethod AveragingMethod::quadrature(int nodes) {
    AveragingMethod m;
    m.kind = Kind::quadrature;
    m.nodes = nodes;
    return m;
}

AveragingMethod AveragingMethod::monte_carlo(long samples, std::uint64_t seed) {
    AveragingMethod m;
    m.kind = Kind::monte_carlo;
    m.samples = samples;
    m.seed = seed;
    return m;
}

BlockMetrics average_block_metrics(const ScatteringCoeffs& coeffs, const AveragingMethod& method) {
    BlockMetrics out;
    out.method = method;
    switch (method.kind) {
        case AveragingMethod::Kind::closed_form: {
            // The efficiency average has a closed form; the fidelity average
            // does not and is evaluated at the default quadrature order.
            out.avg_fidelity = quadrature_average(
                AveragingMethod().nodes,
                [&](double a, double b) { return block_fidelity(a, b, coeffs); });
            out.avg_efficiency = block_efficiency_closed_form(coeffs);
            break;
        }
        case AveragingMethod::Kind::quadrature: {
            if (method.nodes < 1) throw ValidationError("quadrature node count must be >= 1");
            const auto [fid, eff] = averages_by_quadrature(coeffs, method.nodes);
            out.avg_fidelity = fid;
            out.avg_efficiency = eff;
            const auto [fid2, eff2] = averages_by_quadrature(coeffs, 2 * method.nodes);
            const double shift = std::max(std::abs(fid2 - fid), std::abs(eff2 - eff));
            if (shift > 1e-7)
                out.convergence_warning =
                    "doubling the quadrature nodes moved an average by " + std::to_string(shift) +
                    "; increase the node count";
            break;
        }
        case AveragingMethod::Kind::monte_carlo: {
            if (method.samples < 1) throw ValidationError("sample count must be >= 1");
            std::mt19937_64 rng(method.seed);
            // Portable uniform in [0, 2*pi): top 53 bits of the generator.
            auto angle = [&] { return kTwoPi * (static_cast<double>(rng() >> 11) * 0x1.0p-53); };
            double fid = 0.0, eff = 0.0;
            for (long i = 0; i < method.samples; ++i) {
                const double a = angle();
                const double b = angle();
                fid += block_fidelity(a, b, coeffs);
                eff += block_efficiency(a, b, coeffs);
            }
            out.avg_fidelity = fid / static_cast<double>(method.samples);
            out.avg_efficiency = eff / static_cast<double>(method.samples);
            break;
        }
    }
    return out;
}

void SweepGrid::validate() const {
    if (ks_over_k.empty() || cooperativity.empty())
        throw ValidationError("sweep grid axes must be nonempty");
    for (double v : ks_over_k)
        if (!std::isfinite(v) || v < 0.0)
            throw ValidationError("sweep grid kappa_s/kappa values must be finite and >= 0");
    for (double v : cooperativity)
        if (!std::isfinite(v) || v <= 0.0)
            throw ValidationError("sweep grid cooperativity values must be finite and > 0");
    for (size_t i = 1; i < ks_over_k.size(); ++i)
        if (ks_over_k[i] <= ks_over_k[i - 1])
            throw ValidationError("sweep grid kappa_s/kappa values must be strictly increasing");
    for (size_t i = 1; i < cooperativity.size(); ++i)
        if (cooperativity[i] <= cooperativity[i - 1])
            throw ValidationError("sweep grid cooperativity values must be strictly increasing");
}

SweepGrid SweepGrid::default_grid() {
    SweepGrid grid;
    for (int i = 0; i < 26; ++i) grid.ks_over_k.push_back(0.02 * i); // 0 .. 0.5
    for (int i = 0; i < 60; ++i) grid.cooperativity.push_back(0.5 + 0.5 * i); // 0.5 .. 30
    // Splice in the headline operating point so the default output always
    // contains the (0.1, 8.654) row.
    const auto pos = std::lower_bound(grid.cooperativity.begin(), grid.cooperativity.end(), 8.654);
    grid.cooperativity.insert(pos, 8.654);
    grid.validate();
    return grid;
}

std::vector<SweepRow> sweep(const SweepGrid& grid, const AveragingMethod& method) {
    grid.validate();
    const size_t n_rows = grid.ks_over_k.size() * grid.cooperativity.size();
    std::vector<SweepRow> rows(n_rows);
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (size_t idx = next.fetch_add(1); idx < n_rows; idx = next.fetch_add(1)) {
            const double ks = grid.ks_over_k[idx / grid.cooperativity.size()];
            const double coop = grid.cooperativity[idx % grid.cooperativity.size()];
            const BlockMetrics m = average_block_metrics(coeffs_at_resonance(ks, coop), method);
            rows[idx] = {ks, coop, m.avg_fidelity, m.avg_efficiency};
        }
    };
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const size_t n_threads = std::min<size_t>(hw, n_rows);
    std::vector<std::thread> pool;
    for (size_t i = 1; i < n_threads; ++i) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
    std::string out = "ks_over_k,cooperativity,avg_fidelity,avg_efficiency\n";
    char line[160];
    for (const SweepRow& row : rows) {
        std::snprintf(line, sizeof(line), "%.9g,%.9g,%.9g,%.9g\n", row.ks_over_k,
                      row.cooperativity, row.avg_fidelity, row.avg_efficiency);
        out += line;
    }
    return out;
}

ProtocolMetrics protocol_metrics(const PhotonInputSpec& spec_a, const PhotonInputSpec& spec_b,
                                 const PhysicsConfig& physics) {
    // Compare against the ideal run collapsed onto the same (+,+,+) branch;
    // feed-forward makes the photonic part outcome-independent.
    ProtocolConfig lossy;
    lossy.mode = ProtocolMode::cpf;
    lossy.physics = physics;
    lossy.forced_outcomes = SpinTriplet{Spin::plus, Spin::plus, Spin::plus};
    ProtocolConfig ideal = lossy;
    ideal.physics = PhysicsConfig::make_ideal();

    const ProtocolResult real = run_hyper_cpf(spec_a, spec_b, lossy);
    const ProtocolResult ref = run_hyper_cpf(spec_a, spec_b, ideal);
    ProtocolMetrics out;
    out.efficiency = real.success_probability;
    out.fidelity = std::abs(overlap(real.final_state, ref.final_state));
    return out;
}

} // namespace hypercpf
