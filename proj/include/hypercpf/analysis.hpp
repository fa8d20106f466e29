#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hypercpf/cavity.hpp"
#include "hypercpf/circuit.hpp"
#include "hypercpf/linalg.hpp"

namespace hypercpf {

// Two-photon single-block benchmark states over the 8-dimensional space
// (freq_a + 2*freq_b + 4*spin): both photons, parameterized by angles
// (cos a |w1> + sin a |w2>) etc., scatter off one block sharing one spin.
struct BlockStates {
    CVec init;  // input product state, spin in (|+> + |->)/sqrt(2)
    CVec ideal; // lossless block action
    CVec real;  // lossy block action, norm <= 1
};

BlockStates block_states(double alpha, double beta, const ScatteringCoeffs& coeffs);

// |<real|ideal>| with psi_real renormalized (the standard reading); set
// normalized=false for the raw unnormalized overlap. Raises ZeroStateError
// when psi_real vanishes.
double block_fidelity(double alpha, double beta, const ScatteringCoeffs& coeffs,
                      bool normalized = true);

// Squared norm of psi_real at one angle pair.
double block_efficiency(double alpha, double beta, const ScatteringCoeffs& coeffs);

// Angle-averaged efficiency in closed form:
// (|r+t|^4 + 2 |r+t|^2 |r0+t0|^2 + 5 |r0+t0|^4) / 8.
double block_efficiency_closed_form(const ScatteringCoeffs& coeffs);

// How block metrics are averaged over the input angles (a, b) in [0, 2*pi)^2.
struct AveragingMethod {
    enum class Kind { closed_form, quadrature, monte_carlo };
    Kind kind = Kind::quadrature;
    int nodes = 128;           // per axis, quadrature
    long samples = 100000;     // monte carlo
    std::uint64_t seed = 0;    // monte carlo

    static AveragingMethod closed_form();
    static AveragingMethod quadrature(int nodes = 128);
    static AveragingMethod monte_carlo(long samples, std::uint64_t seed);
};

struct BlockMetrics {
    double avg_fidelity = 0.0;
    double avg_efficiency = 0.0;
    AveragingMethod method;
    // Quadrature doubling check: set when doubling the node count moves
    // either average by more than 1e-7.
    std::optional<std::string> convergence_warning;
};

// Average fidelity and efficiency over the angle torus. closed_form fills
// the efficiency from the formula above; the fidelity average has no closed
// form and is always evaluated by quadrature (default node count).
BlockMetrics average_block_metrics(const ScatteringCoeffs& coeffs,
                                   const AveragingMethod& method = AveragingMethod::quadrature());

// --- Parameter sweeps -------------------------------------------------------

struct SweepGrid {
    std::vector<double> ks_over_k;     // side-leakage ratios, ascending, >= 0
    std::vector<double> cooperativity; // ascending, > 0

    void validate() const; // throws ValidationError

    // 26 leakage points covering 0..0.5 and 61 cooperativity points covering
    // 0.5..30 including the headline operating point (0.1, 8.654).
    static SweepGrid default_grid();
};

struct SweepRow {
    double ks_over_k;
    double cooperativity;
    double avg_fidelity;
    double avg_efficiency;
};

// Evaluate average block metrics on the cartesian grid at resonance. Rows
// are computed concurrently and returned in lexicographic
// (ks_over_k, cooperativity) order regardless of thread scheduling.
std::vector<SweepRow> sweep(const SweepGrid& grid,
                            const AveragingMethod& method = AveragingMethod::quadrature());

// CSV serialization: header ks_over_k,cooperativity,avg_fidelity,avg_efficiency,
// 9 significant digits, LF line endings.
std::string sweep_csv(const std::vector<SweepRow>& rows);

// --- Whole-protocol metrics -------------------------------------------------

struct ProtocolMetrics {
    double fidelity = 0.0;   // |<lossy final (renormalized) | ideal final>|
    double efficiency = 0.0; // squared norm just before the spin measurements
};

// Run the controlled-phase-flip protocol once with the given physics and
// once ideally (same forced outcome +,+,+) and compare the photonic parts.
ProtocolMetrics protocol_metrics(const PhotonInputSpec& spec_a, const PhotonInputSpec& spec_b,
                                 const PhysicsConfig& physics);

} // namespace hypercpf
