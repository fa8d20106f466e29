#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hypercpf/cavity.hpp"
#include "hypercpf/elements.hpp"
#include "hypercpf/state.hpp"

namespace hypercpf {

enum class ProtocolMode { cpf, parity };

// Ideal physics replaces every block with its lossless limit; lossy physics
// carries one scattering quadruple per NV unit.
struct PhysicsConfig {
    bool ideal = true;
    std::array<ScatteringCoeffs, 3> nv_coeffs{ScatteringCoeffs::ideal(), ScatteringCoeffs::ideal(),
                                              ScatteringCoeffs::ideal()};

    static PhysicsConfig make_ideal();
    static PhysicsConfig lossy(const ScatteringCoeffs& shared);
    static PhysicsConfig lossy_per_nv(const ScatteringCoeffs& nv1, const ScatteringCoeffs& nv2,
                                      const ScatteringCoeffs& nv3);

    const ScatteringCoeffs& coeffs(int nv) const { return nv_coeffs[static_cast<size_t>(nv - 1)]; }
};

struct ProtocolConfig {
    ProtocolMode mode = ProtocolMode::cpf;
    PhysicsConfig physics;
    // When set, measurements project onto these outcomes (s1, s2, s3);
    // otherwise outcomes are sampled from the seeded RNG.
    std::optional<SpinTriplet> forced_outcomes;
    std::uint64_t seed = 0;
    bool record_intermediates = false;
};

// Snapshot of the state after a named pipeline stage. Stage labels, in
// order, for the controlled-phase-flip protocol:
//   a:block1, a:he1, a:block2, a:he2, a:block3_upper, a:block3_lower, a:he3,
//   b:block1, b:block2, b:block3_upper, b:block3_lower, he1, he2, he3,
//   measure, feed_forward
// and for the parity protocol (photon b sandwiched by spin Hadamards):
//   a:block1 ... a:he3,
//   b:he1_pre, b:block1, b:he1_post, b:he2_pre, b:block2, b:he2_post,
//   b:he3_pre, b:block3_upper, b:block3_lower, b:he3_post,
//   measure, parity_feed_forward
struct StageRecord {
    std::string label;
    StateVector state;
};

enum class DofParity { even, odd };

// Parity verdict per degree of freedom, decoded from the spin outcomes:
// + reads even, - reads odd (s1 -> frequency, s2 -> spatial, s3 -> time bin).
struct ParityTriple {
    DofParity freq = DofParity::even;
    DofParity spatial = DofParity::even;
    DofParity timebin = DofParity::even;

    bool operator==(const ParityTriple&) const = default;
    std::string to_string() const; // e.g. "even,odd,even"
};

struct ProtocolResult {
    SpinTriplet outcome;
    std::array<MeasurementRecord, 3> measurements{};
    // Squared norm immediately before the spin measurements (1 in ideal mode).
    double success_probability = 0.0;
    // Joint probability of the measured triple, normalized by the
    // pre-measurement squared norm; the eight values sum to 1.
    double outcome_probability = 0.0;
    // State after measurement and feed-forward, renormalized.
    StateVector final_state;
    std::optional<ParityTriple> parity; // parity mode only
    // Present when success_probability < 1: records that the measurement
    // projection renormalized a lossy state.
    std::optional<std::string> renormalization_note;
    std::vector<StageRecord> intermediates; // when record_intermediates
};

// Run the hyper-parallel controlled-phase-flip protocol: both photons
// traverse the three blocks, spins are rotated and measured, and the
// outcome-dependent feed-forward restores the canonical gate action.
ProtocolResult run_hyper_cpf(const PhotonInputSpec& spec_a, const PhotonInputSpec& spec_b,
                             const ProtocolConfig& config);

// Run the hyper-parity protocol: photon b's block passages are sandwiched
// by spin Hadamards, the spin outcomes classify the two-photon parity per
// degree of freedom, and bit-flip feed-forward maps odd branches onto the
// canonical even-support form.
ProtocolResult run_hyper_parity(const PhotonInputSpec& spec_a, const PhotonInputSpec& spec_b,
                                const ProtocolConfig& config);

// --- Feed-forward ----------------------------------------------------------

enum class FeedForwardOp { identity, neg_identity, sigma_z, neg_sigma_z };

ComplexMatrix feed_forward_matrix(FeedForwardOp op);

struct FeedForwardPair {
    FeedForwardOp on_a;
    FeedForwardOp on_b;
};

// Phase corrections on the degree of freedom associated with one NV's
// measurement outcome (nv 1 -> frequency, 2 -> spatial, 3 -> time bin).
FeedForwardPair feed_forward_rule(int nv, Spin outcome);

// Apply the full correction table for a measured outcome triple.
StateVector apply_feed_forward(const StateVector& state, const SpinTriplet& outcome);

ParityTriple classify_parity_outcome(const SpinTriplet& outcome);

// Bit-flip photon b's label in every odd degree of freedom, mapping all
// eight collapse branches onto even-support form. Returns the corrected
// state; the parity verdict itself comes from classify_parity_outcome.
StateVector parity_feed_forward(const StateVector& state, const SpinTriplet& outcome);

// --- References and extraction ----------------------------------------------

// Diagonal of the reference gate: an independent controlled-phase-flip on
// each degree of freedom, i.e. entry (-1)^(fa*fb + sa*sb + ta*tb) at packed
// index (fa + 2*sa + 4*ta) + 8*(fb + 2*sb + 4*tb).
CVec cpf_reference_diagonal();

// Collapse a post-measurement state to its 64 photon-pair amplitudes over
// (freq, spatial, timebin) per photon, packed as in cpf_reference_diagonal().
// Requires the state to occupy a single spin configuration and R
// polarization on both photons within tol (residual otherwise raises
// CompositionMismatchError).
CVec extract_photon_dof_amplitudes(const StateVector& state, double tol = 1e-10);

// The same packing applied to input specs: the product amplitude vector the
// reference gate acts on.
CVec photon_dof_product(const PhotonInputSpec& spec_a, const PhotonInputSpec& spec_b);

} // namespace hypercpf
