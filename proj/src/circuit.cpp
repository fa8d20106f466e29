#include "hypercpf/circuit.hpp"

#include <cmath>

namespace hypercpf {

namespace {

// Diagonal of the composed block over (pol + 2*freq + 4*spin). The
// composition is verified to be diagonal here so the protocol stages can be
// built as pure branch factors; anything else means broken conventions.
CVec block_diag8(const ScatteringCoeffs& coeffs) {
    const ComplexMatrix m = block_compose_from_elements(coeffs);
    CVec diag(8);
    double offdiag = 0.0;
    for (int i = 0; i < 8; ++i) {
        diag[static_cast<size_t>(i)] = m(i, i);
        for (int j = 0; j < 8; ++j)
            if (i != j) offdiag = std::max(offdiag, std::abs(m(i, j)));
    }
    if (offdiag > 1e-12)
        throw CompositionMismatchError(
            "composed block is not diagonal in (pol, freq, spin); off-diagonal magnitude " +
            std::to_string(offdiag));
    return diag;
}

int d8_index(int pol, int freq, int spin) { return pol + 2 * freq + 4 * spin; }

// Joint (photon mode x one spin) diagonal for the frequency block: every
// component interacts at its own frequency.
ComplexMatrix stage_block1(const CVec& d8) {
    CVec diag(2 * kModeDim);
    for (int mode = 0; mode < kModeDim; ++mode)
        for (int s = 0; s < 2; ++s)
            diag[static_cast<size_t>(mode + kModeDim * s)] =
                d8[static_cast<size_t>(d8_index(mode & 1, (mode >> 1) & 1, s))];
    return ComplexMatrix::diagonal(diag);
}

// Spatial block: arm 1 is frequency-shifted onto the interacting line and
// scatters, arm 2 detours around the cavity untouched.
ComplexMatrix stage_block2(const CVec& d8) {
    CVec diag(2 * kModeDim);
    for (int mode = 0; mode < kModeDim; ++mode)
        for (int s = 0; s < 2; ++s) {
            const bool interacts = ((mode >> 2) & 1) == 0;
            diag[static_cast<size_t>(mode + kModeDim * s)] =
                interacts ? d8[static_cast<size_t>(d8_index(mode & 1, 0, s))] : cdouble(1.0);
        }
    return ComplexMatrix::diagonal(diag);
}

// Time-bin block along one spatial arm: the Pockels cells flip the long
// bin's polarization so the splitter detours it, while the short bin passes
// through the cavity at the interacting frequency.
ComplexMatrix stage_block3(const CVec& d8, int arm) {
    CVec diag(2 * kModeDim);
    for (int mode = 0; mode < kModeDim; ++mode)
        for (int s = 0; s < 2; ++s) {
            cdouble f = 1.0;
            if (((mode >> 2) & 1) == arm) {
                const int pol = mode & 1;
                const int tb = (mode >> 3) & 1;
                const int pol_inner = (tb == 0) ? (pol ^ 1) : pol; // long bin flipped
                if (pol_inner == 0) f = d8[static_cast<size_t>(d8_index(0, 0, s))];
            }
            diag[static_cast<size_t>(mode + kModeDim * s)] = f;
        }
    return ComplexMatrix::diagonal(diag);
}

// Lift a 2x2 map on one mode field (bit 1 = freq, 2 = spatial, 3 = timebin)
// to the full photon mode space.
ComplexMatrix lift_photon_dof(const ComplexMatrix& m2, int bit) {
    ComplexMatrix out(kModeDim, kModeDim);
    for (int mode = 0; mode < kModeDim; ++mode) {
        const int in_label = (mode >> bit) & 1;
        for (int out_label = 0; out_label < 2; ++out_label) {
            const cdouble v = m2(out_label, in_label);
            if (v == cdouble(0.0)) continue;
            const int out_mode = (mode & ~(1 << bit)) | (out_label << bit);
            out(out_mode, mode) += v;
        }
    }
    return out;
}

int dof_bit(int nv) { return nv; } // nv 1,2,3 -> freq, spatial, timebin bits

struct PipelineOutput {
    StateVector state;
    std::vector<StageRecord> records;
};

// Send both photons through the three blocks. In parity mode photon b's
// passage through block i is sandwiched by Hadamards on spin i; in the
// phase-flip mode the three spins are rotated once after photon b is done.
PipelineOutput run_pipeline(const PhotonInputSpec& spec_a, const PhotonInputSpec& spec_b,
                            ProtocolMode mode, const PhysicsConfig& physics, bool record) {
    std::array<CVec, 3> d8;
    for (int nv = 1; nv <= 3; ++nv)
        d8[static_cast<size_t>(nv - 1)] = block_diag8(physics.coeffs(nv));
    const ComplexMatrix he = spin_hadamard();

    PipelineOutput out{make_initial_state(spec_a, spec_b), {}};
    auto step = [&](const std::string& label, StateVector next) {
        out.state = std::move(next);
        if (record) out.records.push_back({label, out.state});
    };

    // Photon a: block, then rotate the spin it just talked to.
    step("a:block1", apply_photon_spin_map(out.state, Photon::a, 1, stage_block1(d8[0])));
    step("a:he1", apply_spin_map(out.state, 1, he));
    step("a:block2", apply_photon_spin_map(out.state, Photon::a, 2, stage_block2(d8[1])));
    step("a:he2", apply_spin_map(out.state, 2, he));
    step("a:block3_upper", apply_photon_spin_map(out.state, Photon::a, 3, stage_block3(d8[2], 0)));
    step("a:block3_lower", apply_photon_spin_map(out.state, Photon::a, 3, stage_block3(d8[2], 1)));
    step("a:he3", apply_spin_map(out.state, 3, he));

    if (mode == ProtocolMode::cpf) {
        step("b:block1", apply_photon_spin_map(out.state, Photon::b, 1, stage_block1(d8[0])));
        step("b:block2", apply_photon_spin_map(out.state, Photon::b, 2, stage_block2(d8[1])));
        step("b:block3_upper",
             apply_photon_spin_map(out.state, Photon::b, 3, stage_block3(d8[2], 0)));
        step("b:block3_lower",
             apply_photon_spin_map(out.state, Photon::b, 3, stage_block3(d8[2], 1)));
        step("he1", apply_spin_map(out.state, 1, he));
        step("he2", apply_spin_map(out.state, 2, he));
        step("he3", apply_spin_map(out.state, 3, he));
    } else {
        step("b:he1_pre", apply_spin_map(out.state, 1, he));
        step("b:block1", apply_photon_spin_map(out.state, Photon::b, 1, stage_block1(d8[0])));
        step("b:he1_post", apply_spin_map(out.state, 1, he));
        step("b:he2_pre", apply_spin_map(out.state, 2, he));
        step("b:block2", apply_photon_spin_map(out.state, Photon::b, 2, stage_block2(d8[1])));
        step("b:he2_post", apply_spin_map(out.state, 2, he));
        step("b:he3_pre", apply_spin_map(out.state, 3, he));
        step("b:block3_upper",
             apply_photon_spin_map(out.state, Photon::b, 3, stage_block3(d8[2], 0)));
        step("b:block3_lower",
             apply_photon_spin_map(out.state, Photon::b, 3, stage_block3(d8[2], 1)));
        step("b:he3_post", apply_spin_map(out.state, 3, he));
    }
    return out;
}

ProtocolResult run_protocol(const PhotonInputSpec& spec_a, const PhotonInputSpec& spec_b,
                            const ProtocolConfig& config) {
    PipelineOutput pipe = run_pipeline(spec_a, spec_b, config.mode, config.physics,
                                       config.record_intermediates);

    ProtocolResult result;
    result.intermediates = std::move(pipe.records);
    result.success_probability = pipe.state.squared_norm();

    OutcomeSource source = config.forced_outcomes
                               ? OutcomeSource::forced_triplet(*config.forced_outcomes)
                               : OutcomeSource::sampled(config.seed);
    StateVector state = pipe.state;
    double joint_raw = 1.0;
    for (int nv = 1; nv <= 3; ++nv) {
        auto [record, projected] = measure_spin(state, nv, source);
        result.measurements[static_cast<size_t>(nv - 1)] = record;
        joint_raw *= record.probability;
        state = std::move(projected);
    }
    result.outcome = {result.measurements[0].outcome, result.measurements[1].outcome,
                      result.measurements[2].outcome};
    // The first record's probability is a fraction of the (possibly lossy)
    // pre-measurement norm; later ones are conditional on renormalized states.
    result.outcome_probability = joint_raw / result.success_probability;
    if (config.record_intermediates) result.intermediates.push_back({"measure", state});

    if (config.mode == ProtocolMode::cpf) {
        state = apply_feed_forward(state, result.outcome);
        if (config.record_intermediates) result.intermediates.push_back({"feed_forward", state});
    } else {
        result.parity = classify_parity_outcome(result.outcome);
        state = parity_feed_forward(state, result.outcome);
        if (config.record_intermediates)
            result.intermediates.push_back({"parity_feed_forward", state});
    }
    if (result.success_probability < 1.0 - 1e-12)
        result.renormalization_note =
            "measurement renormalized a lossy state; squared norm before measurement was " +
            std::to_string(result.success_probability);
    result.final_state = std::move(state);
    return result;
}

} // namespace

PhysicsConfig PhysicsConfig::make_ideal() { return PhysicsConfig{}; }

PhysicsConfig PhysicsConfig::lossy(const ScatteringCoeffs& shared) {
    return PhysicsConfig{false, {shared, shared, shared}};
}

PhysicsConfig PhysicsConfig::lossy_per_nv(const ScatteringCoeffs& nv1, const ScatteringCoeffs& nv2,
                                          const ScatteringCoeffs& nv3) {
    return PhysicsConfig{false, {nv1, nv2, nv3}};
}

std::string ParityTriple::to_string() const {
    auto name = [](DofParity p) { return p == DofParity::even ? "even" : "odd"; };
    return std::string(name(freq)) + "," + name(spatial) + "," + name(timebin);
}

ProtocolResult run_hyper_cpf(const PhotonInputSpec& spec_a, const PhotonInputSpec& spec_b,
                             const ProtocolConfig& config) {
    if (config.mode != ProtocolMode::cpf)
        throw ValidationError("run_hyper_cpf requires mode = cpf");
    return run_protocol(spec_a, spec_b, config);
}

ProtocolResult run_hyper_parity(const PhotonInputSpec& spec_a, const PhotonInputSpec& spec_b,
                                const ProtocolConfig& config) {
    if (config.mode != ProtocolMode::parity)
        throw ValidationError("run_hyper_parity requires mode = parity");
    return run_protocol(spec_a, spec_b, config);
}

ComplexMatrix feed_forward_matrix(FeedForwardOp op) {
    ComplexMatrix m(2, 2);
    switch (op) {
        case FeedForwardOp::identity: m(0, 0) = 1.0, m(1, 1) = 1.0; break;
        case FeedForwardOp::neg_identity: m(0, 0) = -1.0, m(1, 1) = -1.0; break;
        case FeedForwardOp::sigma_z: m(0, 0) = 1.0, m(1, 1) = -1.0; break;
        case FeedForwardOp::neg_sigma_z: m(0, 0) = -1.0, m(1, 1) = 1.0; break;
    }
    return m;
}

FeedForwardPair feed_forward_rule(int nv, Spin outcome) {
    const bool plus = outcome == Spin::plus;
    switch (nv) {
        case 1:
            return plus ? FeedForwardPair{FeedForwardOp::neg_identity, FeedForwardOp::identity}
                        : FeedForwardPair{FeedForwardOp::sigma_z, FeedForwardOp::identity};
        case 2:
            return plus ? FeedForwardPair{FeedForwardOp::neg_sigma_z, FeedForwardOp::sigma_z}
                        : FeedForwardPair{FeedForwardOp::identity, FeedForwardOp::sigma_z};
        case 3:
            return plus ? FeedForwardPair{FeedForwardOp::identity, FeedForwardOp::identity}
                        : FeedForwardPair{FeedForwardOp::sigma_z, FeedForwardOp::identity};
        default: throw DimensionError("NV index must be 1, 2 or 3, got " + std::to_string(nv));
    }
}

StateVector apply_feed_forward(const StateVector& state, const SpinTriplet& outcome) {
    StateVector out = state;
    for (int nv = 1; nv <= 3; ++nv) {
        const FeedForwardPair pair = feed_forward_rule(nv, outcome.spin(nv));
        const int bit = dof_bit(nv);
        out = apply_single_photon_map(out, Photon::a,
                                      lift_photon_dof(feed_forward_matrix(pair.on_a), bit));
        out = apply_single_photon_map(out, Photon::b,
                                      lift_photon_dof(feed_forward_matrix(pair.on_b), bit));
    }
    return out;
}

ParityTriple classify_parity_outcome(const SpinTriplet& outcome) {
    auto read = [](Spin s) { return s == Spin::plus ? DofParity::even : DofParity::odd; };
    return {read(outcome.s1), read(outcome.s2), read(outcome.s3)};
}

StateVector parity_feed_forward(const StateVector& state, const SpinTriplet& outcome) {
    StateVector out = state;
    for (int nv = 1; nv <= 3; ++nv)
        if (outcome.spin(nv) == Spin::minus)
            out = apply_single_photon_map(out, Photon::b,
                                          lift_photon_dof(frequency_shift(), dof_bit(nv)));
    return out;
}

CVec cpf_reference_diagonal() {
    CVec diag(64);
    for (int i = 0; i < 64; ++i) {
        const int a = i & 7, b = i >> 3;
        const int flips = (a & b); // per-DOF products of second labels
        const int parity = ((flips & 1) >> 0) ^ ((flips & 2) >> 1) ^ ((flips & 4) >> 2);
        diag[static_cast<size_t>(i)] = parity ? -1.0 : 1.0;
    }
    return diag;
}

CVec extract_photon_dof_amplitudes(const StateVector& state, double tol) {
    if (state.has_port(Photon::a) || state.has_port(Photon::b))
        throw DimensionError("cannot extract photon amplitudes while a port label is present");
    // Locate the spin configuration carrying the state.
    std::array<double, kSpinDim> spin_norm{};
    for (int i = 0; i < state.dim(); ++i)
        spin_norm[static_cast<size_t>(i / (kModeDim * kModeDim))] += std::norm(state.amp(i));
    int dominant = 0;
    for (int s = 1; s < kSpinDim; ++s)
        if (spin_norm[static_cast<size_t>(s)] > spin_norm[static_cast<size_t>(dominant)])
            dominant = s;

    CVec out(64);
    double residual = 0.0;
    for (int i = 0; i < state.dim(); ++i) {
        const cdouble v = state.amp(i);
        if (v == cdouble(0.0)) continue;
        const auto [am, bm, s] = state.unpack(i);
        if (s != dominant || (am & 1) || (bm & 1)) {
            residual += std::norm(v);
            continue;
        }
        out[static_cast<size_t>((am >> 1) | ((bm >> 1) << 3))] = v;
    }
    if (residual > tol * tol)
        throw CompositionMismatchError(
            "state is not a single-spin, R-polarized photon pair; residual squared norm " +
            std::to_string(residual));
    return out;
}

CVec photon_dof_product(const PhotonInputSpec& spec_a, const PhotonInputSpec& spec_b) {
    spec_a.validate();
    spec_b.validate();
    CVec out(64);
    for (int i = 0; i < 64; ++i) {
        const int a = i & 7, b = i >> 3;
        out[static_cast<size_t>(i)] =
            spec_a.freq_amps[a & 1] * spec_a.spatial_amps[(a >> 1) & 1] *
            spec_a.time_amps[(a >> 2) & 1] * spec_b.freq_amps[b & 1] *
            spec_b.spatial_amps[(b >> 1) & 1] * spec_b.time_amps[(b >> 2) & 1];
    }
    return out;
}

} // namespace hypercpf
