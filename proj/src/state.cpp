#include "hypercpf/state.hpp"

#include <cmath>
#include <string>

namespace hypercpf {

namespace {

// A measurement branch below this squared norm is treated as empty; real
// branches are either exactly zero or far above roundoff scale.
constexpr double kZeroBranchTol = 1e-24;

void check_pair(const std::array<cdouble, 2>& pair, const char* name) {
    const double total = std::norm(pair[0]) + std::norm(pair[1]);
    if (std::abs(total - 1.0) > PhotonInputSpec::kInputTol)
        throw NormalizationError(std::string(name) + " amplitudes have squared norm " +
                                 std::to_string(total) + ", expected 1");
}

} // namespace

PhotonInputSpec PhotonInputSpec::uniform(cdouble c1, cdouble c2) {
    PhotonInputSpec spec;
    spec.freq_amps = {c1, c2};
    spec.spatial_amps = {c1, c2};
    spec.time_amps = {c1, c2};
    return spec;
}

PhotonInputSpec PhotonInputSpec::balanced() {
    const double inv = 1.0 / std::sqrt(2.0);
    return uniform(inv, inv);
}

PhotonInputSpec PhotonInputSpec::basis(int freq, int spatial, int timebin) {
    for (int v : {freq, spatial, timebin})
        if (v != 0 && v != 1) throw ValidationError("basis labels must be 0 or 1");
    PhotonInputSpec spec;
    spec.freq_amps = {cdouble(freq == 0), cdouble(freq == 1)};
    spec.spatial_amps = {cdouble(spatial == 0), cdouble(spatial == 1)};
    spec.time_amps = {cdouble(timebin == 0), cdouble(timebin == 1)};
    return spec;
}

void PhotonInputSpec::validate() const {
    check_pair(freq_amps, "frequency");
    check_pair(spatial_amps, "spatial");
    check_pair(time_amps, "time-bin");
}

StateVector::StateVector(bool port_a, bool port_b)
    : port_a_(port_a), port_b_(port_b),
      amps_(static_cast<size_t>((port_a ? kModeDimWithPort : kModeDim)) *
            (port_b ? kModeDimWithPort : kModeDim) * kSpinDim),
      tracked_norm_(0.0) {}

StateVector::StateVector(CVec amplitudes, bool port_a, bool port_b)
    : port_a_(port_a), port_b_(port_b), amps_(std::move(amplitudes)) {
    const size_t expected = static_cast<size_t>(photon_dim(Photon::a)) *
                            photon_dim(Photon::b) * kSpinDim;
    if (amps_.size() != expected)
        throw DimensionError("state has " + std::to_string(amps_.size()) +
                             " amplitudes, expected " + std::to_string(expected));
    tracked_norm_ = hypercpf::squared_norm(amps_);
}

int StateVector::pack(int a_mode, int b_mode, int spin_index) const {
    const int adim = photon_dim(Photon::a);
    const int bdim = photon_dim(Photon::b);
    if (a_mode < 0 || a_mode >= adim || b_mode < 0 || b_mode >= bdim || spin_index < 0 ||
        spin_index >= kSpinDim)
        throw DimensionError("packed coordinates out of range");
    return a_mode + adim * (b_mode + bdim * spin_index);
}

std::array<int, 3> StateVector::unpack(int index) const {
    if (index < 0 || index >= dim())
        throw DimensionError("state index " + std::to_string(index) + " out of range");
    const int adim = photon_dim(Photon::a);
    const int bdim = photon_dim(Photon::b);
    return {index % adim, (index / adim) % bdim, index / (adim * bdim)};
}

cdouble StateVector::amp(const PhotonMode& a, const PhotonMode& b, const SpinTriplet& spins) const {
    if (a.port.has_value() != port_a_ || b.port.has_value() != port_b_)
        throw DimensionError("photon mode port label does not match the state's port labels");
    return amps_[static_cast<size_t>(pack(a.index(), b.index(), spins.index()))];
}

double StateVector::squared_norm() const { return hypercpf::squared_norm(amps_); }

StateVector make_initial_state(const PhotonInputSpec& spec_a, const PhotonInputSpec& spec_b) {
    spec_a.validate();
    spec_b.validate();
    CVec amps(static_cast<size_t>(kModeDim) * kModeDim * kSpinDim);
    const double spin_amp = 1.0 / std::sqrt(8.0); // (|+>+|->)/sqrt(2) per spin
    for (int am = 0; am < kModeDim; ++am) {
        if (am & 1) continue; // photons enter R polarized
        const cdouble ca = spec_a.freq_amps[(am >> 1) & 1] * spec_a.spatial_amps[(am >> 2) & 1] *
                           spec_a.time_amps[(am >> 3) & 1];
        for (int bm = 0; bm < kModeDim; ++bm) {
            if (bm & 1) continue;
            const cdouble cb = spec_b.freq_amps[(bm >> 1) & 1] *
                               spec_b.spatial_amps[(bm >> 2) & 1] * spec_b.time_amps[(bm >> 3) & 1];
            for (int s = 0; s < kSpinDim; ++s)
                amps[static_cast<size_t>(am + kModeDim * (bm + kModeDim * s))] =
                    ca * cb * spin_amp;
        }
    }
    return StateVector(std::move(amps), false, false);
}

StateVector apply_single_photon_map(const StateVector& state, Photon photon,
                                    const ComplexMatrix& map) {
    const int dim = state.photon_dim(photon);
    if (map.rows() != dim || map.cols() != dim)
        throw DimensionError("photon map is " + std::to_string(map.rows()) + "x" +
                             std::to_string(map.cols()) + ", expected " + std::to_string(dim) +
                             "x" + std::to_string(dim));
    const int adim = state.photon_dim(Photon::a);
    const int bdim = state.photon_dim(Photon::b);
    const CVec& in = state.amplitudes();
    CVec out(in.size());
    const int other_dim = (photon == Photon::a) ? bdim : adim;
    for (int other = 0; other < other_dim; ++other)
        for (int s = 0; s < kSpinDim; ++s) {
            // Strided slice over this photon's modes.
            auto global = [&](int m) {
                const int am = (photon == Photon::a) ? m : other;
                const int bm = (photon == Photon::a) ? other : m;
                return static_cast<size_t>(am + adim * (bm + bdim * s));
            };
            for (int i = 0; i < dim; ++i) {
                cdouble acc = 0.0;
                for (int j = 0; j < dim; ++j) {
                    const cdouble m = map(i, j);
                    if (m != cdouble(0.0)) acc += m * in[global(j)];
                }
                out[global(i)] = acc;
            }
        }
    return StateVector(std::move(out), state.has_port(Photon::a), state.has_port(Photon::b));
}

StateVector apply_photon_spin_map(const StateVector& state, Photon photon, int nv,
                                  const ComplexMatrix& map) {
    if (nv < 1 || nv > 3)
        throw DimensionError("NV index must be 1, 2 or 3, got " + std::to_string(nv));
    const int dim = state.photon_dim(photon);
    const int joint = 2 * dim; // local index = mode + dim * spin
    if (map.rows() != joint || map.cols() != joint)
        throw DimensionError("photon-spin map is " + std::to_string(map.rows()) + "x" +
                             std::to_string(map.cols()) + ", expected " + std::to_string(joint) +
                             "x" + std::to_string(joint));
    const int adim = state.photon_dim(Photon::a);
    const int bdim = state.photon_dim(Photon::b);
    const int bit = nv - 1;
    const CVec& in = state.amplitudes();
    CVec out(in.size());
    const int other_dim = (photon == Photon::a) ? bdim : adim;
    for (int other = 0; other < other_dim; ++other)
        for (int rest = 0; rest < kSpinDim / 2; ++rest) {
            // Spin index with this NV's bit spliced in.
            auto spin_idx = [&](int sv) {
                const int low = rest & ((1 << bit) - 1);
                const int high = rest >> bit;
                return low | (sv << bit) | (high << (bit + 1));
            };
            auto global = [&](int m, int sv) {
                const int am = (photon == Photon::a) ? m : other;
                const int bm = (photon == Photon::a) ? other : m;
                return static_cast<size_t>(am + adim * (bm + bdim * spin_idx(sv)));
            };
            for (int i = 0; i < joint; ++i) {
                cdouble acc = 0.0;
                for (int j = 0; j < joint; ++j) {
                    const cdouble m = map(i, j);
                    if (m != cdouble(0.0)) acc += m * in[global(j % dim, j / dim)];
                }
                out[global(i % dim, i / dim)] = acc;
            }
        }
    return StateVector(std::move(out), state.has_port(Photon::a), state.has_port(Photon::b));
}

StateVector apply_spin_map(const StateVector& state, int nv, const ComplexMatrix& map) {
    if (nv < 1 || nv > 3)
        throw DimensionError("NV index must be 1, 2 or 3, got " + std::to_string(nv));
    if (map.rows() != 2 || map.cols() != 2) throw DimensionError("spin map must be 2x2");
    const int adim = state.photon_dim(Photon::a);
    const int bdim = state.photon_dim(Photon::b);
    const int bit = nv - 1;
    const CVec& in = state.amplitudes();
    CVec out(in.size());
    for (int am = 0; am < adim; ++am)
        for (int bm = 0; bm < bdim; ++bm)
            for (int rest = 0; rest < kSpinDim / 2; ++rest) {
                auto global = [&](int sv) {
                    const int low = rest & ((1 << bit) - 1);
                    const int high = rest >> bit;
                    const int s = low | (sv << bit) | (high << (bit + 1));
                    return static_cast<size_t>(am + adim * (bm + bdim * s));
                };
                const cdouble v0 = in[global(0)];
                const cdouble v1 = in[global(1)];
                out[global(0)] = map(0, 0) * v0 + map(0, 1) * v1;
                out[global(1)] = map(1, 0) * v0 + map(1, 1) * v1;
            }
    return StateVector(std::move(out), state.has_port(Photon::a), state.has_port(Photon::b));
}

StateVector with_port(const StateVector& state, Photon photon, Port arm) {
    if (state.has_port(photon)) throw DimensionError("photon already carries a port label");
    StateVector out(photon == Photon::a || state.has_port(Photon::a),
                    photon == Photon::b || state.has_port(Photon::b));
    CVec amps(static_cast<size_t>(out.photon_dim(Photon::a)) * out.photon_dim(Photon::b) *
              kSpinDim);
    const int adim = state.photon_dim(Photon::a);
    const int bdim = state.photon_dim(Photon::b);
    const int port_bit = static_cast<int>(arm) << 4;
    for (int am = 0; am < adim; ++am)
        for (int bm = 0; bm < bdim; ++bm)
            for (int s = 0; s < kSpinDim; ++s) {
                const int am2 = (photon == Photon::a) ? (am | port_bit) : am;
                const int bm2 = (photon == Photon::b) ? (bm | port_bit) : bm;
                amps[static_cast<size_t>(out.pack(am2, bm2, s))] =
                    state.amp(state.pack(am, bm, s));
            }
    return StateVector(std::move(amps), out.has_port(Photon::a), out.has_port(Photon::b));
}

StateVector without_port(const StateVector& state, Photon photon, Port arm, double tol) {
    if (!state.has_port(photon)) throw DimensionError("photon carries no port label");
    // All amplitude must sit in the expected arm.
    double leak = 0.0;
    for (int i = 0; i < state.dim(); ++i) {
        const auto coords = state.unpack(i);
        const int mode = (photon == Photon::a) ? coords[0] : coords[1];
        if (((mode >> 4) & 1) != static_cast<int>(arm)) leak += std::norm(state.amp(i));
    }
    if (leak > tol)
        throw CompositionMismatchError("amplitude " + std::to_string(leak) +
                                       " leaked outside the expected interferometer arm");
    StateVector out(photon == Photon::a ? false : state.has_port(Photon::a),
                    photon == Photon::b ? false : state.has_port(Photon::b));
    CVec amps(static_cast<size_t>(out.photon_dim(Photon::a)) * out.photon_dim(Photon::b) *
              kSpinDim);
    const int port_bit = static_cast<int>(arm) << 4;
    for (int am = 0; am < out.photon_dim(Photon::a); ++am)
        for (int bm = 0; bm < out.photon_dim(Photon::b); ++bm)
            for (int s = 0; s < kSpinDim; ++s) {
                const int am2 = (photon == Photon::a) ? (am | port_bit) : am;
                const int bm2 = (photon == Photon::b) ? (bm | port_bit) : bm;
                amps[static_cast<size_t>(out.pack(am, bm, s))] =
                    state.amp(state.pack(am2, bm2, s));
            }
    return StateVector(std::move(amps), out.has_port(Photon::a), out.has_port(Photon::b));
}

OutcomeSource OutcomeSource::forced(Spin outcome) {
    OutcomeSource src;
    src.forced_ = true;
    src.queue_ = {outcome};
    return src;
}

OutcomeSource OutcomeSource::forced_triplet(const SpinTriplet& outcomes) {
    OutcomeSource src;
    src.forced_ = true;
    src.queue_ = {outcomes.s1, outcomes.s2, outcomes.s3};
    return src;
}

OutcomeSource OutcomeSource::sampled(uint64_t seed) {
    OutcomeSource src;
    src.forced_ = false;
    src.rng_.seed(seed);
    return src;
}

Spin OutcomeSource::pick(double p_plus, double p_minus) {
    if (forced_) {
        if (next_ >= queue_.size())
            throw ValidationError("forced outcome source exhausted after " +
                                  std::to_string(queue_.size()) + " measurements");
        return queue_[next_++];
    }
    const double total = p_plus + p_minus;
    if (total <= 0.0) throw ZeroStateError("cannot sample a measurement outcome of a zero state");
    // Portable uniform double in [0, 1): top 53 bits of the generator.
    const double u = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
    return (u * total < p_plus) ? Spin::plus : Spin::minus;
}

std::pair<MeasurementRecord, StateVector> measure_spin(const StateVector& state, int nv,
                                                       OutcomeSource& source) {
    if (nv < 1 || nv > 3)
        throw DimensionError("NV index must be 1, 2 or 3, got " + std::to_string(nv));
    const int bit = nv - 1;
    const int modes = state.photon_dim(Photon::a) * state.photon_dim(Photon::b);
    double p[2] = {0.0, 0.0};
    for (int i = 0; i < state.dim(); ++i)
        p[((i / modes) >> bit) & 1] += std::norm(state.amp(i));
    if (p[0] + p[1] <= kZeroBranchTol)
        throw ZeroStateError("both measurement branches have zero norm");
    const Spin outcome = source.pick(p[0], p[1]);
    const double branch = p[static_cast<int>(outcome)];
    if (branch <= kZeroBranchTol)
        throw ZeroStateError("forced measurement branch has zero norm");
    const double inv = 1.0 / std::sqrt(branch);
    CVec amps(static_cast<size_t>(state.dim()));
    for (int i = 0; i < state.dim(); ++i)
        if ((((i / modes) >> bit) & 1) == static_cast<int>(outcome))
            amps[static_cast<size_t>(i)] = state.amp(i) * inv;
    MeasurementRecord record{nv, outcome, branch};
    return {record, StateVector(std::move(amps), state.has_port(Photon::a),
                                state.has_port(Photon::b))};
}

cdouble overlap(const StateVector& x, const StateVector& y) {
    if (x.dim() != y.dim() || x.has_port(Photon::a) != y.has_port(Photon::a) ||
        x.has_port(Photon::b) != y.has_port(Photon::b))
        throw DimensionError("overlap between states over different spaces");
    return inner_product(x.amplitudes(), y.amplitudes());
}

} // namespace hypercpf
