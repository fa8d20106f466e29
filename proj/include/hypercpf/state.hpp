#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "hypercpf/basis.hpp"
#include "hypercpf/linalg.hpp"

namespace hypercpf {

// Requested input state of one photon: amplitude pairs for the frequency,
// spatial and time-bin degrees of freedom. Polarization always starts R
// and each pair must satisfy |c1|^2 + |c2|^2 = 1 within kInputTol.
struct PhotonInputSpec {
    std::array<cdouble, 2> freq_amps{cdouble(1.0), cdouble(0.0)};
    std::array<cdouble, 2> spatial_amps{cdouble(1.0), cdouble(0.0)};
    std::array<cdouble, 2> time_amps{cdouble(1.0), cdouble(0.0)};

    static constexpr double kInputTol = 1e-10;

    // All six pairs set to the same (c1, c2).
    static PhotonInputSpec uniform(cdouble c1, cdouble c2);
    // Equal-weight superposition in every degree of freedom.
    static PhotonInputSpec balanced();
    // Basis labels chosen by index (0 or 1) per degree of freedom.
    static PhotonInputSpec basis(int freq, int spatial, int timebin);

    // Throws NormalizationError naming the offending pair.
    void validate() const;
};

// Two-photon x three-spin state vector over the packed basis
//   index = a_mode + a_dim * b_mode + a_dim * b_dim * spin_index
// with a_dim/b_dim = 16, or 32 while that photon carries a port label.
// States are value types: operations return new states and never mutate
// their inputs, so concurrent reads need no synchronization.
class StateVector {
  public:
    // Zero state without port labels.
    StateVector() : StateVector(false, false) {}
    StateVector(bool port_a, bool port_b);
    StateVector(CVec amplitudes, bool port_a, bool port_b);

    bool has_port(Photon p) const { return p == Photon::a ? port_a_ : port_b_; }
    int photon_dim(Photon p) const { return has_port(p) ? kModeDimWithPort : kModeDim; }
    int dim() const { return static_cast<int>(amps_.size()); }

    int pack(int a_mode, int b_mode, int spin_index) const;
    // (a_mode, b_mode, spin_index) of a packed index.
    std::array<int, 3> unpack(int index) const;

    const CVec& amplitudes() const { return amps_; }
    const cdouble& amp(int index) const { return amps_[static_cast<size_t>(index)]; }
    cdouble amp(const PhotonMode& a, const PhotonMode& b, const SpinTriplet& spins) const;

    // Squared norm maintained by every operation; equals squared_norm()
    // to 1e-12 at all times.
    double tracked_norm() const { return tracked_norm_; }
    // Squared norm recomputed from the amplitudes.
    double squared_norm() const;

  private:
    bool port_a_, port_b_;
    CVec amps_;
    double tracked_norm_;
};

// Product state |photon a> |photon b> |+++> from validated input specs;
// both photons R polarized, each spin in (|+> + |->)/sqrt(2).
StateVector make_initial_state(const PhotonInputSpec& spec_a, const PhotonInputSpec& spec_b);

// Lift a map on one photon's full mode space (16x16, or 32x32 with port)
// through identity on everything else.
StateVector apply_single_photon_map(const StateVector& state, Photon photon,
                                    const ComplexMatrix& map);

// Lift a joint map on (photon mode space x one spin); the local index is
// mode + photon_dim * spin, and nv selects the spin (1..3).
StateVector apply_photon_spin_map(const StateVector& state, Photon photon, int nv,
                                  const ComplexMatrix& map);

// Lift a 2x2 map on a single spin (nv in 1..3).
StateVector apply_spin_map(const StateVector& state, int nv, const ComplexMatrix& map);

// Add a port label to `photon`, injecting all amplitude into the given arm.
StateVector with_port(const StateVector& state, Photon photon, Port arm);

// Remove the port label; all amplitude must sit in `arm` within tol or a
// CompositionMismatchError is raised.
StateVector without_port(const StateVector& state, Photon photon, Port arm, double tol = 1e-12);

// Where a measurement outcome comes from: fixed in advance (deterministic
// replay for tests and feed-forward studies) or sampled from a seeded RNG.
class OutcomeSource {
  public:
    static OutcomeSource forced(Spin outcome);
    static OutcomeSource forced_triplet(const SpinTriplet& outcomes); // consumed s1, s2, s3
    static OutcomeSource sampled(uint64_t seed);

    // Draw an outcome given the two squared projected norms.
    Spin pick(double p_plus, double p_minus);

  private:
    OutcomeSource() = default;
    bool forced_ = false;
    std::vector<Spin> queue_; // consumed front to back when forced
    size_t next_ = 0;
    std::mt19937_64 rng_;
};

struct MeasurementRecord {
    int nv = 0;
    Spin outcome = Spin::plus;
    // Squared norm of the projected (pre-renormalization) branch.
    double probability = 0.0;
};

// Projective measurement of one spin in the |+>/|-> basis. Returns the
// outcome record and the renormalized projected state. Raises
// ZeroStateError when the selected branch has zero norm.
std::pair<MeasurementRecord, StateVector> measure_spin(const StateVector& state, int nv,
                                                       OutcomeSource& source);

// <x|y>, conjugate-linear in the first argument. Dimensions must agree.
cdouble overlap(const StateVector& x, const StateVector& y);

} // namespace hypercpf
