#pragma once

#include <array>
#include <complex>
#include <vector>

#include "hypercpf/basis.hpp"
#include "hypercpf/linalg.hpp"

namespace hypercpf {

// Physical parameters of one NV-microdisk unit. All rates and frequencies
// share one unit (the absolute frequency scale is arbitrary; only the
// detunings omega_c - omega and omega_x - omega enter the physics).
struct CavityParams {
    double g = 0.0;       // NV-cavity coupling rate
    double kappa = 1.0;   // cavity external (waveguide) decay rate
    double kappa_s = 0.0; // cavity side-leakage rate
    double gamma = 1.0;   // NV dipole decay rate
    double omega = 0.0;   // probe photon frequency
    double omega_c = 0.0; // cavity resonance frequency
    double omega_x = 0.0; // NV transition frequency

    double cooperativity() const { return g * g / (kappa * gamma); }

    // Throws ValidationError naming the violated invariant.
    void validate() const;
};

// Reflection/transmission of the coupled unit (r, t) and of the cold,
// uncoupled cavity (r0, t0).
struct ScatteringCoeffs {
    cdouble r, t, r0, t0;

    // Perfectly coupled, lossless limit: (r, t, r0, t0) = (1, 0, 0, -1).
    static ScatteringCoeffs ideal() { return {1.0, 0.0, 0.0, -1.0}; }

    // |r|^2 + |t|^2 <= 1 + tol for both coefficient pairs.
    bool passive(double tol = 1e-12) const;
};

// Steady-state input-output coefficients in the weak-excitation limit.
ScatteringCoeffs scattering_coeffs(const CavityParams& p);

// Resonant coefficients parameterized directly by side-leakage ratio
// kappa_s/kappa and cooperativity g^2/(kappa gamma); the two ratios fully
// determine (r, t, r0, t0) on resonance.
ScatteringCoeffs coeffs_at_resonance(double ks_over_k, double cooperativity);

// Measured NV zero-phonon-line / microdisk numbers, angular GHz:
// [g, kappa, gamma] = 2*pi*[0.30, 26, 0.0004], resonant, with side leakage
// kappa_s = ks_over_k * kappa.
CavityParams preset_realistic(double ks_over_k = 0.1);

// Input key of one scattering event: photon travel direction (down = the
// input arm), polarization, frequency and the spin of the NV it hits.
struct TransitionKey {
    Port direction = Port::down;
    Pol pol = Pol::R;
    Freq freq = Freq::w1;
    Spin spin = Spin::plus;

    int index() const {
        return static_cast<int>(direction) | (static_cast<int>(pol) << 1) |
               (static_cast<int>(freq) << 2) | (static_cast<int>(spin) << 3);
    }
    static TransitionKey from_index(int index);

    bool operator==(const TransitionKey&) const = default;
};

// One output component: reflection flips both direction and polarization,
// transmission preserves both; frequency and spin never change.
struct TransitionTerm {
    Port direction;
    Pol pol;
    cdouble coeff;
};

// The 16-row spin-dependent scattering table. Coupled inputs (the four
// direction/polarization/frequency/spin combinations that address the
// spin-selective transition) carry (t, r); everything else scatters off
// the cold cavity with (t0, r0).
class TransitionTable {
  public:
    static constexpr int kNumKeys = 16;

    explicit TransitionTable(const ScatteringCoeffs& coeffs);

    // Table in the perfectly coupled lossless limit.
    static TransitionTable ideal() { return TransitionTable(ScatteringCoeffs::ideal()); }

    static bool is_coupled(const TransitionKey& key);

    // Output terms with exact zero coefficients dropped.
    std::vector<TransitionTerm> terms(const TransitionKey& key) const;

    const ScatteringCoeffs& coeffs() const { return coeffs_; }

  private:
    ScatteringCoeffs coeffs_;
};

TransitionTable transition_table(const ScatteringCoeffs& coeffs);

} // namespace hypercpf
