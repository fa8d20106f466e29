#include "hypercpf/cavity.hpp"

#include <cmath>
#include <numbers>

namespace hypercpf {

void CavityParams::validate() const {
    if (!(g >= 0.0)) throw ValidationError("coupling rate g must be >= 0");
    if (!(kappa > 0.0)) throw ValidationError("cavity decay rate kappa must be > 0");
    if (!(kappa_s >= 0.0)) throw ValidationError("side-leakage rate kappa_s must be >= 0");
    if (!(gamma > 0.0)) throw ValidationError("dipole decay rate gamma must be > 0");
    for (double w : {omega, omega_c, omega_x})
        if (!std::isfinite(w)) throw ValidationError("frequencies must be finite");
}

bool ScatteringCoeffs::passive(double tol) const {
    return std::norm(r) + std::norm(t) <= 1.0 + tol && std::norm(r0) + std::norm(t0) <= 1.0 + tol;
}

ScatteringCoeffs scattering_coeffs(const CavityParams& p) {
    p.validate();
    const cdouble i(0.0, 1.0);
    const cdouble dipole = i * (p.omega_x - p.omega) + p.gamma / 2.0;
    const cdouble cav_cold = i * (p.omega_c - p.omega) + p.kappa_s / 2.0;
    const cdouble cav_full = i * (p.omega_c - p.omega) + p.kappa + p.kappa_s / 2.0;
    const double g2 = p.g * p.g;

    ScatteringCoeffs c;
    c.r = (dipole * cav_cold + g2) / (dipole * cav_full + g2);
    c.t = -p.kappa * dipole / (dipole * cav_full + g2);
    c.r0 = cav_cold / cav_full;
    c.t0 = -p.kappa / cav_full;
    return c;
}

ScatteringCoeffs coeffs_at_resonance(double ks_over_k, double cooperativity) {
    if (!(ks_over_k >= 0.0)) throw ValidationError("kappa_s/kappa must be >= 0");
    if (!(cooperativity >= 0.0)) throw ValidationError("cooperativity must be >= 0");
    CavityParams p;
    p.kappa = 1.0;
    p.gamma = 1.0;
    p.kappa_s = ks_over_k;
    p.g = std::sqrt(cooperativity);
    return scattering_coeffs(p);
}

CavityParams preset_realistic(double ks_over_k) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    CavityParams p;
    p.g = two_pi * 0.30;      // GHz: NV zero-phonon line to microdisk
    p.kappa = two_pi * 26.0;  // GHz
    p.gamma = two_pi * 4e-4;  // GHz: zero-phonon-line dipole decay
    p.kappa_s = ks_over_k * p.kappa;
    p.omega = p.omega_c = p.omega_x = 0.0; // resonant drive
    p.validate();
    return p;
}

TransitionKey TransitionKey::from_index(int index) {
    if (index < 0 || index >= TransitionTable::kNumKeys)
        throw DimensionError("transition key index out of range");
    return {static_cast<Port>(index & 1), static_cast<Pol>((index >> 1) & 1),
            static_cast<Freq>((index >> 2) & 1), static_cast<Spin>((index >> 3) & 1)};
}

TransitionTable::TransitionTable(const ScatteringCoeffs& coeffs) : coeffs_(coeffs) {}

bool TransitionTable::is_coupled(const TransitionKey& key) {
    // The four spin-selective combinations: a down-moving R or up-moving L
    // photon at w1 sees the transition when the spin is +, and an up-moving
    // R or down-moving L photon at w2 sees it when the spin is -.
    if (key.freq == Freq::w1 && key.spin == Spin::plus)
        return (key.direction == Port::down && key.pol == Pol::R) ||
               (key.direction == Port::up && key.pol == Pol::L);
    if (key.freq == Freq::w2 && key.spin == Spin::minus)
        return (key.direction == Port::up && key.pol == Pol::R) ||
               (key.direction == Port::down && key.pol == Pol::L);
    return false;
}

std::vector<TransitionTerm> TransitionTable::terms(const TransitionKey& key) const {
    const bool coupled = is_coupled(key);
    const cdouble t = coupled ? coeffs_.t : coeffs_.t0;
    const cdouble r = coupled ? coeffs_.r : coeffs_.r0;
    std::vector<TransitionTerm> out;
    // Transmission keeps direction and polarization; reflection flips both.
    if (t != cdouble(0.0)) out.push_back({key.direction, key.pol, t});
    if (r != cdouble(0.0)) out.push_back({flip(key.direction), flip(key.pol), r});
    return out;
}

TransitionTable transition_table(const ScatteringCoeffs& coeffs) {
    return TransitionTable(coeffs);
}

} // namespace hypercpf
