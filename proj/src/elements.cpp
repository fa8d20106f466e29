#include "hypercpf/elements.hpp"

#include <cmath>

namespace hypercpf {

namespace {

// Packing of the block's internal space: pol + 2*freq + 4*port + 8*spin.
constexpr int kBlockDim = 16;

int block_index(Pol pol, Freq freq, Port port, Spin spin) {
    return static_cast<int>(pol) | (static_cast<int>(freq) << 1) | (static_cast<int>(port) << 2) |
           (static_cast<int>(spin) << 3);
}

ComplexMatrix hwp_on_block() {
    // Polarization is the fastest bit of the internal space.
    return kron(ComplexMatrix::identity(kBlockDim / 2), hwp_hadamard());
}

ComplexMatrix pbs_on_block() {
    ComplexMatrix m(kBlockDim, kBlockDim);
    for (int i = 0; i < kBlockDim; ++i) {
        const bool is_l = (i & 1) != 0;
        m(is_l ? (i ^ 4) : i, i) = 1.0; // L switches arm (bit 2), R keeps it
    }
    return m;
}

} // namespace

ComplexMatrix hwp_hadamard() {
    const double inv = 1.0 / std::sqrt(2.0);
    ComplexMatrix m(2, 2);
    m(0, 0) = inv;
    m(0, 1) = inv;
    m(1, 0) = inv;
    m(1, 1) = -inv;
    return m;
}

ComplexMatrix spin_hadamard() { return hwp_hadamard(); }

ComplexMatrix frequency_shift() {
    ComplexMatrix m(2, 2);
    m(0, 1) = 1.0;
    m(1, 0) = 1.0;
    return m;
}

ComplexMatrix pockels_conditional_flip() {
    // (pol + 2*timebin): flip polarization in the long bin, pass the short.
    ComplexMatrix m(4, 4);
    m(1, 0) = 1.0;
    m(0, 1) = 1.0;
    m(2, 2) = 1.0;
    m(3, 3) = 1.0;
    return m;
}

ComplexMatrix pbs_route() {
    // (pol + 2*port): R transmits and keeps its arm, L reflects into the
    // other arm; neither path acquires a phase.
    ComplexMatrix m(4, 4);
    m(0, 0) = 1.0;
    m(2, 2) = 1.0;
    m(3, 1) = 1.0;
    m(1, 3) = 1.0;
    return m;
}

ComplexMatrix cavity_scatter(const TransitionTable& table) {
    ComplexMatrix m(kBlockDim, kBlockDim);
    for (int i = 0; i < kBlockDim; ++i) {
        const Pol pol = static_cast<Pol>(i & 1);
        const Freq freq = static_cast<Freq>((i >> 1) & 1);
        const Port port = static_cast<Port>((i >> 2) & 1);
        const Spin spin = static_cast<Spin>((i >> 3) & 1);
        for (const TransitionTerm& term : table.terms({port, pol, freq, spin}))
            m(block_index(term.pol, freq, term.direction, spin), i) += term.coeff;
    }
    return m;
}

CoupledPredicate frequency_block_predicate() {
    return [](int label, Spin spin) { return label == 0 && spin == Spin::plus; };
}

ComplexMatrix block_branch_factor(const ScatteringCoeffs& coeffs,
                                  const CoupledPredicate& coupled) {
    const cdouble hot = coeffs.t + coeffs.r;
    const cdouble cold = coeffs.t0 + coeffs.r0;
    CVec diag(4);
    for (int label = 0; label < 2; ++label)
        for (int s = 0; s < 2; ++s)
            diag[static_cast<size_t>(label + 2 * s)] =
                coupled(label, static_cast<Spin>(s)) ? hot : cold;
    return ComplexMatrix::diagonal(diag);
}

ComplexMatrix block_branch_factor_full(const ScatteringCoeffs& coeffs,
                                       const CoupledPredicate& coupled) {
    // R enters the cavity arm directly; the L branch reaches it after one
    // PBS reflection, which inverts the sign of the reflected amplitude.
    const cdouble hot[2] = {coeffs.t + coeffs.r, coeffs.t - coeffs.r};
    const cdouble cold[2] = {coeffs.t0 + coeffs.r0, coeffs.t0 - coeffs.r0};
    CVec diag(8);
    for (int pol = 0; pol < 2; ++pol)
        for (int label = 0; label < 2; ++label)
            for (int s = 0; s < 2; ++s)
                diag[static_cast<size_t>(pol + 2 * label + 4 * s)] =
                    coupled(label, static_cast<Spin>(s)) ? hot[pol] : cold[pol];
    return ComplexMatrix::diagonal(diag);
}

ComplexMatrix block_compose_full(const ScatteringCoeffs& coeffs) {
    const ComplexMatrix h = hwp_on_block();
    const ComplexMatrix pbs = pbs_on_block();
    return h * (pbs * (cavity_scatter(transition_table(coeffs)) * (pbs * h)));
}

ComplexMatrix block_compose_with_scatter(const ComplexMatrix& scatter, double tol) {
    if (scatter.rows() != kBlockDim || scatter.cols() != kBlockDim)
        throw DimensionError("block scattering map must be 16x16");
    const ComplexMatrix h = hwp_on_block();
    const ComplexMatrix pbs = pbs_on_block();
    const ComplexMatrix full = h * (pbs * (scatter * (pbs * h)));
    // Photons enter and leave through the down arm; any amplitude arriving
    // in the up arm means the element conventions are inconsistent.
    double leak = 0.0;
    ComplexMatrix restricted(8, 8);
    for (int in = 0; in < 8; ++in) {
        const int col = (in & 3) | ((in & 4) << 1); // port bit 2 = down
        for (int out = 0; out < kBlockDim; ++out) {
            const cdouble v = full(out, col);
            if ((out >> 2) & 1) leak += std::norm(v);
            else restricted((out & 3) | ((out >> 1) & 4), in) = v;
        }
    }
    if (leak > tol)
        throw CompositionMismatchError("composed block leaks squared amplitude " +
                                       std::to_string(leak) + " into the unused arm");
    return restricted;
}

ComplexMatrix block_compose_from_elements(const ScatteringCoeffs& coeffs, double tol) {
    return block_compose_with_scatter(cavity_scatter(transition_table(coeffs)), tol);
}

BlockDofConfig BlockDofConfig::frequency() {
    BlockDofConfig c;
    c.branch[0][0] = BranchKind::coupled;    // (w1, +)
    c.branch[0][1] = BranchKind::uncoupled;  // (w1, -)
    c.branch[1][0] = BranchKind::uncoupled;  // (w2, +)
    c.branch[1][1] = BranchKind::uncoupled;  // (w2, -)
    return c;
}

BlockDofConfig BlockDofConfig::spatial() {
    BlockDofConfig c;
    c.branch[0][0] = BranchKind::coupled;   // arm 1 shifted to w1, spin +
    c.branch[0][1] = BranchKind::uncoupled; // arm 1 shifted to w1, spin -
    c.branch[1][0] = BranchKind::bypass;    // arm 2 never meets the cavity
    c.branch[1][1] = BranchKind::bypass;
    return c;
}

BlockDofConfig BlockDofConfig::timebin() {
    BlockDofConfig c;
    c.branch[0][0] = BranchKind::bypass; // long bin detours around the cavity
    c.branch[0][1] = BranchKind::bypass;
    c.branch[1][0] = BranchKind::coupled;   // short bin at w1, spin +
    c.branch[1][1] = BranchKind::uncoupled; // short bin at w1, spin -
    return c;
}

ComplexMatrix block_dof_map(const ScatteringCoeffs& coeffs, const BlockDofConfig& config) {
    const cdouble hot = coeffs.t + coeffs.r;
    const cdouble cold = coeffs.t0 + coeffs.r0;
    CVec diag(4);
    for (int label = 0; label < 2; ++label)
        for (int s = 0; s < 2; ++s) {
            cdouble f = 1.0;
            switch (config.branch[static_cast<size_t>(label)][static_cast<size_t>(s)]) {
                case BranchKind::bypass: f = 1.0; break;
                case BranchKind::coupled: f = hot; break;
                case BranchKind::uncoupled: f = cold; break;
            }
            diag[static_cast<size_t>(label + 2 * s)] = f;
        }
    return ComplexMatrix::diagonal(diag);
}

} // namespace hypercpf
