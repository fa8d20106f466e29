#pragma once

#include <array>
#include <functional>

#include "hypercpf/cavity.hpp"
#include "hypercpf/linalg.hpp"

namespace hypercpf {

// --- Single-element maps over their local label spaces -------------------
// All matrices act on little-endian packed composite indices; the packing
// of each map is stated next to it.

// Half-wave plate on polarization: |R> -> (|R>+|L>)/sqrt(2),
// |L> -> (|R>-|L>)/sqrt(2). Involution.
ComplexMatrix hwp_hadamard();

// Hadamard on one electron spin in the |+>/|-> basis. Involution.
ComplexMatrix spin_hadamard();

// Frequency shifter: swaps the two frequency labels. Involution.
ComplexMatrix frequency_shift();

// Pockels cell fired on the long time bin: flips polarization of |.,l>
// and leaves |.,s> alone. 4x4 on (pol + 2*timebin). Involution.
ComplexMatrix pockels_conditional_flip();

// Polarizing beam splitter: R transmits (keeps its arm), L reflects into
// the other arm, no phase on either path. 4x4 on (pol + 2*port). Involution.
ComplexMatrix pbs_route();

// One scattering event off the NV-cavity unit, as a matrix over the block's
// internal space (pol + 2*freq + 4*port + 8*spin), with the arm label
// doubling as the photon travel direction.
ComplexMatrix cavity_scatter(const TransitionTable& table);

// --- Block-level maps -----------------------------------------------------

// Which (label, spin) pairs address the spin-selective transition; label is
// the frequency (or the logical label standing in for it) as 0/1.
using CoupledPredicate = std::function<bool(int label, Spin spin)>;

// The canonical frequency block: coupled exactly at (w1, +).
CoupledPredicate frequency_block_predicate();

// Diagonal branch-factor form of a block on (label + 2*spin): coupled
// branches pick up (t + r), uncoupled ones (t0 + r0).
ComplexMatrix block_branch_factor(const ScatteringCoeffs& coeffs, const CoupledPredicate& coupled);

// Branch-factor form extended to both polarizations, on
// (pol + 2*label + 4*spin). The L sector reaches the cavity after one PBS
// reflection, so its reflection amplitude enters with opposite sign:
// factors are (t - r) coupled and (t0 - r0) uncoupled.
ComplexMatrix block_branch_factor_full(const ScatteringCoeffs& coeffs,
                                       const CoupledPredicate& coupled);

// Full composed interferometer block HWP -> PBS -> cavity -> PBS -> HWP over
// the internal space (pol + 2*freq + 4*port + 8*spin).
ComplexMatrix block_compose_full(const ScatteringCoeffs& coeffs);

// The composed block restricted to the physical (down) arm, as a map on
// (pol + 2*freq + 4*spin). Raises CompositionMismatchError if any input in
// the down arm leaks amplitude into the up arm beyond tol.
ComplexMatrix block_compose_from_elements(const ScatteringCoeffs& coeffs, double tol = 1e-12);

// Same restriction applied to an externally supplied scattering matrix over
// (pol + 2*freq + 4*port + 8*spin); exists so tests can demonstrate that a
// wrong element convention trips the mismatch check.
ComplexMatrix block_compose_with_scatter(const ComplexMatrix& scatter, double tol = 1e-12);

// --- Per-degree-of-freedom block behaviour used by the protocols ----------

// How one logical label/spin branch traverses a block stage.
enum class BranchKind {
    bypass,   // routed around the cavity entirely: factor exactly 1
    coupled,  // addresses the spin-selective transition: factor (t + r)
    uncoupled // scatters off the cold cavity: factor (t0 + r0)
};

// Records which logical label of a degree of freedom plays the role of each
// frequency at the NV inside a block (via the WDM/FS or PC/PBS pre-routing),
// as the branch kind of every (label, spin) pair.
struct BlockDofConfig {
    std::array<std::array<BranchKind, 2>, 2> branch; // [label][spin]

    // Frequency block: both labels interact at their own frequency, only
    // (w1, +) is coupled.
    static BlockDofConfig frequency();
    // Spatial block: label 0 is shifted to w1 and interacts (coupled at +),
    // label 1 bypasses.
    static BlockDofConfig spatial();
    // Time-bin block: label 1 (early bin) interacts at w1 (coupled at +),
    // label 0 (late bin) bypasses.
    static BlockDofConfig timebin();
};

// Diagonal stage map on (label + 2*spin) for one degree of freedom.
ComplexMatrix block_dof_map(const ScatteringCoeffs& coeffs, const BlockDofConfig& config);

} // namespace hypercpf
