"""Simulator for two-photon three-degree-of-freedom hyper-parallel gates.

The heavy lifting lives in the compiled extension ``hypercpf._core``; this
package re-exports its public surface.
"""

from ._core import (
    BlockMetrics,
    CavityParams,
    PhotonInputSpec,
    ProtocolMetrics,
    ProtocolResult,
    ScatteringCoeffs,
    SweepRow,
    ValidationError,
    average_block_metrics,
    block_efficiency,
    block_efficiency_closed_form,
    block_fidelity,
    coeffs_at_resonance,
    cpf_reference_diagonal,
    preset_realistic,
    protocol_metrics,
    run_hyper_cpf,
    run_hyper_parity,
    scattering_coeffs,
    sweep,
    sweep_csv,
)

__all__ = [
    "BlockMetrics",
    "CavityParams",
    "PhotonInputSpec",
    "ProtocolMetrics",
    "ProtocolResult",
    "ScatteringCoeffs",
    "SweepRow",
    "ValidationError",
    "average_block_metrics",
    "block_efficiency",
    "block_efficiency_closed_form",
    "block_fidelity",
    "coeffs_at_resonance",
    "cpf_reference_diagonal",
    "preset_realistic",
    "protocol_metrics",
    "run_hyper_cpf",
    "run_hyper_parity",
    "scattering_coeffs",
    "sweep",
    "sweep_csv",
]

__version__ = "1.0.0"
