"""Thermodynamic floors for quantum metrology.

Numerics for quantum Fisher information, phase-averaged entropies, and the
heat cost of erasing parameter information, with two desk-scale
experiments: a qubit probe erased into a thermal bosonic mode, and the
entropy scaling of symmetric multi-qubit state families.
"""

from .dicke import LogFit, SweepRecord, fit_log, saturation_check, sweep
from .linalg import (
    Eigh,
    apply,
    dagger,
    herm_eig,
    ket,
    kron,
    partial_trace,
    shannon,
    trace_distance,
    unitary_from,
    vn_entropy,
)
from .metrology import (
    BoundReport,
    ErasureBound,
    Generator,
    avg_heat_bound,
    corrected_bound,
    crb,
    ensemble_dephase,
    ensemble_grid_average,
    entropy_heat_report,
    erasure_bound,
    fq_pairwise,
    fq_pairwise_total,
    heat_bound,
    local_generator_fd,
    measurement_record_entropy,
    precision_floor,
    qfi_pure,
    seminorm,
    weighted_fq,
)
from .rabi import (
    RabiConfig,
    RabiOutcome,
    RabiRunRecord,
    TruncationError,
    build_hamiltonian,
    erasure_quality,
    find_erasure_time,
    run_c0_sweep,
    run_single,
    scan_erasure_profile,
)
from .states import (
    FAMILY_KINDS,
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    DickeFamily,
    dicke_state,
    family_distribution,
    fock_ops,
    spin_ops,
    thermal_state,
)

__version__ = "0.1.0"

__all__ = [
    "BoundReport",
    "DickeFamily",
    "Eigh",
    "ErasureBound",
    "FAMILY_KINDS",
    "Generator",
    "LogFit",
    "RabiConfig",
    "RabiOutcome",
    "RabiRunRecord",
    "SIGMA_X",
    "SIGMA_Y",
    "SIGMA_Z",
    "SweepRecord",
    "TruncationError",
    "apply",
    "avg_heat_bound",
    "build_hamiltonian",
    "corrected_bound",
    "crb",
    "dagger",
    "dicke_state",
    "ensemble_dephase",
    "ensemble_grid_average",
    "entropy_heat_report",
    "erasure_bound",
    "erasure_quality",
    "family_distribution",
    "find_erasure_time",
    "fit_log",
    "fock_ops",
    "fq_pairwise",
    "fq_pairwise_total",
    "heat_bound",
    "herm_eig",
    "ket",
    "kron",
    "local_generator_fd",
    "measurement_record_entropy",
    "partial_trace",
    "precision_floor",
    "qfi_pure",
    "run_c0_sweep",
    "run_single",
    "saturation_check",
    "scan_erasure_profile",
    "seminorm",
    "shannon",
    "spin_ops",
    "sweep",
    "thermal_state",
    "trace_distance",
    "unitary_from",
    "vn_entropy",
    "weighted_fq",
]
