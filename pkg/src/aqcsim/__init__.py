"""State-vector simulation of linearly interpolated adiabatic computation.

The path H(s) = (1-s) H_i + s H_f runs from a unit transverse field to a
diagonal problem Hamiltonian built from multi-qubit sigma_z couplings.
The package computes instantaneous spectra, the minimum gap and its
location, integrates the dynamics at finite computation time, and runs
seeded ensembles producing flat CSV records and SVG figures.
"""

from .ensemble import (
    EnsembleConfig,
    EnsembleSummary,
    SamplerSpec,
    grid_size,
    run_ensemble,
    sample_couplings,
    slice_sweep,
)
from .evolution import EvolutionError, IntegrationResult, StepTable, dense_sample, evolve
from .hamiltonian import (
    MAX_QUBITS,
    CouplingVector,
    apply_hamiltonian,
    build_initial,
    final_energies,
    interpolate,
)
from .metrics import (
    FLAG_ORDER,
    InstanceRecord,
    Settings,
    average_overlap,
    energy_error,
    run_instance,
    success_probability,
)
from .records import HEADER, read_records, write_records
from .spectrum import (
    AdiabaticDiagnostics,
    GapResult,
    JacobiConvergenceError,
    SpectralPoint,
    adiabatic_diagnostics,
    eigensystem,
    find_min_gap,
    gap,
    path_eigensystem,
)
from .svgplot import PlotSpec, emit_plot, render

__version__ = "0.1.0"

__all__ = [
    "AdiabaticDiagnostics",
    "CouplingVector",
    "EnsembleConfig",
    "EnsembleSummary",
    "EvolutionError",
    "FLAG_ORDER",
    "GapResult",
    "HEADER",
    "InstanceRecord",
    "IntegrationResult",
    "JacobiConvergenceError",
    "MAX_QUBITS",
    "PlotSpec",
    "SamplerSpec",
    "Settings",
    "SpectralPoint",
    "StepTable",
    "adiabatic_diagnostics",
    "apply_hamiltonian",
    "average_overlap",
    "build_initial",
    "dense_sample",
    "eigensystem",
    "emit_plot",
    "energy_error",
    "evolve",
    "final_energies",
    "find_min_gap",
    "gap",
    "grid_size",
    "interpolate",
    "path_eigensystem",
    "read_records",
    "render",
    "run_ensemble",
    "run_instance",
    "sample_couplings",
    "slice_sweep",
    "success_probability",
    "write_records",
]
