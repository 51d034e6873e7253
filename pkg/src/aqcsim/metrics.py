"""Figures of merit for one annealing run, assembled into flat records.

A record combines the gap search, the transition-element diagnostics, and
the integrated trajectory: success probability against the final ground
level, energy error of the final state, and the trajectory's average
overlap with the instantaneous ground state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np
from numba import njit

from .evolution import EvolutionError, evolve
from .hamiltonian import CouplingVector, build_initial, final_energies
from .spectrum import (
    AdiabaticDiagnostics,
    GapResult,
    JacobiConvergenceError,
    _dense_path,
    _jacobi,
    _order_columns,
    adiabatic_diagnostics,
    find_min_gap,
)

# canonical order of the record flag vocabulary
FLAG_ORDER = ("degenerate", "endpoint", "tie", "interior_degeneracy", "drift", "failed")


@dataclass(frozen=True)
class Settings:
    """Tolerances and grid sizes shared by every downstream stage."""

    ode_tol: float = 1e-10
    gap_grid: int = 1001
    refine_tol: float = 1e-8
    overlap_grid: int = 501
    deg_tol: float = 1e-9
    diag_grid: int = 101
    norm_ceiling: float = 1e-6
    drift_tol: float = 1e-8

    def __post_init__(self):
        for key in ("ode_tol", "refine_tol", "deg_tol", "norm_ceiling", "drift_tol"):
            if getattr(self, key) <= 0.0:
                raise ValueError(f"{key} must be positive")
        if self.gap_grid < 3:
            raise ValueError("gap_grid must be at least 3")
        if self.overlap_grid < 2:
            raise ValueError("overlap_grid must be at least 2")
        if self.diag_grid < 2:
            raise ValueError("diag_grid must be at least 2")


@dataclass(frozen=True)
class InstanceRecord:
    n: int
    couplings: CouplingVector = field(repr=False)
    T: float
    min_gap: float
    s_star: float
    success_prob: float
    energy_error: float
    avg_overlap: float
    abs_J_top: float
    ground_subspace_dim: int
    max_norm_drift: float
    matrix_element_max: float
    criterion_bound: float
    flags: tuple = ()
    index: int = -1

    @property
    def tie_flag(self) -> bool:
        return "tie" in self.flags

    @property
    def failed(self) -> bool:
        return "failed" in self.flags

    def with_index(self, index: int) -> "InstanceRecord":
        return replace(self, index=index)


def success_probability(final_state: np.ndarray, f: np.ndarray, deg_tol: float = 1e-9):
    """Weight of the final state on the ground level of the diagonal end.

    Returns (P, ground_subspace_dim). The projection covers every basis
    state within deg_tol of min(f), which reduces to the plain squared
    amplitude in the generic non-degenerate case.
    """
    if deg_tol <= 0.0:
        raise ValueError("deg_tol must be positive")
    mask = f - np.min(f) < deg_tol
    p = float(np.sum(np.abs(final_state[mask]) ** 2))
    return min(max(p, 0.0), 1.0), int(np.count_nonzero(mask))


def energy_error(final_state: np.ndarray, f: np.ndarray) -> float:
    """Mean final energy above the ground level; nonnegative by construction."""
    return float(np.sum(np.abs(final_state) ** 2 * (f - np.min(f))))


@njit(cache=True)
def _overlap_scan(hi, f, grid, states, deg_tol):
    npts = grid.shape[0]
    dim = f.shape[0]
    ov = np.empty(npts)
    interior_deg = False
    for k in range(npts):
        d, v, okj = _jacobi(_dense_path(hi, f, grid[k]))
        if not okj:
            return ov, False, False
        dd, vv = _order_columns(d, v)
        e0 = dd[0]
        w = 0.0
        mdim = 0
        for m in range(dim):
            if dd[m] - e0 >= deg_tol:
                break
            re = 0.0
            im = 0.0
            for i in range(dim):
                re += vv[i, m] * states[k, i].real
                im += vv[i, m] * states[k, i].imag
            w += re * re + im * im
            mdim += 1
        ov[k] = w
        if mdim > 1 and 0.0 < grid[k] < 1.0:
            interior_deg = True
    return ov, interior_deg, True


def average_overlap(sample_s, sample_states, cv: CouplingVector, deg_tol: float = 1e-9):
    """Trapezoid average over s of the instantaneous ground-level weight.

    Returns (delta, interior_degenerate). Where the ground level is
    degenerate the weight uses the whole near-degenerate subspace; if that
    happens strictly inside (0, 1) the second element comes back True so
    the caller can flag the record.
    """
    grid = np.asarray(sample_s, dtype=np.float64)
    states = np.ascontiguousarray(sample_states, dtype=np.complex128)
    if grid.ndim != 1 or grid.size < 2:
        raise ValueError("need at least two trajectory samples")
    if states.shape != (grid.size, cv.dim):
        raise ValueError("trajectory shape does not match the grid and dimension")
    hi = build_initial(cv.n)
    f = final_energies(cv)
    ov, interior_deg, ok = _overlap_scan(hi, f, grid, states, deg_tol)
    if not ok:
        raise JacobiConvergenceError("eigensolve failed during the overlap scan")
    delta = float(np.sum((ov[1:] + ov[:-1]) * 0.5 * np.diff(grid)))
    return min(max(delta, 0.0), 1.0), bool(interior_deg)


def _assemble_flags(gap_result, ground_dim, interior_deg, drift, drift_tol, failed):
    present = {
        "degenerate": gap_result.final_degenerate or ground_dim > 1,
        "endpoint": gap_result.at_endpoint,
        "tie": gap_result.tie,
        "interior_degeneracy": interior_deg,
        "drift": (not failed) and drift > drift_tol,
        "failed": failed,
    }
    return tuple(name for name in FLAG_ORDER if present[name])


def run_instance(
    cv: CouplingVector,
    T: float,
    settings: Settings | None = None,
    gap_result: GapResult | None = None,
    diagnostics: AdiabaticDiagnostics | None = None,
    index: int = -1,
) -> InstanceRecord:
    """Full pipeline for one coupling vector at one computation time.

    gap_result and diagnostics may be passed in when already known (they
    do not depend on T). Integration failures produce a record flagged
    "failed" with NaN dynamic metrics rather than raising.
    """
    st = settings if settings is not None else Settings()
    if gap_result is None:
        gap_result = find_min_gap(cv, st.gap_grid, st.refine_tol, st.deg_tol)
    if diagnostics is None:
        diagnostics = adiabatic_diagnostics(cv, st.diag_grid, st.deg_tol)
    f = final_energies(cv)
    ground_dim = int(np.count_nonzero(f - np.min(f) < st.deg_tol))

    failed = False
    interior_deg = False
    p = de = delta = drift = math.nan
    try:
        res = evolve(
            cv,
            T,
            tol=st.ode_tol,
            output_grid=np.linspace(0.0, 1.0, st.overlap_grid),
            norm_ceiling=st.norm_ceiling,
        )
    except EvolutionError:
        failed = True
    else:
        p, ground_dim = success_probability(res.final_state, f, st.deg_tol)
        de = energy_error(res.final_state, f)
        delta, interior_deg = average_overlap(res.sample_s, res.sample_states, cv, st.deg_tol)
        drift = res.max_norm_drift

    return InstanceRecord(
        n=cv.n,
        couplings=cv,
        T=float(T),
        min_gap=gap_result.min_gap,
        s_star=gap_result.s_star,
        success_prob=p,
        energy_error=de,
        avg_overlap=delta,
        abs_J_top=cv.abs_top,
        ground_subspace_dim=ground_dim,
        max_norm_drift=drift,
        matrix_element_max=diagnostics.matrix_element_max,
        criterion_bound=diagnostics.criterion_bound,
        flags=_assemble_flags(gap_result, ground_dim, interior_deg, drift, st.drift_tol, failed),
        index=index,
    )
