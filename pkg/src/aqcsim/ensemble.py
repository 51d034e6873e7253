"""Seeded instance sampling and bulk execution over coupling ensembles.

Each instance index owns an independent generator substream, so records
are a pure function of the configuration no matter how many workers run
or in which order they finish. The gap search and the path diagnostics
are computed once per instance and shared across all requested times.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .hamiltonian import CouplingVector
from .metrics import InstanceRecord, Settings, run_instance
from .rng import substream
from .spectrum import adiabatic_diagnostics, find_min_gap

SAMPLER_KINDS = ("uniform", "gaussian", "grid")


@dataclass(frozen=True)
class SamplerSpec:
    kind: str
    seed: int = 0
    half_width: float = 0.0  # uniform and grid kinds
    sigma: float = 0.0  # gaussian kind
    points_per_axis: int = 0  # grid kind

    def __post_init__(self):
        if self.kind not in SAMPLER_KINDS:
            raise ValueError(f"unknown sampler kind {self.kind!r}, expected one of {SAMPLER_KINDS}")
        if self.kind in ("uniform", "grid") and self.half_width <= 0.0:
            raise ValueError(f"{self.kind} sampler needs half_width > 0")
        if self.kind == "gaussian" and self.sigma <= 0.0:
            raise ValueError("gaussian sampler needs sigma > 0")
        if self.kind == "grid" and self.points_per_axis < 2:
            raise ValueError("grid sampler needs points_per_axis >= 2")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must fit in 64 bits")


@dataclass(frozen=True)
class EnsembleConfig:
    n: int
    times: tuple
    sample_count: int
    sampler: SamplerSpec
    settings: Settings = field(default_factory=Settings)

    def __post_init__(self):
        object.__setattr__(self, "times", tuple(float(t) for t in self.times))
        if not self.times:
            raise ValueError("need at least one computation time")
        if any(t <= 0.0 for t in self.times):
            raise ValueError("computation times must be positive")
        if self.sample_count < 1:
            raise ValueError("sample_count must be at least 1")


@dataclass(frozen=True)
class EnsembleSummary:
    records: int
    failures: int
    wall_time: float


def grid_size(spec: SamplerSpec, n: int) -> int:
    """Number of lattice points of a grid sampler at the given qubit count."""
    if spec.kind != "grid":
        raise ValueError("grid_size only applies to grid samplers")
    return spec.points_per_axis ** (2**n - 1)


def sample_couplings(spec: SamplerSpec, n: int, index: int) -> CouplingVector:
    """Couplings for one instance index; bit-identical on repeated calls."""
    if index < 0:
        raise ValueError("index must be nonnegative")
    m = 2**n - 1
    terms = np.empty(m)
    if spec.kind == "grid":
        k = spec.points_per_axis
        if index >= k**m:
            raise ValueError(f"grid index {index} out of range for {k}^{m} lattice points")
        vals = np.linspace(-spec.half_width, spec.half_width, k)
        # row-major: the last coupling axis varies fastest
        rem = index
        for axis in range(m - 1, -1, -1):
            terms[axis] = vals[rem % k]
            rem //= k
    else:
        rng = substream(spec.seed, index)
        if spec.kind == "uniform":
            for i in range(m):
                terms[i] = rng.uniform_symmetric(spec.half_width)
        else:
            for i in range(m):
                terms[i] = rng.normal(spec.sigma)
    return CouplingVector.from_terms(n, terms)


def _instance_records(config: EnsembleConfig, index: int) -> list:
    cv = sample_couplings(config.sampler, config.n, index)
    st = config.settings
    gap_result = find_min_gap(cv, st.gap_grid, st.refine_tol, st.deg_tol)
    diagnostics = adiabatic_diagnostics(cv, st.diag_grid, st.deg_tol)
    return [
        run_instance(cv, t, st, gap_result, diagnostics, index=index)
        for t in config.times
    ]


def run_ensemble(config: EnsembleConfig, sink, workers: int = 1) -> EnsembleSummary:
    """Run every (instance, T) pair and feed records to sink in index order.

    sink is any callable taking one InstanceRecord. Failed integrations
    arrive as flagged records; the run always completes.
    """
    if workers < 1:
        raise ValueError("workers must be at least 1")
    start = time.monotonic()
    failures = 0
    count = 0

    def emit(records):
        nonlocal failures, count
        for rec in records:
            if rec.failed:
                failures += 1
            count += 1
            sink(rec)

    indices = range(config.sample_count)
    if workers == 1:
        for index in indices:
            emit(_instance_records(config, index))
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            for records in pool.map(lambda i: _instance_records(config, i), indices):
                emit(records)
    return EnsembleSummary(records=count, failures=failures, wall_time=time.monotonic() - start)


def slice_sweep(
    j3: float,
    k: int,
    a: float,
    T: float,
    settings: Settings | None = None,
) -> list:
    """Two-qubit records on the k-by-k (J1, J2) grid with J3 held fixed.

    Record index is row-major: index = i1 * k + i2 with J1 = grid[i1],
    J2 = grid[i2].
    """
    if k < 2:
        raise ValueError("need at least 2 points per axis")
    if a <= 0.0:
        raise ValueError("half-width must be positive")
    st = settings if settings is not None else Settings()
    vals = np.linspace(-a, a, k)
    records: list[InstanceRecord] = []
    for i1 in range(k):
        for i2 in range(k):
            cv = CouplingVector.from_terms(2, (vals[i1], vals[i2], j3))
            records.append(run_instance(cv, T, st, index=i1 * k + i2))
    return records
