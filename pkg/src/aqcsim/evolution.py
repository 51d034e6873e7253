"""Adaptive Dormand-Prince 5(4) integration of the reduced-time dynamics.

The equation is dpsi/ds = -i T H(s) psi on s in [0, 1], starting from the
uniform superposition. The fifth-order solution propagates; the embedded
fourth-order difference drives step acceptance. Accepted steps keep their
stage derivatives so any interior state can be reconstructed afterwards
by fourth-order dense interpolation. The state is never renormalized:
norm drift is the accuracy signal and is reported per run.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit

from .hamiltonian import CouplingVector, final_energies

H_MIN = 1e-14

_A = np.zeros((7, 7))
_A[1, 0] = 1.0 / 5.0
_A[2, :2] = (3.0 / 40.0, 9.0 / 40.0)
_A[3, :3] = (44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0)
_A[4, :4] = (19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0)
_A[5, :5] = (9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0)
_A[6, :6] = (35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0)
_C = np.array([0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0])
# fifth-order weights minus the embedded fourth-order weights
_E = np.array([
    35.0 / 384.0 - 5179.0 / 57600.0,
    0.0,
    500.0 / 1113.0 - 7571.0 / 16695.0,
    125.0 / 192.0 - 393.0 / 640.0,
    -2187.0 / 6784.0 + 92097.0 / 339200.0,
    11.0 / 84.0 - 187.0 / 2100.0,
    -1.0 / 40.0,
])
# dense-output polynomial: y(s0 + th) = y0 + h * sum_j K_j * poly_j(t)
_P = np.array([
    [1.0, -8048581381.0 / 2820520608.0, 8663915743.0 / 2820520608.0, -12715105075.0 / 11282082432.0],
    [0.0, 0.0, 0.0, 0.0],
    [0.0, 131558114200.0 / 32700410799.0, -68118460800.0 / 10900136933.0, 87487479700.0 / 32700410799.0],
    [0.0, -1754552775.0 / 470086768.0, 14199869525.0 / 1410260304.0, -10690763975.0 / 1880347072.0],
    [0.0, 127303824393.0 / 49829197408.0, -318862633887.0 / 49829197408.0, 701980252875.0 / 199316789632.0],
    [0.0, -282668133.0 / 205662961.0, 2019193451.0 / 616988883.0, -1453857185.0 / 822651844.0],
    [0.0, 40617522.0 / 29380423.0, -110615467.0 / 29380423.0, 69997945.0 / 29380423.0],
])


class EvolutionError(RuntimeError):
    """Integration failed: step underflow or norm drift above the ceiling."""


@dataclass(frozen=True)
class StepTable:
    """Accepted steps with stage derivatives, enough to rebuild psi(s)."""

    s0: np.ndarray
    h: np.ndarray
    y0: np.ndarray
    stages: np.ndarray
    final_state: np.ndarray

    @property
    def span(self) -> tuple[float, float]:
        return float(self.s0[0]), float(self.s0[-1] + self.h[-1])


@dataclass(frozen=True)
class IntegrationResult:
    final_state: np.ndarray
    sample_s: np.ndarray
    sample_states: np.ndarray
    accepted_steps: int
    rejected_steps: int
    max_norm_drift: float
    steps: StepTable

    @property
    def samples(self):
        return list(zip(self.sample_s, self.sample_states))


@njit(cache=True)
def _rhs(out, psi, f, s, n, T):
    dim = psi.shape[0]
    u = 1.0 - s
    for y in range(dim):
        acc = s * f[y] * psi[y]
        for b in range(n):
            acc -= u * psi[y ^ (1 << b)]
        out[y] = (0.0 - 1.0j) * T * acc


@njit(cache=True)
def _interp(y0, K, h, t):
    dim = y0.shape[0]
    out = np.empty(dim, np.complex128)
    w = np.empty(7)
    for j in range(7):
        w[j] = h * t * (_P[j, 0] + t * (_P[j, 1] + t * (_P[j, 2] + t * _P[j, 3])))
    for i in range(dim):
        acc = y0[i]
        for j in range(7):
            if w[j] != 0.0:
                acc += w[j] * K[j, i]
        out[i] = acc
    return out


@njit(cache=True)
def _integrate(f, n, T, tol, out_grid, norm_ceiling, y0, rev):
    dim = f.shape[0]
    y = y0.copy()
    nrm0 = 0.0
    for i in range(dim):
        nrm0 += y[i].real * y[i].real + y[i].imag * y[i].imag
    nrm0 = np.sqrt(nrm0)
    s = 0.0
    h = min(1e-4 / T, 1.0)
    K = np.empty((7, dim), np.complex128)
    _rhs(K[0], y, f, 1.0 - s if rev else s, n, T)

    cap = 1024
    st_s0 = np.empty(cap)
    st_h = np.empty(cap)
    st_y0 = np.empty((cap, dim), np.complex128)
    st_K = np.empty((cap, 7, dim), np.complex128)
    naccept = 0
    nreject = 0
    max_drift = 0.0

    ns = out_grid.shape[0]
    samples = np.empty((ns, dim), np.complex128)
    sp = 0
    while sp < ns and out_grid[sp] <= 0.0:
        samples[sp] = y
        sp += 1

    ytmp = np.empty(dim, np.complex128)
    ynew = np.empty(dim, np.complex128)
    status = 0
    while s < 1.0:
        last = h >= 1.0 - s
        if last:
            h = 1.0 - s
        if h < H_MIN:
            status = 1
            break
        for stage in range(1, 7):
            for i in range(dim):
                acc = 0.0 + 0.0j
                for j in range(stage):
                    aij = _A[stage, j]
                    if aij != 0.0:
                        acc += aij * K[j, i]
                ytmp[i] = y[i] + h * acc
            sigma = s + _C[stage] * h
            _rhs(K[stage], ytmp, f, 1.0 - sigma if rev else sigma, n, T)
        # stage row 6 repeats the fifth-order weights, so ytmp is the step result
        for i in range(dim):
            ynew[i] = ytmp[i]

        # error 2-norm over the 2*dim real components, scale 1 + |y|;
        # unnormalized on purpose: the per-component budget then shrinks
        # with dimension, which is what keeps norm drift within its bound
        acc_err = 0.0
        for i in range(dim):
            e = 0.0 + 0.0j
            for j in range(7):
                if _E[j] != 0.0:
                    e += _E[j] * K[j, i]
            er = h * abs(e.real) / (1.0 + max(abs(y[i].real), abs(ynew[i].real)))
            ei = h * abs(e.imag) / (1.0 + max(abs(y[i].imag), abs(ynew[i].imag)))
            acc_err += er * er + ei * ei
        err = np.sqrt(acc_err)

        if err > tol:
            nreject += 1
            h *= 0.5
            continue

        if naccept == cap:
            cap *= 2
            t1 = np.empty(cap)
            t1[:naccept] = st_s0
            st_s0 = t1
            t2 = np.empty(cap)
            t2[:naccept] = st_h
            st_h = t2
            t3 = np.empty((cap, dim), np.complex128)
            t3[:naccept] = st_y0
            st_y0 = t3
            t4 = np.empty((cap, 7, dim), np.complex128)
            t4[:naccept] = st_K
            st_K = t4
        st_s0[naccept] = s
        st_h[naccept] = h
        st_y0[naccept] = y
        st_K[naccept] = K
        naccept += 1

        s_next = 1.0 if last else s + h
        while sp < ns and out_grid[sp] <= s_next:
            t = (out_grid[sp] - s) / h
            if t >= 1.0:
                samples[sp] = ynew
            else:
                samples[sp] = _interp(y, K, h, t)
            sp += 1

        nrm = 0.0
        for i in range(dim):
            nrm += ynew[i].real * ynew[i].real + ynew[i].imag * ynew[i].imag
        drift = abs(np.sqrt(nrm) - nrm0)
        if drift > max_drift:
            max_drift = drift
        if max_drift > norm_ceiling:
            status = 2
            break

        for i in range(dim):
            y[i] = ynew[i]
            K[0, i] = K[6, i]
        s = s_next

        if err == 0.0:
            fac = 5.0
        else:
            fac = 0.9 * (tol / err) ** 0.2
            if fac < 0.2:
                fac = 0.2
            elif fac > 5.0:
                fac = 5.0
        h *= fac

    while sp < ns:
        samples[sp] = y
        sp += 1

    return (
        y,
        samples,
        naccept,
        nreject,
        max_drift,
        status,
        st_s0[:naccept].copy(),
        st_h[:naccept].copy(),
        st_y0[:naccept].copy(),
        st_K[:naccept].copy(),
    )


def evolve(
    cv: CouplingVector,
    T: float,
    tol: float = 1e-10,
    output_grid=None,
    norm_ceiling: float = 1e-6,
    initial_state=None,
    reverse_path: bool = False,
) -> IntegrationResult:
    """Integrate from s=0 to s=1 and sample the trajectory on output_grid.

    initial_state defaults to the uniform superposition, the ground state
    of the path start. With reverse_path the Hamiltonian is evaluated at
    1-s, so starting from the conjugated final state retraces the forward
    run; both knobs exist to make linearity and time-reversal checkable.

    Raises EvolutionError when the controller underflows the step size or
    the norm drifts past norm_ceiling; partial results are not returned.
    """
    if T <= 0.0:
        raise ValueError(f"computation time must be positive, got {T}")
    if tol <= 0.0:
        raise ValueError(f"tolerance must be positive, got {tol}")
    if output_grid is None:
        grid = np.array([0.0, 1.0])
    else:
        grid = np.asarray(output_grid, dtype=np.float64)
        if grid.ndim != 1 or grid.size < 1:
            raise ValueError("output_grid must be a non-empty 1-d sequence")
        if np.any(np.diff(grid) < 0.0):
            raise ValueError("output_grid must be sorted ascending")
        if grid[0] < 0.0 or grid[-1] > 1.0:
            raise ValueError("output_grid values must lie in [0, 1]")
    if initial_state is None:
        start = np.full(cv.dim, 1.0 / np.sqrt(cv.dim), dtype=np.complex128)
    else:
        start = np.ascontiguousarray(initial_state, dtype=np.complex128)
        if start.shape != (cv.dim,):
            raise ValueError("initial_state dimension does not match the coupling vector")
    f = final_energies(cv)
    y, samples, naccept, nreject, max_drift, status, s0, hs, y0, stages = _integrate(
        f, cv.n, float(T), float(tol), grid, float(norm_ceiling), start, bool(reverse_path)
    )
    if status == 1:
        raise EvolutionError(f"step size underflow below {H_MIN:g} (T={T}, tol={tol})")
    if status == 2:
        raise EvolutionError(f"norm drift {max_drift:.3e} exceeded ceiling {norm_ceiling:g}")
    table = StepTable(s0=s0, h=hs, y0=y0, stages=stages, final_state=y)
    return IntegrationResult(
        final_state=y,
        sample_s=grid,
        sample_states=samples,
        accepted_steps=int(naccept),
        rejected_steps=int(nreject),
        max_norm_drift=float(max_drift),
        steps=table,
    )


def dense_sample(steps: StepTable, s: float) -> np.ndarray:
    """State at any s inside the integration span; exact at step boundaries."""
    lo, hi = steps.span
    if not lo <= s <= hi:
        raise ValueError(f"s={s} outside the integrated span [{lo}, {hi}]")
    if s >= hi:
        return steps.final_state.copy()
    i = int(np.searchsorted(steps.s0, s, side="right")) - 1
    if i < 0:
        i = 0
    if s == steps.s0[i]:
        return steps.y0[i].copy()
    t = (s - steps.s0[i]) / steps.h[i]
    return _interp(steps.y0[i], steps.stages[i], steps.h[i], t)
