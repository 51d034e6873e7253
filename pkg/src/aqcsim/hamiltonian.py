"""Initial, final, and interpolated Hamiltonians of the annealing path.

The initial Hamiltonian is a unit transverse field on every qubit; the
final Hamiltonian is diagonal in the computational basis and carries one
real coupling J_x for every non-empty subset x of qubits (J_0 is a trivial
energy shift and is pinned to zero). The path between them is the linear
interpolation H(s) = (1-s) H_i + s H_f for reduced time s in [0, 1].

Bit-order convention: qubit i corresponds to bit value 2**(i-1) of the
integer labels x (coupling subsets) and y (basis states). All reported
quantities are invariant under relabeling, so only consistency matters.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from numba import njit

MAX_QUBITS = 12


@dataclass(frozen=True)
class CouplingVector:
    """The 2^n coefficients J_x defining one problem Hamiltonian.

    J[0] must be 0 and all entries finite; len(J) must be exactly 2^n.
    """

    n: int
    J: np.ndarray = field(repr=False)

    def __post_init__(self):
        if not (1 <= self.n <= MAX_QUBITS):
            raise ValueError(f"qubit count must be in [1, {MAX_QUBITS}], got {self.n}")
        J = np.ascontiguousarray(np.asarray(self.J, dtype=np.float64))
        if J.shape != (2**self.n,):
            raise ValueError(f"expected {2**self.n} couplings for n={self.n}, got shape {J.shape}")
        if J[0] != 0.0:
            raise ValueError("the energy-shift coupling J[0] must be zero")
        if not np.all(np.isfinite(J)):
            raise ValueError("couplings must be finite")
        J.setflags(write=False)
        object.__setattr__(self, "J", J)

    @property
    def dim(self) -> int:
        return 2**self.n

    @property
    def abs_top(self) -> float:
        """|J_{2^n - 1}|: magnitude of the full n-qubit coupling."""
        return float(abs(self.J[-1]))

    @classmethod
    def from_terms(cls, n: int, terms) -> "CouplingVector":
        """Build from the 2^n - 1 nontrivial couplings J_1 .. J_{2^n-1}."""
        terms = np.asarray(terms, dtype=np.float64)
        if terms.shape != (2**n - 1,):
            raise ValueError(f"expected {2**n - 1} couplings for n={n}, got {terms.shape}")
        return cls(n, np.concatenate(([0.0], terms)))


def build_initial(n: int) -> np.ndarray:
    """Dense transverse-field Hamiltonian: -1 at Hamming-distance-1 pairs.

    Its ground state is the uniform superposition with energy -n.
    """
    if not (1 <= n <= MAX_QUBITS):
        raise ValueError(f"qubit count must be in [1, {MAX_QUBITS}], got {n}")
    dim = 2**n
    h = np.zeros((dim, dim))
    for a in range(dim):
        for b in range(n):
            h[a, a ^ (1 << b)] = -1.0
    return h


def final_energies(cv: CouplingVector) -> np.ndarray:
    """Diagonal of the final Hamiltonian: f_y = sum_x J_x (-1)^popcount(x & y)."""
    return _final_energies(cv.J, cv.n)


@njit(cache=True)
def _final_energies(J, n):
    dim = 1 << n
    f = np.zeros(dim)
    for x in range(1, dim):
        jx = J[x]
        if jx == 0.0:
            continue
        for y in range(dim):
            # parity of x & y decides the sign of the sigma_z product
            p = x & y
            bits = 0
            while p:
                p &= p - 1
                bits += 1
            f[y] += jx if bits % 2 == 0 else -jx
    return f


def interpolate(hi: np.ndarray, f: np.ndarray, s: float) -> np.ndarray:
    """Dense H(s) = (1-s) H_i + s diag(f)."""
    if not 0.0 <= s <= 1.0:
        raise ValueError(f"reduced time must be in [0, 1], got {s}")
    h = (1.0 - s) * hi
    h[np.diag_indices_from(h)] += s * f
    return h


def apply_hamiltonian(cv: CouplingVector, f: np.ndarray, s: float, psi: np.ndarray) -> np.ndarray:
    """H(s) psi without materializing the matrix (O(n 2^n) per call)."""
    if psi.shape != (cv.dim,) or f.shape != (cv.dim,):
        raise ValueError("state/energy dimension does not match the coupling vector")
    out = np.empty(cv.dim, dtype=np.complex128)
    _apply(out, np.ascontiguousarray(psi, dtype=np.complex128), f, s, cv.n)
    return out


@njit(cache=True)
def _apply(out, psi, f, s, n):
    # (H(s) psi)_y = s f_y psi_y - (1-s) sum_i psi_{y XOR 2^(i-1)}
    dim = psi.shape[0]
    u = 1.0 - s
    for y in range(dim):
        acc = s * f[y] * psi[y]
        for b in range(n):
            acc -= u * psi[y ^ (1 << b)]
        out[y] = acc
