import numpy as np
import pytest

from aqcsim import (
    CouplingVector,
    apply_hamiltonian,
    build_initial,
    final_energies,
    interpolate,
)

SX = np.array([[0.0, 1.0], [1.0, 0.0]])
SZ = np.array([[1.0, 0.0], [0.0, -1.0]])
I2 = np.eye(2)


def kron_initial(n):
    """Transverse field built from explicit Kronecker products."""
    h = np.zeros((2**n, 2**n))
    for i in range(1, n + 1):
        term = np.array([[1.0]])
        # qubit i lives on bit 2^(i-1), the fast axis of the Kronecker order
        for j in range(n, 0, -1):
            term = np.kron(term, SX if j == i else I2)
        h -= term
    return h


def kron_final(cv):
    dim = 2**cv.n
    h = np.zeros((dim, dim))
    for x in range(1, dim):
        if cv.J[x] == 0.0:
            continue
        term = np.array([[1.0]])
        for j in range(cv.n, 0, -1):
            term = np.kron(term, SZ if (x >> (j - 1)) & 1 else I2)
        h += cv.J[x] * term
    return h


def test_coupling_vector_validation():
    with pytest.raises(ValueError):
        CouplingVector(1, [0.5, 1.0])  # J[0] nonzero
    with pytest.raises(ValueError):
        CouplingVector(2, [0.0, 1.0])  # wrong length
    with pytest.raises(ValueError):
        CouplingVector(1, [0.0, np.inf])
    with pytest.raises(ValueError):
        CouplingVector(0, [0.0])
    with pytest.raises(ValueError):
        CouplingVector(13, np.zeros(2**13))


def test_coupling_vector_is_frozen():
    cv = CouplingVector.from_terms(2, [1.0, 2.0, 3.0])
    assert cv.J[0] == 0.0
    assert cv.abs_top == 3.0
    with pytest.raises(ValueError):
        cv.J[1] = 9.0


def test_build_initial_one_qubit():
    assert np.array_equal(build_initial(1), [[0.0, -1.0], [-1.0, 0.0]])


def test_build_initial_hamming_structure():
    h = build_initial(2)
    for a in range(4):
        for b in range(4):
            want = -1.0 if bin(a ^ b).count("1") == 1 else 0.0
            assert h[a, b] == want


def test_build_initial_matches_kronecker():
    for n in range(1, 5):
        assert np.array_equal(build_initial(n), kron_initial(n))


def test_build_initial_ground_state():
    w, v = np.linalg.eigh(build_initial(3))
    assert abs(w[0] + 3.0) < 1e-12
    assert w[1] - w[0] > 1.0  # non-degenerate
    vec = v[:, 0] * np.sign(v[0, 0])
    assert np.allclose(vec, np.full(8, 2.0**-1.5), atol=1e-12)


def test_final_energies_single_z_term():
    f = final_energies(CouplingVector(2, [0.0, 1.0, 0.0, 0.0]))
    assert np.array_equal(f, [1.0, -1.0, 1.0, -1.0])


def test_final_energies_two_qubit_closed_form():
    rng = np.random.default_rng(5)
    for _ in range(20):
        j1, j2, j3 = rng.uniform(-3, 3, 3)
        f = final_energies(CouplingVector.from_terms(2, [j1, j2, j3]))
        want = [j1 + j2 + j3, -j1 + j2 - j3, j1 - j2 - j3, -j1 - j2 + j3]
        assert np.allclose(f, want, rtol=0, atol=1e-14)


def test_final_energies_matches_kronecker_diagonal():
    rng = np.random.default_rng(6)
    for n in (1, 2, 3):
        cv = CouplingVector.from_terms(n, rng.normal(size=2**n - 1))
        dense = kron_final(cv)
        assert np.allclose(np.diag(dense), final_energies(cv), atol=1e-13)
        assert np.max(np.abs(dense - np.diag(np.diag(dense)))) == 0.0


def test_final_energies_zero_couplings():
    assert np.array_equal(final_energies(CouplingVector(3, np.zeros(8))), np.zeros(8))


def test_interpolate_endpoints_and_midpoint():
    cv = CouplingVector.from_terms(2, [0.3, -1.1, 0.7])
    hi = build_initial(2)
    f = final_energies(cv)
    assert np.array_equal(interpolate(hi, f, 0.0), hi)
    assert np.array_equal(interpolate(hi, f, 1.0), np.diag(f))
    assert np.allclose(interpolate(hi, f, 0.5), 0.5 * hi + 0.5 * np.diag(f), atol=0)
    with pytest.raises(ValueError):
        interpolate(hi, f, 1.5)


def test_apply_matches_dense():
    rng = np.random.default_rng(7)
    for n in (1, 2, 3, 4):
        cv = CouplingVector.from_terms(n, rng.uniform(-3, 3, 2**n - 1))
        f = final_energies(cv)
        dense = interpolate(build_initial(n), f, 0.37)
        psi = rng.normal(size=2**n) + 1j * rng.normal(size=2**n)
        got = apply_hamiltonian(cv, f, 0.37, psi)
        want = dense @ psi
        assert np.max(np.abs(got - want)) < 1e-13 * max(1.0, np.max(np.abs(want)))


def test_apply_on_all_basis_vectors():
    rng = np.random.default_rng(8)
    for n in (1, 2, 3, 4):
        cv = CouplingVector.from_terms(n, rng.uniform(-2, 2, 2**n - 1))
        f = final_energies(cv)
        for s in (0.0, 0.25, 1.0):
            dense = interpolate(build_initial(n), f, s)
            for y in range(2**n):
                e = np.zeros(2**n, dtype=complex)
                e[y] = 1.0
                assert np.allclose(apply_hamiltonian(cv, f, s, e), dense[:, y], atol=1e-14)


def test_apply_diagonal_and_uniform_actions():
    cv = CouplingVector.from_terms(2, [0.4, 0.9, -0.2])
    f = final_energies(cv)
    basis = np.zeros(4, dtype=complex)
    basis[2] = 1.0
    assert np.allclose(apply_hamiltonian(cv, f, 1.0, basis), f[2] * basis, atol=0)
    uniform = np.full(4, 0.5, dtype=complex)
    assert np.allclose(apply_hamiltonian(cv, f, 0.0, uniform), -2.0 * uniform, atol=1e-15)


def test_apply_dimension_mismatch():
    cv = CouplingVector.from_terms(1, [1.0])
    with pytest.raises(ValueError):
        apply_hamiltonian(cv, np.zeros(2), 0.5, np.zeros(4, dtype=complex))


def spin_flip(cv, bit):
    J = cv.J.copy()
    for x in range(len(J)):
        if (x >> bit) & 1:
            J[x] = -J[x]
    return CouplingVector(cv.n, J)


def test_spin_flip_covariance():
    rng = np.random.default_rng(9)
    for n in (2, 3):
        cv = CouplingVector.from_terms(n, rng.uniform(-3, 3, 2**n - 1))
        f = final_energies(cv)
        for bit in range(n):
            flipped = final_energies(spin_flip(cv, bit))
            perm = [y ^ (1 << bit) for y in range(2**n)]
            assert np.array_equal(flipped, f[perm])
        # sorted spectrum of H(s) unchanged
        hi = build_initial(n)
        f2 = final_energies(spin_flip(cv, 0))
        for s in (0.2, 0.8):
            w1 = np.linalg.eigvalsh(interpolate(hi, f, s))
            w2 = np.linalg.eigvalsh(interpolate(hi, f2, s))
            assert np.allclose(w1, w2, atol=1e-12)


def test_qubit_swap_covariance_two_qubits():
    cv = CouplingVector.from_terms(2, [1.3, -0.4, 0.8])
    swapped = CouplingVector.from_terms(2, [-0.4, 1.3, 0.8])
    f = final_energies(cv)
    fs = final_energies(swapped)
    # swapping qubits 1,2 swaps basis labels 1 and 2
    assert np.array_equal(fs, f[[0, 2, 1, 3]])
    hi = build_initial(2)
    w1 = np.linalg.eigvalsh(interpolate(hi, f, 0.6))
    w2 = np.linalg.eigvalsh(interpolate(hi, fs, 0.6))
    assert np.allclose(w1, w2, atol=1e-12)


def test_trace_is_zero():
    rng = np.random.default_rng(10)
    cv = CouplingVector.from_terms(3, rng.uniform(-3, 3, 7))
    f = final_energies(cv)
    for s in (0.0, 0.3, 1.0):
        assert abs(np.trace(interpolate(build_initial(3), f, s))) < 1e-12
