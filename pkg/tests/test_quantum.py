import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from entrobound.dist import shannon_entropy, total_variation
from entrobound.errors import DomainError
from entrobound.logbase import log_base
from entrobound.quantum import (
    DensityMatrix,
    HamiltonianSpec,
    energy,
    fidelity,
    gibbs_entropy_number_op,
    gibbs_residual,
    gibbs_state_number_op,
    passive_state,
    quantum_power_trace,
    quantum_renyi,
    quantum_tsallis,
    schatten_norm,
    spectral_projection,
    trace_distance,
    von_neumann_entropy,
)
from entrobound.rng import CounterRNG
from entrobound.sampling import random_spectrum, random_state, random_unitary

seeds = st.integers(0, 2**32)
dims = st.integers(2, 12)


def pair(seed, d, rotated=True):
    r = CounterRNG(seed)
    return random_state(r, d, rotated), random_state(r, d, rotated)


def np_entropy(rho):
    lam = np.clip(np.linalg.eigvalsh(rho.entries), 0, None)
    lam = lam[lam > 0]
    return float(-np.sum(lam * np.log(lam)))


def mp_fidelity(rho, sigma):
    """40-digit oracle; double-precision eigensolvers leave sqrt(1e-17) ~ 3e-9 noise."""
    with mpmath.workdps(40):
        A, B = mpmath.matrix(rho.entries.tolist()), mpmath.matrix(sigma.entries.tolist())
        e, q = mpmath.eighe(B)
        s = q * mpmath.diag([mpmath.sqrt(max(x, 0)) for x in e]) * q.H
        m = s * A * s
        e2, _ = mpmath.eighe((m + m.H) / 2)
        return float(sum(mpmath.sqrt(max(x, 0)) for x in e2))


# ----------------------------------------------------------- validation


def test_rejects_invalid_matrices():
    with pytest.raises(DomainError):
        DensityMatrix([[0.5, 0.1], [0.2, 0.5]])  # not Hermitian
    with pytest.raises(DomainError):
        DensityMatrix(np.eye(2))  # trace 2
    with pytest.raises(DomainError):
        DensityMatrix([[1.2, 0], [0, -0.2]])  # negative eigenvalue
    with pytest.raises(DomainError):
        DensityMatrix.diagonal([0.7, 0.2])
    with pytest.raises(DomainError):
        DensityMatrix(np.zeros((2, 3)))


def test_tolerances_admit_rounding():
    DensityMatrix([[0.5 + 5e-11, 0], [0, 0.5]])
    DensityMatrix([[1 + 5e-11, 0], [0, -5e-11]])


def test_constructors():
    assert DensityMatrix.fock(2, 4).diag()[2] == 1.0
    psi = np.array([1, 1j]) / math.sqrt(2)
    assert von_neumann_entropy(DensityMatrix.pure(psi)) == pytest.approx(0.0, abs=1e-12)
    assert von_neumann_entropy(DensityMatrix.maximally_mixed(8)) == pytest.approx(math.log(8))
    with pytest.raises(DomainError):
        DensityMatrix.fock(5, 3)


# --------------------------------------------------------------- entropies


@given(seeds, dims)
def test_entropy_matches_lapack(seed, d):
    rho = random_state(CounterRNG(seed), d, rotated=True)
    assert von_neumann_entropy(rho) == pytest.approx(np_entropy(rho), abs=1e-11)


@given(seeds, dims)
def test_unitary_invariance(seed, d):
    r = CounterRNG(seed)
    rho = random_state(r, d, rotated=False)
    U = random_unitary(r, d)
    rot = DensityMatrix(U @ rho.entries @ U.conj().T)
    assert von_neumann_entropy(rot) == pytest.approx(von_neumann_entropy(rho), abs=1e-11)
    assert quantum_renyi(rot, 2.0) == pytest.approx(quantum_renyi(rho, 2.0), abs=1e-11)
    # eigenvalues below the solver resolution (~1e-14) vanish in the rotated copy
    assert quantum_tsallis(rot, 0.5) == pytest.approx(quantum_tsallis(rho, 0.5), abs=2 * d * 1e-13**0.5)


@given(seeds, dims)
def test_diagonal_states_reduce_to_classical(seed, d):
    rho, sigma = pair(seed, d, rotated=False)
    assert von_neumann_entropy(rho) == pytest.approx(shannon_entropy(rho.diag()), abs=1e-13)
    assert trace_distance(rho, sigma) == pytest.approx(total_variation(rho.diag(), sigma.diag()), abs=1e-13)
    assert fidelity(rho, sigma) == pytest.approx(float(np.sum(np.sqrt(rho.diag() * sigma.diag()))), abs=1e-12)


def rotated_with_spectrum(seed, d):
    """A dense state with a known spectrum, which serves as the exact oracle."""
    r = CounterRNG(seed)
    lam = random_spectrum(r, d)
    U = random_unitary(r, d)
    m = (U * lam) @ U.conj().T
    return DensityMatrix(0.5 * (m + m.conj().T)), lam


@given(seeds, dims, st.floats(0.5, 4.0).filter(lambda a: abs(a - 1) > 1e-3))
def test_power_trace_against_exact_spectrum(seed, d, alpha):
    rho, lam = rotated_with_spectrum(seed, d)
    s = float(np.sum(lam[lam > 0] ** alpha))
    # eigenvalues below the solver resolution (~1e-14) are reported as 0
    tol = d * (1e-13) ** alpha + 1e-11
    assert quantum_power_trace(rho, alpha) == pytest.approx(s, abs=tol)
    assert von_neumann_entropy(rho) == pytest.approx(shannon_entropy(lam), abs=d * 1e-11)


def test_rank_deficient_dense_state_has_exact_zero_eigenvalues():
    # rounding leaves +-1e-17 where the exact eigenvalue is 0; those must not leak into tr(rho**alpha)
    r = CounterRNG(0)
    U = random_unitary(r, 3)
    rho = DensityMatrix(U @ np.diag([0, 1.0, 0]) @ U.conj().T)
    assert quantum_power_trace(rho, 0.5) == pytest.approx(1.0, abs=1e-14)
    assert quantum_tsallis(rho, 0.5) == pytest.approx(0.0, abs=1e-13)


def test_log_base_applies_to_von_neumann():
    rho = DensityMatrix.maximally_mixed(4)
    with log_base(2):
        assert von_neumann_entropy(rho) == pytest.approx(2.0)


# --------------------------------------------------- distances and norms


@given(seeds, dims)
def test_trace_distance_against_lapack(seed, d):
    rho, sigma = pair(seed, d)
    ref_td = 0.5 * float(np.sum(np.abs(np.linalg.eigvalsh(rho.entries - sigma.entries))))
    assert trace_distance(rho, sigma) == pytest.approx(ref_td, abs=1e-12)


@settings(max_examples=15)
@given(seeds, st.integers(2, 5))
def test_fidelity_against_high_precision(seed, d):
    rho, sigma = pair(seed, d)
    # F depends on sigma's eigenvalues through a square root, so an eigenvalue
    # unresolved at ~1e-14 moves F by up to its square root
    assert fidelity(rho, sigma) == pytest.approx(min(mp_fidelity(rho, sigma), 1.0), abs=d * 1e-13**0.5)


def test_fidelity_of_pure_states_is_overlap():
    r = CounterRNG(8)
    psi, phi = random_unitary(r, 4)[:, 0], random_unitary(r, 4)[:, 1]
    F = fidelity(DensityMatrix.pure(psi), DensityMatrix.pure(phi))
    assert F == pytest.approx(abs(np.vdot(psi, phi)), abs=1e-10)


@given(seeds, dims)
def test_fuchs_van_de_graaf(seed, d):
    rho, sigma = pair(seed, d)
    F, T = fidelity(rho, sigma), trace_distance(rho, sigma)
    assert 1 - F <= T + 1e-9
    assert T <= math.sqrt(max(0.0, 1 - F * F)) + 1e-9


@given(seeds, dims)
def test_mirsky_contraction(seed, d):
    rho, sigma = pair(seed, d)
    a = np.sort(rho.spectrum().eigenvalues)[::-1]
    b = np.sort(sigma.spectrum().eigenvalues)[::-1]
    assert 0.5 * np.sum(np.abs(a - b)) <= trace_distance(rho, sigma) + 1e-12


def test_orthogonal_pure_states():
    a, b = DensityMatrix.fock(0, 3), DensityMatrix.fock(1, 3)
    assert trace_distance(a, b) == 1.0
    assert fidelity(a, b) == 0.0


@given(seeds, dims)
def test_schatten_norm_family(seed, d):
    rho, sigma = pair(seed, d)
    diff = rho.entries - sigma.entries
    s = np.abs(np.linalg.eigvalsh(diff))
    for p in (1.0, 1.5, 2.0, 3.0):
        assert schatten_norm(diff, p) == pytest.approx(float(np.sum(s**p) ** (1 / p)), rel=1e-10, abs=1e-13)
    assert schatten_norm(diff, 2.0) == pytest.approx(np.linalg.norm(diff), rel=1e-10)
    assert schatten_norm(diff, math.inf) == pytest.approx(s.max(), rel=1e-10)
    assert schatten_norm(diff, 3.0) <= schatten_norm(diff, 2.0) + 1e-14


def test_schatten_norm_of_non_hermitian_uses_singular_values():
    a = np.array([[0, 2.0], [0, 0]])
    assert schatten_norm(a, 1) == pytest.approx(2.0)
    with pytest.raises(DomainError):
        schatten_norm(a, 0.5)


def test_mismatched_truncations_rejected():
    with pytest.raises(DomainError):
        trace_distance(DensityMatrix.fock(0, 2), DensityMatrix.fock(0, 3))


# --------------------------------------------------- energy and Gibbs


def test_hamiltonian_specs():
    np.testing.assert_array_equal(HamiltonianSpec.number().eigenvalues(4), [0, 1, 2, 3])
    np.testing.assert_array_equal(HamiltonianSpec.shifted_number().eigenvalues(3), [1, 2, 3])
    np.testing.assert_allclose(HamiltonianSpec.shifted_number(2).eigenvalues(3), [1, 4, 9])
    np.testing.assert_allclose(HamiltonianSpec.number_power(0.5).eigenvalues(3), [0, 1, math.sqrt(2)])
    np.testing.assert_allclose(HamiltonianSpec.shifted_number().power(0.5).eigenvalues(3), np.sqrt([1, 2, 3]))
    assert HamiltonianSpec.shifted_number().label() == "(N+1)"
    with pytest.raises(DomainError):
        HamiltonianSpec.diagonal([1, 0])
    with pytest.raises(DomainError):
        HamiltonianSpec.diagonal([0, 1]).eigenvalues(3)


@given(seeds, dims)
def test_passive_state_lowers_energy_keeps_entropy(seed, d):
    rho = random_state(CounterRNG(seed), d, rotated=True)
    p = passive_state(rho)
    assert np.all(np.diff(p.diag()) <= 1e-15)
    assert energy(p) <= energy(rho) + 1e-12
    assert von_neumann_entropy(p) == pytest.approx(von_neumann_entropy(rho), abs=1e-12)


@pytest.mark.parametrize("E", [0.25, 1.0, 3.0, 8.0])
def test_gibbs_state(E):
    g, beta = gibbs_state_number_op(E, 4096)
    assert energy(g) == pytest.approx(E, rel=1e-10)
    assert von_neumann_entropy(g) == pytest.approx(gibbs_entropy_number_op(E), rel=1e-10)
    assert abs(gibbs_residual(beta, E, 4096)) < 1e-9
    assert beta == pytest.approx(math.log1p(1 / E))


def test_gibbs_entropy_at_unit_energy_is_two_log_two():
    assert gibbs_entropy_number_op(1.0) == pytest.approx(2 * math.log(2), rel=1e-15)


@given(seeds, st.integers(2, 10))
def test_gibbs_maximality(seed, d):
    rho = random_state(CounterRNG(seed), d, rotated=True)
    E = energy(rho)
    if E > 0:
        assert von_neumann_entropy(rho) <= gibbs_entropy_number_op(E) + 1e-12


def test_spectral_projection():
    P = spectral_projection(HamiltonianSpec.number(), 3.5, 10)
    assert P.rank == 4
    assert P.schatten_norm(2) == pytest.approx(2.0)
    assert P.schatten_norm(math.inf) == 1.0
    np.testing.assert_array_equal(np.diag(P.matrix())[:5], [1, 1, 1, 1, 0])
