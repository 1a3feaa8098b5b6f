"""Density matrices in a truncated Fock basis and their spectral functionals.

States built with :meth:`DensityMatrix.diagonal` keep only their diagonal,
so large diagonal states (``d`` in the thousands) never materialise a dense
matrix; every functional below has a diagonal fast path.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import logbase
from .dist import DEFAULT_TAIL_TOL, _check_alpha, geometric, xlogx_sum
from .errors import DomainError
from .linalg import OFFDIAG_TOL, jacobi_eigh

HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-10
NEG_EIG_TOL = 1e-10


def solver_resolution(a: np.ndarray) -> float:
    """Absolute accuracy of eigenvalues computed for the dense matrix ``a``.

    The Jacobi sweep stops once the off-diagonal mass is below
    ``OFFDIAG_TOL ||a||_F``; rounding adds about ``d`` ulps of ``||a||_F``.
    """
    return (OFFDIAG_TOL + 4.0 * a.shape[0] * np.finfo(np.float64).eps) * float(np.linalg.norm(a))


class Spectrum:
    """Eigenvalues (nonincreasing) and matching orthonormal eigenvectors."""

    def __init__(self, eigenvalues, eigenvectors=None, order=None):
        self.eigenvalues = np.asarray(eigenvalues, dtype=np.float64)
        self._vectors = eigenvectors
        self._order = order

    @property
    def eigenvectors(self) -> np.ndarray:
        if self._vectors is None:
            d = self.eigenvalues.size
            v = np.zeros((d, d), dtype=np.complex128)
            v[self._order, np.arange(d)] = 1.0
            self._vectors = v
        return self._vectors

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T

    def orthonormality_error(self) -> float:
        v = self.eigenvectors
        return float(np.linalg.norm(v.conj().T @ v - np.eye(v.shape[1])))

    def apply(self, f) -> np.ndarray:
        """Dense matrix ``sum_k f(lambda_k) |v_k><v_k|``."""
        v = self.eigenvectors
        return (v * f(self.eigenvalues)) @ v.conj().T

    def diagonal_weights(self, h: np.ndarray) -> np.ndarray:
        """``<v_k|H|v_k>`` for a Hamiltonian diagonal in the Fock basis."""
        if self._vectors is None and self._order is not None:
            return h[self._order]
        return np.real(np.einsum("nk,n,nk->k", self.eigenvectors.conj(), h, self.eigenvectors))


class DensityMatrix:
    """Hermitian, positive semidefinite, unit-trace matrix on ``{|0>, ..., |d-1>}``."""

    def __init__(self, entries, check: bool = True):
        a = np.array(entries, dtype=np.complex128)
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] == 0:
            raise DomainError("a density matrix must be square and non-empty")
        if check:
            if np.max(np.abs(a - a.conj().T)) > HERMITIAN_TOL:
                raise DomainError("matrix is not Hermitian within 1e-12")
            tr = float(np.real(np.trace(a)))
            if abs(tr - 1.0) > TRACE_TOL:
                raise DomainError(f"trace {tr:.17g} differs from 1 by more than 1e-10")
        a.setflags(write=False)
        self._entries = a
        self._diag = None
        self._spectrum = None
        if check:
            lam = self.spectrum().eigenvalues
            if lam[-1] < -NEG_EIG_TOL:
                raise DomainError(f"matrix has eigenvalue {lam[-1]:.3g} < -1e-10")

    @classmethod
    def diagonal(cls, probs, check: bool = True) -> "DensityMatrix":
        p = np.array(probs, dtype=np.float64).ravel()
        if check:
            if p.size == 0 or np.any(p < -NEG_EIG_TOL) or not np.all(np.isfinite(p)):
                raise DomainError("diagonal entries must be finite and non-negative")
            if abs(float(p.sum()) - 1.0) > TRACE_TOL:
                raise DomainError(f"trace {p.sum():.17g} differs from 1 by more than 1e-10")
        self = cls.__new__(cls)
        p.setflags(write=False)
        self._diag = p
        self._entries = None
        self._spectrum = None
        return self

    @classmethod
    def fock(cls, n: int, d: int) -> "DensityMatrix":
        if not 0 <= n < d:
            raise DomainError(f"Fock level {n} outside truncation {d}")
        p = np.zeros(d)
        p[n] = 1.0
        return cls.diagonal(p)

    @classmethod
    def pure(cls, psi) -> "DensityMatrix":
        v = np.asarray(psi, dtype=np.complex128).ravel()
        v = v / np.linalg.norm(v)
        return cls(np.outer(v, v.conj()))

    @classmethod
    def maximally_mixed(cls, d: int) -> "DensityMatrix":
        return cls.diagonal(np.full(d, 1.0 / d))

    @property
    def d(self) -> int:
        return self._diag.size if self._diag is not None else self._entries.shape[0]

    @property
    def is_diagonal(self) -> bool:
        return self._diag is not None

    @property
    def entries(self) -> np.ndarray:
        if self._entries is None:
            e = np.diag(self._diag.astype(np.complex128))
            e.setflags(write=False)
            self._entries = e
        return self._entries

    def diag(self) -> np.ndarray:
        if self._diag is not None:
            return self._diag
        return np.real(np.diagonal(self._entries)).copy()

    def spectrum(self) -> Spectrum:
        if self._spectrum is None:
            if self._diag is not None:
                order = np.argsort(-self._diag, kind="stable")
                self._spectrum = Spectrum(self._diag[order], order=order)
            else:
                w, v = jacobi_eigh(self._entries)
                # values within the solver's resolution of 0 are indistinguishable from 0;
                # left as +-1e-17 noise they would dominate x**alpha for alpha < 1
                w = np.where(np.abs(w) <= solver_resolution(self._entries), 0.0, w)
                self._spectrum = Spectrum(w, v)
        return self._spectrum

    def __repr__(self) -> str:
        kind = "diagonal" if self.is_diagonal else "dense"
        return f"DensityMatrix(d={self.d}, {kind})"


def eigendecompose(rho: DensityMatrix) -> Spectrum:
    return rho.spectrum()


def hermitian_eigvals(a) -> np.ndarray:
    a = np.asarray(a, dtype=np.complex128)
    if np.max(np.abs(a - a.conj().T), initial=0.0) > HERMITIAN_TOL * max(1.0, float(np.max(np.abs(a), initial=0.0))):
        raise DomainError("matrix is not Hermitian")
    return jacobi_eigh(a)[0]


def _pad_pair(rho: DensityMatrix, sigma: DensityMatrix):
    if rho.d != sigma.d:
        raise DomainError(f"truncations differ: {rho.d} vs {sigma.d}")


def clipped_eigenvalues(rho: DensityMatrix) -> np.ndarray:
    """Eigenvalues with rounding negatives (``>= -1e-10``) set to 0, renormalised."""
    lam = rho.spectrum().eigenvalues
    if lam.size and lam[-1] < -NEG_EIG_TOL:
        raise DomainError(f"state has eigenvalue {lam[-1]:.3g} < -1e-10")
    lam = np.clip(lam, 0.0, None)
    return lam / lam.sum()


def von_neumann_entropy(rho: DensityMatrix) -> float:
    return xlogx_sum(clipped_eigenvalues(rho)) * logbase.scale()


def quantum_power_trace(rho: DensityMatrix, alpha: float) -> float:
    """``tr(rho**alpha)``."""
    lam = clipped_eigenvalues(rho)
    nz = lam[lam > 0]
    return float(np.sum(nz**alpha))


def quantum_renyi(rho: DensityMatrix, alpha: float) -> float:
    _check_alpha(alpha)
    return math.log(quantum_power_trace(rho, alpha)) / (1.0 - alpha) * logbase.scale()


def quantum_tsallis(rho: DensityMatrix, alpha: float) -> float:
    _check_alpha(alpha)
    return (quantum_power_trace(rho, alpha) - 1.0) / (1.0 - alpha)


def difference_eigvals(rho: DensityMatrix, sigma: DensityMatrix) -> np.ndarray:
    """Eigenvalues of ``rho - sigma``."""
    _pad_pair(rho, sigma)
    if rho.is_diagonal and sigma.is_diagonal:
        return rho.diag() - sigma.diag()
    return jacobi_eigh(rho.entries - sigma.entries)[0]


def trace_distance(rho: DensityMatrix, sigma: DensityMatrix) -> float:
    return 0.5 * float(np.sum(np.abs(difference_eigvals(rho, sigma))))


def schatten_from_values(s: np.ndarray, p: float) -> float:
    s = np.abs(s)
    if p == math.inf:
        return float(s.max(initial=0.0))
    return float(np.sum(s**p) ** (1.0 / p))


def schatten_norm(a, p: float) -> float:
    """``l^p`` norm of the singular values; ``p = inf`` is the operator norm."""
    if not p >= 1:
        raise DomainError(f"Schatten index must be >= 1, got {p!r}")
    if isinstance(a, DensityMatrix):
        s = a.spectrum().eigenvalues
    else:
        a = np.asarray(a, dtype=np.complex128)
        if np.max(np.abs(a - a.conj().T), initial=0.0) <= HERMITIAN_TOL * max(1.0, float(np.max(np.abs(a), initial=0.0))):
            s = jacobi_eigh(a)[0]
        else:
            s = np.sqrt(np.clip(jacobi_eigh(a.conj().T @ a)[0], 0.0, None))
    return schatten_from_values(s, p)


def matrix_sqrt(rho: DensityMatrix) -> np.ndarray:
    return rho.spectrum().apply(lambda lam: np.sqrt(np.clip(lam, 0.0, None)))


def fidelity(rho: DensityMatrix, sigma: DensityMatrix) -> float:
    """``||sqrt(rho) sqrt(sigma)||_1``."""
    _pad_pair(rho, sigma)
    if rho.is_diagonal and sigma.is_diagonal:
        f = float(np.sum(np.sqrt(np.clip(rho.diag(), 0, None) * np.clip(sigma.diag(), 0, None))))
        return min(f, 1.0)
    rs = matrix_sqrt(sigma)
    m = rs @ rho.entries @ rs
    m = 0.5 * (m + m.conj().T)
    w = jacobi_eigh(m)[0]
    w = np.where(w <= solver_resolution(m), 0.0, w)
    f = float(np.sum(np.sqrt(w)))
    return min(f, 1.0)


@dataclass(frozen=True)
class HamiltonianSpec:
    """Hamiltonian diagonal in the Fock basis.

    Built-ins have eigenvalue ``(n + shift)**kappa`` on level ``n``; a
    ``custom`` spec carries explicit nondecreasing eigenvalues and is
    treated as the whole spectrum.
    """

    kind: str = "number"
    kappa: float = 1.0
    shift: float = 0.0
    custom: tuple | None = None

    def __post_init__(self):
        if self.kind not in ("number", "shifted", "power", "diagonal"):
            raise DomainError(f"unknown Hamiltonian kind {self.kind!r}")
        if self.kind == "diagonal":
            ev = np.asarray(self.custom, dtype=np.float64)
            if ev.ndim != 1 or ev.size == 0 or np.any(ev < 0) or np.any(np.diff(ev) < 0):
                raise DomainError("custom eigenvalues must be non-negative and nondecreasing")
        elif not self.kappa > 0 or self.shift < 0:
            raise DomainError("kappa must be positive and shift non-negative")

    @classmethod
    def number(cls) -> "HamiltonianSpec":
        return cls("number")

    @classmethod
    def shifted_number(cls, kappa: float = 1.0) -> "HamiltonianSpec":
        """``(N + 1)**kappa``."""
        return cls("shifted", kappa=kappa, shift=1.0)

    @classmethod
    def number_power(cls, kappa: float) -> "HamiltonianSpec":
        return cls("power", kappa=kappa)

    @classmethod
    def diagonal(cls, eigenvalues) -> "HamiltonianSpec":
        return cls("diagonal", custom=tuple(float(x) for x in eigenvalues))

    def eigenvalues(self, d: int) -> np.ndarray:
        if self.kind == "diagonal":
            ev = np.asarray(self.custom, dtype=np.float64)
            if ev.size < d:
                raise DomainError(f"custom spectrum has {ev.size} levels, truncation needs {d}")
            return ev[:d]
        return (np.arange(d, dtype=np.float64) + self.shift) ** self.kappa

    def power(self, b: float) -> "HamiltonianSpec":
        """The spec of ``H**b``."""
        if self.kind == "diagonal":
            return HamiltonianSpec.diagonal(np.asarray(self.custom) ** b)
        return HamiltonianSpec("power" if self.shift == 0 else "shifted", self.kappa * b, self.shift)

    @property
    def is_formula(self) -> bool:
        return self.kind != "diagonal"

    @property
    def ground_energy(self) -> float:
        return float(self.eigenvalues(1)[0])

    def label(self) -> str:
        if self.kind == "diagonal":
            return "diagonal"
        base = "N" if self.shift == 0 else f"(N+{self.shift:g})"
        return base if self.kappa == 1 else f"{base}^{self.kappa:g}"


NUMBER = HamiltonianSpec.number()


def energy(rho: DensityMatrix, H: HamiltonianSpec = NUMBER) -> float:
    """``tr(H rho)`` with ``H`` diagonal in the Fock basis."""
    return float(np.dot(H.eigenvalues(rho.d), rho.diag()))


def passive_state(rho: DensityMatrix) -> DensityMatrix:
    """Eigenvalues sorted nonincreasing onto Fock levels ``0, 1, 2, ...``."""
    lam = rho.spectrum().eigenvalues
    if lam.size and lam[-1] < -NEG_EIG_TOL:
        raise DomainError(f"state has eigenvalue {lam[-1]:.3g} < -1e-10")
    return DensityMatrix.diagonal(np.clip(lam, 0.0, None), check=False)


@dataclass(frozen=True)
class Projection:
    """Diagonal spectral projection onto the levels with ``H <= cutoff``."""

    mask: np.ndarray
    cutoff: float

    @property
    def rank(self) -> int:
        return int(self.mask.sum())

    def matrix(self) -> np.ndarray:
        return np.diag(self.mask.astype(np.float64))

    def schatten_norm(self, p: float) -> float:
        if self.rank == 0:
            return 0.0
        return 1.0 if p == math.inf else self.rank ** (1.0 / p)


def spectral_projection(H: HamiltonianSpec, cutoff: float, d: int) -> Projection:
    if not cutoff >= 0:
        raise DomainError(f"cutoff must be non-negative, got {cutoff!r}")
    return Projection(H.eigenvalues(d) <= cutoff, float(cutoff))


def gibbs_beta_number_op(E: float) -> float:
    """Inverse temperature of the number-operator Gibbs state with mean ``E``."""
    if not E > 0:
        raise DomainError(f"E must be positive, got {E!r}")
    return math.log1p(1.0 / E)


def gibbs_residual(beta: float, E: float, d: int) -> float:
    """``tr(e^{-beta N}(N - E)) / tr(e^{-beta N})`` over ``d`` levels."""
    n = np.arange(d, dtype=np.float64)
    wts = np.exp(-beta * n)
    return float(np.dot(wts, n - E) / wts.sum())


def gibbs_state_number_op(E: float, d: int, tol: float = DEFAULT_TAIL_TOL) -> tuple[DensityMatrix, float]:
    """``(gamma(E), beta(E))`` for the number operator; ``gamma`` is geometric with mean ``E``."""
    beta = gibbs_beta_number_op(E)
    g = geometric(E, d, tol)
    return DensityMatrix.diagonal(g.probs), beta


def gibbs_entropy_number_op(E: float) -> float:
    """``(E+1) log(E+1) - E log E`` in nats, in a form that stays accurate for large ``E``."""
    if E < 0:
        raise DomainError("energy must be non-negative")
    if E == 0:
        return 0.0
    return math.log1p(E) + E * math.log1p(1.0 / E)
