"""Random instances for the Monte Carlo and property checks.

Every sampler draws from a :class:`~entrobound.rng.CounterRNG` stream, so an
instance is a pure function of ``(seed, trial)``.
"""

from __future__ import annotations

import numpy as np

from .dist import DiscreteDistribution, JointDistribution
from .quantum import DensityMatrix
from .rng import CounterRNG


def random_simplex(rng: CounterRNG, d: int) -> np.ndarray:
    """Uniform point of the probability simplex (normalised exponentials)."""
    x = rng.exponential(d)
    return x / x.sum()


def random_decaying(rng: CounterRNG, d: int) -> np.ndarray:
    """Probability vector with a random exponential envelope, so that means stay moderate."""
    scale = np.exp(rng.between(np.log(0.2), np.log(max(d / 2.0, 1.0))))
    env = np.exp(-np.arange(d) / scale)
    x = rng.exponential(d) * env
    if rng.scalar() < 0.3:
        # occasionally sparse
        x = x * (rng.uniform(d) < 0.3)
        if x.sum() == 0:
            x[0] = 1.0
    return x / x.sum()


def random_distribution(rng: CounterRNG, d: int) -> DiscreteDistribution:
    return DiscreteDistribution(random_decaying(rng, d))


def random_fano_joint(rng: CounterRNG, d: int) -> JointDistribution:
    """Joint law ``(1 - t) diag(p) + t p r^T``: ``X ~ p``, ``Y`` a noisy copy."""
    p = random_decaying(rng, d)
    r = random_decaying(rng, d) if rng.scalar() < 0.5 else random_simplex(rng, d)
    t = rng.scalar()
    return JointDistribution((1.0 - t) * np.diag(p) + t * np.outer(p, r))


def random_unitary(rng: CounterRNG, d: int) -> np.ndarray:
    """Haar-distributed unitary from the QR factorisation of a complex Gaussian matrix."""
    z = (rng.normal(d * d) + 1j * rng.normal(d * d)).reshape(d, d) / np.sqrt(2.0)
    qm, r = np.linalg.qr(z)
    ph = np.diagonal(r) / np.abs(np.diagonal(r))
    return qm * ph


def random_spectrum(rng: CounterRNG, d: int) -> np.ndarray:
    lam = random_decaying(rng, d)
    if rng.scalar() < 0.1:
        lam = np.zeros(d)
        lam[0] = 1.0  # pure
    return lam


def random_state(rng: CounterRNG, d: int, rotated: bool | None = None) -> DensityMatrix:
    """Random state; diagonal in the Fock basis unless ``rotated`` (default: coin flip)."""
    lam = random_spectrum(rng, d)
    if rotated is None:
        rotated = rng.scalar() < 0.5
    if not rotated:
        return DensityMatrix.diagonal(lam)
    u = random_unitary(rng, d)
    m = (u * lam) @ u.conj().T
    m = 0.5 * (m + m.conj().T)
    m = m / np.real(np.trace(m))
    return DensityMatrix(m)


def perturbed_pair(rng: CounterRNG, d: int) -> tuple[np.ndarray, np.ndarray, float]:
    """``(p, (1 - eps) p + eps q, eps)`` with ``p, q`` uniform on the simplex and ``eps`` uniform."""
    p = random_simplex(rng, d)
    q = random_simplex(rng, d)
    eps = rng.scalar()
    return p, (1.0 - eps) * p + eps * q, eps
