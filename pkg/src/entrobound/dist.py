"""Discrete distributions on the non-negative integers.

A distribution is a finite probability vector indexed by ``n = 0..d-1``;
entries past the truncation are taken to be zero. Entropies are returned in
the unit selected by :mod:`entrobound.logbase` (nats by default), and the
``0 log 0 = 0`` convention is used throughout.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import logbase
from .errors import DomainError, TruncationError
from .series import SeriesBracket, decreasing_sum, inverse_power_sum

NORMALIZATION_TOL = 1e-12
DEFAULT_TAIL_TOL = 1e-12


def _as_probs(values) -> np.ndarray:
    arr = np.array(values, dtype=np.float64).ravel()
    if arr.size == 0:
        raise DomainError("a distribution needs at least one entry")
    if not np.all(np.isfinite(arr)):
        raise DomainError("probabilities must be finite")
    if np.any(arr < 0):
        raise DomainError(f"probabilities must be non-negative (min entry {arr.min():.3g})")
    return arr


@dataclass(frozen=True, eq=False)
class DiscreteDistribution:
    """Probability vector on ``{0, ..., d-1}``.

    Construction rescales the input to unit mass. ``raw_mass`` keeps the
    mass before rescaling and ``tail_mass`` the mass a truncated infinite
    family discarded (zero for finite inputs).
    """

    probs: np.ndarray
    raw_mass: float = 1.0
    tail_mass: float = 0.0

    def __init__(self, probs, tail_mass: float = 0.0):
        arr = _as_probs(probs)
        total = float(arr.sum())
        if total <= 0:
            raise DomainError("probabilities sum to zero")
        arr = arr / total
        arr.setflags(write=False)
        object.__setattr__(self, "probs", arr)
        object.__setattr__(self, "raw_mass", total)
        object.__setattr__(self, "tail_mass", float(tail_mass))

    @classmethod
    def point_mass(cls, n: int, d: int | None = None) -> "DiscreteDistribution":
        d = n + 1 if d is None else d
        if not 0 <= n < d:
            raise DomainError(f"point mass at {n} does not fit truncation {d}")
        v = np.zeros(d)
        v[n] = 1.0
        return cls(v)

    @classmethod
    def uniform(cls, d: int) -> "DiscreteDistribution":
        return cls(np.full(d, 1.0 / d))

    @property
    def d(self) -> int:
        return self.probs.size

    @property
    def residual(self) -> float:
        return abs(float(self.probs.sum()) - 1.0)

    def is_normalized(self, tol: float = NORMALIZATION_TOL) -> bool:
        return self.residual <= tol

    def padded(self, d: int) -> np.ndarray:
        if d < self.d:
            raise DomainError(f"cannot pad length {self.d} down to {d}")
        out = np.zeros(d)
        out[: self.d] = self.probs
        return out

    def __len__(self) -> int:
        return self.d

    def __repr__(self) -> str:
        return f"DiscreteDistribution(d={self.d}, mean={mean(self):.6g})"


def _probs(p) -> np.ndarray:
    if isinstance(p, DiscreteDistribution):
        return p.probs
    return _as_probs(p)


def _pair(p, q) -> tuple[np.ndarray, np.ndarray]:
    a, b = _probs(p), _probs(q)
    d = max(a.size, b.size)
    if a.size < d:
        a = np.concatenate([a, np.zeros(d - a.size)])
    if b.size < d:
        b = np.concatenate([b, np.zeros(d - b.size)])
    return a, b


def xlogx_sum(p: np.ndarray) -> float:
    """``-sum p log p`` in nats with ``0 log 0 = 0``."""
    nz = p[p > 0]
    return float(-np.sum(nz * np.log(nz))) + 0.0  # + 0.0 maps -0.0 to 0.0


def binary_entropy_nats(eps: float) -> float:
    if eps <= 0.0 or eps >= 1.0:
        return 0.0
    return -eps * math.log(eps) - (1.0 - eps) * math.log1p(-eps)


def binary_entropy(eps: float) -> float:
    """``h(eps) = -eps log eps - (1 - eps) log(1 - eps)``."""
    if not 0.0 <= eps <= 1.0:
        raise DomainError(f"binary entropy needs eps in [0, 1], got {eps!r}")
    return binary_entropy_nats(eps) * logbase.scale()


def shannon_entropy(p) -> float:
    return xlogx_sum(_probs(p)) * logbase.scale()


def _check_alpha(alpha: float) -> None:
    if not alpha > 0:
        raise DomainError(f"alpha must be positive, got {alpha!r}")
    if alpha == 1:
        raise DomainError("alpha = 1 is the Shannon case; use shannon_entropy")


def power_sum(p, alpha: float) -> float:
    """``sum p_n**alpha`` over the support."""
    v = _probs(p)
    nz = v[v > 0]
    return float(np.sum(nz**alpha))


def renyi_entropy(p, alpha: float) -> float:
    _check_alpha(alpha)
    return math.log(power_sum(p, alpha)) / (1.0 - alpha) * logbase.scale()


def tsallis_entropy(p, alpha: float) -> float:
    _check_alpha(alpha)
    return (power_sum(p, alpha) - 1.0) / (1.0 - alpha)


def mean(p) -> float:
    v = _probs(p)
    return float(np.dot(np.arange(v.size, dtype=np.float64), v))


@dataclass(frozen=True)
class WeightSequence:
    """Positive weights ``w_n`` attached to the indices ``n = 0, 1, 2, ...``.

    kind
        ``"identity"``: ``w_n = max(n, 1)**kappa``;
        ``"shifted"``: ``w_n = (n + 1)**kappa`` (the weights ``w_i = i``
        for a support labelled ``1, 2, ...``);
        ``"custom"``: ``w_n = func(n)`` for a vectorised callable.
    """

    kind: str = "identity"
    kappa: float = 1.0
    func: Callable[[np.ndarray], np.ndarray] | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.kind not in ("identity", "shifted", "custom"):
            raise DomainError(f"unknown weight kind {self.kind!r}")
        if self.kind == "custom" and self.func is None:
            raise DomainError("custom weights need a callable")
        if self.kind != "custom" and not self.kappa > 0:
            raise DomainError("weight exponent kappa must be positive")

    @classmethod
    def ones(cls) -> "WeightSequence":
        return cls("custom", func=lambda n: np.ones_like(np.asarray(n, dtype=np.float64)))

    def values(self, d: int) -> np.ndarray:
        n = np.arange(d, dtype=np.float64)
        if self.kind == "identity":
            w = np.maximum(n, 1.0) ** self.kappa
        elif self.kind == "shifted":
            w = (n + 1.0) ** self.kappa
        else:
            w = np.asarray(self.func(n), dtype=np.float64)
        if np.any(~(w > 0)):
            raise DomainError("weights must be strictly positive")
        return w

    def inverse_power_norm(self, s: float, truncation: int = 10_000) -> SeriesBracket:
        """Bracket ``sum_n w_n**(-s)`` over all ``n >= 0``.

        Direct summation covers ``n < truncation``; the rest is an
        integral-test tail.
        """
        if self.kind == "custom":
            return decreasing_sum(lambda n: np.asarray(self.func(n), dtype=np.float64) ** (-s), 0, truncation)
        return _power_weight_norm(self.kind, self.kappa, s, truncation)


@functools.lru_cache(maxsize=64)
def _power_weight_norm(kind: str, kappa: float, s: float, truncation: int) -> SeriesBracket:
    if kind == "identity":
        # w_0 = w_1 = 1, then n**kappa
        b = inverse_power_sum(kappa * s, 1, truncation - 1, name="kappa*s")
        return SeriesBracket(1.0 + b.partial, b.tail_lower, b.tail_upper, truncation)
    return inverse_power_sum(kappa * s, 1, truncation, name="kappa*s")


def total_variation(p, q, w: WeightSequence | None = None) -> float:
    a, b = _pair(p, q)
    diff = np.abs(a - b)
    if w is not None:
        diff = diff * w.values(diff.size)
    return 0.5 * float(np.sum(diff))


@dataclass(frozen=True, eq=False)
class JointDistribution:
    """Probability matrix; rows index ``X``, columns index ``Y``."""

    probs: np.ndarray

    def __init__(self, probs):
        arr = np.array(probs, dtype=np.float64)
        if arr.ndim != 2:
            raise DomainError("a joint distribution is a matrix")
        if not np.all(np.isfinite(arr)) or np.any(arr < 0):
            raise DomainError("joint probabilities must be finite and non-negative")
        d = max(arr.shape)
        if arr.shape != (d, d):
            sq = np.zeros((d, d))
            sq[: arr.shape[0], : arr.shape[1]] = arr
            arr = sq
        total = float(arr.sum())
        if total <= 0:
            raise DomainError("joint probabilities sum to zero")
        arr = arr / total
        arr.setflags(write=False)
        object.__setattr__(self, "probs", arr)

    @property
    def d(self) -> int:
        return self.probs.shape[0]

    @property
    def residual(self) -> float:
        return abs(float(self.probs.sum()) - 1.0)

    def x_marginal(self) -> DiscreteDistribution:
        return DiscreteDistribution(self.probs.sum(axis=1))

    def y_marginal(self) -> DiscreteDistribution:
        return DiscreteDistribution(self.probs.sum(axis=0))

    def mismatch(self) -> float:
        """``P(X != Y)``, i.e. the off-diagonal mass."""
        return max(0.0, 1.0 - float(np.trace(self.probs)))

    def joint_entropy(self) -> float:
        return xlogx_sum(self.probs.ravel()) * logbase.scale()


def conditional_entropy(j: JointDistribution) -> float:
    """``H(X|Y) = H(XY) - H(Y)``."""
    hxy = xlogx_sum(j.probs.ravel())
    hy = xlogx_sum(j.probs.sum(axis=0))
    return max(0.0, hxy - hy) * logbase.scale()


def geometric_log_ratio(mean_value: float) -> float:
    """``log(1 - p)`` for the geometric law ``(1 - p)**k p`` with the given mean."""
    return -math.log1p(1.0 / mean_value)


def geometric(mean_value: float, d: int, tol: float = DEFAULT_TAIL_TOL) -> DiscreteDistribution:
    """Geometric law ``p_k = (1 - p)**k p``, ``p = 1/(mean + 1)``, on ``{0..d-1}``.

    Raises :class:`TruncationError` when the discarded mass ``(1 - p)**d``
    exceeds ``tol``. ``mean_value = 0`` gives the point mass at 0.
    """
    if not mean_value >= 0 or not math.isfinite(mean_value):
        raise DomainError(f"geometric mean must be finite and >= 0, got {mean_value!r}")
    if d < 1:
        raise DomainError("truncation must be >= 1")
    if mean_value == 0:
        return DiscreteDistribution.point_mass(0, d)
    log_r = geometric_log_ratio(mean_value)
    tail = math.exp(d * log_r)
    if tail > tol:
        raise TruncationError(
            f"geometric(mean={mean_value:.6g}) truncated at d={d} drops mass {tail:.3g} > {tol:.0e}",
            tail,
        )
    k = np.arange(d, dtype=np.float64)
    p0 = 1.0 / (mean_value + 1.0)
    return DiscreteDistribution(p0 * np.exp(k * log_r), tail_mass=tail)


def maximal_coupling(p, q) -> JointDistribution:
    """Coupling of ``p`` (rows) and ``q`` (columns) with ``P(X != Y) = TV(p, q)``.

    The diagonal carries ``min(p_n, q_n)``; the remaining mass is the outer
    product of the positive and negative parts of ``p - q`` divided by their
    common total.
    """
    a, b = _pair(p, q)
    diag = np.minimum(a, b)
    pos = np.clip(a - b, 0.0, None)
    neg = np.clip(b - a, 0.0, None)
    tv = float(pos.sum())
    joint = np.diag(diag)
    if tv > 0:
        joint = joint + np.outer(pos, neg) / tv
    return JointDistribution(joint)
