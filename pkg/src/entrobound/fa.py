"""Numerics for the finite-dimensional approximation (FA) property.

A state has the FA property when some weights ``g_k`` satisfy both
``sum lambda_k g_k < inf`` and ``beta log sum_k exp(-beta g_k) -> 0`` as
``beta -> 0``. For the slowly decaying spectra

    lambda_k = nu / (k log(k)**alpha),   k >= 2,

the entropy is finite for ``alpha > 2`` while the threshold weights
``g_k = log(k)**2`` give ``beta log Z(beta) >= 1/4``. This module evaluates
both facts with explicit partial sums and integral-test tails.

Closed forms used below, with ``U = log K``::

    int_K^inf dx / (x log(x)**s)                = U**(1-s) / (s-1)
    int_1^inf exp(-beta log(x)**2) dx          = e**(1/(4 beta)) sqrt(pi) (1 + erf(1/(2 sqrt(beta)))) / (2 sqrt(beta))
    int_K^inf exp(-beta log(x)**2) dx          = e**(1/(4 beta)) sqrt(pi)/(2 sqrt(beta)) erfc(sqrt(beta)(U - 1/(2 beta)))

The Gaussian integrals are kept in the log domain, so no ``e**(1/(4 beta))``
is ever formed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .series import SeriesBracket

NORMALIZER_TERMS = 1_000_000
LOG2 = math.log(2.0)


def _log_tail(s: float, K: float) -> float:
    """``int_K^inf dx/(x log(x)**s)``; ``inf`` for ``s <= 1``."""
    if s <= 1.0:
        return math.inf
    return math.log(K) ** (1.0 - s) / (s - 1.0)


@dataclass(frozen=True)
class EigenvalueFamily:
    """``lambda_k = nu / (k log(k)**alpha_exp)`` for ``k >= 2``, normalised to unit mass.

    ``nu`` is the reciprocal of ``sum_{k >= 2} 1/(k log(k)**alpha_exp)``,
    bracketed by a partial sum over ``normalizer_terms`` terms plus
    integral-test tails; ``nu_error`` is the half-width of that bracket
    propagated to ``nu``.
    """

    alpha_exp: float
    normalizer_terms: int = NORMALIZER_TERMS

    def __post_init__(self):
        if not self.alpha_exp > 1.0:
            raise DomainError(f"alpha_exp must exceed 1 for a normalisable family, got {self.alpha_exp!r}")
        z = self.zeta_bracket()
        mid = 0.5 * (z.lower + z.upper)
        object.__setattr__(self, "_nu", 1.0 / mid)
        object.__setattr__(self, "_nu_error", 0.5 * (z.upper - z.lower) / (z.lower * z.lower))

    def zeta_bracket(self) -> SeriesBracket:
        """Bracket of ``sum_{k >= 2} 1/(k log(k)**alpha_exp)``."""
        a = self.alpha_exp
        last = 1 + self.normalizer_terms
        k = np.arange(2, last + 1, dtype=np.float64)
        partial = float(np.sum(1.0 / (k * np.log(k) ** a)))
        return SeriesBracket(partial, _log_tail(a, last + 1), _log_tail(a, last), self.normalizer_terms)

    @property
    def nu(self) -> float:
        return self._nu

    @property
    def nu_error(self) -> float:
        return self._nu_error

    def eigenvalues(self, K: int) -> np.ndarray:
        """``lambda_2, ..., lambda_K``."""
        k = np.arange(2, K + 1, dtype=np.float64)
        return self.nu / (k * np.log(k) ** self.alpha_exp)

    def mass_bracket(self, K: int) -> tuple[float, float]:
        """Bounds on the total mass: partial sum to ``K`` plus integral tails."""
        part = float(np.sum(self.eigenvalues(K)))
        return (
            part + self.nu * _log_tail(self.alpha_exp, K + 1),
            part + self.nu * _log_tail(self.alpha_exp, K),
        )


@dataclass(frozen=True)
class GSequence:
    """Weights ``g_k = log(k)**q`` (``kind="log_power"``) or ``g_k = 0`` (``kind="zero"``)."""

    kind: str = "log_power"
    q: float = 2.0

    def __post_init__(self):
        if self.kind not in ("log_power", "zero"):
            raise DomainError(f"unknown weight rule {self.kind!r}")
        if self.kind == "log_power" and not self.q >= 0:
            raise DomainError(f"q must be non-negative, got {self.q!r}")

    @classmethod
    def zero(cls) -> "GSequence":
        return cls("zero", 0.0)

    def values(self, k: np.ndarray) -> np.ndarray:
        k = np.asarray(k, dtype=np.float64)
        if self.kind == "zero":
            return np.zeros_like(k)
        return np.log(k) ** self.q


@dataclass(frozen=True)
class EntropyVerdict:
    alpha_exp: float
    K: int
    partial: float
    tail_lower: float
    tail_upper: float
    finite: bool
    condensation: dict

    @property
    def upper(self) -> float:
        return self.partial + self.tail_upper

    @property
    def lower(self) -> float:
        return self.partial + self.tail_lower


def _entropy_tail(nu: float, a: float, K: float) -> float:
    """``int_K^inf nu (log x + a log log x - log nu) / (x log(x)**a) dx`` for ``a > 2``."""
    U = math.log(K)
    return nu * (
        U ** (2.0 - a) / (a - 2.0)
        + a * U ** (1.0 - a) * (math.log(U) / (a - 1.0) + 1.0 / (a - 1.0) ** 2)
        - math.log(nu) * U ** (1.0 - a) / (a - 1.0)
    )


def condensation_coefficients(nu: float, a: float) -> tuple[float, float, float]:
    """``(a, b, c)`` with ``2**k x_{2**k} = a k**-alpha + b k**(1-alpha) + c log(k) k**-alpha``.

    Here ``x_n = -lambda_n log(lambda_n)`` is the entropy summand.
    """
    base = nu * LOG2 ** (-a)
    return base * (a * math.log(LOG2) - math.log(nu)), nu * LOG2 ** (1.0 - a), nu * a * LOG2 ** (-a)


def entropy_terms(family: EigenvalueFamily, n: np.ndarray) -> np.ndarray:
    lam = family.nu / (n * np.log(n) ** family.alpha_exp)
    return -lam * np.log(lam)


def counterexample_entropy(alpha_exp: float, K: int = 1_000_000, family: EigenvalueFamily | None = None) -> EntropyVerdict:
    """Partial entropy ``sum_{k=2}^K -lambda_k log lambda_k`` with integral-test tail bounds.

    The condensed series ``sum_k 2**k x_{2**k}`` is reported through its
    coefficients and its convergence exponent ``alpha_exp - 1``.
    """
    if not 2.0 < alpha_exp <= 3.0:
        raise DomainError(f"alpha_exp must lie in (2, 3], got {alpha_exp!r}")
    if K < 1000:
        raise DomainError(f"horizon K must be at least 1000, got {K!r}")
    fam = family if family is not None else EigenvalueFamily(alpha_exp)
    k = np.arange(2, K + 1, dtype=np.float64)
    partial = float(np.sum(entropy_terms(fam, k)))
    lo, hi = _entropy_tail(fam.nu, alpha_exp, K + 1), _entropy_tail(fam.nu, alpha_exp, K)
    a, b, c = condensation_coefficients(fam.nu, alpha_exp)
    cond = {
        "a": a,
        "b": b,
        "c": c,
        "slowest_exponent": alpha_exp - 1.0,
        "convergent": alpha_exp - 1.0 > 1.0,
    }
    return EntropyVerdict(alpha_exp, K, partial, lo, hi, math.isfinite(hi) and cond["convergent"], cond)


@dataclass(frozen=True)
class FeasibilityVerdict:
    partial: float
    tail_upper: float
    convergent: bool
    tail_exponent: float


def fa_weight_feasibility(family: EigenvalueFamily, g: GSequence, K: int = 1_000_000) -> FeasibilityVerdict:
    """``sum_{k=2}^K lambda_k g_k`` and the integral-test verdict on the rest.

    With ``g_k = log(k)**q`` the tail behaves like ``int dx/(x log(x)**(alpha - q))``,
    which is finite exactly when ``alpha - q > 1``.
    """
    if K < 1000:
        raise DomainError(f"horizon K must be at least 1000, got {K!r}")
    if g.kind == "zero":
        return FeasibilityVerdict(0.0, 0.0, True, math.inf)
    k = np.arange(2, K + 1, dtype=np.float64)
    partial = float(np.dot(family.eigenvalues(K), g.values(k)))
    s = family.alpha_exp - g.q
    tail = family.nu * _log_tail(s, K)
    return FeasibilityVerdict(partial, tail, math.isfinite(tail), s)


# ------------------------------------------------------------ beta log Z


def log_gaussian_integral(beta: float) -> float:
    """``log int_1^inf exp(-beta log(x)**2) dx``."""
    rb = math.sqrt(beta)
    return 1.0 / (4.0 * beta) + math.log(math.sqrt(math.pi) * (1.0 + math.erf(1.0 / (2.0 * rb))) / (2.0 * rb))


def log_gaussian_tail(beta: float, K: float) -> float:
    """``log int_K^inf exp(-beta log(x)**2) dx``."""
    rb = math.sqrt(beta)
    tail = math.erfc(rb * (math.log(K) - 1.0 / (2.0 * beta)))
    if tail == 0.0:
        return -math.inf
    return 1.0 / (4.0 * beta) + math.log(math.sqrt(math.pi) / (2.0 * rb) * tail)


@dataclass(frozen=True)
class BetaLogZ:
    """Bracket ``lower <= beta log Z(beta) <= upper`` for ``Z = sum_{k >= 1} exp(-beta log(k)**2)``."""

    beta: float
    lower: float
    upper: float
    log_integral: float

    @property
    def width(self) -> float:
        return self.upper - self.lower


def beta_log_z(beta: float) -> BetaLogZ:
    """Sandwich ``I <= Z <= 1 + I`` with ``I`` the Gaussian integral, in the log domain."""
    if not 0.0 < beta <= 0.2:
        raise DomainError(f"beta must lie in (0, 0.2], got {beta!r}")
    li = log_gaussian_integral(beta)
    return BetaLogZ(beta, beta * li, beta * (li + math.log1p(math.exp(-li))), li)


def beta_log_z_direct(beta: float, K: int = 1_000_000) -> tuple[float, float]:
    """Bracket from the partial sum to ``K`` plus the exact tail integrals from ``K+1`` and ``K``."""
    if not beta > 0:
        raise DomainError(f"beta must be positive, got {beta!r}")
    lk = np.log(np.arange(1, K + 1, dtype=np.float64))
    partial = float(np.sum(np.exp(-beta * lk * lk)))
    lo = partial + math.exp(log_gaussian_tail(beta, K + 1))
    hi = partial + math.exp(log_gaussian_tail(beta, K))
    return beta * math.log(lo), beta * math.log(hi)
