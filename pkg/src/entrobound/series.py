"""Partial sums of positive series with integral-test tail brackets.

For a positive function ``f`` decreasing on ``[N - 1, inf)``::

    int_N^inf f  <=  sum_{n >= N} f(n)  <=  int_{N-1}^inf f

Every helper returns a :class:`SeriesBracket`; ``upper`` is what callers use
whenever an upper bound must be preserved.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy import integrate

from .errors import ConfigurationError


@dataclass(frozen=True)
class SeriesBracket:
    partial: float
    tail_lower: float
    tail_upper: float
    n_terms: int

    @property
    def lower(self) -> float:
        return self.partial + self.tail_lower

    @property
    def upper(self) -> float:
        return self.partial + self.tail_upper

    @property
    def convergent(self) -> bool:
        return math.isfinite(self.tail_upper)


def power_tail(s: float, start: float) -> float:
    """``int_start^inf x**(-s) dx``; ``inf`` when ``s <= 1``."""
    if s <= 1.0:
        return math.inf
    if start <= 0:
        return math.inf
    return start ** (1.0 - s) / (s - 1.0)


def inverse_power_sum(s: float, first: int, n_terms: int, name: str = "exponent") -> SeriesBracket:
    """Bracket ``sum_{n >= first} n**(-s)`` with ``first >= 1``.

    Raises :class:`ConfigurationError` when the series diverges.
    """
    if s <= 1.0:
        raise ConfigurationError(f"series sum n^-{name} diverges: {name} = {s:.17g} <= 1")
    n = np.arange(first, first + n_terms, dtype=np.float64)
    partial = float(np.sum(n ** (-s)))
    nxt = first + n_terms
    return SeriesBracket(partial, power_tail(s, nxt), power_tail(s, nxt - 1), n_terms)


def decreasing_sum(f: Callable[[np.ndarray], np.ndarray], first: int, n_terms: int) -> SeriesBracket:
    """Bracket ``sum_{n >= first} f(n)`` for ``f`` positive and eventually decreasing.

    The tail integrals are evaluated by adaptive quadrature; a non-finite
    result means the integral test could not certify convergence.
    """
    n = np.arange(first, first + n_terms, dtype=np.float64)
    partial = float(np.sum(f(n)))
    nxt = first + n_terms

    def tail(a):
        val, _ = integrate.quad(lambda x: float(f(np.array([x]))[0]), a, math.inf, limit=200)
        return val if math.isfinite(val) else math.inf

    try:
        lo, hi = tail(nxt), tail(nxt - 1)
    except (ValueError, OverflowError, integrate.IntegrationWarning):
        lo = hi = math.inf
    return SeriesBracket(partial, lo, hi, n_terms)
