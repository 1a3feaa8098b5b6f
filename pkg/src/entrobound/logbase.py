"""Logarithm base shared by every entropy computed in one context.

All entropies are evaluated in nats and divided by ``log(base)`` on the way
out, so switching the base rescales every output consistently.

>>> from entrobound.logbase import log_base
>>> with log_base(2):
...     pass
"""

from __future__ import annotations

import contextlib
import contextvars
import math

from .errors import DomainError

_BASE: contextvars.ContextVar[float] = contextvars.ContextVar("entrobound_log_base", default=math.e)


def current_base() -> float:
    return _BASE.get()


def scale() -> float:
    """Factor converting nats into the active unit."""
    base = _BASE.get()
    if base == math.e:
        return 1.0
    return 1.0 / math.log(base)


def parse_base(value) -> float:
    if value is None or value in ("e", "natural", "nat", "nats"):
        return math.e
    if value in ("2", "bits", "bit"):
        return 2.0
    base = float(value)
    if not base > 1.0 or not math.isfinite(base):
        raise DomainError(f"log base must be a finite real > 1, got {value!r}")
    return base


@contextlib.contextmanager
def log_base(base):
    """Evaluate all entropies inside the block in the given base."""
    token = _BASE.set(parse_base(base))
    try:
        yield
    finally:
        _BASE.reset(token)
