"""Continuity bounds for classical entropies and their extremal witnesses.

The mean-constrained bound ``h(eps) + E h(eps/E)`` controls both the
conditional entropy of a joint law with mismatch probability ``eps`` and the
entropy difference of two laws at total variation ``eps``, as long as the
means are at most ``E`` and ``eps <= E/(E+1)``. The extremal laws below
attain it exactly (up to truncation).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import trapezoid

from . import logbase
from .dist import (
    DEFAULT_TAIL_TOL,
    DiscreteDistribution,
    JointDistribution,
    WeightSequence,
    binary_entropy_nats,
    geometric,
    power_sum,
    total_variation,
)
from .errors import ConfigurationError, DomainError, PreconditionError
from .report import BoundReport, multiplied, summed

_DOMAIN_SLACK = 1e-12


@dataclass(frozen=True)
class MeanConstraint:
    E: float

    def __post_init__(self):
        if not (self.E > 0 and math.isfinite(self.E)):
            raise DomainError(f"mean constraint E must be finite and > 0, got {self.E!r}")

    @property
    def threshold(self) -> float:
        """Largest ``eps`` covered by the tight bound, ``E/(E+1)``."""
        return self.E / (self.E + 1.0)


def _energy(E) -> MeanConstraint:
    return E if isinstance(E, MeanConstraint) else MeanConstraint(float(E))


def in_tight_domain(eps: float, E: float) -> bool:
    return eps <= E / (E + 1.0) * (1.0 + _DOMAIN_SLACK)


def tight_bound_terms(eps: float, E) -> tuple[float, float, MeanConstraint]:
    """``(h(eps), E h(min(eps/E, 1)))`` in nats."""
    if not 0.0 <= eps <= 1.0:
        raise DomainError(f"eps must lie in [0, 1], got {eps!r}")
    c = _energy(E)
    return binary_entropy_nats(eps), c.E * binary_entropy_nats(min(eps / c.E, 1.0)), c


def _tight(name: str, eps: float, E) -> BoundReport:
    h1, h2, c = tight_bound_terms(eps, E)
    s = logbase.scale()
    return summed(
        name,
        [("h(eps)", h1 * s), ("E*h(eps/E)", h2 * s)],
        in_tight_domain(eps, c.E),
        eps=eps,
        E=c.E,
        log_base=logbase.current_base(),
    )


def fano_bound(eps: float, E) -> BoundReport:
    """Upper bound on ``H(X|Y)`` given ``P(X != Y) = eps`` and ``E(X) <= E``."""
    return _tight("fano", eps, E)


def shannon_continuity_bound(eps: float, E) -> BoundReport:
    """Upper bound on ``|H(X) - H(Y)|`` given ``TV(X, Y) = eps`` and both means ``<= E``."""
    return _tight("shannon", eps, E)


def extremal_marginal(eps: float, E, d: int, tol: float = DEFAULT_TAIL_TOL) -> DiscreteDistribution:
    """The law ``1 - eps`` at 0 and ``eps w(n-1)`` at ``n >= 1``.

    ``w`` is geometric with mean ``E/eps - 1``, so the result has mean ``E``
    and entropy ``h(eps) + E h(eps/E)``. ``tol`` caps the total mass lost to
    truncation. ``eps = 0`` returns the point mass at 0.
    """
    c = _energy(E)
    if not 0.0 <= eps <= 1.0 or not in_tight_domain(eps, c.E):
        raise DomainError(f"extremal law needs 0 <= eps <= E/(E+1) = {c.threshold:.17g}, got {eps!r}")
    if eps == 0.0:
        return DiscreteDistribution.point_mass(0, d)
    if d < 2:
        raise DomainError("extremal law needs truncation d >= 2")
    w = geometric(max(c.E / eps - 1.0, 0.0), d - 1, tol=tol / eps)
    v = np.empty(d)
    v[0] = 1.0 - eps
    v[1:] = eps * w.probs
    return DiscreteDistribution(v, tail_mass=eps * w.tail_mass)


def extremal_joint(eps: float, E, d: int, tol: float = DEFAULT_TAIL_TOL) -> JointDistribution:
    """Joint law with ``X`` distributed as :func:`extremal_marginal` and ``Y = 0``."""
    m = extremal_marginal(eps, E, d, tol)
    j = np.zeros((d, d))
    j[:, 0] = m.probs
    return JointDistribution(j)


def _holder_exponent(alpha: float, beta: float) -> float:
    if not 0.0 < alpha < 1.0:
        raise DomainError(f"alpha must lie in (0, 1), got {alpha!r}")
    if not 0.0 < beta < alpha:
        raise DomainError(f"beta must lie in (0, alpha) = (0, {alpha!r}), got {beta!r}")
    return beta / (1.0 - alpha)


def classical_renyi_tsallis_bound(
    p,
    q,
    alpha: float,
    beta: float,
    w: WeightSequence | None = None,
    w_norm_truncation: int = 100_000,
) -> BoundReport:
    """Weighted Hölder bound on ``|T_alpha(p) - T_alpha(q)|`` and ``|R_alpha(p) - R_alpha(q)|``.

    ``2**alpha/(1-alpha) * TV_w**beta * TV**(alpha-beta) * ||w**(-s)||_1**(1-alpha)``
    with ``s = beta/(1-alpha)``. The weight norm is the upper end of a
    partial sum plus integral-test tail, so the reported value is never
    smaller than the exact one. In a non-natural log base the Rényi version
    is ``extras["renyi_value"]``.
    """
    w = WeightSequence() if w is None else w
    s = _holder_exponent(alpha, beta)
    if s <= 1.0:
        raise ConfigurationError(
            f"weight series sum w_n^(-beta/(1-alpha)) diverges for exponent beta/(1-alpha) = {s:.17g}"
        )
    norm = w.inverse_power_norm(s, w_norm_truncation)
    if not norm.convergent:
        raise ConfigurationError(
            f"integral test cannot certify sum w_n^(-{s:.6g}) (exponent beta/(1-alpha) = {s:.17g})"
        )
    tv_w = total_variation(p, q, w)
    tv = total_variation(p, q)
    if not math.isfinite(tv_w):
        raise ConfigurationError("weighted total variation is not finite")
    r = multiplied(
        "renyi-tsallis-classical",
        [
            ("2^alpha/(1-alpha)", 2.0**alpha / (1.0 - alpha)),
            ("TV_w^beta", tv_w**beta),
            ("TV^(alpha-beta)", tv ** (alpha - beta)),
            ("||w^-s||_1^(1-alpha)", norm.upper ** (1.0 - alpha)),
        ],
        True,
        alpha=alpha,
        beta=beta,
        exponent=s,
        weights=w.kind,
        kappa=w.kappa,
    )
    r.extras.update(
        tv=tv,
        tv_w=tv_w,
        weight_norm_partial=norm.partial,
        weight_norm_tail_upper=norm.tail_upper,
        weight_norm_truncation=w_norm_truncation,
        renyi_value=r.value * logbase.scale(),
    )
    return r


@dataclass(frozen=True, eq=False)
class GriddedDensity:
    """Density sampled on a uniform grid of an interval."""

    x: np.ndarray
    values: np.ndarray

    def __init__(self, x, values):
        x = np.asarray(x, dtype=np.float64)
        v = np.asarray(values, dtype=np.float64)
        if x.ndim != 1 or x.size < 2 or v.shape != x.shape:
            raise DomainError("grid and values must be 1-d arrays of the same length >= 2")
        steps = np.diff(x)
        if np.any(steps <= 0) or np.ptp(steps) > 1e-9 * abs(steps[0]):
            raise DomainError("grid must be uniform and increasing")
        if np.any(v < 0) or not np.all(np.isfinite(v)):
            raise DomainError("density values must be finite and non-negative")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "values", v)

    @classmethod
    def normalized(cls, x, values) -> "GriddedDensity":
        v = np.asarray(values, dtype=np.float64)
        return cls(x, v / trapezoid(v, x))

    def mass(self) -> float:
        return float(trapezoid(self.values, self.x))

    def integral_power(self, alpha: float) -> float:
        """Quadrature of ``mu**alpha``, the ``Tf_alpha`` functional."""
        return float(trapezoid(self.values**alpha, self.x))

    def sup(self) -> float:
        return float(self.values.max())


def continuous_tsallis(mu: GriddedDensity, alpha: float) -> float:
    return (mu.integral_power(alpha) - 1.0) / (1.0 - alpha)


def continuous_renyi(mu: GriddedDensity, alpha: float) -> float:
    return math.log(mu.integral_power(alpha)) / (1.0 - alpha) * logbase.scale()


def continuous_renyi_tsallis_bound(
    mu: GriddedDensity,
    nu: GriddedDensity,
    alpha: float,
    beta: float,
    w=None,
    delta_lower: float | None = None,
    entropy: str = "tsallis",
) -> BoundReport:
    """Bound for densities: ``L/(1-alpha)`` (Tsallis) or ``delta L/(1-alpha)`` (Rényi).

    ``L = ||mu-nu||_{L1(w)}**beta ||mu-nu||_{L1}**(alpha-beta) ||w**(-s)||_{L1}**(1-alpha)``
    with every integral a trapezoidal quadrature on the shared grid. ``w`` is
    a callable of ``x`` or an array on the grid (default: ones).
    """
    if entropy not in ("tsallis", "renyi"):
        raise DomainError(f"entropy must be 'tsallis' or 'renyi', got {entropy!r}")
    if mu.x.shape != nu.x.shape or np.max(np.abs(mu.x - nu.x)) > 1e-12:
        raise DomainError("densities must share the same grid")
    for name, m in (("mu", mu), ("nu", nu)):
        if abs(m.mass() - 1.0) > 1e-6:
            raise DomainError(f"{name} has quadrature mass {m.mass():.9g}, not 1 within 1e-6")
    s = _holder_exponent(alpha, beta)
    x = mu.x
    if w is None:
        wv = np.ones_like(x)
    elif callable(w):
        wv = np.asarray(w(x), dtype=np.float64)
    else:
        wv = np.asarray(w, dtype=np.float64)
    if wv.shape != x.shape or np.any(~(wv > 0)) or not np.all(np.isfinite(wv)):
        raise DomainError("weight function must be finite and positive on the grid")
    diff = np.abs(mu.values - nu.values)
    l1_w = float(trapezoid(wv * diff, x))
    l1 = float(trapezoid(diff, x))
    wnorm = float(trapezoid(wv ** (-s), x))
    if not math.isfinite(wnorm):
        raise ConfigurationError(f"integral of w^(-{s:.6g}) is not finite (exponent beta/(1-alpha))")
    terms = [
        ("||mu-nu||_L1(w)^beta", l1_w**beta),
        ("||mu-nu||_L1^(alpha-beta)", l1 ** (alpha - beta)),
        ("||w^-s||_L1^(1-alpha)", wnorm ** (1.0 - alpha)),
    ]
    tf_mu, tf_nu = mu.integral_power(alpha), nu.integral_power(alpha)
    if entropy == "tsallis":
        terms.insert(0, ("1/(1-alpha)", 1.0 / (1.0 - alpha)))
    else:
        if delta_lower is None:
            raise ConfigurationError("the Rényi bound needs delta_lower with Tf_alpha >= 1/delta_lower")
        if not delta_lower > 0:
            raise DomainError("delta_lower must be positive")
        floor = min(tf_mu, tf_nu)
        if floor < 1.0 / delta_lower:
            raise PreconditionError(
                f"Tf_alpha = {floor:.9g} < 1/delta_lower = {1.0 / delta_lower:.9g}", actual=floor
            )
        terms.insert(0, ("delta/(1-alpha)", delta_lower / (1.0 - alpha) * logbase.scale()))
    r = multiplied(f"{entropy}-continuous", terms, True, alpha=alpha, beta=beta, exponent=s, delta_lower=delta_lower)
    r.extras.update(tf_mu=tf_mu, tf_nu=tf_nu, l1=l1, l1_w=l1_w, weight_integral=wnorm)
    return r


def lp_norm(v: np.ndarray, alpha: float) -> float:
    return float(np.sum(np.abs(v) ** alpha) ** (1.0 / alpha))


def classical_alpha_gt1_bounds(p, q, alpha: float, delta: float | None = None, entropy: str = "tsallis") -> BoundReport:
    """Lipschitz bounds in the ``l^alpha`` distance for ``alpha > 1``.

    Tsallis: ``alpha/(alpha-1) ||p-q||_alpha``. Rényi: ``alpha delta/(alpha-1) ||p-q||_alpha``,
    valid when both power sums are at least ``1/delta``.
    """
    if not alpha > 1.0:
        raise DomainError(f"alpha must exceed 1, got {alpha!r}")
    a = p.probs if isinstance(p, DiscreteDistribution) else DiscreteDistribution(p).probs
    b = q.probs if isinstance(q, DiscreteDistribution) else DiscreteDistribution(q).probs
    n = max(a.size, b.size)
    a = np.pad(a, (0, n - a.size))
    b = np.pad(b, (0, n - b.size))
    dist = lp_norm(a - b, alpha)
    sa, sb = power_sum(a, alpha), power_sum(b, alpha)
    if entropy == "tsallis":
        r = multiplied("tsallis-gt1-classical", [("alpha/(alpha-1)", alpha / (alpha - 1.0)), ("||p-q||_alpha", dist)], True, alpha=alpha)
        r.extras["power_sum_gap"] = abs(sa - sb) / (alpha - 1.0)
        return r
    if entropy != "renyi":
        raise DomainError(f"entropy must be 'tsallis' or 'renyi', got {entropy!r}")
    if delta is None:
        raise ConfigurationError("the Rényi bound for alpha > 1 needs delta with sum p^alpha >= 1/delta")
    if min(sa, sb) < 1.0 / delta * (1.0 - 1e-12):
        raise PreconditionError(f"power sum {min(sa, sb):.9g} < 1/delta = {1.0 / delta:.9g}", actual=min(sa, sb))
    return multiplied(
        "renyi-gt1-classical",
        [("alpha*delta/(alpha-1)", alpha * delta / (alpha - 1.0) * logbase.scale()), ("||p-q||_alpha", dist)],
        True,
        alpha=alpha,
        delta=delta,
    )
