"""Continuity bounds for entropies of quantum states.

Four families live here:

* the tight energy-constrained von Neumann bound and the two comparison
  bounds for the number operator (``winter3`` and ``winter2``);
* the projection-approximation bounds on ``||f(rho) - f(sigma)||_1`` for
  ``f(x) = x**alpha`` and ``f(x) = -x log x``, and the Rényi/Tsallis bounds
  that follow from them for ``alpha in (0, 1)``;
* Lipschitz bounds in the Schatten ``alpha``-distance for ``alpha > 1``;
* moment bounds that supply the ``mu`` the approximation bounds need.

All spectral quantities of an infinite Hamiltonian (``tr(H**-s)``, the rank of
a spectral projection) are evaluated over the whole spectrum, not the
truncation of the state, using a partial sum plus an integral-test tail.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import logbase
from .classical import in_tight_domain, tight_bound_terms
from .dist import binary_entropy_nats
from .errors import ConfigurationError, DomainError, PreconditionError
from .linalg import jacobi_eigh
from .quantum import (
    DensityMatrix,
    HamiltonianSpec,
    difference_eigvals,
    energy,
    gibbs_entropy_number_op,
    quantum_power_trace,
    schatten_from_values,
)
from .report import BoundReport, multiplied, summed
from .series import SeriesBracket, decreasing_sum, inverse_power_sum

SERIES_TERMS = 1_000_000
CONJUGATE_TOL = 1e-12


# ---------------------------------------------------------------- von Neumann


def vn_continuity_bound(eps: float, E) -> BoundReport:
    """``h(eps) + E h(eps/E)`` for states with ``tr(N rho), tr(N sigma) <= E``.

    Tight on ``eps <= E/(E+1)``; outside that range the value is still
    returned with ``in_validity_domain = False``.
    """
    h1, h2, c = tight_bound_terms(eps, E)
    s = logbase.scale()
    return summed(
        "vn",
        [("h(eps)", h1 * s), ("E*h(eps/E)", h2 * s)],
        in_tight_domain(eps, c.E),
        eps=eps,
        E=c.E,
        log_base=logbase.current_base(),
    )


def _winter_args(eps: float, E: float) -> None:
    if not 0.0 <= eps <= 1.0:
        raise DomainError(f"eps must lie in [0, 1], got {eps!r}")
    if not (E > 0 and math.isfinite(E)):
        raise DomainError(f"E must be finite and > 0, got {E!r}")


def _limit_report(name: str, eps: float, E: float, **params) -> BoundReport:
    r = summed(name, [("h(eps)", 0.0), ("rest", 0.0)], True, eps=eps, E=E, **params)
    r.extras["eps_zero_limit"] = True
    return r


def winter_bound_general(eps: float, E: float) -> BoundReport:
    """``h(eps) + 2 eps S(gamma(E/eps))`` with the number-operator Gibbs entropy.

    ``S(gamma(x)) = (x+1) log(x+1) - x log x`` is evaluated as
    ``log1p(x) + x log1p(1/x)``. ``eps = 0`` returns the limit 0.
    """
    _winter_args(eps, E)
    if eps == 0.0:
        return _limit_report("winter-general", eps, E)
    s = logbase.scale()
    g = gibbs_entropy_number_op(E / eps)
    return summed(
        "winter-general",
        [("h(eps)", binary_entropy_nats(eps) * s), ("2*eps*S(gamma(E/eps))", 2.0 * eps * g * s)],
        True,
        eps=eps,
        E=E,
    )


def winter_bound_number_op(eps: float, E: float) -> BoundReport:
    """``h(eps) + 2 (E + eps) h(eps/(E + eps))``. ``eps = 0`` returns the limit 0."""
    _winter_args(eps, E)
    if eps == 0.0:
        return _limit_report("winter3", eps, E)
    s = logbase.scale()
    return summed(
        "winter3",
        [
            ("h(eps)", binary_entropy_nats(eps) * s),
            ("2*(E+eps)*h(eps/(E+eps))", 2.0 * (E + eps) * binary_entropy_nats(eps / (E + eps)) * s),
        ],
        True,
        eps=eps,
        E=E,
    )


def h_tilde(x: float) -> float:
    """``h(x)`` in nats for ``x <= 1/2`` and the constant 1 beyond."""
    return binary_entropy_nats(x) if x <= 0.5 else 1.0


def winter_bound_alpha(eps: float, E: float, alpha: float) -> BoundReport:
    """``K(eps, alpha, E)`` for ``alpha in (0, 1/2)``.

    With ``c = (1+alpha)/(1-alpha) + 2 alpha``::

        K = eps c [log(E+1) + log(eps/(alpha(1-eps)))] + 3 c h~((1+alpha)/(1-alpha) eps)

    The value is formed in nats (``h~`` jumps to the literal 1) and then
    converted to the active log base as a whole. ``eps = 0`` returns 0.
    """
    if not 0.0 < alpha < 0.5:
        raise DomainError(f"alpha must lie in (0, 1/2), got {alpha!r}")
    if not (E > 0 and math.isfinite(E)):
        raise DomainError(f"E must be finite and > 0, got {E!r}")
    if not 0.0 <= eps < 1.0:
        raise DomainError(f"eps must lie in (0, 1), got {eps!r}")
    if eps == 0.0:
        return _limit_report("winter2", eps, E, alpha=alpha)
    s = logbase.scale()
    ratio = (1.0 + alpha) / (1.0 - alpha)
    c = ratio + 2.0 * alpha
    r = summed(
        "winter2",
        [
            ("eps*c*log(E+1)", eps * c * math.log1p(E) * s),
            ("eps*c*log(eps/(alpha(1-eps)))", eps * c * math.log(eps / (alpha * (1.0 - eps))) * s),
            ("3*c*htilde(ratio*eps)", 3.0 * c * h_tilde(ratio * eps) * s),
        ],
        True,
        eps=eps,
        E=E,
        alpha=alpha,
    )
    r.extras.update(c=c, ratio=ratio, htilde_argument=ratio * eps)
    return r


def asymptotic_ratio(eps: float, n: int) -> float:
    """``K(eps, 1/n, e**n) / (eps n)`` (in nats)."""
    with logbase.log_base(math.e):
        return winter_bound_alpha(eps, math.exp(n), 1.0 / n).value / (eps * n)


# ------------------------------------------------------ Hamiltonian spectra


def trace_inverse_power(H: HamiltonianSpec, s: float, n_terms: int = SERIES_TERMS) -> SeriesBracket:
    """Bracket ``tr(H**-s)`` over the full spectrum of ``H``.

    Raises :class:`ConfigurationError` when the series diverges, which
    includes any Hamiltonian with a zero eigenvalue.
    """
    if not s > 0:
        raise ConfigurationError(f"exponent must be positive, got {s!r}")
    if not H.is_formula:
        ev = np.asarray(H.custom, dtype=np.float64)
        if np.any(ev <= 0):
            raise ConfigurationError("tr(H^-s) diverges: H has a zero eigenvalue")
        return SeriesBracket(float(np.sum(ev ** (-s))), 0.0, 0.0, ev.size)
    if H.shift <= 0:
        raise ConfigurationError(f"tr({H.label()}^-{s:.6g}) diverges: H has a zero eigenvalue")
    t = H.kappa * s
    if t <= 1.0:
        raise ConfigurationError(
            f"tr({H.label()}^-{s:.6g}) diverges: eigenvalue exponent {t:.17g} <= 1"
        )
    if H.shift == 1.0:
        return inverse_power_sum(t, 1, n_terms, name="exponent")
    shift = H.shift
    return decreasing_sum(lambda n: (n + shift) ** (-t), 0, n_terms)


def trace_exp_sqrt(H: HamiltonianSpec, n_terms: int = 100_000) -> SeriesBracket:
    """Bracket ``tr(exp(-sqrt(H)) (1 + H))`` over the full spectrum."""
    if not H.is_formula:
        ev = np.asarray(H.custom, dtype=np.float64)
        return SeriesBracket(float(np.sum(np.exp(-np.sqrt(ev)) * (1.0 + ev))), 0.0, 0.0, ev.size)
    k, sh = H.kappa, H.shift

    def f(n):
        h = (n + sh) ** k
        return np.exp(-np.sqrt(h)) * (1.0 + h)

    b = decreasing_sum(f, 0, n_terms)
    if not b.convergent:
        raise ConfigurationError(f"tr(exp(-sqrt(H))(1+H)) could not be certified finite for H = {H.label()}")
    return b


def projection_rank(H: HamiltonianSpec, beta: float, cutoff: float) -> int:
    """Rank of the spectral projection of ``H**beta`` onto ``[0, cutoff]``, over the full spectrum."""
    if not cutoff >= 0:
        raise DomainError(f"cutoff must be non-negative, got {cutoff!r}")
    if not math.isfinite(cutoff):
        raise ConfigurationError("projection cutoff is infinite")
    if not H.is_formula:
        return int(np.sum(np.asarray(H.custom) ** beta <= cutoff))
    e = H.kappa * beta
    x = cutoff ** (1.0 / e) - H.shift
    if x < 0:
        n = -1
    else:
        n = int(math.floor(x))
    # settle floating-point rounding at the boundary against the defining inequality
    while n >= 0 and (n + H.shift) ** e > cutoff:
        n -= 1
    while (n + 1 + H.shift) ** e <= cutoff:
        n += 1
    return n + 1


def spectral_moment(rho: DensityMatrix, H: HamiltonianSpec, beta: float, f) -> float:
    """``tr(H**beta f(rho)) = sum_k f(lambda_k) <v_k|H**beta|v_k>``."""
    sp = rho.spectrum()
    lam = np.clip(sp.eigenvalues, 0.0, None)
    hw = sp.diagonal_weights(H.power(beta).eigenvalues(rho.d)) if beta != 0 else np.ones_like(lam)
    return float(np.dot(f(lam), hw))


def power_function(alpha):
    def f(lam):
        out = np.zeros_like(lam)
        nz = lam > 0
        out[nz] = lam[nz] ** alpha
        return out

    return f


def _f_xlogx(lam):
    out = np.zeros_like(lam)
    nz = lam > 0
    out[nz] = -lam[nz] * np.log(lam[nz])
    return out


# --------------------------------------------------- approximation bounds


@dataclass(frozen=True)
class ModulusOfContinuity:
    """``omega`` and its integrated form ``omega*(t) = t int_t^inf omega(x)/x^2 dx``."""

    kind: str
    alpha: float | None = None

    def __post_init__(self):
        if self.kind == "holder":
            if self.alpha is None or not 0.0 < self.alpha < 1.0:
                raise DomainError(f"Hölder modulus needs alpha in (0, 1), got {self.alpha!r}")
        elif self.kind != "almost_lipschitz":
            raise DomainError(f"unknown modulus kind {self.kind!r}")

    @classmethod
    def holder(cls, alpha: float) -> "ModulusOfContinuity":
        return cls("holder", alpha)

    @classmethod
    def almost_lipschitz(cls) -> "ModulusOfContinuity":
        return cls("almost_lipschitz")

    def omega(self, t: float) -> float:
        if t < 0:
            raise DomainError("moduli are defined for t >= 0")
        if self.kind == "holder":
            return t**self.alpha
        if t == 0:
            return 0.0
        return -t * math.log(t) if t <= 1.0 / math.e else math.e

    def omega_star(self, t: float) -> float:
        if t < 0:
            raise DomainError("moduli are defined for t >= 0")
        if self.kind == "holder":
            return t**self.alpha / (1.0 - self.alpha)
        if t == 0:
            return 0.0
        if t <= 1.0 / math.e:
            lt = math.log(t)
            return (math.e**2 - 0.5) * t + t * lt * lt / 2.0
        return math.e


@dataclass(frozen=True)
class UniversalConstant:
    """The operator-Hölder constant ``c``; its numeric value is a configuration choice."""

    c: float = 1.0

    def __post_init__(self):
        if not (self.c > 0 and math.isfinite(self.c)):
            raise DomainError(f"universal constant must be finite and > 0, got {self.c!r}")


@dataclass(frozen=True)
class ApproxBoundInputs:
    """Inputs of the projection-approximation bound.

    ``alpha = w/q`` is both the Hölder order used and (for ``f = x**alpha``)
    the exponent of ``f``; ``p`` and ``q`` are Hölder conjugate. ``mu`` must
    dominate ``tr(H**beta_exp |f|(rho))`` and the same for ``sigma``.
    """

    rho: DensityMatrix
    sigma: DensityMatrix
    H: HamiltonianSpec
    beta_exp: float
    mu: float
    eps: float
    alpha: float
    w: float
    q: float
    p: float

    def __post_init__(self):
        if self.rho.d != self.sigma.d:
            raise DomainError(f"truncations differ: {self.rho.d} vs {self.sigma.d}")
        if not self.beta_exp > 0:
            raise DomainError(f"beta_exp must be positive, got {self.beta_exp!r}")
        if not self.eps > 0:
            raise DomainError(f"eps must be positive, got {self.eps!r}")
        if not (self.mu > 0 and math.isfinite(self.mu)):
            raise DomainError(f"mu must be finite and positive, got {self.mu!r}")
        if not 0.0 < self.alpha < 1.0:
            raise DomainError(f"alpha must lie in (0, 1), got {self.alpha!r}")
        if not (self.w >= 1.0 and self.q > 1.0 and self.p > 1.0):
            raise DomainError("need w >= 1 and q, p > 1")
        if abs(self.w / self.q - self.alpha) > CONJUGATE_TOL:
            raise DomainError(f"alpha = {self.alpha!r} differs from w/q = {self.w / self.q!r}")
        if abs(1.0 / self.p + 1.0 / self.q - 1.0) > CONJUGATE_TOL:
            raise DomainError(f"p = {self.p!r} and q = {self.q!r} are not Hölder conjugate")

    @classmethod
    def from_alpha_q(cls, rho, sigma, H, beta_exp, mu, eps, alpha, q) -> "ApproxBoundInputs":
        """Inputs with ``w = alpha q`` and ``p = q/(q-1)``."""
        if not q > 1:
            raise DomainError(f"q must exceed 1, got {q!r}")
        return cls(rho, sigma, H, beta_exp, mu, eps, alpha, alpha * q, q, q / (q - 1.0))


def _f_of(kind: str, alpha: float):
    if kind == "power":
        return power_function(alpha)
    if kind == "xlogx":
        return _f_xlogx
    raise DomainError(f"f must be 'power' or 'xlogx', got {kind!r}")


def trace_norm_difference(rho: DensityMatrix, sigma: DensityMatrix, f: str = "power", alpha: float = 0.5) -> float:
    """``||f(rho) - f(sigma)||_1`` computed from both spectral decompositions."""
    fn = _f_of(f, alpha)
    if rho.d != sigma.d:
        raise DomainError(f"truncations differ: {rho.d} vs {sigma.d}")
    if rho.is_diagonal and sigma.is_diagonal:
        return float(np.sum(np.abs(fn(np.clip(rho.diag(), 0, None)) - fn(np.clip(sigma.diag(), 0, None)))))
    a = rho.spectrum().apply(lambda lam: fn(np.clip(lam, 0.0, None)))
    b = sigma.spectrum().apply(lambda lam: fn(np.clip(lam, 0.0, None)))
    return schatten_from_values(difference_eigvals_dense(a - b), 1.0)


def difference_eigvals_dense(a: np.ndarray) -> np.ndarray:
    return jacobi_eigh(0.5 * (a + a.conj().T))[0]


def approx_trace_bound(inputs: ApproxBoundInputs, f: str = "power", c: UniversalConstant | None = None) -> BoundReport:
    """Bound on ``||f(rho) - f(sigma)||_1`` through the projection ``P = 1[H**beta <= mu/eps]``.

    ``f = "power"``: ``sqrt(8 eps)(sqrt||f(rho)||_1 + sqrt||f(sigma)||_1)
    + c |f|_{C^{w/q}} rank(P)**(1/p) ||rho - sigma||_w**(w/q)`` with
    ``f(x) = x**alpha`` and ``|f|_{C^alpha} = 1``.

    ``f = "xlogx"``: the second term is ``c |f| rank(P) omega*_AL(||rho - sigma||)``
    in operator norm, with ``|f|_{Lambda_AL} = 1``.
    """
    c = UniversalConstant() if c is None else c
    f_signed = _f_of(f, inputs.alpha)
    fn = lambda lam: np.abs(f_signed(lam))  # noqa: E731 - |f|, as in the trace norms
    H, b = inputs.H, inputs.beta_exp
    moments = (
        spectral_moment(inputs.rho, H, b, fn),
        spectral_moment(inputs.sigma, H, b, fn),
    )
    worst = max(moments)
    if worst > inputs.mu * (1.0 + 1e-12):
        raise PreconditionError(
            f"moment tr(H^{b:g}|f|(state)) = {worst:.17g} exceeds mu = {inputs.mu:.17g}", actual=worst
        )
    norms = tuple(
        float(np.sum(fn(np.clip(s.spectrum().eigenvalues, 0.0, None)))) for s in (inputs.rho, inputs.sigma)
    )
    gentle = math.sqrt(8.0 * inputs.eps) * (math.sqrt(norms[0]) + math.sqrt(norms[1]))
    cutoff = inputs.mu / inputs.eps
    rank = projection_rank(H, b, cutoff)
    diff = difference_eigvals(inputs.rho, inputs.sigma)
    seminorm = 1.0
    if f == "power":
        dist = schatten_from_values(diff, inputs.w)
        p_norm = rank ** (1.0 / inputs.p) if rank else 0.0
        proj = c.c * seminorm * p_norm * dist**inputs.alpha
        proj_name = "c*|f|*||P||_p*||rho-sigma||_w^(w/q)"
        modulus = ModulusOfContinuity.holder(inputs.alpha)
    else:
        dist = schatten_from_values(diff, math.inf)
        modulus = ModulusOfContinuity.almost_lipschitz()
        p_norm = float(rank)
        proj = c.c * seminorm * p_norm * modulus.omega_star(dist)
        proj_name = "c*|f|*||P||_1*omega*(||rho-sigma||)"
    r = summed(
        f"approx-{f}",
        [("sqrt(8eps)*(sqrt||f(rho)||_1+sqrt||f(sigma)||_1)", gentle), (proj_name, proj)],
        True,
        eps=inputs.eps,
        mu=inputs.mu,
        beta_exp=b,
        alpha=inputs.alpha,
        w=inputs.w,
        q=inputs.q,
        p=inputs.p,
        H=H.label(),
        c=c.c,
    )
    r.extras.update(
        c=c.c,
        f_seminorm=seminorm,
        modulus=modulus.kind,
        projection_cutoff=cutoff,
        projection_rank=rank,
        projection_norm=p_norm,
        distance=dist,
        f_norms=norms,
        moments=moments,
        d=inputs.rho.d,
    )
    return r


def quantum_renyi_tsallis_bound(inputs: ApproxBoundInputs, c: UniversalConstant | None = None) -> BoundReport:
    """``approx_trace_bound(power) / (1 - alpha)``, bounding both ``|T_alpha|`` and ``|R_alpha|`` differences.

    In a non-natural log base the Rényi version is ``extras["renyi_value"]``.
    """
    base = approx_trace_bound(inputs, "power", c)
    k = 1.0 / (1.0 - inputs.alpha)
    r = summed(
        "renyi-tsallis-quantum",
        [(f"[{name}]/(1-alpha)", v * k) for name, v in base.terms],
        True,
        **base.params,
    )
    r.extras.update(base.extras)
    r.extras["renyi_value"] = r.value * logbase.scale()
    return r


def minimal_constant(report: BoundReport, actual: float) -> float:
    """Smallest ``c`` for which ``report`` (built with any ``c``) still dominates ``actual``."""
    gentle, proj = (v for _, v in report.terms)
    unit = proj / report.extras["c"]
    excess = actual - gentle
    if excess <= 0:
        return 0.0
    if unit <= 0:
        return math.inf
    return excess / unit


# ------------------------------------------------------------- alpha > 1


def tsallis_lipschitz_bound(rho: DensityMatrix, sigma: DensityMatrix, alpha: float) -> BoundReport:
    """``alpha/(alpha-1) ||rho - sigma||_alpha`` for ``alpha > 1``."""
    if not alpha > 1.0:
        raise DomainError(f"alpha must exceed 1, got {alpha!r}")
    dist = schatten_from_values(difference_eigvals(rho, sigma), alpha)
    r = multiplied(
        "tsallis-lip",
        [("alpha/(alpha-1)", alpha / (alpha - 1.0)), ("||rho-sigma||_alpha", dist)],
        True,
        alpha=alpha,
    )
    gap = abs(quantum_power_trace(rho, alpha) - quantum_power_trace(sigma, alpha)) / (alpha - 1.0)
    r.extras["power_trace_gap"] = gap
    return r


@dataclass(frozen=True)
class RenyiCondition:
    """Either an explicit ``delta`` or an energy constraint ``(H, E, beta_split)`` that produces one."""

    delta: float | None = None
    H: HamiltonianSpec | None = None
    E: float | None = None
    beta_split: float | None = None

    @classmethod
    def from_delta(cls, delta: float) -> "RenyiCondition":
        return cls(delta=delta)

    @classmethod
    def from_hamiltonian(cls, H: HamiltonianSpec, E: float, beta_split: float) -> "RenyiCondition":
        return cls(H=H, E=E, beta_split=beta_split)


def renyi_delta(alpha: float, H: HamiltonianSpec, E: float, beta_split: float) -> tuple[float, SeriesBracket, float]:
    """``(delta, tau, s)`` with ``s = alpha b/((1-b)(alpha-1))``, ``tau = tr(H**-s)``, ``delta = E**(alpha b/(1-b)) tau**(alpha-1)``."""
    if not 0.0 < beta_split < 1.0:
        raise DomainError(f"beta_split must lie in (0, 1), got {beta_split!r}")
    if not E > 0:
        raise DomainError(f"E must be positive, got {E!r}")
    s = gt1_exponent(alpha, beta_split)
    tau = trace_inverse_power(H, s)
    delta = E ** (alpha * beta_split / (1.0 - beta_split)) * tau.upper ** (alpha - 1.0)
    return delta, tau, s


def renyi_alpha_gt1_bound(
    rho: DensityMatrix, sigma: DensityMatrix, alpha: float, condition: RenyiCondition
) -> BoundReport:
    """``alpha delta/(alpha-1) ||rho - sigma||_alpha`` for ``alpha > 1``.

    Requires ``tr(rho**alpha), tr(sigma**alpha) >= 1/delta``; with an energy
    condition ``delta`` is derived from ``E``, ``beta_split`` and ``tau`` and
    the energies of both states are checked against ``E``.
    """
    if not alpha > 1.0:
        raise DomainError(f"alpha must exceed 1, got {alpha!r}")
    params = {"alpha": alpha}
    extras = {}
    if condition.delta is not None:
        delta = float(condition.delta)
        if not delta > 0:
            raise DomainError("delta must be positive")
    else:
        if condition.H is None or condition.E is None or condition.beta_split is None:
            raise ConfigurationError("energy condition needs H, E and beta_split")
        delta, tau, s = renyi_delta(alpha, condition.H, condition.E, condition.beta_split)
        for name, st in (("rho", rho), ("sigma", sigma)):
            e = energy(st, condition.H)
            if e > condition.E * (1.0 + 1e-12):
                raise PreconditionError(f"tr(H {name}) = {e:.17g} exceeds E = {condition.E!r}", actual=e)
        params.update(E=condition.E, beta_split=condition.beta_split, H=condition.H.label())
        extras.update(tau=tau.upper, tau_partial=tau.partial, tau_exponent=s)
    traces = (quantum_power_trace(rho, alpha), quantum_power_trace(sigma, alpha))
    if min(traces) < 1.0 / delta * (1.0 - 1e-12):
        raise PreconditionError(
            f"tr(state^alpha) = {min(traces):.17g} < 1/delta = {1.0 / delta:.17g}", actual=min(traces)
        )
    dist = schatten_from_values(difference_eigvals(rho, sigma), alpha)
    params["delta"] = delta
    r = multiplied(
        "renyi-gt1",
        [("alpha*delta/(alpha-1)", alpha * delta / (alpha - 1.0) * logbase.scale()), ("||rho-sigma||_alpha", dist)],
        True,
        **params,
    )
    r.extras.update(extras, power_traces=traces)
    return r


# ---------------------------------------------------------- moment bounds


def moment_bound_f1(rho: DensityMatrix, H: HamiltonianSpec) -> BoundReport:
    """``tr(H**(1/2) f1(rho)) <= tr(H rho) + tr(exp(-sqrt(H))(1 + H))`` with ``f1(x) = -x log x``.

    The report's value is the right side; ``extras`` holds the left side and
    the slack.
    """
    lhs = spectral_moment(rho, H, 0.5, _f_xlogx)
    series = trace_exp_sqrt(H)
    r = summed(
        "moment-f1",
        [("tr(H rho)", energy(rho, H)), ("tr(exp(-sqrt(H))(1+H))", series.upper)],
        True,
        H=H.label(),
    )
    r.extras.update(lhs=lhs, slack=r.value - lhs, series_partial=series.partial)
    return r


def moment_bound_falpha(
    rho: DensityMatrix, H: HamiltonianSpec, alpha: float, variant: str = "general", r: float | None = None
) -> BoundReport:
    """Moment bounds for ``f(x) = x**alpha``, ``alpha in (0, 1)``.

    ``half_power`` (``alpha in (1/2, 1)``)::

        tr(H**(1/2) rho**alpha) <= tr(H rho) + tr(H**-((2 alpha - 1)/(2 (1 - alpha))))

    ``general`` (``r in (0, alpha]``, moment exponent ``alpha - r``)::

        tr(H**(alpha - r) rho**alpha) <= tr(H rho)**alpha tr(H**-(r/(1 - alpha)))

    ``extras["sharp_value"]`` holds the stronger
    ``tr(H rho)**alpha tr(H**-(r/(1-alpha)))**(1-alpha)``.
    Divergent series raise :class:`ConfigurationError` naming the exponent.
    """
    if not 0.0 < alpha < 1.0:
        raise DomainError(f"alpha must lie in (0, 1), got {alpha!r}")
    f = power_function(alpha)
    e = energy(rho, H)
    if variant == "half_power":
        if not alpha > 0.5:
            raise DomainError(f"the half-power bound needs alpha in (1/2, 1), got {alpha!r}")
        s = (2.0 * alpha - 1.0) / (2.0 * (1.0 - alpha))
        series = trace_inverse_power(H, s)
        lhs = spectral_moment(rho, H, 0.5, f)
        rep = summed(
            "moment-falpha-half",
            [("tr(H rho)", e), (f"tr(H^-{s:.6g})", series.upper)],
            True,
            H=H.label(),
            alpha=alpha,
            exponent=s,
        )
        moment_exp = 0.5
    elif variant == "general":
        if r is None or not 0.0 < r <= alpha:
            raise DomainError(f"r must lie in (0, alpha] = (0, {alpha!r}], got {r!r}")
        s = r / (1.0 - alpha)
        series = trace_inverse_power(H, s)
        moment_exp = alpha - r
        lhs = spectral_moment(rho, H, moment_exp, f)
        rep = multiplied(
            "moment-falpha-general",
            [("tr(H rho)^alpha", e**alpha), (f"tr(H^-{s:.6g})", series.upper)],
            True,
            H=H.label(),
            alpha=alpha,
            r=r,
            exponent=s,
        )
        rep.extras["sharp_value"] = e**alpha * series.upper ** (1.0 - alpha)
    else:
        raise DomainError(f"variant must be 'half_power' or 'general', got {variant!r}")
    rep.extras.update(lhs=lhs, slack=rep.value - lhs, moment_exponent=moment_exp, series_partial=series.partial)
    return rep


def gt1_exponent(alpha: float, beta_split: float) -> float:
    """``alpha beta/((1-beta)(alpha-1))``, the power of ``H`` whose inverse trace defines ``tau``."""
    return alpha * beta_split / ((1.0 - beta_split) * (alpha - 1.0))
