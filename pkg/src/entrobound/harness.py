"""Experiment drivers behind the command-line interface.

Each driver is a pure function of its arguments and returns plain rows
(dicts with a fixed key order) plus, where relevant, a summary dict. Monte
Carlo trial ``t`` draws everything from ``CounterRNG(seed).spawn(t)``, so the
result does not depend on how trials are scheduled; with ``workers > 1`` the
trials run in a process pool and are reassembled in trial order.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import partial

import numpy as np

from . import fa, qbounds
from .classical import (
    classical_renyi_tsallis_bound,
    extremal_marginal,
    fano_bound,
    shannon_continuity_bound,
)
from .dist import (
    WeightSequence,
    conditional_entropy,
    mean,
    renyi_entropy,
    shannon_entropy,
    total_variation,
    tsallis_entropy,
)
from .errors import DomainError
from .logbase import log_base
from .quantum import (
    DensityMatrix,
    HamiltonianSpec,
    energy,
    quantum_power_trace,
    quantum_renyi,
    quantum_tsallis,
    trace_distance,
    von_neumann_entropy,
)
from .rng import CounterRNG
from .sampling import perturbed_pair, random_decaying, random_fano_joint, random_state

VIOLATION_TOL = 1e-10
DEFAULT_WINTER2_ALPHAS = (0.05, 0.1, 0.2, 0.4)
RENYI_TSALLIS_BETAS = (0.55, 0.65, 0.75)
DEFAULT_FA_BETAS = (0.1, 0.05, 0.02, 0.01, 0.005)
DEFAULT_FA_ALPHAS = (2.2, 2.5, 2.8)


# ------------------------------------------------------------------ grids


@dataclass(frozen=True)
class Range:
    """``n`` points on ``[lo, hi]``; a range with ``lo == 0`` is open at 0."""

    lo: float
    hi: float
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise DomainError("grid ranges need at least one point")
        if not self.hi >= self.lo:
            raise DomainError(f"empty grid range [{self.lo!r}, {self.hi!r}]")

    def points(self) -> list[float]:
        if self.lo == 0.0:
            return [self.hi * i / self.n for i in range(1, self.n + 1)]
        if self.n == 1:
            return [self.lo]
        return [float(x) for x in np.linspace(self.lo, self.hi, self.n)]


@dataclass(frozen=True)
class Grid:
    eps: Range
    E: Range

    @classmethod
    def parse(cls, text: str) -> "Grid":
        """``"EPS_LO:EPS_HI:N,E_LO:E_HI:M"``."""
        try:
            a, b = text.split(",")
            parts = [p.split(":") for p in (a, b)]
            ranges = [Range(float(lo), float(hi), int(n)) for lo, hi, n in parts]
        except ValueError as exc:
            raise DomainError(f"grid must look like 'EPS_LO:EPS_HI:N,E_LO:E_HI:M', got {text!r}") from exc
        return cls(*ranges)

    def format(self) -> str:
        return f"{self.eps.lo!r}:{self.eps.hi!r}:{self.eps.n},{self.E.lo!r}:{self.E.hi!r}:{self.E.n}"


DEFAULT_GRID = Grid(Range(0.0, 0.9, 20), Range(0.25, 8.0, 20))


# ------------------------------------------------------------------ sweep


def sweep_columns(alphas) -> list[str]:
    cols = ["epsilon", "E", "bound_tight", "bound_winter3"]
    cols += [f"bound_winter2_a{a!r}" for a in alphas]
    cols += ["diff_w3"] + [f"diff_w2_a{a!r}" for a in alphas]
    return cols


def sweep(grid: Grid = DEFAULT_GRID, alphas=DEFAULT_WINTER2_ALPHAS) -> list[dict]:
    """Rows ``(eps, E, tight, winter3, winter2(alpha)..., differences)``, ``E`` outer, ``eps`` inner."""
    rows = []
    for E in grid.E.points():
        for eps in grid.eps.points():
            tight = qbounds.vn_continuity_bound(eps, E).value
            w3 = qbounds.winter_bound_number_op(eps, E).value
            w2 = [qbounds.winter_bound_alpha(eps, E, a).value for a in alphas]
            row = {"epsilon": eps, "E": E, "bound_tight": tight, "bound_winter3": w3}
            row.update({f"bound_winter2_a{a!r}": v for a, v in zip(alphas, w2)})
            row["diff_w3"] = w3 - tight
            row.update({f"diff_w2_a{a!r}": v - tight for a, v in zip(alphas, w2)})
            rows.append(row)
    return rows


def winter_crossings(rows: list[dict], alphas) -> dict:
    """Per ``alpha``: the ``E`` values at which ``winter2`` beats ``winter3`` somewhere in ``eps``."""
    out = {}
    for a in alphas:
        key = f"bound_winter2_a{a!r}"
        out[repr(a)] = sorted({r["E"] for r in rows if r[key] < r["bound_winter3"]})
    return out


# -------------------------------------------------------------- tightness


def tightness(
    grid: Grid = Grid(Range(0.0, 1.0, 20), Range(0.25, 8.0, 20)),
    d: int = 4096,
    tol: float = 1e-9,
    include_zero: bool = False,
) -> list[dict]:
    """Extremal entropy against the tight bound.

    For each ``E`` the ``eps`` points are ``threshold * x`` for the grid's
    ``eps`` points ``x`` (``threshold = E/(E+1)``), so every row is inside the
    validity domain. ``tol`` is the truncation budget of the extremal law.
    """
    rows = []
    for E in grid.E.points():
        thr = E / (E + 1.0)
        fracs = ([0.0] if include_zero else []) + grid.eps.points()
        for x in fracs:
            eps = min(thr * x, thr)
            m = extremal_marginal(eps, E, d, tol=tol)
            rho = DensityMatrix.diagonal(m.probs)
            achieved = von_neumann_entropy(rho)  # sigma = |0><0| has zero entropy
            bound = qbounds.vn_continuity_bound(eps, E).value
            rows.append(
                {
                    "epsilon": eps,
                    "E": E,
                    "bound": bound,
                    "achieved": achieved,
                    "gap": abs(bound - achieved),
                    "tail_mass": m.tail_mass,
                    "d": d,
                }
            )
    return rows


def asymptotic_table(eps: float = 0.3, ns=range(5, 21)) -> list[dict]:
    """``K(eps, 1/n, e**n)`` against ``eps n`` and against the tight entropy gap."""
    rows = []
    for n in ns:
        E = math.exp(n)
        with log_base(math.e):
            K = qbounds.winter_bound_alpha(eps, E, 1.0 / n).value
            tight = qbounds.vn_continuity_bound(min(eps, E / (E + 1.0)), E).value
        rows.append({"n": n, "K": K, "ratio_eps_n": K / (eps * n), "ratio_tight": K / tight})
    return rows


def asymptotic_verdict(rows: list[dict], target_tol: float = 0.15) -> dict:
    r = [row["ratio_eps_n"] for row in rows]
    monotone = all(b < a for a, b in zip(r, r[1:]))
    final = r[-1]
    return {
        "monotone_decreasing": monotone,
        "final_ratio": final,
        "final_within_tol": abs(final - 1.0) <= target_tol,
        "passed": monotone and abs(final - 1.0) <= target_tol,
    }


# ---------------------------------------------------------------------- FA


def fa_report(betas=DEFAULT_FA_BETAS, alphas=DEFAULT_FA_ALPHAS, K: int = 1_000_000) -> dict:
    brackets = []
    for b in betas:
        z = fa.beta_log_z(b)
        brackets.append(
            {"beta": b, "lower": z.lower, "upper": z.upper, "width": z.width, "floor_ok": z.lower > 0.25}
        )
    entropies = []
    for a in alphas:
        v = fa.counterexample_entropy(a, K)
        entropies.append(
            {
                "alpha_exp": a,
                "K": K,
                "partial": v.partial,
                "tail_upper": v.tail_upper,
                "entropy_upper": v.upper,
                "finite": v.finite,
            }
        )
    return {
        "beta_log_z": brackets,
        "entropy": entropies,
        "all_floors_ok": all(r["floor_ok"] for r in brackets),
    }


# ------------------------------------------------------------ Monte Carlo


@dataclass
class MonteCarloResult:
    experiment: str
    rows: list[dict]
    summary: dict = field(default_factory=dict)


def _run(fn, seed: int, trials: int, workers: int) -> list[list[dict]]:
    if workers <= 1:
        return [fn(seed, t) for t in range(trials)]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(fn, [seed] * trials, range(trials), chunksize=max(1, trials // (8 * workers))))


def _fano_trial(seed: int, t: int, dim: int) -> list[dict]:
    rng = CounterRNG(seed).spawn(t)
    d = rng.integers(2, dim + 1)
    j = random_fano_joint(rng, d)
    eps = j.mismatch()
    E = mean(j.x_marginal())
    if E <= 0:
        return [{"trial": t, "kind": "fano", "d": d, "eps": eps, "E": E, "actual": 0.0, "bound": 0.0,
                 "margin": 0.0, "in_domain": False}]
    b = fano_bound(min(eps, 1.0), E)
    actual = conditional_entropy(j)
    return [{"trial": t, "kind": "fano", "d": d, "eps": eps, "E": E, "actual": actual, "bound": b.value,
             "margin": b.value - actual, "in_domain": b.in_validity_domain}]


def _shannon_trial(seed: int, t: int, dim: int) -> list[dict]:
    rng = CounterRNG(seed).spawn(t)
    p = random_decaying(rng, dim)
    s = rng.scalar()
    q = (1.0 - s) * p + s * random_decaying(rng, dim)
    eps = total_variation(p, q)
    E = max(mean(p), mean(q))
    b = shannon_continuity_bound(min(eps, 1.0), E)
    actual = abs(shannon_entropy(p) - shannon_entropy(q))
    return [{"trial": t, "kind": "shannon", "d": dim, "eps": eps, "E": E, "actual": actual, "bound": b.value,
             "margin": b.value - actual, "in_domain": b.in_validity_domain}]


def _renyi_classical_trial(seed: int, t: int, dim: int, alpha: float, betas) -> list[dict]:
    rng = CounterRNG(seed).spawn(t)
    p, q, eps = perturbed_pair(rng, dim)
    w = WeightSequence("shifted", 1.0)
    dt = abs(tsallis_entropy(p, alpha) - tsallis_entropy(q, alpha))
    dr = abs(renyi_entropy(p, alpha) - renyi_entropy(q, alpha))
    rows = []
    for beta in betas:
        b = classical_renyi_tsallis_bound(p, q, alpha, beta, w)
        rv = b.extras["renyi_value"]
        rows.append({"trial": t, "kind": f"beta={beta!r}", "d": dim, "eps": eps, "beta": beta,
                     "actual": dt, "bound": b.value, "margin": b.value - dt,
                     "actual_renyi": dr, "margin_renyi": rv - dr, "in_domain": True})
    return rows


def _quantum_trial(seed: int, t: int, dim: int, alpha: float, c: float) -> list[dict]:
    rng = CounterRNG(seed).spawn(t)
    d = rng.integers(2, dim + 1)
    rotated = rng.scalar() < 0.5
    rho = random_state(rng, d, rotated)
    sigma = random_state(rng, d, rotated)
    rows = []
    base = {"trial": t, "d": d, "rotated": rotated}

    eps = trace_distance(rho, sigma)
    E = max(energy(rho), energy(sigma))
    actual = abs(von_neumann_entropy(rho) - von_neumann_entropy(sigma))
    if E > 0:
        b = qbounds.vn_continuity_bound(min(eps, 1.0), E)
        rows.append({**base, "kind": "vn", "param": E, "actual": actual, "bound": b.value,
                     "margin": b.value - actual, "in_domain": b.in_validity_domain})

    a_gt1 = rng.between(1.1, 4.0)
    b = qbounds.tsallis_lipschitz_bound(rho, sigma, a_gt1)
    act = abs(quantum_tsallis(rho, a_gt1) - quantum_tsallis(sigma, a_gt1))
    rows.append({**base, "kind": "tsallis-lip", "param": a_gt1, "actual": act, "bound": b.value,
                 "margin": b.value - act, "in_domain": True})

    delta = 1.0 / min(quantum_power_trace(rho, a_gt1), quantum_power_trace(sigma, a_gt1))
    b = qbounds.renyi_alpha_gt1_bound(rho, sigma, a_gt1, qbounds.RenyiCondition.from_delta(delta))
    act = abs(quantum_renyi(rho, a_gt1) - quantum_renyi(sigma, a_gt1))
    rows.append({**base, "kind": "renyi-gt1", "param": a_gt1, "actual": act, "bound": b.value,
                 "margin": b.value - act, "in_domain": True})

    H = HamiltonianSpec.shifted_number()
    f = qbounds.power_function(alpha)
    mu = max(qbounds.spectral_moment(s, H, 0.5, f) for s in (rho, sigma))
    inputs = qbounds.ApproxBoundInputs.from_alpha_q(rho, sigma, H, 0.5, mu, 0.05, alpha, 2.0)
    b = qbounds.quantum_renyi_tsallis_bound(inputs, qbounds.UniversalConstant(c))
    act = max(
        abs(quantum_tsallis(rho, alpha) - quantum_tsallis(sigma, alpha)),
        abs(quantum_renyi(rho, alpha) - quantum_renyi(sigma, alpha)),
    )
    rows.append({**base, "kind": "renyi-tsallis-quantum", "param": alpha, "actual": act, "bound": b.value,
                 "margin": b.value - act, "in_domain": True,
                 "minimal_c": qbounds.minimal_constant(b, act)})
    return rows


def _histogram(values, bins: int = 20) -> dict:
    v = np.asarray(values, dtype=np.float64)
    if v.size == 0:
        return {"edges": [], "counts": []}
    counts, edges = np.histogram(v, bins=bins)
    return {"edges": [float(e) for e in edges], "counts": [int(c) for c in counts]}


def _summarise(rows: list[dict], calibrate: set) -> dict:
    kinds = list(dict.fromkeys(r["kind"] for r in rows))
    out = {}
    for k in kinds:
        sel = [r for r in rows if r["kind"] == k]
        dom = [r for r in sel if r["in_domain"]]
        margins = [r["margin"] for r in dom]
        s = {
            "count": len(sel),
            "in_domain": len(dom),
            "min_margin": min(margins) if margins else None,
            "mean_margin": float(np.mean(margins)) if margins else None,
            "histogram": _histogram(margins),
        }
        viol = sum(1 for r in dom if r["margin"] < -VIOLATION_TOL * max(1.0, abs(r["bound"])))
        if k in calibrate:
            s["c1_failures"] = viol
            s["empirical_minimal_c"] = max((r["minimal_c"] for r in sel), default=0.0)
        else:
            s["violations"] = viol
        if "margin_renyi" in sel[0]:
            mr = [r["margin_renyi"] for r in dom]
            s["min_margin_renyi"] = min(mr)
            s["violations_renyi"] = sum(1 for m in mr if m < -VIOLATION_TOL)
        out[k] = s
    return out


EXPERIMENT_DIMS = {"fano": 200, "shannon": 1000, "renyi-tsallis-classical": 1000, "quantum": 16}


def montecarlo(
    experiment: str,
    seed: int,
    trials: int,
    dim: int | None = None,
    alpha: float | None = None,
    betas=RENYI_TSALLIS_BETAS,
    constant_c: float = 1.0,
    workers: int = 1,
) -> MonteCarloResult:
    if trials < 1:
        raise DomainError("trials must be >= 1")
    dim = EXPERIMENT_DIMS.get(experiment) if dim is None else int(dim)
    if experiment == "fano":
        fn = partial(_fano_trial, dim=dim)
    elif experiment == "shannon":
        fn = partial(_shannon_trial, dim=dim)
    elif experiment == "renyi-tsallis-classical":
        alpha = 0.8 if alpha is None else alpha
        fn = partial(_renyi_classical_trial, dim=dim, alpha=alpha, betas=tuple(betas))
    elif experiment == "quantum":
        alpha = 0.8 if alpha is None else alpha
        if dim > 64:
            raise DomainError("the quantum experiment supports truncations up to 64")
        fn = partial(_quantum_trial, dim=dim, alpha=alpha, c=constant_c)
    else:
        raise DomainError(f"unknown experiment {experiment!r}")
    if dim is None or dim < 2:
        raise DomainError("dimension must be at least 2")
    rows = [r for chunk in _run(fn, seed, trials, workers) for r in chunk]
    summary = {
        "experiment": experiment,
        "seed": seed,
        "trials": trials,
        "dim": dim,
        "kinds": _summarise(rows, {"renyi-tsallis-quantum"}),
    }
    if alpha is not None:
        summary["alpha"] = alpha
    if experiment == "renyi-tsallis-classical":
        means = [summary["kinds"][f"beta={b!r}"]["mean_margin"] for b in betas]
        summary["mean_margin_by_beta"] = dict(zip((repr(b) for b in betas), means))
        summary["mean_margin_increasing_in_beta"] = all(b > a for a, b in zip(means, means[1:]))
    if experiment == "quantum":
        summary["constant_c"] = constant_c
    summary["violations"] = sum(s.get("violations", 0) + s.get("violations_renyi", 0) for s in summary["kinds"].values())
    return MonteCarloResult(experiment, rows, summary)
