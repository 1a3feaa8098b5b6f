"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v`` (the summary lines are written
to the terminal even when output capture is on).
"""

import math
import time

import numpy as np
import pytest
from scipy.special import zeta

from entrobound import fa, harness, qbounds
from entrobound.dist import maximal_coupling, total_variation
from entrobound.quantum import (
    DensityMatrix,
    HamiltonianSpec,
    energy,
    fidelity,
    gibbs_entropy_number_op,
    passive_state,
    quantum_tsallis,
    trace_distance,
    von_neumann_entropy,
)
from entrobound.rng import CounterRNG
from entrobound.sampling import random_decaying, random_simplex, random_state
from entrobound.series import inverse_power_sum

SEED = 20240601
SHIFTED = HamiltonianSpec.shifted_number()


@pytest.fixture
def verdict(capsys):
    def emit(n, ok, detail):
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'} criterion {n}: {detail}")
        return ok

    return emit


def test_criterion_1_tightness(verdict):
    t0 = time.perf_counter()
    rows = harness.tightness(d=4096)
    elapsed = time.perf_counter() - t0
    worst = max(r["gap"] for r in rows)
    ok = len(rows) == 400 and worst <= 1e-8 and elapsed < 30
    assert verdict(1, ok, f"{len(rows)} points, max |bound - entropy| = {worst:.2e} (tol 1e-8), {elapsed:.1f} s (< 30 s)")


def test_criterion_2_fano(verdict):
    t0 = time.perf_counter()
    res = harness.montecarlo("fano", seed=SEED, trials=10_000, dim=200)
    elapsed = time.perf_counter() - t0
    s = res.summary["kinds"]["fano"]
    ok = s["count"] == 10_000 and s["violations"] == 0 and max(r["d"] for r in res.rows) <= 200 and elapsed < 60
    assert verdict(2, ok, f"{s['in_domain']} joints in domain, {s['violations']} violations, "
                          f"min margin {s['min_margin']:.3e}, {elapsed:.1f} s (< 60 s)")


def test_criterion_3_winter_comparison(verdict):
    rows = harness.sweep(harness.DEFAULT_GRID)
    dom = [r for r in rows if r["epsilon"] <= r["E"] / (r["E"] + 1.0)]
    min_diff = min(r["bound_winter3"] - r["bound_tight"] for r in dom)
    path_gap = max(
        abs(qbounds.winter_bound_general(r["epsilon"], r["E"]).value
            - qbounds.winter_bound_number_op(r["epsilon"], r["E"]).value)
        for r in rows
    )
    ok = min_diff >= 0 and path_gap <= 1e-12
    assert verdict(3, ok, f"{len(dom)} in-domain points, min(winter3 - tight) = {min_diff:.3e}, "
                          f"general vs closed form max gap = {path_gap:.1e} (tol 1e-12)")


def test_criterion_4_asymptotic_ratio(verdict):
    rows = harness.asymptotic_table(0.3, range(5, 21))
    v = harness.asymptotic_verdict(rows, target_tol=0.15)
    ok = v["monotone_decreasing"] and abs(v["final_ratio"] - 1.0) <= 0.15
    assert verdict(4, ok, f"ratio n=5: {rows[0]['ratio_eps_n']:.4f}, n=20: {v['final_ratio']:.4f}, "
                          f"monotone={v['monotone_decreasing']}, |final - 1| <= 0.15: {v['final_within_tol']}")


def test_criterion_5_classical_renyi_tsallis(verdict):
    t0 = time.perf_counter()
    res = harness.montecarlo("renyi-tsallis-classical", seed=SEED, trials=5000, dim=1000, alpha=0.8,
                             betas=(0.55, 0.65, 0.75))
    elapsed = time.perf_counter() - t0
    s = res.summary
    hist_ok = all(sum(k["histogram"]["counts"]) == 5000 for k in s["kinds"].values())
    ok = s["violations"] == 0 and hist_ok and elapsed < 120
    means = ", ".join(f"beta={b}: {m:.4f}" for b, m in s["mean_margin_by_beta"].items())
    assert verdict(5, ok, f"5000 x 3 bounds, {s['violations']} violations, histograms emitted={hist_ok}, "
                          f"mean margins [{means}] increasing={s['mean_margin_increasing_in_beta']}, "
                          f"{elapsed:.1f} s (< 120 s)")


def test_criterion_6a_tsallis_lipschitz(verdict):
    rng = CounterRNG(SEED).spawn(6)
    worst, bad = math.inf, 0
    for t in range(1000):
        r = rng.spawn(t)
        d = r.integers(2, 65)
        rotated = r.scalar() < 0.5
        rho, sigma = random_state(r, d, rotated), random_state(r, d, rotated)
        a = r.between(1.05, 4.0)
        b = qbounds.tsallis_lipschitz_bound(rho, sigma, a).value
        m = b - abs(quantum_tsallis(rho, a) - quantum_tsallis(sigma, a))
        worst = min(worst, m)
        bad += m < -1e-10
    assert verdict("6a", bad == 0, f"1000 pairs (d <= 64), {bad} violations, min margin {worst:.3e}")


def test_criterion_6b_divergence_witness(verdict):
    # lambda_i = (i+1)^(-1/alpha) / zeta(1/alpha), i = 0, 1, ...; alpha = 0.4
    alpha, d = 0.4, 10**7
    Z = zeta(1.0 / alpha)
    # sum_{k=2}^{d+1} 1/k lies in [log((d+2)/2), log(d+1)] by the integral test
    power_lo, power_hi = math.log((d + 2) / 2.0) / Z**alpha, math.log(d + 1.0) / Z**alpha
    # tr(rho N) = sum_{k>=2} (k-1) k^-2.5 / Z = [sum k^-1.5 - sum k^-2.5] / Z
    s15 = inverse_power_sum(1.5, 2, d)
    s25 = inverse_power_sum(2.5, 2, d)
    e_lo = (s15.lower - s25.upper) / Z
    e_hi = (s15.upper - s25.lower) / Z
    energy_ok = e_hi - e_lo <= 1e-6
    power_ok = power_lo > 1e3
    assert verdict("6b", power_ok and energy_ok,
                   f"partial tr(rho^0.4) at d=1e7 in [{power_lo:.3f}, {power_hi:.3f}] (needs > 1e3: {power_ok}); "
                   f"tr(rho N) in [{e_lo:.9f}, {e_hi:.9f}], width {e_hi - e_lo:.1e} (<= 1e-6: {energy_ok})")


def test_criterion_7_fa_floor(verdict):
    t0 = time.perf_counter()
    brackets = [fa.beta_log_z(b) for b in (0.1, 0.05, 0.02, 0.01, 0.005)]
    elapsed = time.perf_counter() - t0
    lo = min(z.lower for z in brackets)
    wid = max(z.width for z in brackets)
    ok = lo > 0.25 and wid < 0.05 and elapsed < 1.0
    assert verdict(7, ok, f"min lower bracket {lo:.5f} (> 0.25), max width {wid:.2e} (< 0.05), {elapsed * 1e3:.1f} ms (< 1 s)")


def test_criterion_8_structural_suite(verdict):
    fails = {"fvdg": 0, "mirsky": 0, "passive": 0, "gibbs": 0, "coupling": 0}
    base = CounterRNG(SEED).spawn(8)
    for t in range(1000):
        r = base.spawn(t)
        d = r.integers(2, 13)
        rho, sigma = random_state(r, d, True), random_state(r, d, True)
        F, T = fidelity(rho, sigma), trace_distance(rho, sigma)
        fails["fvdg"] += not (1 - F <= T + 1e-9 and T <= math.sqrt(max(0.0, 1 - F * F)) + 1e-9)
        a = np.sort(rho.spectrum().eigenvalues)[::-1]
        b = np.sort(sigma.spectrum().eigenvalues)[::-1]
        fails["mirsky"] += not 0.5 * np.sum(np.abs(a - b)) <= T + 1e-12
        p = passive_state(rho)
        fails["passive"] += not (energy(p) <= energy(rho) + 1e-12
                                 and abs(von_neumann_entropy(p) - von_neumann_entropy(rho)) <= 1e-12)
        E = energy(rho)
        fails["gibbs"] += E > 0 and von_neumann_entropy(rho) > gibbs_entropy_number_op(E) + 1e-12
        pc, qc = random_simplex(r, d), random_decaying(r, r.integers(2, 13))
        fails["coupling"] += abs(maximal_coupling(pc, qc).mismatch() - total_variation(pc, qc)) > 1e-12
    ok = not any(fails.values())
    assert verdict(8, ok, "1000 instances each, failures " + ", ".join(f"{k}={v}" for k, v in fails.items()))


def test_criterion_9_moment_bounds(verdict):
    base = CounterRNG(SEED).spawn(9)
    bad = {"f1": 0, "half_power": 0, "general": 0}
    for t in range(1000):
        r = base.spawn(t)
        rho = random_state(r, r.integers(2, 65), rotated=False)
        rep = qbounds.moment_bound_f1(rho, SHIFTED)
        bad["f1"] += rep.extras["lhs"] > rep.value
        a = r.between(0.76, 0.95)  # half-power series converges for alpha > 3/4
        rep = qbounds.moment_bound_falpha(rho, SHIFTED, a, "half_power")
        bad["half_power"] += rep.extras["lhs"] > rep.value
        a = r.between(0.3, 0.95)
        lo = 1.05 * (1.0 - a)  # r/(1 - alpha) > 1 keeps tr(H^-s) finite
        if lo >= a:
            a = r.between(0.6, 0.95)
            lo = 1.05 * (1.0 - a)
        rexp = r.between(lo, a)
        rep = qbounds.moment_bound_falpha(rho, SHIFTED, a, "general", rexp)
        bad["general"] += rep.extras["lhs"] > rep.value
    ok = not any(bad.values())
    assert verdict(9, ok, "1000 diagonal states, H = N + 1, violations " + ", ".join(f"{k}={v}" for k, v in bad.items()))
