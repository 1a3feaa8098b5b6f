import math

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from entrobound.classical import fano_bound
from entrobound.errors import ConfigurationError, DomainError, PreconditionError
from entrobound.logbase import log_base
from entrobound.qbounds import (
    ApproxBoundInputs,
    ModulusOfContinuity,
    RenyiCondition,
    UniversalConstant,
    approx_trace_bound,
    asymptotic_ratio,
    gt1_exponent,
    h_tilde,
    minimal_constant,
    moment_bound_f1,
    moment_bound_falpha,
    power_function,
    projection_rank,
    quantum_renyi_tsallis_bound,
    renyi_alpha_gt1_bound,
    renyi_delta,
    spectral_moment,
    trace_exp_sqrt,
    trace_inverse_power,
    trace_norm_difference,
    tsallis_lipschitz_bound,
    vn_continuity_bound,
    winter_bound_alpha,
    winter_bound_general,
    winter_bound_number_op,
)
from entrobound.quantum import (
    DensityMatrix,
    HamiltonianSpec,
    energy,
    quantum_power_trace,
    quantum_renyi,
    quantum_tsallis,
    von_neumann_entropy,
)
from entrobound.rng import CounterRNG
from entrobound.sampling import random_state

SHIFTED = HamiltonianSpec.shifted_number()
seeds = st.integers(0, 2**32)


def pair(seed, d=6):
    r = CounterRNG(seed)
    return random_state(r, d), random_state(r, d)


# ----------------------------------------------------------- von Neumann


def test_vn_bound_reference_and_flags():
    assert vn_continuity_bound(0.3, 1.0).value == pytest.approx(2 * 0.6108643020548935, rel=1e-14)
    assert not vn_continuity_bound(0.9, 1.0).in_validity_domain
    assert vn_continuity_bound(0.3, 1.0).value == fano_bound(0.3, 1.0).value


@given(st.floats(1e-6, 1.0), st.floats(1e-3, 1e3))
def test_winter_code_paths_agree(eps, E):
    a = winter_bound_general(eps, E).value
    b = winter_bound_number_op(eps, E).value
    assert a == pytest.approx(b, rel=1e-12, abs=1e-12)


def test_winter_paths_against_mpmath():
    with mpmath.workdps(50):
        eps, E = mpmath.mpf("0.3"), mpmath.mpf(1)
        h = lambda x: -x * mpmath.log(x) - (1 - x) * mpmath.log(1 - x)
        ref = float(h(eps) + 2 * (E + eps) * h(eps / (E + eps)))
    assert winter_bound_number_op(0.3, 1.0).value == pytest.approx(ref, rel=1e-14)


@given(st.floats(0.25, 8.0), st.floats(1e-4, 1.0))
def test_winter3_dominates_tight_bound(E, x):
    eps = x * E / (E + 1)
    assert winter_bound_number_op(eps, E).value >= vn_continuity_bound(eps, E).value - 1e-12


def test_winter_eps_zero_is_limit():
    r = winter_bound_number_op(0.0, 2.0)
    assert r.value == 0.0 and r.extras["eps_zero_limit"]
    assert winter_bound_alpha(0.0, 2.0, 0.1).value == 0.0
    assert winter_bound_number_op(1e-300, 2.0).value < 1e-290


def test_h_tilde_jumps_to_one():
    assert h_tilde(0.5) == pytest.approx(math.log(2))
    assert h_tilde(0.51) == 1.0


def test_winter_alpha_terms_and_domain():
    r = winter_bound_alpha(0.3, 1.0, 0.2)
    assert r.recombine() == pytest.approx(r.value, rel=1e-14)
    c = 1.2 / 0.8 + 0.4
    assert r.extras["c"] == pytest.approx(c)
    with pytest.raises(DomainError):
        winter_bound_alpha(0.3, 1.0, 0.5)
    with pytest.raises(DomainError):
        winter_bound_alpha(1.0, 1.0, 0.2)


def test_winter_alpha_scales_as_a_whole_with_log_base():
    nat = winter_bound_alpha(0.7, 3.0, 0.3)  # h~ argument > 1/2: the literal 1 branch
    assert nat.extras["htilde_argument"] > 0.5
    with log_base(2):
        bits = winter_bound_alpha(0.7, 3.0, 0.3)
    assert bits.value == pytest.approx(nat.value / math.log(2), rel=1e-14)


def test_asymptotic_ratio_decreases():
    r = [asymptotic_ratio(0.3, n) for n in range(5, 21)]
    assert all(b < a for a, b in zip(r, r[1:]))
    assert r[-1] > 1.0


# ------------------------------------------------------- spectral series


def test_trace_inverse_power_brackets_zeta():
    b = trace_inverse_power(SHIFTED, 2.0)
    assert b.lower <= math.pi**2 / 6 <= b.upper
    assert b.upper - b.lower < 1e-11
    b = trace_inverse_power(HamiltonianSpec.shifted_number(2.0), 1.0)  # sum (n+1)^-2
    assert b.lower <= math.pi**2 / 6 <= b.upper


def test_trace_inverse_power_divergence_named():
    with pytest.raises(ConfigurationError, match="zero eigenvalue"):
        trace_inverse_power(HamiltonianSpec.number(), 2.0)
    with pytest.raises(ConfigurationError, match="exponent"):
        trace_inverse_power(SHIFTED, 1.0)


def test_trace_exp_sqrt_against_mpmath():
    with mpmath.workdps(30):
        ref = float(mpmath.nsum(lambda n: mpmath.exp(-mpmath.sqrt(n + 1)) * (n + 2), [0, mpmath.inf]))
    b = trace_exp_sqrt(SHIFTED)
    assert b.upper == pytest.approx(ref, rel=1e-13)
    assert b.upper - b.lower < 1e-100


@given(st.floats(0.1, 2.0), st.floats(0.0, 500.0))
def test_projection_rank_brute_force(beta, cutoff):
    ev = (np.arange(200_000) + 1.0) ** beta
    expected = int(np.sum(ev <= cutoff))
    if expected < 200_000:
        assert projection_rank(SHIFTED, beta, cutoff) == expected


def test_projection_rank_exact_boundary():
    assert projection_rank(HamiltonianSpec.number(), 1.0, 3.5) == 4
    assert projection_rank(HamiltonianSpec.number(), 1.0, 3.0) == 4  # 0,1,2,3
    assert projection_rank(SHIFTED, 0.5, 3.0) == 9  # sqrt(n+1) <= 3


# -------------------------------------------------- approximation bound


def inputs_for(rho, sigma, alpha=0.8, eps=0.05, q=2.0, beta=0.5, H=SHIFTED):
    f = power_function(alpha)
    mu = max(spectral_moment(s, H, beta, f) for s in (rho, sigma))
    return ApproxBoundInputs.from_alpha_q(rho, sigma, H, beta, mu, eps, alpha, q)


@given(seeds)
def test_approx_bound_dominates_trace_norm(seed):
    rho, sigma = pair(seed)
    inp = inputs_for(rho, sigma)
    r = approx_trace_bound(inp, "power")
    assert trace_norm_difference(rho, sigma, "power", 0.8) <= r.value
    assert r.recombine() == pytest.approx(r.value, rel=1e-14)


@given(seeds)
def test_quantum_renyi_tsallis_dominance(seed):
    rho, sigma = pair(seed)
    r = quantum_renyi_tsallis_bound(inputs_for(rho, sigma))
    assert abs(quantum_tsallis(rho, 0.8) - quantum_tsallis(sigma, 0.8)) <= r.value
    assert abs(quantum_renyi(rho, 0.8) - quantum_renyi(sigma, 0.8)) <= r.extras["renyi_value"]


@given(seeds)
def test_xlogx_variant_dominates_entropy_gap(seed):
    rho, sigma = pair(seed)
    f = lambda s: spectral_moment(s, SHIFTED, 0.5, lambda lam: -lam * np.log(np.where(lam > 0, lam, 1.0)))
    mu = max(f(rho), f(sigma), 1e-3)
    inp = ApproxBoundInputs.from_alpha_q(rho, sigma, SHIFTED, 0.5, mu, 0.05, 0.8, 2.0)
    r = approx_trace_bound(inp, "xlogx")
    assert abs(von_neumann_entropy(rho) - von_neumann_entropy(sigma)) <= r.value


def test_approx_bound_precondition_and_conjugacy():
    rho, sigma = pair(1)
    inp = inputs_for(rho, sigma)
    low = ApproxBoundInputs.from_alpha_q(rho, sigma, SHIFTED, 0.5, inp.mu / 2, 0.05, 0.8, 2.0)
    with pytest.raises(PreconditionError) as e:
        approx_trace_bound(low)
    assert e.value.actual > inp.mu / 2
    with pytest.raises(DomainError):
        ApproxBoundInputs(rho, sigma, SHIFTED, 0.5, 1.0, 0.05, 0.8, 1.6, 2.0, 3.0)
    with pytest.raises(DomainError):
        ApproxBoundInputs(rho, sigma, SHIFTED, 0.5, 1.0, 0.05, 0.7, 1.6, 2.0, 2.0)


def test_constant_scales_projection_term_and_minimal_c():
    rho, sigma = pair(2)
    inp = inputs_for(rho, sigma)
    r1 = approx_trace_bound(inp, c=UniversalConstant(1.0))
    r2 = approx_trace_bound(inp, c=UniversalConstant(2.0))
    assert r2.terms[1][1] == pytest.approx(2 * r1.terms[1][1])
    assert r2.terms[0][1] == r1.terms[0][1]
    actual = trace_norm_difference(rho, sigma, "power", 0.8)
    c_min = minimal_constant(r1, actual)
    assert c_min >= 0
    if c_min > 0:
        r3 = approx_trace_bound(inp, c=UniversalConstant(c_min))
        assert r3.value == pytest.approx(actual, rel=1e-9)
    with pytest.raises(DomainError):
        UniversalConstant(0.0)


def test_moduli():
    h = ModulusOfContinuity.holder(0.5)
    assert h.omega_star(0.04) == pytest.approx(0.2 / 0.5)
    al = ModulusOfContinuity.almost_lipschitz()
    # omega*(t) = t int_t^inf omega(x)/x^2 dx, checked by quadrature
    t = 0.05
    ref = t * float(mpmath.quad(lambda x: al.omega(float(x)) / x**2, [t, 1 / math.e, mpmath.inf]))
    assert al.omega_star(t) == pytest.approx(ref, rel=1e-8)


# ------------------------------------------------------------ alpha > 1


@given(seeds, st.floats(1.05, 6.0))
def test_tsallis_lipschitz_dominance(seed, alpha):
    rho, sigma = pair(seed)
    r = tsallis_lipschitz_bound(rho, sigma, alpha)
    assert abs(quantum_tsallis(rho, alpha) - quantum_tsallis(sigma, alpha)) <= r.value + 1e-12


@given(seeds, st.floats(1.5, 4.0))
def test_renyi_gt1_energy_condition_dominance(seed, alpha):
    rho, sigma = pair(seed)
    E = max(energy(rho, SHIFTED), energy(sigma, SHIFTED))
    cond = RenyiCondition.from_hamiltonian(SHIFTED, E, 0.5)
    try:
        r = renyi_alpha_gt1_bound(rho, sigma, alpha, cond)
    except ConfigurationError:
        # tau = tr(H^-s) diverges when s = alpha/(alpha - 1) * b/(1 - b) <= 1
        assert gt1_exponent(alpha, 0.5) <= 1.0
        return
    assert abs(quantum_renyi(rho, alpha) - quantum_renyi(sigma, alpha)) <= r.value + 1e-12


def test_renyi_delta_guarantees_power_trace_floor():
    # tr(rho^alpha) >= 1/delta must hold for every state with tr(H rho) <= E
    for seed in range(200):
        rho = random_state(CounterRNG(seed), 8)
        E = energy(rho, SHIFTED)
        delta, tau, s = renyi_delta(3.0, SHIFTED, E, 0.5)
        assert quantum_power_trace(rho, 3.0) >= 1.0 / delta


def test_renyi_gt1_preconditions():
    rho, sigma = pair(3)
    with pytest.raises(PreconditionError):
        renyi_alpha_gt1_bound(rho, sigma, 2.0, RenyiCondition.from_delta(1.0 + 1e-9))
    E = min(energy(rho, SHIFTED), energy(sigma, SHIFTED)) * 0.5
    with pytest.raises(PreconditionError):
        renyi_alpha_gt1_bound(rho, sigma, 2.0, RenyiCondition.from_hamiltonian(SHIFTED, E, 0.5))
    with pytest.raises(DomainError):
        renyi_alpha_gt1_bound(rho, sigma, 0.5, RenyiCondition.from_delta(2.0))


# ---------------------------------------------------------- moment bounds


@given(seeds)
def test_moment_f1_holds(seed):
    rho = random_state(CounterRNG(seed), 10)
    r = moment_bound_f1(rho, SHIFTED)
    assert r.extras["lhs"] <= r.value
    assert r.extras["slack"] >= 0


@given(seeds, st.floats(0.76, 0.95))
def test_moment_falpha_half_power_holds(seed, alpha):
    rho = random_state(CounterRNG(seed), 10)
    r = moment_bound_falpha(rho, SHIFTED, alpha, "half_power")
    assert r.extras["lhs"] <= r.value


@given(seeds, st.floats(0.3, 0.9), st.floats(0.0, 1.0))
def test_moment_falpha_general_holds(seed, alpha, x):
    r_exp = (1 - alpha) * 1.05 + x * (alpha - (1 - alpha) * 1.05)  # keeps r/(1 - alpha) > 1
    if not 0 < r_exp <= alpha:
        return
    rho = random_state(CounterRNG(seed), 10)
    rep = moment_bound_falpha(rho, SHIFTED, alpha, "general", r_exp)
    assert rep.extras["lhs"] <= rep.extras["sharp_value"] + 1e-12
    assert rep.extras["sharp_value"] <= rep.value + 1e-12


def test_moment_falpha_divergent_exponent():
    rho = DensityMatrix.fock(0, 4)
    with pytest.raises(ConfigurationError):
        moment_bound_falpha(rho, SHIFTED, 0.7, "half_power")  # exponent (2a-1)/(2(1-a)) = 2/3
    with pytest.raises(DomainError):
        moment_bound_falpha(rho, SHIFTED, 0.4, "half_power")
    with pytest.raises(DomainError):
        moment_bound_falpha(rho, SHIFTED, 0.8, "general", 0.9)
