import math

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from entrobound.errors import DomainError
from entrobound.fa import (
    EigenvalueFamily,
    GSequence,
    beta_log_z,
    beta_log_z_direct,
    condensation_coefficients,
    counterexample_entropy,
    entropy_terms,
    fa_weight_feasibility,
    log_gaussian_integral,
    log_gaussian_tail,
)

BETAS = (0.1, 0.05, 0.02, 0.01, 0.005)


def test_normaliser_against_mpmath():
    # Euler-Maclaurin: direct terms below N, then integral + f(N)/2 - f'(N)/12 + f'''(N)/720
    with mpmath.workdps(30):
        f = lambda x: 1 / (x * mpmath.log(x) ** 2.5)
        N = 2000
        head = mpmath.fsum(f(k) for k in range(2, N))
        zeta = (head + mpmath.log(N) ** -1.5 / 1.5 + f(N) / 2 - mpmath.diff(f, N) / 12
                + mpmath.diff(f, N, 3) / 720)
    fam = EigenvalueFamily(2.5)
    z = fam.zeta_bracket()
    assert z.lower <= float(zeta) * (1 + 1e-12) and float(zeta) <= z.upper * (1 + 1e-12)
    assert fam.nu == pytest.approx(1 / float(zeta), rel=1e-6)
    assert fam.nu == pytest.approx(0.50417, abs=5e-5)


@pytest.mark.parametrize("a", [2.2, 2.5, 2.8, 3.5])
def test_family_mass_brackets_one(a):
    fam = EigenvalueFamily(a)
    lo, hi = fam.mass_bracket(10**5)
    slack = fam.nu_error * (hi / fam.nu)
    assert lo - slack <= 1.0 <= hi + slack


def test_family_rejects_non_normalisable():
    with pytest.raises(DomainError):
        EigenvalueFamily(1.0)


@pytest.mark.parametrize("a", [2.2, 2.5, 2.8])
def test_entropy_finite_and_bracket_consistent(a):
    v = counterexample_entropy(a, 10**5)
    assert v.finite and v.lower <= v.upper
    w = counterexample_entropy(a, 10**6)
    # extending the partial sum lands inside the earlier tail bracket
    assert v.lower - 1e-9 <= w.partial + w.tail_lower and w.partial + w.tail_upper <= v.upper + 1e-9
    assert w.upper - w.lower <= v.upper - v.lower


def test_entropy_reference_values_at_two_point_five():
    v = counterexample_entropy(2.5, 10**6)
    assert v.partial == pytest.approx(1.8248, abs=1e-4)
    assert v.tail_upper == pytest.approx(0.3296, abs=1e-4)


def test_condensation_coefficients_reproduce_condensed_terms():
    fam = EigenvalueFamily(2.5)
    a, b, c = condensation_coefficients(fam.nu, 2.5)
    for k in (5, 10, 20):
        n = np.array([2.0**k])
        direct = float(2.0**k * entropy_terms(fam, n)[0])
        assert direct == pytest.approx(a * k**-2.5 + b * k**-1.5 + c * math.log(k) * k**-2.5, rel=1e-10)
    assert counterexample_entropy(2.5, 1000).condensation["slowest_exponent"] == pytest.approx(1.5)


def test_entropy_domain():
    with pytest.raises(DomainError):
        counterexample_entropy(2.0)
    with pytest.raises(DomainError):
        counterexample_entropy(2.5, K=10)


def test_weight_feasibility_verdicts():
    g = GSequence()
    assert fa_weight_feasibility(EigenvalueFamily(3.5), g, 10**5).convergent
    assert not fa_weight_feasibility(EigenvalueFamily(3.0), g, 10**5).convergent
    assert fa_weight_feasibility(EigenvalueFamily(2.5), GSequence.zero(), 10**5).partial == 0.0
    with pytest.raises(DomainError):
        GSequence("cubic")


@pytest.mark.parametrize("beta", [0.2, 0.1, 0.05, 0.02])
def test_log_gaussian_integral_against_quadrature(beta):
    with mpmath.workdps(30):
        ref = mpmath.log(mpmath.quad(lambda u: mpmath.exp(u - beta * u * u), [0, 1 / (2 * beta), mpmath.inf]))
    assert log_gaussian_integral(beta) == pytest.approx(float(ref), rel=1e-12)
    K = 10**4
    with mpmath.workdps(30):
        ref_t = mpmath.log(mpmath.quad(lambda u: mpmath.exp(u - beta * u * u), [math.log(K), 1 / (2 * beta), mpmath.inf]))
    assert log_gaussian_tail(beta, K) == pytest.approx(float(ref_t), rel=1e-10)


@pytest.mark.parametrize("beta", BETAS)
def test_beta_log_z_floor_and_direct_sum(beta):
    z = beta_log_z(beta)
    assert z.lower > 0.25
    lo, hi = beta_log_z_direct(beta, 10**6)
    assert z.lower - 1e-12 <= lo <= hi <= z.upper + 1e-12


def test_beta_log_z_width_and_trend():
    assert beta_log_z(0.1).width < 0.05
    lows = [beta_log_z(b).lower for b in BETAS]
    assert all(b < a for a, b in zip(lows, lows[1:]))  # decreasing toward 1/4


@given(st.floats(1e-3, 0.2))
def test_beta_log_z_bracket_ordered_above_quarter(beta):
    z = beta_log_z(beta)
    assert 0.25 < z.lower <= z.upper


def test_beta_log_z_domain():
    with pytest.raises(DomainError):
        beta_log_z(0.3)
    with pytest.raises(DomainError):
        beta_log_z(0.0)
