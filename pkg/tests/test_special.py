"""Tests for the hypergeometric kernels and the adaptive integrator.

The frozen reference constants were produced with a 30-digit arbitrary
precision evaluation, independent of scipy. The series oracle below
re-derives 2F1 through the Pfaff transformation so the closed forms are
checked against something that shares no code with the implementation.
"""

import math

import numpy as np
import pytest
import scipy.integrate
from hypothesis import given
from hypothesis import strategies as st

from cachesec import (
    ParameterError,
    PathlossError,
    QuadratureError,
    QuadratureSpec,
    g_kernel,
    gamma_product,
    gauss_2f1,
    integrate,
    integrate_detail,
    z_kernel,
)

SPEC = QuadratureSpec()


def pfaff_2f1(a, b, c, z, terms=4000):
    """Series oracle for 2F1(a, b; c; z) with z <= 0.

    Pfaff: 2F1(a, b; c; z) = (1-z)^(-a) 2F1(a, c-b; c; z/(z-1)), and the
    transformed argument lies in [0, 1) so the plain series converges.
    """
    if z == 0.0:
        return 1.0
    w = z / (z - 1.0)
    b2 = c - b
    term = 1.0
    total = 1.0
    for n in range(terms):
        term *= (a + n) * (b2 + n) / ((c + n) * (n + 1.0)) * w
        total += term
        if abs(term) < 1e-16 * abs(total):
            break
    return (1.0 - z) ** (-a) * total


class TestGauss2F1:
    FROZEN = [
        # (a, b, c, z, value)
        (1.0, 0.5, 1.5, -1.0, math.pi / 4.0),
        (1.0, 1.0 / 3.0, 4.0 / 3.0, -8.0, 0.5450008651142303),
        (1.0, 0.5, 1.5, -2.0, 0.6755108588560400),
        (1.0, 1.0 / 3.0, 4.0 / 3.0, -1.0, 0.8356488482647211),
        (1.0, 0.25, 1.25, -5.0, 0.6811962723510463),
    ]

    @pytest.mark.parametrize("a,b,c,z,expected", FROZEN)
    def test_frozen_values(self, a, b, c, z, expected):
        assert gauss_2f1(a, b, c, z) == pytest.approx(expected, rel=1e-10)

    def test_unit_value_at_origin(self):
        for a, b, c in [(1.0, 0.5, 1.5), (1.0, 1.0 / 3.0, 4.0 / 3.0), (2.0, 0.3, 1.7)]:
            assert gauss_2f1(a, b, c, 0.0) == 1.0

    def test_against_series_oracle_on_grid(self):
        # Kernel-relevant parameter families across the supported pathloss
        # range, arguments spanning five decades. Larger arguments are
        # covered by the integral-definition checks below, where the
        # transformed series would need too many terms to be a clean oracle.
        for beta in (2.5, 3.0, 3.5, 4.0):
            b = 1.0 - 2.0 / beta
            c = 2.0 - 2.0 / beta
            for z in -np.geomspace(1e-3, 1e2, 11):
                want = pfaff_2f1(1.0, b, c, float(z))
                got = gauss_2f1(1.0, b, c, float(z))
                assert got == pytest.approx(want, rel=1e-10), (beta, z)

    def test_positive_argument_rejected(self):
        with pytest.raises(ParameterError):
            gauss_2f1(1.0, 0.5, 1.5, 0.5)

    def test_nonpositive_integer_c_rejected(self):
        with pytest.raises(ParameterError):
            gauss_2f1(1.0, 0.5, 0.0, -1.0)
        with pytest.raises(ParameterError):
            gauss_2f1(1.0, 0.5, -2.0, -1.0)


class TestZKernel:
    FROZEN = [
        # (gamma, beta, value)
        (2.0, 4.0, 1.3510217177120799),
        (1.0, 3.0, 1.6712976965294421),
        (2.5, 3.0, 3.5836089882104572),
        (1.0, 2.5, 3.5532542906071546),
        (3.0, 3.5, 2.5509226875343621),
    ]

    @pytest.mark.parametrize("gamma,beta,expected", FROZEN)
    def test_frozen_values(self, gamma, beta, expected):
        assert z_kernel(gamma, beta) == pytest.approx(expected, rel=1e-10)

    def test_quartic_pathloss_closed_form(self):
        for gamma in (0.01, 0.1, 1.0, 2.0, 10.0):
            want = math.sqrt(gamma) * math.atan(math.sqrt(gamma))
            assert z_kernel(gamma, 4.0) == pytest.approx(want, rel=1e-12)

    def test_zero_at_origin(self):
        for beta in (2.5, 3.0, 4.0):
            assert z_kernel(0.0, beta) == 0.0

    def test_matches_integral_definition(self):
        # Z(g) = g^{2/beta} * int_{g^{-2/beta}}^inf dy / (1 + y^{beta/2}).
        for beta in (2.5, 3.0, 3.5, 4.0):
            for gamma in (0.05, 0.5, 2.0, 30.0, 1e5):
                lower = gamma ** (-2.0 / beta)
                ref, _ = scipy.integrate.quad(
                    lambda y: 1.0 / (1.0 + y ** (beta / 2.0)), lower, np.inf
                )
                ref *= gamma ** (2.0 / beta)
                tol = 1e-8 if gamma <= 100.0 else 1e-6
                assert z_kernel(gamma, beta) == pytest.approx(ref, rel=tol), (beta, gamma)

    def test_large_argument_branch_is_continuous(self):
        for beta in (2.5, 3.0, 3.5):
            below = z_kernel(1e8 * (1.0 - 1e-9), beta)
            above = z_kernel(1e8 * (1.0 + 1e-9), beta)
            assert above == pytest.approx(below, rel=1e-7)

    def test_asymptotic_scaling(self):
        # Z grows like Gc * gamma^{2/beta} for large arguments.
        beta = 3.0
        gamma = 1e10
        assert z_kernel(gamma, beta) / (gamma ** (2.0 / beta)) == pytest.approx(
            gamma_product(beta), rel=1e-4
        )

    def test_negative_argument_rejected(self):
        with pytest.raises(ParameterError):
            z_kernel(-0.5, 4.0)

    def test_pathloss_domain(self):
        with pytest.raises(PathlossError):
            z_kernel(1.0, 2.0)
        with pytest.raises(PathlossError):
            z_kernel(1.0, 4.5)

    @given(
        beta=st.floats(min_value=2.2, max_value=4.0, allow_nan=False),
        g1=st.floats(min_value=0.0, max_value=1e6, allow_nan=False),
        g2=st.floats(min_value=0.0, max_value=1e6, allow_nan=False),
    )
    def test_strictly_increasing(self, beta, g1, g2):
        lo, hi = sorted((g1, g2))
        if hi - lo < 1e-9 * (1.0 + hi):
            return
        assert z_kernel(hi, beta) > z_kernel(lo, beta)


class TestGammaProduct:
    def test_quartic_value(self):
        assert gamma_product(4.0) == pytest.approx(math.pi / 2.0, rel=1e-14)

    def test_frozen_values(self):
        assert gamma_product(2.5) == pytest.approx(4.2758373284623805, rel=1e-12)
        assert gamma_product(3.5) == pytest.approx(1.8413626070401267, rel=1e-12)

    @given(beta=st.floats(min_value=2.05, max_value=4.0, allow_nan=False))
    def test_matches_gamma_function_product(self, beta):
        x = 2.0 / beta
        want = math.gamma(1.0 + x) * math.gamma(1.0 - x)
        assert gamma_product(beta) == pytest.approx(want, rel=1e-12)

    def test_domain(self):
        with pytest.raises(PathlossError):
            gamma_product(2.0)


class TestGKernel:
    def test_frozen_values(self):
        # rate_rs = 0 makes s equal to gamma_th, pinning s directly.
        assert g_kernel(3.0, 4.0, 0.0) == pytest.approx(0.9068996821171089, rel=1e-10)
        assert g_kernel(0.5, 4.0, 0.0) == pytest.approx(0.6755108588560400, rel=1e-10)
        assert g_kernel(2.0, 3.0, 0.0) == pytest.approx(2.2720011616713289, rel=1e-10)

    def test_quartic_closed_form(self):
        for gamma in (0.2, 1.0, 5.0):
            for rs in (0.0, 0.5, 1.0):
                s = (1.0 + gamma) * 2.0 ** rs - 1.0
                want = math.sqrt(s) * (math.pi / 2.0 - math.atan(math.sqrt(s)))
                assert g_kernel(gamma, 4.0, rs) == pytest.approx(want, rel=1e-12)

    def test_matches_integral_definition(self):
        # G = s^{2/beta} * int_{s^{2/beta}}^inf dx / (1 + x^{beta/2}).
        for beta in (2.5, 3.0, 4.0):
            for gamma, rs in ((0.1, 0.5), (1.0, 1.0), (4.0, 0.0)):
                s = (1.0 + gamma) * 2.0 ** rs - 1.0
                lower = s ** (2.0 / beta)
                ref, _ = scipy.integrate.quad(
                    lambda x: 1.0 / (1.0 + x ** (beta / 2.0)), lower, np.inf
                )
                ref *= s ** (2.0 / beta)
                assert g_kernel(gamma, beta, rs) == pytest.approx(ref, rel=1e-8)

    def test_zero_when_s_vanishes(self):
        assert g_kernel(0.0, 3.0, 0.0) == 0.0
        assert g_kernel(0.0, 4.0, 0.0) == 0.0

    def test_small_s_branch_is_continuous(self):
        beta = 3.0
        # Choose gamma values bracketing the s = 1e-8 series switch at rs = 0.
        below = g_kernel(1e-8 * (1.0 - 1e-3), beta, 0.0)
        above = g_kernel(1e-8 * (1.0 + 1e-3), beta, 0.0)
        mid = g_kernel(1e-8, beta, 0.0)
        assert below < mid < above
        assert above == pytest.approx(below, rel=5e-3)

    def test_negative_inputs_rejected(self):
        with pytest.raises(ParameterError):
            g_kernel(-1.0, 4.0, 0.5)
        with pytest.raises(ParameterError):
            g_kernel(1.0, 4.0, -0.5)


class TestIntegrate:
    def test_decaying_exponential(self):
        value = integrate(lambda x: math.exp(-x), 0.0, math.inf, SPEC)
        assert value == pytest.approx(1.0, abs=1e-9)

    def test_lorentzian_tail(self):
        value = integrate(lambda x: 1.0 / (1.0 + x * x), 0.0, math.inf, SPEC)
        assert value == pytest.approx(math.pi / 2.0, rel=1e-8)

    def test_slow_power_tail(self):
        # x^{-3/2} decay, the same rate as the secrecy-rate integrands.
        value = integrate(lambda x: x ** (-1.5), 1.0, math.inf, SPEC)
        assert value == pytest.approx(2.0, rel=1e-6)

    def test_finite_interval(self):
        value = integrate(lambda x: x * x, 0.0, 1.0, SPEC)
        assert value == pytest.approx(1.0 / 3.0, rel=1e-10)

    def test_detail_returns_error_bound(self):
        value, bound = integrate_detail(lambda x: math.exp(-x), 0.0, math.inf, SPEC)
        assert bound >= 0.0
        assert abs(value - 1.0) <= max(bound, 1e-9)

    def test_divergent_integral_raises(self):
        with pytest.raises(QuadratureError) as exc:
            integrate(lambda x: 1.0 / (1.0 + x), 0.0, math.inf, SPEC)
        assert exc.value.error_bound > 0.0 or math.isinf(exc.value.error_bound)

    def test_bad_interval_rejected(self):
        with pytest.raises(ParameterError):
            integrate(math.exp, math.inf, math.inf, SPEC)
        with pytest.raises(ParameterError):
            integrate(math.exp, 1.0, 0.0, SPEC)

    def test_spec_validation(self):
        with pytest.raises(ParameterError):
            QuadratureSpec(abs_tol=-1.0)
        with pytest.raises(ParameterError):
            QuadratureSpec(max_subdivisions=0)
