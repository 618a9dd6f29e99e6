import math

import numpy as np
import pytest

from coagchain import ScaledValue, chebyshev_u, chebyshev_u_pair_scaled


class TestScaledValue:
    def test_sign_and_float(self):
        v = ScaledValue(-1.5, 10)
        assert v.sign == -1
        assert v.to_float() == -1536.0
        assert ScaledValue(0.0, 3).sign == 0

    def test_overflow_saturates(self):
        assert ScaledValue(1.5, 5000).to_float() == math.inf
        assert ScaledValue(-1.5, 5000).to_float() == -math.inf

    def test_log2_abs(self):
        assert ScaledValue(1.0, 7).log2_abs() == pytest.approx(7.0)
        assert ScaledValue(0.0, 7).log2_abs() == -math.inf


class TestChebyshevU:
    def test_u2_root(self):
        # U_2(x) = 4x^2 - 1 vanishes at 1/2
        assert chebyshev_u(2, 0.5) == 0.0

    def test_low_orders(self):
        assert chebyshev_u(0, 0.3) == 1.0
        assert chebyshev_u(1, 0.3) == pytest.approx(0.6)
        assert chebyshev_u(-1, 0.7) == 0.0

    @pytest.mark.parametrize("n", [3, 10, 59])
    def test_matches_sine_form_inside_band(self, n):
        # U_n(cos x) = sin((n+1)x)/sin(x)
        for x in np.linspace(0.05, math.pi - 0.05, 25):
            expected = math.sin((n + 1) * x) / math.sin(x)
            got = chebyshev_u(n, math.cos(x))
            assert got == pytest.approx(expected, rel=1e-10, abs=1e-10)

    def test_interior_quantized_points(self):
        # the band points cos(pi/(2L)) used by the secular equation
        for L in (5, 30, 60):
            x = math.pi / (2 * L)
            expected = math.sin(L * x) / math.sin(x)
            assert chebyshev_u(L - 1, math.cos(x)) == pytest.approx(
                expected, rel=1e-10)

    def test_matches_scipy_small_orders(self):
        from scipy.special import eval_chebyu
        rng = np.random.default_rng(7)
        for n in range(8):
            for x in rng.uniform(-2, 2, 10):
                assert chebyshev_u(n, float(x)) == pytest.approx(
                    float(eval_chebyu(n, x)), rel=1e-12, abs=1e-12)

    def test_growth_regime_no_overflow(self):
        # U_n(cosh t) = sinh((n+1)t)/sinh(t); compare exponents at an
        # argument where the plain recurrence would overflow doubles
        t = math.acosh(30.0)
        n = 599
        u_n, u_nm1, exp2 = chebyshev_u_pair_scaled(n, np.array([30.0]))
        log2_val = math.log2(abs(u_n[0])) + exp2[0]
        # log2(sinh((n+1)t)/sinh t) = ((n+1)t - log(2) - log(sinh t))/log(2)
        expected = ((n + 1) * t - math.log(2) - math.log(math.sinh(t))) \
            / math.log(2)
        assert log2_val == pytest.approx(expected, rel=1e-12)
        assert np.isfinite(u_n[0]) and np.isfinite(u_nm1[0])

    def test_pair_consistency(self):
        x = np.array([0.3, 1.7, -2.5])
        u_n, u_nm1, exp2 = chebyshev_u_pair_scaled(6, x)
        for j, xv in enumerate(x):
            assert math.ldexp(u_n[j], int(exp2[j])) == pytest.approx(
                chebyshev_u(6, float(xv)), rel=1e-12)
            assert math.ldexp(u_nm1[j], int(exp2[j])) == pytest.approx(
                chebyshev_u(5, float(xv)), rel=1e-12)
