import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from numpy.polynomial import Polynomial

from circdesign import (DomainError, construct_singleton, f_eval, f_eval_chebyshev, margin,
                        moment, scan_zeros)
from circdesign.moment_functions import chebyshev_t

GOLDEN_LO = (-1 - math.sqrt(5)) / 4
GOLDEN_HI = (-1 + math.sqrt(5)) / 4

xs = st.floats(min_value=-0.999, max_value=0.499, allow_nan=False)


def moment_polynomial(k):
    """1 + 2 T_k(x) + 2 T_k(-x - 1/2) expanded as a power-basis polynomial.

    Built from numpy's Chebyshev basis conversion and polynomial
    composition, independently of the recurrence under test.
    """
    tk = np.polynomial.Chebyshev.basis(k).convert(kind=Polynomial)
    shifted = tk(Polynomial([-0.5, -1.0]))
    return 1 + 2 * tk + 2 * shifted


def test_f2_polynomial_oracle():
    # expanding 1 + 2(2x^2 - 1) + 2(2(x + 1/2)^2 - 1) by hand gives 8x^2 + 4x - 2
    assert np.allclose(moment_polynomial(2).coef, [-2.0, 4.0, 8.0])
    assert np.allclose(sorted(moment_polynomial(2).roots().real), [GOLDEN_LO, GOLDEN_HI])


class TestFEval:
    def test_r1_vanishes(self):
        assert abs(f_eval(1, 0.3)) <= 1e-14

    def test_r2_at_minus_half(self):
        assert f_eval(2, -0.5) == pytest.approx(-2.0, abs=1e-14)

    def test_r3_at_zero(self):
        assert f_eval(3, 0.0) == pytest.approx(3.0, abs=1e-14)

    def test_rational_forms_agree(self):
        assert f_eval(Fraction(3, 2), 0.1) == f_eval((6, 4), 0.1) == f_eval("3/2", 0.1)

    def test_evaluable_at_quarter(self):
        assert math.isfinite(f_eval(2, -0.25))

    @pytest.mark.parametrize("x", [-1.0, 0.5, 0.7, -1.5])
    def test_domain(self, x):
        with pytest.raises(DomainError):
            f_eval(2, x)

    def test_float_r_rejected(self):
        with pytest.raises(TypeError):
            f_eval(0.5, 0.0)

    def test_nonpositive_r(self):
        with pytest.raises(DomainError):
            f_eval(Fraction(0), 0.0)

    @given(st.integers(1, 500), st.integers(1, 50), xs)
    def test_bounded(self, num, den, x):
        assert -3.0 - 1e-12 <= f_eval(Fraction(num, den), x) <= 5.0 + 1e-12


class TestChebyshev:
    def test_k2_at_zero(self):
        assert f_eval_chebyshev(2, 0.0) == pytest.approx(-2.0, abs=1e-15)

    @given(xs)
    def test_k1_identity(self, x):
        assert abs(f_eval_chebyshev(1, x)) <= 1e-15

    def test_k2_root(self):
        assert abs(f_eval_chebyshev(2, GOLDEN_HI)) <= 1e-12

    @pytest.mark.parametrize("k", [0, 1, 2, 5, 17])
    def test_recurrence_matches_numpy(self, k):
        u = np.linspace(-1, 1, 41)
        assert np.allclose(chebyshev_t(k, u), np.polynomial.chebyshev.chebval(u, [0] * k + [1]),
                           atol=1e-13)

    def test_agrees_with_trig(self):
        grid = np.linspace(-0.99, 0.49, 1000)
        for k in range(1, 65):
            cheb = f_eval_chebyshev(k, grid)
            trig = np.array([f_eval(k, x) for x in grid])
            assert np.max(np.abs(cheb - trig)) <= 1e-10, k

    def test_domain(self):
        with pytest.raises(DomainError):
            f_eval_chebyshev(2, 0.5)


class TestScan:
    def test_f2_two_zeros(self):
        res = scan_zeros(2, -0.99, 0.49, 100_000)
        assert not res.identically_zero
        assert len(res.refined_zeros) == 2
        assert res.refined_zeros[0] == pytest.approx(GOLDEN_LO, abs=1e-9)
        assert res.refined_zeros[1] == pytest.approx(GOLDEN_HI, abs=1e-9)

    @pytest.mark.parametrize("lo,hi", [(-0.99, 0.49), (0.0, 0.1)])
    def test_f1_identically_zero(self, lo, hi):
        res = scan_zeros(1, lo, hi, 1000)
        assert res.identically_zero
        assert res.refined_zeros == []

    def test_f3_polynomial_oracle(self):
        lo, hi = -0.99, 0.49
        roots = moment_polynomial(3).roots()
        real = sorted(r.real for r in roots if abs(r.imag) < 1e-9 and lo < r.real < hi)
        res = scan_zeros(3, lo, hi, 100_000)
        assert len(res.refined_zeros) == len(real)
        assert np.allclose(res.refined_zeros, real, atol=1e-9)
        # the recurrence sees the same sign changes on the same grid
        grid = np.linspace(lo, hi, 100_001)
        v = f_eval_chebyshev(3, grid)
        assert int(np.sum(np.sign(v[:-1]) * np.sign(v[1:]) < 0)) == len(real)

    @pytest.mark.parametrize("r", [Fraction(2), Fraction(5, 3), Fraction(7, 2), Fraction(40, 7)])
    def test_refined_zero_properties(self, r):
        res = scan_zeros(r, -0.99, 0.49, 20_000)
        assert res.refined_zeros
        for (a, b), z in zip(res.brackets, res.refined_zeros):
            assert a <= z <= b
            assert b - a <= 1e-12
            assert abs(f_eval(r, z)) <= 1e-10

    @pytest.mark.parametrize("lo,hi,steps", [(-1.0, 0.4, 10), (0.6, 0.49, 10), (0.2, 0.1, 10),
                                             (-0.5, 0.5, 10), (-0.5, 0.4, 1)])
    def test_invalid(self, lo, hi, steps):
        with pytest.raises(DomainError):
            scan_zeros(2, lo, hi, steps)

    def test_csv(self):
        text = scan_zeros(2, -0.99, 0.49, 1000).to_csv().splitlines()
        assert text[0] == "r_num,r_den,lo,hi,zero"
        assert len(text) == 3
        assert text[1].startswith("2,1,-0.99,0.49,")
        assert scan_zeros(1, -0.5, 0.4, 10).to_csv().splitlines()[1] == "1,1,-0.5,0.4,IDENTICALLY_ZERO"


class TestMargin:
    def test_t1_at_zero(self):
        assert margin(1, 0.0, 3) == pytest.approx(2.0, abs=1e-14)

    def test_at_zero_of_f2(self):
        assert margin(1, GOLDEN_HI, 2) <= 1e-10

    def test_t2_at_zero(self):
        assert margin(2, 0.0, 2) == pytest.approx(2 + math.sqrt(2), abs=1e-14)

    def test_kmax_below_t(self):
        with pytest.raises(DomainError):
            margin(5, 0.0, 4)

    @given(st.integers(1, 6), xs)
    def test_matches_pointwise(self, t, x):
        expected = min(abs(f_eval(Fraction(k, t), x)) for k in range(1, 31) if k != t)
        assert margin(t, x, 30) == pytest.approx(expected, abs=1e-12)


def test_identity_on_dense_grid():
    grid = np.linspace(-0.99, 0.49, 10_000)
    assert max(abs(f_eval(1, x)) for x in grid) <= 1e-12


@given(st.integers(1, 6), xs.filter(lambda x: abs(x + 0.25) > 1e-3 and x > -0.998 and x < 0.498))
def test_moment_consistency(t, x):
    X = construct_singleton(t, x)
    for k in range(1, 101):
        m = complex(moment(X, k))
        assert abs(m - f_eval(Fraction(k, t), x)) <= 1e-10
