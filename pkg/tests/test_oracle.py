"""Oracle tests: quadrature values against closed forms and scipy
cross-checks, pairing reductions, and rule-vs-quadrature verification.

scipy.integrate.quad appears here as a second opinion only; the library
itself never calls it.
"""

import math

import numpy as np
import pytest
from scipy.integrate import quad

import distcalc.expr as E
from distcalc.errors import BoundViolated, ToleranceNotMet, UnsupportedExpr
from distcalc.fourier import Convention, fourier
from distcalc.oracle import (Method, PairingResult, continuity_check,
                             ft_numeric, ft_numeric_many, pair,
                             transformed_pair, verify_ft)
from distcalc.schwartz import SchwartzFn, qN, standard_family

ENG, MATH = Convention.ENG, Convention.MATH

GAUSS_FN = SchwartzFn((1.0,), math.pi, 0.0, 0.0)
THETA = 1.0864348112133082          # sum over n of exp(-pi n^2)
THETA_HALF = 0.9135791381561168     # sum over n of exp(-pi (n - 1/2)^2)


def _quad_complex(f, lo, hi, points=None):
    # points: interior breakpoints (jumps of rect-like factors); without
    # them scipy can silently integrate past a discontinuity
    re = quad(lambda x: f(x).real, lo, hi, limit=400, points=points)[0]
    im = quad(lambda x: f(x).imag, lo, hi, limit=400, points=points)[0]
    return complex(re, im)


# ----------------------------------------------------------------- ft_numeric

class TestFtNumeric:
    def test_gaussian_fixed_point_eng(self):
        assert abs(ft_numeric(GAUSS_FN, 0.0, ENG, 1e-10) - 1.0) < 1e-10
        got = ft_numeric(GAUSS_FN, 1.0, ENG, 1e-10)
        assert abs(got - math.exp(-math.pi)) < 1e-10

    def test_gaussian_math_convention(self):
        got = ft_numeric(GAUSS_FN, 0.0, MATH, 1e-10)
        assert abs(got - 0.3989422804014327) < 1e-10

    def test_against_scipy_both_conventions(self):
        phi = SchwartzFn((0.3, 1.0), 2.0, 0.2, 1.0)
        for xi in np.linspace(-5.0, 5.0, 11):
            eng = ft_numeric(phi, xi, ENG)
            ref = _quad_complex(lambda x: phi(x) * np.exp(-2j * np.pi * xi * x),
                                -12.0, 12.0)
            assert abs(eng - ref) < 5e-9
            mat = ft_numeric(phi, xi, MATH)
            ref = _quad_complex(lambda x: phi(x) * np.exp(-1j * xi * x),
                                -12.0, 12.0) / math.sqrt(2.0 * math.pi)
            assert abs(mat - ref) < 5e-9

    def test_conjugation_symmetry(self):
        phi = SchwartzFn((0.5, -0.2j, 1.0), 3.0, -0.3, 1.5)
        for conv in (ENG, MATH):
            for xi in (0.0, 0.7, -2.0, 4.0):
                lhs = ft_numeric(phi.conj(), xi, conv)
                rhs = ft_numeric(phi, -xi, conv).conjugate()
                assert abs(lhs - rhs) < 2e-8

    def test_gaussian_derivative_identity(self):
        # d/dxi F2[g](xi) = F2[-2 pi i x g(x)](xi) = -2 pi xi F2[g](xi)
        moment = SchwartzFn((0.0, -2j * math.pi), math.pi, 0.0, 0.0)
        for xi in (-2.0, -0.5, 0.0, 1.0, 3.0):
            lhs = ft_numeric(moment, xi, ENG)
            rhs = -2.0 * math.pi * xi * ft_numeric(GAUSS_FN, xi, ENG)
            assert abs(lhs - rhs) < 1e-8

    def test_many_matches_single(self):
        phi = SchwartzFn((1.0, 0.5), 2.5, 0.3, -1.0)
        xis = np.array([-3.0, -1.0, 0.0, 0.4, 2.0, 17.0])
        vals, err = ft_numeric_many(phi, xis, ENG, 1e-9)
        assert err <= 1e-9
        for x, v in zip(xis, vals):
            assert abs(v - ft_numeric(phi, float(x), ENG, 1e-10)) < 2e-9

    def test_spectral_short_circuit_far_out(self):
        # far outside the spectral support the certified answer is 0
        assert ft_numeric(GAUSS_FN, 40.0, ENG) == 0j

    def test_unreachable_tolerance(self):
        with pytest.raises(ToleranceNotMet):
            ft_numeric(GAUSS_FN, 1.0, ENG, 1e-30)


# ----------------------------------------------------------------------- pair

class TestPair:
    def test_one_against_unit_gaussian(self):
        p = pair(E.ONE, GAUSS_FN)
        assert abs(p.value - 1.0) < 1e-8
        assert p.method is Method.QUADRATURE

    def test_comb_theta_value(self):
        p = pair(E.COMB, GAUSS_FN)
        assert abs(p.value - THETA) < 1e-8
        assert p.method is Method.TRUNCATED_SUM
        assert p.err_bound < 1e-8

    def test_comb_half_shift_theta(self):
        p = pair(E.Shift(E.COMB, 0.5), GAUSS_FN)
        assert abs(p.value - THETA_HALF) < 1e-8

    def test_delta_is_point_evaluation(self):
        phi = SchwartzFn((0.5, 1.0), 2.0, 0.3, 1.0)
        p = pair(E.Delta(0.4), phi)
        assert p.value == complex(phi(0.4))
        assert p.err_bound == 0.0
        assert p.method is Method.POINT_EVAL

    def test_dilated_comb(self):
        # comb(x/2) has spikes at even integers with weight 2
        p = pair(E.Dilate(E.COMB, 0.5), GAUSS_FN)
        direct = 2.0 * sum(math.exp(-math.pi * (2 * n) ** 2)
                           for n in range(-6, 7))
        assert abs(p.value - direct) < 1e-8

    def test_linearity_exact(self):
        phi = SchwartzFn((1.0,), 2.0, 0.1, 0.5)
        a = pair(E.Scale(2j, E.GAUSS), phi)
        b = pair(E.GAUSS, phi, tol=0.5e-8)
        assert a.value == 2j * b.value

    def test_against_scipy_regular_exprs(self):
        phi = SchwartzFn((0.4, 1.0), 2.0, -0.2, 0.8)
        cases = [
            (E.Shift(E.GAUSS, 0.3), None),
            (E.Dilate(E.SINC, 2.0), None),
            (E.Conjugate(E.CExp(1.5)), None),
            (E.Scale(2j, E.RECT), [-0.5, 0.5]),
            (E.RealPart(E.CExp(1.0)), None),
            (E.ImagPart(E.CExp(1.0)), None),
            (E.Sum((E.Cos(0.5), E.Scale(-1.0, E.Sin(1.5)))), None),
        ]
        for e, pts in cases:
            p = pair(e, phi)
            ref = _quad_complex(
                lambda x: E.eval_pointwise(e, np.array([x]))[0] * phi(x),
                -14.0, 14.0, points=pts)
            assert abs(p.value - ref) < 5e-8, e

    def test_composite_method_label(self):
        p = pair(E.Sum((E.Delta(0.0), E.COMB)), GAUSS_FN)
        assert p.method is Method.COMPOSITE

    def test_zero_scale_short_circuits(self):
        p = pair(E.ZERO, GAUSS_FN)
        assert p.value == 0j and p.err_bound == 0.0

    def test_error_bound_honest(self):
        phi = SchwartzFn((0.5, 1.0), 2.0, 0.3, 1.0)
        for e in (E.ONE, E.COMB, E.SINC, E.Gauss()):
            loose = pair(e, phi, tol=1e-6)
            tight = pair(e, phi, tol=1e-12)
            assert abs(loose.value - tight.value) <= loose.err_bound + 1e-12

    def test_rejects_bad_tol(self):
        with pytest.raises(ValueError):
            pair(E.ONE, GAUSS_FN, tol=0.0)


# ------------------------------------------------------------ transform side

class TestTransformedPair:
    def test_matches_engine_on_atoms(self):
        phi = SchwartzFn((0.5, 1.0), 2.0, 0.3, 1.0)
        for conv in (ENG, MATH):
            for e in (E.RECT, E.GAUSS, E.ONE, E.Delta(0.6), E.COMB):
                lhs = pair(fourier(e, conv).expr, phi, 5e-9)
                rhs = transformed_pair(e, phi, conv, 5e-9)
                assert abs(lhs.value - rhs.value) < 1e-8

    def test_zero(self):
        assert transformed_pair(E.ZERO, GAUSS_FN).value == 0j

    def test_shift_reduction_matches_quadrature(self):
        # <F(gauss(. - t)), phi> computed by carrier shift vs scipy on the
        # closed-form transform e^{-2 pi i t xi} e^{-pi xi^2}
        phi = SchwartzFn((1.0,), 2.0, 0.1, 0.4)
        t = 0.7
        got = transformed_pair(E.Shift(E.GAUSS, t), phi, ENG).value
        ref = _quad_complex(
            lambda xi: np.exp(-2j * np.pi * t * xi - np.pi * xi * xi)
            * phi(xi), -10.0, 10.0)
        assert abs(got - ref) < 5e-8


class TestVerifyFt:
    ROWS = [E.RECT, E.SINC, E.GAUSS, E.ONE, E.Delta(0.6), E.CExp(1.0),
            E.Cos(1.0), E.Sin(1.0), E.COMB]

    @pytest.mark.parametrize("conv", [ENG, MATH])
    def test_table_rows_verify(self, conv):
        phi = SchwartzFn((0.5, 1.0), 2.0, 0.3, 1.0)
        for e in self.ROWS:
            chk = verify_ft(e, phi, conv)
            assert chk.ok, (e, conv, chk.residual)
            assert chk.residual <= chk.err_bound + 1e-15

    def test_unsupported_input_propagates(self):
        with pytest.raises(UnsupportedExpr):
            verify_ft(E.Shift(E.RECT, 0.3), GAUSS_FN, ENG)

    def test_sin_sign_adjudication(self):
        # the sign-flipped sine row must fail against quadrature while the
        # engine's row passes; this pins the orientation of the rule
        xi0 = 1.0
        engine = fourier(E.Sin(xi0), ENG).expr
        flipped = E.normalize(E.Sum((E.Scale(0.5j, E.Delta(xi0)),
                                     E.Scale(-0.5j, E.Delta(-xi0)))))
        assert flipped != engine
        # needs a test function with phi(xi0) != phi(-xi0); an off-center
        # envelope separates the two candidate rows by ~0.2
        phi = SchwartzFn((1.0,), math.pi, 0.3, 0.0)
        rhs = transformed_pair(E.Sin(xi0), phi, ENG, 5e-9)
        good = abs(pair(engine, phi, 5e-9).value - rhs.value)
        bad = abs(pair(flipped, phi, 5e-9).value - rhs.value)
        assert good < 1e-8
        assert bad > 1e-2


# ---------------------------------------------------------------- continuity

class TestContinuity:
    def test_delta_order_one(self):
        rep = continuity_check(E.Delta(0.0), 1, 1.0)
        assert rep.worst_ratio <= 1.0 + 1e-9
        assert rep.n_checked == 24

    def test_one_order_two(self):
        rep = continuity_check(E.ONE, 2, 2.0)
        assert rep.worst_ratio <= 1.0 + 1e-9

    def test_wrong_constant_is_caught(self):
        with pytest.raises(BoundViolated) as exc:
            continuity_check(E.ONE, 2, 0.001)
        assert exc.value.witness is not None
        assert exc.value.ratio > 1.0

    def test_report_carries_worst_witness(self):
        fam = standard_family()[:6]
        rep = continuity_check(E.Delta(0.0), 1, 1.0, family=fam)
        assert rep.worst_phi in fam
        assert 0.0 < rep.worst_ratio <= 1.0 + 1e-9
        assert abs(pair(E.Delta(0.0), rep.worst_phi).value) <= \
            1.0 * qN(rep.worst_phi, 1) + 1e-9
