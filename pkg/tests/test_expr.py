import numpy as np
import pytest
from hypothesis import given, settings

from distcalc import expr as E
from distcalc.errors import SingularEvaluation

from conftest import expr_trees


class TestConstruction:
    def test_atoms_are_hashable_and_comparable(self):
        assert E.Delta(0.5) == E.Delta(0.5)
        assert len({E.RECT, E.Rect(), E.SINC}) == 2

    def test_negative_zero_params_collapse(self):
        assert E.Delta(-0.0) == E.Delta(0.0)
        assert E.CExp(-0.0) == E.CExp(0.0)

    def test_dilate_requires_positive_factor(self):
        with pytest.raises(ValueError):
            E.Dilate(E.RECT, 0.0)
        with pytest.raises(ValueError):
            E.Dilate(E.RECT, -2.0)

    def test_sum_requires_terms(self):
        with pytest.raises(ValueError):
            E.Sum(())

    def test_nonfinite_params_rejected(self):
        with pytest.raises(ValueError):
            E.Delta(float("nan"))
        with pytest.raises(ValueError):
            E.Scale(complex(float("inf"), 0), E.RECT)


class TestClassify:
    def test_rect_is_regular(self):
        assert E.classify(E.RECT) is E.Kind.REGULAR

    def test_gauss_plus_delta_is_mixed(self):
        assert E.classify(E.Sum((E.GAUSS, E.Delta(0)))) is E.Kind.MIXED

    def test_shifted_comb_is_singular(self):
        assert E.classify(E.Shift(E.COMB, 0.25)) is E.Kind.SINGULAR

    def test_zero_scaled_delta_counts_as_singular_raw(self):
        # classification reads the tree as written
        assert E.classify(E.Scale(0, E.Delta(1))) is E.Kind.SINGULAR


class TestEval:
    def test_rect_boundary_inclusive(self):
        assert E.eval_pointwise(E.RECT, 0.5) == 1
        assert E.eval_pointwise(E.RECT, -0.5) == 1
        assert E.eval_pointwise(E.RECT, 0.5000001) == 0

    def test_sinc_at_zero(self):
        assert E.eval_pointwise(E.SINC, 0.0) == 1

    def test_shifted_gauss_peak(self):
        assert E.eval_pointwise(E.Shift(E.GAUSS, 1.0), 1.0) == 1

    def test_combinator_semantics(self):
        e = E.Scale(2j, E.Dilate(E.CExp(1.0), 2.0))
        # 2i * exp(2 pi i * (2x)) at x = 1/8
        got = E.eval_pointwise(e, 0.125)
        assert abs(got - 2j * np.exp(1j * np.pi / 2)) < 1e-15

    def test_vectorized_matches_scalar(self):
        e = E.Sum((E.SINC, E.Scale(0.5, E.Cos(1.5))))
        xs = np.linspace(-2, 2, 7)
        vec = E.eval_pointwise(e, xs)
        assert vec.shape == xs.shape
        for i, x in enumerate(xs):
            assert vec[i] == E.eval_pointwise(e, float(x))

    def test_singular_eval_raises(self):
        with pytest.raises(SingularEvaluation):
            E.eval_pointwise(E.Delta(0), 0.0)
        with pytest.raises(SingularEvaluation):
            E.eval_pointwise(E.Scale(0, E.COMB), 1.0)


class TestNormalizeExamples:
    def test_unit_scale_elided(self):
        assert E.normalize(E.Scale(1, E.RECT)) == E.RECT

    def test_shift_composition(self):
        e = E.Shift(E.Shift(E.Delta(0), 0.25), 0.25)
        assert E.normalize(e) == E.Delta(0.5)

    def test_conjugate_cexp(self):
        assert E.normalize(E.Conjugate(E.CExp(3))) == E.CExp(-3)

    def test_zero_scale_convention(self):
        assert E.normalize(E.Scale(0, E.GAUSS)) == E.ZERO
        assert E.normalize(E.Sum((E.Delta(1), E.Scale(-1, E.Delta(1))))) == E.ZERO

    def test_unit_wrappers_elided(self):
        assert E.normalize(E.Shift(E.RECT, 0.0)) == E.RECT
        assert E.normalize(E.Dilate(E.RECT, 1.0)) == E.RECT

    def test_imagpart_of_real_atom_vanishes(self):
        assert E.normalize(E.ImagPart(E.RECT)) == E.ZERO

    def test_realpart_of_delta_is_delta(self):
        assert E.normalize(E.RealPart(E.Delta(0.5))) == E.Delta(0.5)

    def test_cos_expands_to_exponentials(self):
        n = E.normalize(E.Cos(2.0))
        assert n == E.Sum((E.Scale(0.5, E.CExp(-2.0)), E.Scale(0.5, E.CExp(2.0))))

    def test_sin_expands_to_exponentials(self):
        n = E.normalize(E.Sin(2.0))
        assert n == E.Sum((E.Scale(0.5j, E.CExp(-2.0)), E.Scale(-0.5j, E.CExp(2.0))))

    def test_cexp_zero_is_one(self):
        assert E.normalize(E.CExp(0.0)) == E.ONE
        assert E.normalize(E.Cos(0.0)) == E.ONE

    def test_shift_of_cexp_becomes_phase(self):
        n = E.normalize(E.Shift(E.CExp(1.0), 0.25))
        # e^{2 pi i (x - 1/4)} = -i e^{2 pi i x}
        assert isinstance(n, E.Scale) and n.e == E.CExp(1.0)
        assert abs(n.c - (-1j)) < 1e-15

    def test_comb_shift_reduced_mod_one(self):
        assert E.normalize(E.Shift(E.COMB, 2.0)) == E.COMB
        assert E.normalize(E.Shift(E.COMB, -1.75)) == E.Shift(E.COMB, 0.25)

    def test_dilated_delta_kept_symbolic(self):
        e = E.Dilate(E.Delta(1.0), 2.0)
        assert E.normalize(e) == e

    def test_merging_like_terms(self):
        e = E.Sum((E.Scale(2, E.GAUSS), E.Scale(1j, E.GAUSS), E.RECT))
        assert E.normalize(e) == E.Sum((E.Scale(2 + 1j, E.GAUSS), E.RECT))


class TestNormalizeProperties:
    @given(expr_trees(depth=7, singular=True, wild=True, sum_arity=3))
    def test_idempotent_exactly(self, e):
        n1 = E.normalize(e)
        n2 = E.normalize(n1)
        assert n1 == n2
        if isinstance(n1, E.Sum):
            assert len(n1.terms) >= 2

    @given(expr_trees(depth=6, singular=True, wild=True, sum_arity=3))
    def test_conjugate_involution(self, e):
        assert E.normalize(E.Conjugate(E.Conjugate(e))) == E.normalize(e)

    @settings(max_examples=60)
    @given(expr_trees(depth=5, singular=False))
    def test_eval_matches_after_normalize(self, e):
        x = np.linspace(-10.0, 10.0, 1001)
        raw = E.eval_pointwise(e, x)
        cooked = E.eval_pointwise(E.normalize(e), x)
        assert np.max(np.abs(raw - cooked)) <= 1e-12

    @given(expr_trees(depth=6, singular=True, wild=True, sum_arity=3))
    def test_classify_stable_under_normalize(self, e):
        ne = E.normalize(e)
        k_raw, k_norm = E.classify(e), E.classify(ne)
        if k_raw == k_norm:
            return
        # Classification may only change when a whole side cancels to zero.
        if ne == E.ZERO:
            return
        assert k_raw is E.Kind.MIXED
        assert k_norm in (E.Kind.REGULAR, E.Kind.SINGULAR)
        vanished_singular = k_norm is E.Kind.REGULAR
        side = _suppress(e, keep_singular=vanished_singular)
        assert E.normalize(side) == E.ZERO

    @given(expr_trees(depth=6, singular=True, wild=True, sum_arity=3))
    def test_terms_round_trip(self, e):
        n = E.normalize(e)
        assert E.from_terms(E.as_terms(e)) == n

    @given(expr_trees(depth=5, singular=True))
    def test_split_core_reassembles(self, e):
        for coeff, core in E.as_terms(e):
            atom, t, lam = E.split_core(core)
            rebuilt = atom
            if t != 0.0:
                rebuilt = E.Shift(rebuilt, t)
            if lam != 1.0:
                rebuilt = E.Dilate(rebuilt, lam)
            assert rebuilt == core


def _suppress(e, keep_singular: bool):
    """Replace atoms of one class by the zero expression.

    All combinators are linear (Conjugate antilinearly so), hence the result
    normalizes to exactly the surviving side's contribution.
    """
    if isinstance(e, E.Sum):
        return E.Sum(tuple(_suppress(t, keep_singular) for t in e.terms))
    if isinstance(e, E.Scale):
        return E.Scale(e.c, _suppress(e.e, keep_singular))
    if isinstance(e, E.Shift):
        return E.Shift(_suppress(e.e, keep_singular), e.x0)
    if isinstance(e, E.Dilate):
        return E.Dilate(_suppress(e.e, keep_singular), e.lam)
    if isinstance(e, (E.Conjugate, E.RealPart, E.ImagPart)):
        return type(e)(_suppress(e.e, keep_singular))
    is_singular = isinstance(e, (E.Delta, E.Comb))
    return e if is_singular == keep_singular else E.ZERO
