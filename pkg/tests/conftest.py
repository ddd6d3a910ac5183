"""Shared hypothesis strategies and the acceptance-summary hook."""

from __future__ import annotations

import hypothesis.strategies as st
import pytest
from hypothesis import HealthCheck, settings

from distcalc import expr as E

settings.register_profile(
    "distcalc", deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("distcalc")

_CRITERION_LINES = pytest.StashKey()


@pytest.fixture(scope="session")
def criterion_log(pytestconfig):
    """Append one-line verdicts here; they are replayed after the run
    so they survive pytest's output capture."""
    return pytestconfig.stash.setdefault(_CRITERION_LINES, [])


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_CRITERION_LINES, None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)

# Dyadic-leaning pools keep accumulated floating-point noise far below the
# tolerances the eval-consistency property asserts, while still exercising
# phase folding and coefficient arithmetic.
COEFF_POOL = [1.0 + 0j, -1.0 + 0j, 0.5 + 0j, 2.0 + 0j, 1j, -0.5j,
              1.0 + 1.0j, 0.75 - 0.5j, 0j]
SHIFT_POOL = [0.0, 0.5, -0.25, 1.0, -1.5, 0.3]
LAM_POOL = [0.5, 1.0, 2.0, 0.75]
FREQ_POOL = [0.0, 0.5, 1.0, -1.5, 2.0]


def _atoms(singular: bool, param: st.SearchStrategy):
    opts = [
        st.just(E.RECT), st.just(E.SINC), st.just(E.GAUSS), st.just(E.ONE),
        param.map(E.CExp), param.map(E.Cos), param.map(E.Sin),
    ]
    if singular:
        opts += [st.just(E.COMB), param.map(E.Delta)]
    return st.one_of(*opts)


def expr_trees(depth: int = 5, singular: bool = True, wild: bool = False,
               sum_arity: int = 2) -> st.SearchStrategy:
    """Random DistExpr trees of bounded depth.

    wild=True draws parameters from continuous ranges (for structural
    properties that hold exactly); the default draws from small pools so
    numeric comparisons stay well-conditioned.
    """
    if wild:
        param = st.floats(min_value=-8, max_value=8, allow_nan=False,
                          allow_infinity=False).map(lambda v: v + 0.0)
        lam = st.floats(min_value=0.125, max_value=8, allow_nan=False,
                        allow_infinity=False)
        coeff = st.tuples(param, param).map(lambda p: complex(p[0], p[1]))
    else:
        param = st.sampled_from(SHIFT_POOL)
        lam = st.sampled_from(LAM_POOL)
        coeff = st.sampled_from(COEFF_POOL)
    freq = param if wild else st.sampled_from(FREQ_POOL)

    level = _atoms(singular, freq)
    for _ in range(depth):
        sub = level
        level = st.one_of(
            _atoms(singular, freq),
            st.tuples(coeff, sub).map(lambda t: E.Scale(t[0], t[1])),
            st.lists(sub, min_size=1, max_size=sum_arity).map(
                lambda l: E.Sum(tuple(l))),
            st.tuples(sub, param).map(lambda t: E.Shift(t[0], t[1])),
            st.tuples(sub, lam).map(lambda t: E.Dilate(t[0], t[1])),
            sub.map(E.Conjugate),
            sub.map(E.RealPart),
            sub.map(E.ImagPart),
        )
    return level
