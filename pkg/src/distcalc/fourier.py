"""Symbolic Fourier transforms of distribution expressions.

The engine is a terminating rewrite system over normal forms: an atom table
under the engineering convention (kernel e^{-2 pi i x xi}, plain dx) plus
structural laws for linearity, time shifts (which become modulations), time
scaling, and conjugation.  Results under the math convention (kernel
e^{-i x xi}, measure (2 pi)^{-1/2} dx) are never produced by a second table;
they are always the engineering result pushed through the exact conversion
f1(xi) = (2 pi)^{-1/2} f2(xi / 2 pi), so the two tables cannot drift apart.

Every result carries the list of rule names that produced it, and keeps the
engineering-form anchor so conversions round-trip bit for bit.

Dilations of point masses are resolved here with the adjoint (Jacobian)
semantics Dilate{Delta{c}, lam} = (1/lam) Delta{c/lam}.  A dilated comb
stays symbolic: Dilate{Comb, lam} already denotes the spacing-1/lam comb,
and the pairing layer applies the same 1/lam weight when it evaluates one.

The sine row deserves a note: with FT(e^{2 pi i x xi0}) = delta(xi - xi0)
and sin = (e^{+} - e^{-})/(2i), linearity forces
FT(sin(2 pi xi0 x)) = (1/2i)[delta(xi - xi0) - delta(xi + xi0)].
Printed tables sometimes carry the opposite sign; the numerical oracle in
this package decides the question at test time, and it agrees with the
form above.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass

from .errors import UnsupportedExpr
from .expr import (COMB, GAUSS, ONE, RECT, SINC, CExp, Comb, Conjugate, Cos,
                   Delta, Dilate, DistExpr, Gauss, ImagPart, One, RealPart,
                   Rect, Scale, Shift, Sin, Sinc, Sum, as_terms, from_terms,
                   normalize, split_core)

_INV_SQRT_2PI = 1.0 / math.sqrt(2.0 * math.pi)
_INV_2PI = 1.0 / (2.0 * math.pi)
_SQRT_2PI = math.sqrt(2.0 * math.pi)
_2PI = 2.0 * math.pi

RULES = frozenset({
    "normalize-input", "reflect-input",
    "linearity-sum", "linearity-scale",
    "time-shift-modulation", "time-scaling",
    "distributional-dilation", "convention-convert",
    "rect->sinc", "sinc->rect", "gauss->gauss",
    "one->delta", "delta->one", "delta->cexp", "cexp->delta",
    "comb->comb",
})


class Convention(enum.Enum):
    MATH = "math"
    ENG = "eng"


@dataclass(frozen=True)
class TransformResult:
    """A symbolic transform plus the rule names that produced it.

    eng_expr is the engineering-convention form the result was derived
    from; conversions route through it so that converting back and forth
    returns structurally identical expressions.
    """

    expr: DistExpr
    convention: Convention
    provenance: tuple[str, ...]
    eng_expr: DistExpr = None

    def __post_init__(self):
        object.__setattr__(self, "provenance", tuple(self.provenance))
        if not self.provenance:
            raise ValueError("provenance must be non-empty")
        if self.eng_expr is None:
            if self.convention is Convention.ENG:
                anchor = self.expr
            else:
                anchor = dist_normalize(
                    Scale(_SQRT_2PI, Dilate(self.expr, _2PI)))
            object.__setattr__(self, "eng_expr", anchor)


class _Prov:
    """Ordered first-seen rule recorder."""

    def __init__(self, *initial: str):
        self.names: list[str] = []
        self._seen: set[str] = set()
        for name in initial:
            self.add(name)

    def add(self, name: str) -> None:
        if name not in self._seen:
            self._seen.add(name)
            self.names.append(name)


def dist_normalize(e: DistExpr) -> DistExpr:
    """Normal form with dilated point masses resolved to weighted deltas."""
    out = []
    for coeff, core in as_terms(e):
        atom, _, lam = split_core(core)
        if isinstance(atom, Delta) and lam != 1.0:
            out.append((coeff / lam, Delta(atom.x0 / lam)))
        else:
            out.append((coeff, core))
    return from_terms(out)


def reflect(e: DistExpr) -> DistExpr:
    """x -> -x pushed to the atoms (even atoms unchanged)."""
    if isinstance(e, (Rect, Sinc, Gauss, One, Comb, Cos)):
        return e
    if isinstance(e, Delta):
        return Delta(-e.x0)
    if isinstance(e, CExp):
        return CExp(-e.xi0)
    if isinstance(e, Sin):
        return Scale(-1.0 + 0j, e)
    if isinstance(e, Scale):
        return Scale(e.c, reflect(e.e))
    if isinstance(e, Sum):
        return Sum(tuple(reflect(t) for t in e.terms))
    if isinstance(e, Shift):
        return Shift(reflect(e.e), -e.x0)
    if isinstance(e, Dilate):
        return Dilate(reflect(e.e), e.lam)
    if isinstance(e, (Conjugate, RealPart, ImagPart)):
        return type(e)(reflect(e.e))
    raise TypeError(f"not a DistExpr: {e!r}")


def _modulate(g: DistExpr, c: float, prov: _Prov) -> DistExpr:
    """e^{2 pi i c xi} * g(xi), where the algebra can express it."""
    if c == 0.0:
        return g
    if isinstance(g, One):
        return CExp(c)
    if isinstance(g, CExp):
        return CExp(g.xi0 + c)
    if isinstance(g, Delta):
        return Scale(cmath.exp(2j * math.pi * c * g.x0), g)
    if isinstance(g, Scale):
        return Scale(g.c, _modulate(g.e, c, prov))
    if isinstance(g, Sum):
        return Sum(tuple(_modulate(t, c, prov) for t in g.terms))
    if isinstance(g, Shift):
        phase = cmath.exp(2j * math.pi * c * g.x0)
        return Scale(phase, Shift(_modulate(g.e, c, prov), g.x0))
    if isinstance(g, Dilate):
        return Dilate(_modulate(g.e, c / g.lam, prov), g.lam)
    if isinstance(g, Conjugate):
        return Conjugate(_modulate(g.e, -c, prov))
    raise UnsupportedExpr(
        f"cannot modulate {type(g).__name__}: the expression language has "
        f"no product of a {type(g).__name__} envelope with a complex "
        f"exponential")


def _ft_core(core: DistExpr, prov: _Prov) -> DistExpr:
    if isinstance(core, Dilate):
        inner = _ft_core(core.e, prov)
        prov.add("time-scaling")
        return Scale(complex(1.0 / core.lam), Dilate(inner, 1.0 / core.lam))
    if isinstance(core, Shift):
        inner = _ft_core(core.e, prov)
        prov.add("time-shift-modulation")
        return _modulate(inner, -core.x0, prov)
    if isinstance(core, Rect):
        prov.add("rect->sinc")
        return SINC
    if isinstance(core, Sinc):
        prov.add("sinc->rect")
        return RECT
    if isinstance(core, Gauss):
        prov.add("gauss->gauss")
        return GAUSS
    if isinstance(core, One):
        prov.add("one->delta")
        return Delta(0.0)
    if isinstance(core, Comb):
        prov.add("comb->comb")
        return COMB
    if isinstance(core, CExp):
        prov.add("cexp->delta")
        return Delta(core.xi0)
    if isinstance(core, Delta):
        if core.x0 == 0.0:
            prov.add("delta->one")
            return ONE
        prov.add("delta->cexp")
        return CExp(-core.x0)
    raise TypeError(f"not a normal-form core: {core!r}")


def _resolve_terms(e: DistExpr, prov: _Prov) -> DistExpr:
    out = []
    fired = False
    for coeff, core in as_terms(e):
        atom, _, lam = split_core(core)
        if isinstance(atom, Delta) and lam != 1.0:
            out.append((coeff / lam, Delta(atom.x0 / lam)))
            fired = True
        else:
            out.append((coeff, core))
    if fired:
        prov.add("distributional-dilation")
    return from_terms(out)


def _to_math(eng: DistExpr, prov: _Prov) -> DistExpr:
    prov.add("convention-convert")
    raw = Scale(_INV_SQRT_2PI, Dilate(eng, _INV_2PI))
    return _resolve_terms(raw, prov)


def fourier(e: DistExpr, conv: Convention = Convention.ENG) -> TransformResult:
    """Symbolic transform of e under conv, normalized."""
    prov = _Prov("normalize-input")
    terms = as_terms(e)
    if len(terms) > 1:
        prov.add("linearity-sum")
    pieces = []
    for coeff, core in terms:
        if coeff != 1:
            prov.add("linearity-scale")
        pieces.append(Scale(coeff, _ft_core(core, prov)))
    eng = _resolve_terms(Sum(tuple(pieces)), prov)
    if conv is Convention.ENG:
        return TransformResult(eng, conv, tuple(prov.names), eng_expr=eng)
    expr = _to_math(eng, prov)
    return TransformResult(expr, conv, tuple(prov.names), eng_expr=eng)


def inverse_fourier(e: DistExpr, conv: Convention = Convention.ENG) -> TransformResult:
    """fourier of the reflection: the inversion theorem in rule form."""
    prov = _Prov("reflect-input")
    r = fourier(reflect(e), conv)
    for name in r.provenance:
        prov.add(name)
    return TransformResult(r.expr, r.convention, tuple(prov.names),
                           eng_expr=r.eng_expr)


def convert(r: TransformResult, to: Convention) -> TransformResult:
    """Rewrite a transform between conventions through its anchor."""
    if to is r.convention:
        return r
    prov = _Prov(*r.provenance)
    if to is Convention.MATH:
        expr = _to_math(r.eng_expr, prov)
    else:
        prov.add("convention-convert")
        expr = r.eng_expr
    return TransformResult(expr, to, tuple(prov.names), eng_expr=r.eng_expr)
