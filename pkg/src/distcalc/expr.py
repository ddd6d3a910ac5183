"""Distribution expression trees and their canonical linear-combination form.

An expression denotes a tempered distribution on the real line.  Atoms cover
the classical transform-table entries (rect, sinc, the unit Gaussian, the
constant 1, Dirac deltas, complex exponentials, cos/sin at frequency xi0,
and the unit-spaced impulse comb); combinators provide complex scaling,
finite sums, argument shifts x -> x - x0, positive dilations x -> lam*x,
complex conjugation, and real/imaginary parts.

normalize() rewrites any tree into a sorted linear combination of primitive
cores Dilate{Shift{atom, t}, lam} (redundant wrappers elided).  Conjugation
and Re/Im are eliminated symbolically; Cos/Sin are expanded into complex
exponentials.  The rewrite performs no floating-point arithmetic a normal
form does not force, so it is exactly idempotent, bit for bit.

Dilations of Delta and Comb are kept symbolic here; their distributional
meaning (the 1/lam Jacobian factor) belongs to the transform and pairing
layers, which own the adjoint semantics.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import SingularEvaluation

__all__ = [
    "Rect", "Sinc", "Gauss", "One", "Comb", "Delta", "CExp", "Cos", "Sin",
    "Scale", "Sum", "Shift", "Dilate", "Conjugate", "RealPart", "ImagPart",
    "DistExpr", "Kind", "RECT", "SINC", "GAUSS", "ONE", "COMB", "ZERO",
    "classify", "eval_pointwise", "normalize", "as_terms", "from_terms",
    "split_core",
]


def _real(x) -> float:
    v = float(x)
    if not math.isfinite(v):
        raise ValueError(f"parameter must be finite, got {x!r}")
    return v + 0.0  # folds -0.0 into +0.0 so equal params hash equal


def _complex(c) -> complex:
    z = complex(c)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError(f"scale factor must be finite, got {c!r}")
    return complex(z.real + 0.0, z.imag + 0.0)


@dataclass(frozen=True)
class Rect:
    """Indicator of [-1/2, 1/2]; the boundary value at |x| = 1/2 is 1."""


@dataclass(frozen=True)
class Sinc:
    """sin(pi x) / (pi x), with sinc(0) = 1."""


@dataclass(frozen=True)
class Gauss:
    """The unit Gaussian e^{-pi x^2}."""


@dataclass(frozen=True)
class One:
    """The constant function 1."""


@dataclass(frozen=True)
class Comb:
    """Unit-spaced Dirac comb: sum of delta(x - n) over all integers n."""


@dataclass(frozen=True)
class Delta:
    """Dirac delta concentrated at x0: pairs to phi(x0)."""

    x0: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "x0", _real(self.x0))


@dataclass(frozen=True)
class CExp:
    """Complex exponential e^{2 pi i xi0 x}."""

    xi0: float

    def __post_init__(self):
        object.__setattr__(self, "xi0", _real(self.xi0))


@dataclass(frozen=True)
class Cos:
    """cos(2 pi xi0 x)."""

    xi0: float

    def __post_init__(self):
        object.__setattr__(self, "xi0", _real(self.xi0))


@dataclass(frozen=True)
class Sin:
    """sin(2 pi xi0 x)."""

    xi0: float

    def __post_init__(self):
        object.__setattr__(self, "xi0", _real(self.xi0))


@dataclass(frozen=True)
class Scale:
    """c * e for a complex constant c."""

    c: complex
    e: "DistExpr"

    def __post_init__(self):
        object.__setattr__(self, "c", _complex(self.c))


@dataclass(frozen=True)
class Sum:
    """Finite sum of expressions."""

    terms: tuple["DistExpr", ...]

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))
        if not self.terms:
            raise ValueError("Sum requires at least one term")


@dataclass(frozen=True)
class Shift:
    """e(x - x0)."""

    e: "DistExpr"
    x0: float

    def __post_init__(self):
        object.__setattr__(self, "x0", _real(self.x0))


@dataclass(frozen=True)
class Dilate:
    """e(lam * x), lam > 0."""

    e: "DistExpr"
    lam: float

    def __post_init__(self):
        v = _real(self.lam)
        if v <= 0.0:
            raise ValueError(f"dilation factor must be positive, got {self.lam!r}")
        object.__setattr__(self, "lam", v)


@dataclass(frozen=True)
class Conjugate:
    """Complex conjugate of e."""

    e: "DistExpr"


@dataclass(frozen=True)
class RealPart:
    """Re(e), resolved during normalization via (e + conj e)/2."""

    e: "DistExpr"


@dataclass(frozen=True)
class ImagPart:
    """Im(e), resolved during normalization via (e - conj e)/(2i)."""

    e: "DistExpr"


DistExpr = (
    Rect | Sinc | Gauss | One | Comb | Delta | CExp | Cos | Sin
    | Scale | Sum | Shift | Dilate | Conjugate | RealPart | ImagPart
)

RECT = Rect()
SINC = Sinc()
GAUSS = Gauss()
ONE = One()
COMB = Comb()

_SINGULAR_ATOMS = (Delta, Comb)
_REGULAR_ATOMS = (Rect, Sinc, Gauss, One, CExp, Cos, Sin)


class Kind(enum.Enum):
    REGULAR = "regular"
    SINGULAR = "singular"
    MIXED = "mixed"


def classify(e: DistExpr) -> Kind:
    """Regular if no Delta/Comb occurs, Singular if every additive term
    contains one, Mixed otherwise.  Works on the tree as written."""
    has_reg = has_sing = False
    stack = [e]
    while stack:
        cur = stack.pop()
        if isinstance(cur, _SINGULAR_ATOMS):
            has_sing = True
        elif isinstance(cur, _REGULAR_ATOMS):
            has_reg = True
        elif isinstance(cur, Sum):
            stack.extend(cur.terms)
        else:
            stack.append(cur.e)
    if has_sing and has_reg:
        return Kind.MIXED
    return Kind.SINGULAR if has_sing else Kind.REGULAR


def eval_pointwise(e: DistExpr, x):
    """Evaluate a Regular expression at x (scalar or array).

    Raises SingularEvaluation if the tree contains Delta or Comb, zero
    coefficients notwithstanding: evaluation inspects the tree as written.
    """
    arr = np.asarray(x, dtype=float)
    out = _eval(e, arr)
    if np.ndim(x) == 0:
        return complex(out)
    return out


def _eval(e: DistExpr, x: np.ndarray):
    if isinstance(e, Rect):
        return np.where(np.abs(x) <= 0.5, 1.0 + 0j, 0j)
    if isinstance(e, Sinc):
        return np.sinc(x).astype(complex)
    if isinstance(e, Gauss):
        return np.exp(-np.pi * x * x).astype(complex)
    if isinstance(e, One):
        return np.ones_like(x, dtype=complex)
    if isinstance(e, CExp):
        return np.exp(2j * np.pi * e.xi0 * x)
    if isinstance(e, Cos):
        return np.cos(2.0 * np.pi * e.xi0 * x).astype(complex)
    if isinstance(e, Sin):
        return np.sin(2.0 * np.pi * e.xi0 * x).astype(complex)
    if isinstance(e, _SINGULAR_ATOMS):
        raise SingularEvaluation(
            f"{type(e).__name__} has no pointwise values; use a pairing instead")
    if isinstance(e, Scale):
        return e.c * _eval(e.e, x)
    if isinstance(e, Sum):
        out = _eval(e.terms[0], x)
        for term in e.terms[1:]:
            out = out + _eval(term, x)
        return out
    if isinstance(e, Shift):
        return _eval(e.e, x - e.x0)
    if isinstance(e, Dilate):
        return _eval(e.e, e.lam * x)
    if isinstance(e, Conjugate):
        return np.conjugate(_eval(e.e, x))
    if isinstance(e, RealPart):
        return _eval(e.e, x).real.astype(complex)
    if isinstance(e, ImagPart):
        return _eval(e.e, x).imag.astype(complex)
    raise TypeError(f"not a DistExpr: {e!r}")


# --- canonical form -------------------------------------------------------
#
# Every additive term is reduced to coeff * atom(lam*x - t), stored as the
# core Dilate{Shift{atom, t}, lam} with unit wrappers dropped.  The context
# (lam, t) is maintained so that Shift only ever adds and Dilate only ever
# multiplies; re-collecting a finalized core therefore repeats no arithmetic
# and normalize is exactly idempotent.

def normalize(e: DistExpr) -> DistExpr:
    acc: dict[DistExpr, complex] = {}
    _collect(e, 1.0 + 0j, False, 1.0, 0.0, acc)
    return _rebuild(acc)


def _collect(e, coeff: complex, conj: bool, lam: float, t: float, acc) -> None:
    if isinstance(e, Scale):
        c = e.c.conjugate() if conj else e.c
        _collect(e.e, coeff * c, conj, lam, t, acc)
    elif isinstance(e, Sum):
        for term in e.terms:
            _collect(term, coeff, conj, lam, t, acc)
    elif isinstance(e, Shift):
        _collect(e.e, coeff, conj, lam, t + e.x0, acc)
    elif isinstance(e, Dilate):
        _collect(e.e, coeff, conj, lam * e.lam, t * e.lam, acc)
    elif isinstance(e, Conjugate):
        _collect(e.e, coeff, not conj, lam, t, acc)
    elif isinstance(e, RealPart):
        # Re f = (f + conj f)/2; the value is real, so an outer conjugation
        # flag is moot and both branches restart the flag.
        _collect(e.e, 0.5 * coeff, False, lam, t, acc)
        _collect(e.e, 0.5 * coeff, True, lam, t, acc)
    elif isinstance(e, ImagPart):
        _collect(e.e, -0.5j * coeff, False, lam, t, acc)
        _collect(e.e, 0.5j * coeff, True, lam, t, acc)
    elif isinstance(e, Cos):
        _collect(CExp(e.xi0), 0.5 * coeff, False, lam, t, acc)
        _collect(CExp(-e.xi0), 0.5 * coeff, False, lam, t, acc)
    elif isinstance(e, Sin):
        # sin = (e^{+} - e^{-})/(2i)
        _collect(CExp(e.xi0), -0.5j * coeff, False, lam, t, acc)
        _collect(CExp(-e.xi0), 0.5j * coeff, False, lam, t, acc)
    else:
        _finalize(e, coeff, conj, lam, t, acc)


def _finalize(atom, coeff: complex, conj: bool, lam: float, t: float, acc) -> None:
    # The term denotes coeff * K(atom(lam*x - t)), K = conj if flagged.
    # Every atom below except CExp is real-valued, so K drops.
    if isinstance(atom, CExp):
        xi0 = -atom.xi0 if conj else atom.xi0
        if xi0 == 0.0:
            core: DistExpr = ONE
        else:
            if t != 0.0:
                coeff = coeff * cmath.exp(-2j * math.pi * t * xi0)
            freq = lam * xi0
            core = ONE if freq == 0.0 else CExp(freq)
    elif isinstance(atom, One):
        core = ONE
    elif isinstance(atom, Delta):
        c = t + atom.x0
        core = Delta(c) if lam == 1.0 else Dilate(Delta(c), lam)
    elif isinstance(atom, Comb):
        frac = t - math.floor(t)  # integer shifts fix the comb
        if frac == 1.0:
            frac = 0.0
        core = COMB if frac == 0.0 else Shift(COMB, frac)
        if lam != 1.0:
            core = Dilate(core, lam)
    elif isinstance(atom, (Rect, Sinc, Gauss)):
        core = atom
        if t != 0.0:
            core = Shift(core, t)
        if lam != 1.0:
            core = Dilate(core, lam)
    else:
        raise TypeError(f"not a DistExpr: {atom!r}")
    acc[core] = acc.get(core, 0j) + coeff


def _rebuild(acc: dict) -> DistExpr:
    terms = []
    for core, coeff in acc.items():
        coeff = complex(coeff.real + 0.0, coeff.imag + 0.0)
        if coeff == 0:
            continue
        terms.append((coeff, core))
    if not terms:
        return ZERO
    terms.sort(key=lambda item: _term_key(item[1]))
    built = [core if coeff == 1 else Scale(coeff, core) for coeff, core in terms]
    return built[0] if len(built) == 1 else Sum(tuple(built))


def split_core(core: DistExpr):
    """Unpack a normal-form core into (atom, t, lam) with core = atom(lam*x - t)."""
    lam, t = 1.0, 0.0
    if isinstance(core, Dilate):
        lam, core = core.lam, core.e
    if isinstance(core, Shift):
        t, core = core.x0, core.e
    return core, t, lam


def _term_key(core: DistExpr):
    atom, t, lam = split_core(core)
    param = getattr(atom, "x0", None)
    if param is None:
        param = getattr(atom, "xi0", 0.0)
    return (type(atom).__name__.lower(), param, t, lam)


def as_terms(e: DistExpr) -> tuple[tuple[complex, DistExpr], ...]:
    """Normalize e and split it into (coefficient, core) pairs.

    The zero expression yields the single pair (0, One), so the result is
    never empty and from_terms inverts it.
    """
    n = normalize(e)
    parts = n.terms if isinstance(n, Sum) else (n,)
    out = []
    for part in parts:
        if isinstance(part, Scale):
            out.append((part.c, part.e))
        else:
            out.append((1.0 + 0j, part))
    return tuple(out)


def from_terms(terms) -> DistExpr:
    """Rebuild the canonical expression for a (coefficient, core) sequence."""
    acc: dict[DistExpr, complex] = {}
    for coeff, core in terms:
        _collect(core, _complex(coeff), False, 1.0, 0.0, acc)
    return _rebuild(acc)


ZERO = Scale(0j, ONE)
