"""Text form of distribution expressions and of Schwartz test functions.

Expression grammar (whitespace-insensitive):

    expr    := term { ("+" | "-") term }
    term    := factor { "*" factor }
    factor  := complex | atom | call | "(" expr ")"
    atom    := "rect" | "sinc" | "gauss" | "one" | "comb"
    call    := "delta" "(" real ")" | "cexp" "(" real ")"
             | "cos2pi" "(" real ")" | "sin2pi" "(" real ")"
             | "shift" "(" expr "," real ")" | "dilate" "(" expr "," real ")"
             | "conj" "(" expr ")" | "re" "(" expr ")" | "im" "(" expr ")"
    complex := real [ ("+" | "-") number "i" ] | real "i" | real

Complex literals bind greedily: 1+2i*rect scales rect by the constant 1+2i;
parenthesize as 1+(2i*rect) for the sum reading.  Scalars combine with
expressions through Scale; a product of two distribution-valued factors has
no meaning in this algebra and raises SemanticError.

parse_expr returns the normalized tree.  print_expr renders normal forms
with shortest round-tripping decimals so that parse_expr(print_expr(e))
equals normalize(e) exactly, bit for bit.

Test functions use the fixed textual shape poly(c0,c1,...)*gauss(a,b)*mod(w)
with the poly and mod parts optional on input and always present on output.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from . import expr as E
from .errors import ParseError, SemanticError
from .schwartz import SchwartzFn

_MAX_INPUT = 64 * 1024

_TOKEN = re.compile(
    r"""(?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
      | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
      | (?P<sym>[+\-*(),])
      | (?P<ws>\s+)
      | (?P<bad>.)""",
    re.VERBOSE,
)


@dataclass(frozen=True)
class _Tok:
    kind: str   # num | name | sym | end
    text: str
    line: int
    col: int


def _tokenize(text: str) -> list[_Tok]:
    line, col = 1, 1
    out = []
    for m in _TOKEN.finditer(text):
        kind = m.lastgroup
        s = m.group()
        if kind == "bad":
            raise ParseError(f"unexpected character {s!r}", line, col,
                             "expression syntax")
        if kind != "ws":
            out.append(_Tok(kind, s, line, col))
        nl = s.count("\n")
        if nl:
            line += nl
            col = len(s) - s.rfind("\n")
        else:
            col += len(s)
    out.append(_Tok("end", "", line, col))
    return out


class _Parser:
    def __init__(self, text: str):
        if len(text.encode("utf-8", "replace")) > _MAX_INPUT:
            raise ParseError("input too large", 1, 1, "at most 64 KiB")
        self.toks = _tokenize(text)
        self.pos = 0

    def peek(self, ahead: int = 0) -> _Tok:
        i = min(self.pos + ahead, len(self.toks) - 1)
        return self.toks[i]

    def next(self) -> _Tok:
        tok = self.toks[self.pos]
        if tok.kind != "end":
            self.pos += 1
        return tok

    def fail(self, expected: str):
        tok = self.peek()
        shown = "end of input" if tok.kind == "end" else repr(tok.text)
        raise ParseError(f"unexpected {shown}", tok.line, tok.col, expected)

    def expect_sym(self, sym: str):
        tok = self.peek()
        if tok.kind == "sym" and tok.text == sym:
            return self.next()
        self.fail(f"'{sym}'")

    # values are complex scalars until a distribution forces promotion
    def expr(self):
        v = self.term()
        while self.peek().kind == "sym" and self.peek().text in "+-":
            op = self.next().text
            r = self.term()
            if isinstance(v, complex) and isinstance(r, complex):
                v = v - r if op == "-" else v + r
            else:
                left = _promote(v)
                right = _promote(r)
                if op == "-":
                    right = E.Scale(-1.0 + 0j, right)
                v = E.Sum((left, right))
        return v

    def term(self):
        scalar = 1.0 + 0j
        dist = None
        seen_scalar = False
        while True:
            f = self.factor()
            if isinstance(f, complex):
                scalar *= f
                seen_scalar = True
            elif dist is None:
                dist = f
            else:
                raise SemanticError(
                    "product of two distribution-valued factors is not defined")
            if self.peek().kind == "sym" and self.peek().text == "*":
                self.next()
                continue
            break
        if dist is None:
            return scalar
        if seen_scalar:
            return E.Scale(scalar, dist)
        return dist

    def factor(self):
        tok = self.peek()
        if tok.kind == "sym" and tok.text == "(":
            self.next()
            v = self.expr()
            self.expect_sym(")")
            return v
        if tok.kind == "num" or (tok.kind == "sym" and tok.text in "+-"):
            return self.complex_lit()
        if tok.kind == "name":
            return self.atom_or_call()
        self.fail("a number, atom, call, or '('")

    def complex_lit(self) -> complex:
        sign = 1.0
        if self.peek().kind == "sym" and self.peek().text in "+-":
            if self.peek().text == "-":
                sign = -1.0
            self.next()
        first = sign * self.number()
        nxt = self.peek()
        if nxt.kind == "name" and nxt.text == "i":
            self.next()
            return complex(0.0, first)
        if (nxt.kind == "sym" and nxt.text in "+-"
                and self.peek(1).kind == "num"
                and self.peek(2).kind == "name" and self.peek(2).text == "i"):
            s2 = -1.0 if self.next().text == "-" else 1.0
            imag = s2 * self.number()
            self.next()  # the "i"
            return complex(first, imag)
        return complex(first, 0.0)

    def number(self) -> float:
        tok = self.peek()
        if tok.kind != "num":
            self.fail("a number")
        self.next()
        v = float(tok.text)
        if v == float("inf"):
            raise ParseError(f"number out of range: {tok.text}",
                             tok.line, tok.col, "a finite number")
        return v

    def real(self) -> float:
        sign = 1.0
        if self.peek().kind == "sym" and self.peek().text in "+-":
            if self.peek().text == "-":
                sign = -1.0
            self.next()
        return sign * self.number()

    _ATOMS = {"rect": E.RECT, "sinc": E.SINC, "gauss": E.GAUSS,
              "one": E.ONE, "comb": E.COMB}

    def atom_or_call(self):
        tok = self.next()
        name = tok.text
        if name in self._ATOMS:
            return self._ATOMS[name]
        if name in ("delta", "cexp", "cos2pi", "sin2pi"):
            self.expect_sym("(")
            arg = self.real()
            self.expect_sym(")")
            node = {"delta": E.Delta, "cexp": E.CExp,
                    "cos2pi": E.Cos, "sin2pi": E.Sin}[name]
            return node(arg)
        if name in ("shift", "dilate"):
            self.expect_sym("(")
            inner = _promote(self.expr())
            self.expect_sym(",")
            arg = self.real()
            self.expect_sym(")")
            if name == "shift":
                return E.Shift(inner, arg)
            if arg <= 0.0:
                raise SemanticError(
                    f"dilation factor must be positive, got {arg}")
            return E.Dilate(inner, arg)
        if name in ("conj", "re", "im"):
            self.expect_sym("(")
            inner = _promote(self.expr())
            self.expect_sym(")")
            node = {"conj": E.Conjugate, "re": E.RealPart,
                    "im": E.ImagPart}[name]
            return node(inner)
        raise ParseError(f"unknown name {name!r}", tok.line, tok.col,
                         "an atom or call")


def _promote(v) -> E.DistExpr:
    if isinstance(v, complex):
        return E.Scale(v, E.ONE)
    return v


def parse_expr(text: str) -> E.DistExpr:
    """Parse expression text and return its normal form."""
    p = _Parser(text)
    v = p.expr()
    if p.peek().kind != "end":
        p.fail("end of input")
    return E.normalize(_promote(v))


# --- printing ---------------------------------------------------------------

def _render_float(x: float) -> str:
    return repr(float(x))


def _render_atom(atom: E.DistExpr) -> str:
    if isinstance(atom, E.Rect):
        return "rect"
    if isinstance(atom, E.Sinc):
        return "sinc"
    if isinstance(atom, E.Gauss):
        return "gauss"
    if isinstance(atom, E.One):
        return "one"
    if isinstance(atom, E.Comb):
        return "comb"
    if isinstance(atom, E.Delta):
        return f"delta({_render_float(atom.x0)})"
    if isinstance(atom, E.CExp):
        return f"cexp({_render_float(atom.xi0)})"
    if isinstance(atom, E.Cos):
        return f"cos2pi({_render_float(atom.xi0)})"
    if isinstance(atom, E.Sin):
        return f"sin2pi({_render_float(atom.xi0)})"
    raise TypeError(f"not an atom: {atom!r}")


def _render_core(core: E.DistExpr) -> str:
    atom, t, lam = E.split_core(core)
    s = _render_atom(atom)
    if t != 0.0:
        s = f"shift({s},{_render_float(t)})"
    if lam != 1.0:
        s = f"dilate({s},{_render_float(lam)})"
    return s


def _render_term(coeff: complex, core: E.DistExpr) -> tuple[bool, str]:
    """Return (negative, text_without_sign) for one normalized term."""
    s = _render_core(core)
    re_, im_ = coeff.real, coeff.imag
    if im_ == 0.0:
        if re_ == 1.0:
            return False, s
        return re_ < 0.0, f"{_render_float(abs(re_))}*{s}"
    if re_ == 0.0:
        return im_ < 0.0, f"{_render_float(abs(im_))}i*{s}"
    sign = "+" if im_ > 0.0 else "-"
    lit = f"({_render_float(re_)}{sign}{_render_float(abs(im_))}i)"
    return False, f"{lit}*{s}"


def print_expr(e: E.DistExpr) -> str:
    """Canonical text of normalize(e); parse_expr inverts it exactly."""
    terms = E.as_terms(e)
    if terms == ((0j, E.ONE),):
        return "0.0*one"
    parts = []
    for i, (coeff, core) in enumerate(terms):
        neg, body = _render_term(coeff, core)
        if i == 0:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append(("-" if neg else "+") + body)
    return "".join(parts)


# --- Schwartz test-function specs --------------------------------------------

def parse_fnspec(text: str) -> SchwartzFn:
    """Parse poly(c0,c1,...)*gauss(a,b)*mod(w); poly/mod optional."""
    p = _Parser(text)
    coeffs: tuple[complex, ...] = (1.0 + 0j,)
    tok = p.peek()
    if tok.kind != "name":
        p.fail("'poly' or 'gauss'")
    if tok.text == "poly":
        p.next()
        p.expect_sym("(")
        cs = [p.complex_lit()]
        while p.peek().kind == "sym" and p.peek().text == ",":
            p.next()
            cs.append(p.complex_lit())
        p.expect_sym(")")
        coeffs = tuple(cs)
        p.expect_sym("*")
        tok = p.peek()
    if not (tok.kind == "name" and tok.text == "gauss"):
        p.fail("'gauss'")
    p.next()
    p.expect_sym("(")
    a = p.real()
    p.expect_sym(",")
    b = p.real()
    p.expect_sym(")")
    omega = 0.0
    if p.peek().kind == "sym" and p.peek().text == "*":
        p.next()
        tok = p.peek()
        if not (tok.kind == "name" and tok.text == "mod"):
            p.fail("'mod'")
        p.next()
        p.expect_sym("(")
        omega = p.real()
        p.expect_sym(")")
    if p.peek().kind != "end":
        p.fail("end of input")
    if a <= 0.0:
        raise SemanticError(f"gauss width must be positive, got {a}")
    try:
        return SchwartzFn(coeffs, a, b, omega)
    except ValueError as exc:
        raise SemanticError(str(exc)) from None


def _render_scalar(c: complex) -> str:
    if c.imag == 0.0:
        return _render_float(c.real)
    if c.real == 0.0:
        return f"{_render_float(c.imag)}i"
    sign = "+" if c.imag > 0.0 else "-"
    return f"{_render_float(c.real)}{sign}{_render_float(abs(c.imag))}i"


def print_fnspec(fn: SchwartzFn) -> str:
    poly = ",".join(_render_scalar(c) for c in fn.coeffs)
    return (f"poly({poly})*gauss({_render_float(fn.a)},{_render_float(fn.b)})"
            f"*mod({_render_float(fn.omega)})")
