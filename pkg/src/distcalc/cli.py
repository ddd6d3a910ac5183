"""Command-line front end.

Subcommands dispatch into the library and print either aligned text or
JSON (--json); both carry the same numbers, rendered as shortest
round-tripping decimals so golden tests are byte-stable.

Exit codes: 0 success/PASS, 1 FAIL (a residual exceeded the tolerance),
2 usage or parse error, 3 numerical failure (a tolerance could not be
certified). All error text goes to stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from . import expr as E
from .errors import (BadFraction, BoundViolated, ParseError, SemanticError,
                     SingularEvaluation, ToleranceNotMet, UnfillableLine,
                     UnsupportedExpr)
from .fourier import Convention, dist_normalize, fourier
from .kspace import (acquire_partial, conjugate_symmetry_residual, dft, idft,
                     inject_phase_error, partial_fourier_fill,
                     random_real_signal)
from .oracle import pair as oracle_pair
from .oracle import verify_ft
from .parser import parse_expr, parse_fnspec, print_expr, print_fnspec
from .poisson import periodization_report
from .schwartz import random_family, standard_family

DEFAULT_TOL = 1e-8

SCHEMA_NAMES = ("transform", "verify", "pair", "psf", "table", "kspace_demo")


def load_schema(name: str) -> dict:
    """Shipped JSON schema for a subcommand's --json output."""
    if name not in SCHEMA_NAMES:
        raise ValueError(f"no schema named {name!r}")
    from importlib import resources
    ref = resources.files("distcalc") / "schemas" / f"{name}.json"
    return json.loads(ref.read_text())

SIN_FOOTNOTE = ("printed tables sometimes carry the opposite sign on this "
                "row; the sign shown here is the one the numerical oracle "
                "accepts")


@dataclass(frozen=True)
class FamilySpec:
    kind: str = "standard"
    n: int = 0
    seed: int = 0


@dataclass(frozen=True)
class Transform:
    expr: str
    convention: Convention
    explain: bool = False
    json_out: bool = False


@dataclass(frozen=True)
class Verify:
    expr: str
    convention: Convention
    family: FamilySpec
    tol: float
    json_out: bool = False


@dataclass(frozen=True)
class Pair:
    expr: str
    testfn: str
    tol: float
    json_out: bool = False


@dataclass(frozen=True)
class Psf:
    testfn: str
    xs: tuple
    tol: float
    json_out: bool = False


@dataclass(frozen=True)
class Table:
    convention: Convention
    json_out: bool = False


@dataclass(frozen=True)
class KspaceDemo:
    M: int
    fraction: float
    seed: int
    phase_slope: float
    tol: float
    json_out: bool = False


Command = Union[Transform, Verify, Pair, Psf, Table, KspaceDemo]

# the rows the table subcommand feeds to the engine; never a stored table
TABLE_INPUTS = (E.RECT, E.SINC, E.GAUSS, E.ONE, E.Delta(0.5), E.CExp(1.0),
                E.Cos(1.0), E.Sin(1.0), E.COMB)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _c(v: complex) -> list:
    return [float(v.real), float(v.imag)]


def _family(fam: FamilySpec):
    fns = list(standard_family())
    if fam.kind == "augmented":
        fns += list(random_family(fam.n, fam.seed))
    return fns


def _run_transform(cmd: Transform):
    e = parse_expr(cmd.expr)
    res = fourier(e, cmd.convention)
    text = print_expr(res.expr)
    if cmd.json_out:
        payload = {"input": cmd.expr, "convention": cmd.convention.value,
                   "result": text, "rules": list(res.provenance)}
        return 0, _dump(payload)
    lines = [text]
    if cmd.explain:
        lines.append("rules: " + ", ".join(res.provenance))
    return 0, "\n".join(lines) + "\n"


def _run_verify(cmd: Verify):
    e = parse_expr(cmd.expr)
    fns = _family(cmd.family)
    worst = 0.0
    ok = True
    for phi in fns:
        chk = verify_ft(e, phi, cmd.convention, cmd.tol)
        worst = max(worst, chk.residual)
        ok = ok and chk.ok
    if cmd.json_out:
        payload = {"expr": cmd.expr, "convention": cmd.convention.value,
                   "max_residual": float(worst), "family_size": len(fns),
                   "pass": ok}
        return (0 if ok else 1), _dump(payload)
    verdict = "PASS" if ok else "FAIL"
    out = (f"max residual {worst!r} over {len(fns)} test functions: "
           f"{verdict} (tol {cmd.tol!r})\n")
    return (0 if ok else 1), out


def _run_pair(cmd: Pair):
    e = parse_expr(cmd.expr)
    phi = parse_fnspec(cmd.testfn)
    res = oracle_pair(e, phi, cmd.tol)
    v = complex(res.value)
    if cmd.json_out:
        payload = {"expr": cmd.expr, "testfn": cmd.testfn, "value": _c(v),
                   "err_bound": float(res.err_bound),
                   "method": res.method.value}
        return 0, _dump(payload)
    return 0, (f"value {v!r}  err_bound {float(res.err_bound)!r}  "
               f"method {res.method.value}\n")


def _run_psf(cmd: Psf):
    phi = parse_fnspec(cmd.testfn)
    reports = [periodization_report(phi, x, cmd.tol) for x in cmd.xs]
    worst = max(r.residual for r in reports)
    ok = worst < cmd.tol
    if cmd.json_out:
        payload = {
            "testfn": cmd.testfn, "tol": cmd.tol,
            "points": [{"x": float(r.x), "residual": float(r.residual),
                        "tail_bound": float(r.tail_bound),
                        "lhs": _c(r.lhs), "rhs": _c(r.rhs)}
                       for r in reports],
            "max_residual": float(worst), "pass": ok,
        }
        return (0 if ok else 1), _dump(payload)
    lines = [f"x={x!r}  residual {r.residual!r}  tail_bound {r.tail_bound!r}"
             for x, r in zip(cmd.xs, reports)]
    verdict = "PASS" if ok else "FAIL"
    lines.append(f"max residual {worst!r}: {verdict} (tol {cmd.tol!r})")
    return (0 if ok else 1), "\n".join(lines) + "\n"


def _atom_label(atom) -> str:
    # cos/sin do not survive normalization, so print_expr would show
    # their exponential expansion; the table wants the surface name
    if isinstance(atom, E.Cos):
        return f"cos2pi({atom.xi0!r})"
    if isinstance(atom, E.Sin):
        return f"sin2pi({atom.xi0!r})"
    return print_expr(atom)


def _table_rows(conv: Convention):
    rows = []
    for atom in TABLE_INPUTS:
        res = fourier(atom, conv)
        text = print_expr(res.expr)
        note = False
        if isinstance(atom, E.Sin):
            flipped = dist_normalize(E.Scale(complex(-1.0), res.expr))
            note = print_expr(flipped) != text
        rows.append((_atom_label(atom), text, note))
    return rows


def _run_table(cmd: Table):
    rows = _table_rows(cmd.convention)
    if cmd.json_out:
        payload = {"convention": cmd.convention.value,
                   "rows": [{"input": i, "result": r, "footnote": n}
                            for i, r, n in rows],
                   "footnote": SIN_FOOTNOTE}
        return 0, _dump(payload)
    w = max(len(i) for i, _, _ in rows)
    head = f"{'expression':<{w}}  transform ({cmd.convention.value})"
    lines = [head, "-" * len(head)]
    for i, r, n in rows:
        lines.append(f"{i:<{w}}  {r}" + ("  *" if n else ""))
    if any(n for _, _, n in rows):
        lines.append(f"* {SIN_FOOTNOTE}")
    return 0, "\n".join(lines) + "\n"


def _run_kspace_demo(cmd: KspaceDemo):
    s = random_real_signal(cmd.M, cmd.seed)
    clean_K = dft(s)
    clean_sym = float(conjugate_symmetry_residual(clean_K))
    filled = partial_fourier_fill(acquire_partial(clean_K, cmd.fraction))
    rec = idft(filled)
    clean_err = float(max(abs(a - b) for a, b in zip(rec.samples, s.samples)))
    ok = clean_err < cmd.tol
    corrupted = None
    final_rec = rec
    if cmd.phase_slope != 0.0:
        bad = inject_phase_error(s, cmd.phase_slope)
        bad_K = dft(bad)
        bad_sym = float(conjugate_symmetry_residual(bad_K))
        bad_fill = partial_fourier_fill(acquire_partial(bad_K, cmd.fraction))
        final_rec = idft(bad_fill)
        bad_err = float(max(abs(a - b)
                            for a, b in zip(final_rec.samples, bad.samples)))
        corrupted = {"symmetry_residual": bad_sym, "recon_error": bad_err}
        # the demo's claim: a phase ramp visibly breaks the symmetry
        ok = ok and bad_sym > 1e-3 and bad_err > 1e-3
    if cmd.json_out:
        payload = {
            "M": cmd.M, "fraction": cmd.fraction, "seed": cmd.seed,
            "phase_slope": cmd.phase_slope, "tol": cmd.tol,
            "clean": {"symmetry_residual": clean_sym,
                      "recon_error": clean_err},
            "corrupted": corrupted,
            "signal": [_c(v) for v in s.samples],
            "reconstruction": [_c(v) for v in final_rec.samples],
            "pass": ok,
        }
        return (0 if ok else 1), _dump(payload)
    lines = [f"signal: M={cmd.M} seed={cmd.seed} (real, empty Nyquist line)",
             f"clean symmetry residual   {clean_sym!r}",
             f"clean recon error         {clean_err!r} "
             f"(fraction {cmd.fraction!r})"]
    if corrupted is not None:
        lines += [f"phase slope {cmd.phase_slope!r}:",
                  f"corrupt symmetry residual {corrupted['symmetry_residual']!r}",
                  f"corrupt recon error       {corrupted['recon_error']!r}"]
    lines.append("PASS" if ok else "FAIL")
    return (0 if ok else 1), "\n".join(lines) + "\n"


def run(cmd: Command):
    """Execute a command; returns (exit_code, stdout_text)."""
    if isinstance(cmd, Transform):
        return _run_transform(cmd)
    if isinstance(cmd, Verify):
        return _run_verify(cmd)
    if isinstance(cmd, Pair):
        return _run_pair(cmd)
    if isinstance(cmd, Psf):
        return _run_psf(cmd)
    if isinstance(cmd, Table):
        return _run_table(cmd)
    if isinstance(cmd, KspaceDemo):
        return _run_kspace_demo(cmd)
    raise TypeError(f"not a command: {cmd!r}")


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="distcalc",
        description="Fourier calculus for tempered distributions")
    sub = p.add_subparsers(dest="command", required=True)

    def add_conv(sp):
        sp.add_argument("--convention", choices=["math", "eng"],
                        default="eng")

    def add_common(sp):
        sp.add_argument("--tol", type=float, default=None,
                        help="tolerance (default: DISTCALC_TOL env or 1e-8)")
        sp.add_argument("--json", action="store_true", dest="json_out")

    sp = sub.add_parser("transform", help="symbolic Fourier transform")
    sp.add_argument("expr")
    add_conv(sp)
    sp.add_argument("--explain", action="store_true",
                    help="list the rewrite rules applied")
    sp.add_argument("--json", action="store_true", dest="json_out")

    sp = sub.add_parser("verify",
                        help="check the transform against the dual-pairing "
                             "oracle over a family of test functions")
    sp.add_argument("expr")
    add_conv(sp)
    add_common(sp)
    sp.add_argument("--seed", type=int, default=None,
                    help="augment the standard family with 8 seeded "
                         "random test functions")

    sp = sub.add_parser("pair", help="dual pairing <expr, testfn>")
    sp.add_argument("expr")
    sp.add_argument("testfn", help="poly(c0,c1,...)*gauss(a,b)*mod(w)")
    add_common(sp)

    sp = sub.add_parser("psf", help="two-sided periodization check")
    sp.add_argument("testfn")
    sp.add_argument("xs", nargs="*", type=float, default=[0.0, 0.25, 0.5])
    add_common(sp)

    sp = sub.add_parser("table",
                        help="transform table for the nine atoms, "
                             "computed by the engine")
    add_conv(sp)
    sp.add_argument("--json", action="store_true", dest="json_out")

    sp = sub.add_parser("kspace-demo",
                        help="seeded partial-Fourier reconstruction demo")
    sp.add_argument("--M", type=int, default=64)
    sp.add_argument("--fraction", type=float, default=0.625)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--phase-slope", type=float, default=0.0)
    add_common(sp)
    return p


def _resolve_tol(args, p: argparse.ArgumentParser) -> float:
    tol = getattr(args, "tol", None)
    if tol is None:
        raw = os.environ.get("DISTCALC_TOL")
        if raw is not None:
            try:
                tol = float(raw)
            except ValueError:
                p.error(f"DISTCALC_TOL is not a number: {raw!r}")
        else:
            tol = DEFAULT_TOL
    if not tol > 0.0:
        p.error(f"tolerance must be positive, got {tol!r}")
    return tol


def _check_seed(seed, p: argparse.ArgumentParser):
    if seed is not None and not 0 <= seed < 2 ** 64:
        p.error(f"seed must fit in 64 bits, got {seed}")


def _to_command(args, p: argparse.ArgumentParser) -> Command:
    if args.command == "transform":
        return Transform(args.expr, Convention(args.convention),
                         args.explain, args.json_out)
    if args.command == "verify":
        _check_seed(args.seed, p)
        fam = (FamilySpec() if args.seed is None
               else FamilySpec("augmented", 8, args.seed))
        return Verify(args.expr, Convention(args.convention), fam,
                      _resolve_tol(args, p), args.json_out)
    if args.command == "pair":
        return Pair(args.expr, args.testfn, _resolve_tol(args, p),
                    args.json_out)
    if args.command == "psf":
        return Psf(args.testfn, tuple(args.xs), _resolve_tol(args, p),
                   args.json_out)
    if args.command == "table":
        return Table(Convention(args.convention), args.json_out)
    _check_seed(args.seed, p)
    return KspaceDemo(args.M, args.fraction, args.seed, args.phase_slope,
                      _resolve_tol(args, p), args.json_out)


_USAGE_ERRORS = (ParseError, SemanticError, UnsupportedExpr, BadFraction,
                 UnfillableLine, SingularEvaluation, ValueError)


def main(argv: Optional[list] = None) -> int:
    p = _build_parser()
    args = p.parse_args(argv)
    cmd = _to_command(args, p)
    try:
        code, out = run(cmd)
    except _USAGE_ERRORS as err:
        print(f"distcalc: {err}", file=sys.stderr)
        return 2
    except ToleranceNotMet as err:
        print(f"distcalc: {err}", file=sys.stderr)
        return 3
    except BoundViolated as err:
        print(f"distcalc: {err}", file=sys.stderr)
        return 1
    sys.stdout.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
