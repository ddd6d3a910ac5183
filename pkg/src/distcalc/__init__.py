"""Symbolic calculus for tempered distributions on the line.

The package pairs a small expression language (distribution atoms plus
shift/dilate/scale/sum/conjugate combinators) with a dual-convention
Fourier transform engine, and checks every symbolic claim numerically by
pairing both sides against Schwartz test functions with certified error
bounds.  A k-space demo applies the same conjugate-symmetry arithmetic to
discrete partial-Fourier reconstruction.
"""

from .errors import (
    BadFraction,
    BoundViolated,
    DistCalcError,
    OrderTooHigh,
    ParseError,
    SemanticError,
    SingularEvaluation,
    ToleranceNotMet,
    UnfillableLine,
    UnsupportedExpr,
)
from .expr import (
    COMB,
    GAUSS,
    ONE,
    RECT,
    SINC,
    ZERO,
    CExp,
    Comb,
    Conjugate,
    Cos,
    Delta,
    Dilate,
    DistExpr,
    Gauss,
    ImagPart,
    Kind,
    One,
    RealPart,
    Rect,
    Scale,
    Shift,
    Sin,
    Sinc,
    Sum,
    as_terms,
    classify,
    eval_pointwise,
    from_terms,
    normalize,
)
from .fourier import (
    RULES,
    Convention,
    TransformResult,
    convert,
    dist_normalize,
    fourier,
    inverse_fourier,
    reflect,
)
from .kspace import (
    KSpace,
    Signal,
    acquire_partial,
    conjugate_symmetry_residual,
    dft,
    idft,
    inject_phase_error,
    partial_fourier_fill,
    random_real_signal,
    sample_with_comb,
)
from .oracle import (
    DEFAULT_TOL,
    ContinuityReport,
    FtCheck,
    Method,
    PairingResult,
    comb_sum,
    continuity_check,
    ft_numeric,
    ft_numeric_many,
    pair,
    transformed_pair,
    verify_ft,
)
from .parser import parse_expr, parse_fnspec, print_expr, print_fnspec
from .poisson import (
    PeriodizationReport,
    comb_selfdual_check,
    fourier_series_side,
    periodization_report,
    periodize,
    psf_check,
)
from .schwartz import SchwartzFn, qN, random_family, standard_family

__version__ = "0.1.0"
