"""Desk-scale k-space: DFT, conjugate symmetry, partial-Fourier fill.

A real signal's spectrum satisfies X[-k] = conj(X[k]), so slightly more
than half of the lines determine the rest. This module realizes that
discretely: center-out acquisition of a > 1/2 fraction, conjugate fill
of the missing lines, and phase-error injection to show how the
symmetry (and with it the reconstruction) degrades.

Layout convention: k-space coefficients are stored in frequency order
k = -M/2 .. M/2-1. The k = -M/2 (Nyquist) line is self-paired: it has
no distinct mirror, is required real for real signals, and is never
synthesized by symmetry.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import BadFraction, SingularEvaluation, UnfillableLine
from .expr import DistExpr, Kind, classify, eval_pointwise


@dataclass(frozen=True)
class Signal:
    """Complex samples on the uniform grid x_m = (m - M/2) * dx."""

    samples: tuple
    dx: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "samples",
                           tuple(complex(s) for s in self.samples))
        M = len(self.samples)
        if M < 8 or M % 2:
            raise ValueError(f"signal length must be even and >= 8, got {M}")
        if not self.dx > 0.0:
            raise ValueError(f"sample spacing must be positive, got {self.dx!r}")

    @property
    def M(self) -> int:
        return len(self.samples)

    @property
    def is_real(self) -> bool:
        return all(s.imag == 0.0 for s in self.samples)


@dataclass(frozen=True)
class KSpace:
    """Spectrum lines indexed k = -M/2 .. M/2-1, with acquisition mask."""

    coeffs: tuple
    mask: tuple
    fraction: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "coeffs",
                           tuple(complex(c) for c in self.coeffs))
        object.__setattr__(self, "mask", tuple(bool(b) for b in self.mask))
        if len(self.mask) != len(self.coeffs):
            raise ValueError("mask and coeffs lengths differ")
        n_keep = round(self.fraction * len(self.coeffs))
        if sum(self.mask) != n_keep:
            raise ValueError(f"mask keeps {sum(self.mask)} lines, "
                             f"fraction {self.fraction!r} promises {n_keep}")

    @property
    def M(self) -> int:
        return len(self.coeffs)

    def line(self, k: int) -> complex:
        """Coefficient at signed frequency index k."""
        M = self.M
        if not -M // 2 <= k < M // 2:
            raise IndexError(f"k={k} outside [-{M // 2}, {M // 2})")
        return self.coeffs[k + M // 2]


def dft(s: Signal) -> KSpace:
    """X[k] = sum_m s[m] e^{-2 pi i k m / M}, plain non-unitary kernel."""
    X = np.fft.fftshift(np.fft.fft(np.asarray(s.samples, dtype=complex)))
    return KSpace(tuple(X), (True,) * s.M, 1.0)


def idft(K: KSpace, dx: float = 1.0) -> Signal:
    """Inverse with the +kernel and the 1/M factor."""
    x = np.fft.ifft(np.fft.ifftshift(np.asarray(K.coeffs, dtype=complex)))
    return Signal(tuple(x), dx)


def conjugate_symmetry_residual(K: KSpace, anti: bool = False) -> float:
    """max_k |X[-k] -+ conj(X[k])| over the paired indices.

    The self-paired Nyquist line k = -M/2 enters as |Im X| (real input)
    or |Re X| (anti, imaginary input) instead.
    """
    M = K.M
    sign = -1.0 if anti else 1.0
    worst = 0.0
    for k in range(0, M // 2):
        r = abs(K.line(-k) - sign * K.line(k).conjugate())
        worst = max(worst, r)
    nyq = K.line(-M // 2)
    worst = max(worst, abs(nyq.real) if anti else abs(nyq.imag))
    return worst


def acquire_partial(K: KSpace, fraction: float) -> KSpace:
    """Keep the center-out block of round(fraction*M) lines, zero the rest.

    The block covers all k >= 0 plus the lowest negative frequencies;
    anything below 1/2 would leave lines with no acquired mirror.
    """
    if not 0.5 < fraction <= 1.0:
        raise BadFraction(f"fraction must lie in (1/2, 1], got {fraction!r}")
    M = K.M
    n_keep = round(fraction * M)
    lo = -(n_keep - M // 2)  # lowest kept k
    mask = tuple(lo <= (i - M // 2) < M // 2 for i in range(M))
    coeffs = tuple(c if m else 0j for c, m in zip(K.coeffs, mask))
    return KSpace(coeffs, mask, fraction)


def partial_fourier_fill(K: KSpace) -> KSpace:
    """Set every unacquired X[k] to conj(X[-k]); full mask out.

    The Nyquist line has no mirror and stays as acquired (zero under the
    center-out mask at fraction < 1).
    """
    M = K.M
    coeffs = list(K.coeffs)
    for i, acquired in enumerate(K.mask):
        if acquired:
            continue
        k = i - M // 2
        if k == -M // 2:
            continue
        if not K.mask[-k + M // 2]:
            raise UnfillableLine(f"line k={k} has no acquired mirror", k=k)
        coeffs[i] = K.line(-k).conjugate()
    return KSpace(tuple(coeffs), (True,) * M, 1.0)


def sample_with_comb(e: DistExpr, delta: float, M: int) -> Signal:
    """Point samples s[m] = e((m - M/2) * delta): multiplication by a
    delta-spaced comb, truncated to M points."""
    if not delta > 0.0:
        raise ValueError(f"sample spacing must be positive, got {delta!r}")
    if classify(e) is not Kind.REGULAR:
        raise SingularEvaluation(
            "only a Regular expression has point samples")
    xs = (np.arange(M) - M // 2) * delta
    return Signal(tuple(eval_pointwise(e, xs)), delta)


def random_real_signal(M: int, seed: int, dx: float = 1.0) -> Signal:
    """Seeded real test signal with an empty Nyquist line.

    Conjugate fill cannot synthesize the self-paired k = -M/2 line, so a
    reconstruction benchmark must not hide content there; the alternating
    component is projected out.
    """
    rng = np.random.default_rng(seed)
    s = rng.standard_normal(M)
    alt = np.where(np.arange(M) % 2 == 0, 1.0, -1.0)
    s = s - (s @ alt) / M * alt
    return Signal(tuple(s.astype(complex)), dx)


def inject_phase_error(s: Signal, slope: float) -> Signal:
    """Multiply by e^{i * slope * x}: a linear phase ramp across the
    field of view, the kind of error that breaks conjugate symmetry."""
    xs = (np.arange(s.M) - s.M // 2) * s.dx
    ramp = np.exp(1j * slope * xs)
    return Signal(tuple(np.asarray(s.samples) * ramp), s.dx)
