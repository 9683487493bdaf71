"""Reference-frame spectra and reading states for space and time.

A `Spectrum` is an equally spaced momentum (or energy) ladder p_k = p0 + 2πk/L.
Reading states come in two normalization conventions:

* discrete — |x_j⟩ = (1/√d)Σ_k e^{−i p_k x_j}|p_k⟩ on a uniform grid of D ≥ d
  points (unit norm; the weighted projectors (d/D)Σ_j|x_j⟩⟨x_j| resolve the
  identity exactly);
* continuous — |x⟩ = Σ_k e^{−i p_k x}|p_k⟩ for any real x (norm² = d; the
  projectors integrate to the identity with weight 1/L).

Clocks use the same machinery with energy levels whose pairwise ratios are
exact rationals: levels are E_i = E_0 + r_i·(2π/T) with integers r_i, so the
reading grid of any D ≥ r_p + 1 points over one period T resolves the identity.
Irrational ratios are rejected rather than approximated.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .core import StateVector, make_state

# Denominator cap chosen so quadratic irrationals (whose convergents reach
# ~1e-12 error near denominator 1e6) are reliably rejected; legitimate integer
# ladders stay far below it because usable clock grids need r_max + 1 points.
RATIO_REL_TOL = 1e-12
RATIO_MAX_DENOMINATOR = 10**4


@dataclass(frozen=True)
class Spectrum:
    """Equally spaced ladder p_k = p0 + (2π/L)·k for k = 0..d−1."""

    d: int
    p0: float
    L: float

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("spectrum needs d >= 1 levels")
        if not self.L > 0:
            raise ValueError("period length L must be positive")

    @property
    def spacing(self) -> float:
        return 2.0 * math.pi / self.L

    @property
    def values(self) -> np.ndarray:
        return self.p0 + self.spacing * np.arange(self.d)


def momentum_spectrum(d: int, p0: float, L: float) -> Spectrum:
    """Equally spaced momentum ladder with d levels starting at p0, spacing 2π/L."""
    return Spectrum(int(d), float(p0), float(L))


@dataclass(frozen=True)
class FrameGrid:
    """Uniform reading grid: D points from `origin` with step `step` (step·D = span)."""

    D: int
    origin: float
    step: float
    continuous: bool = False

    def __post_init__(self):
        if self.D < 1:
            raise ValueError("grid needs at least one point")
        if not self.step > 0:
            raise ValueError("grid step must be positive")

    @property
    def span(self) -> float:
        return self.D * self.step

    @property
    def points(self) -> np.ndarray:
        return self.origin + self.step * np.arange(self.D)

    def point(self, j: int) -> float:
        if not 0 <= j < self.D:
            raise ValueError(f"grid index {j} out of range 0..{self.D - 1}")
        return self.origin + self.step * j


def position_grid(s: Spectrum, D: int | None = None, origin: float = 0.0) -> FrameGrid:
    """Reading grid for a momentum spectrum: D ≥ d points covering one period L."""
    D = s.d if D is None else int(D)
    if D < s.d:
        raise ValueError(f"invalid grid: D = {D} < d = {s.d}")
    return FrameGrid(D, float(origin), s.L / D)


def _wrap_reading(x: float, origin: float, span: float) -> float:
    if origin <= x <= origin + span:
        return x
    warnings.warn(
        f"reading {x} outside [{origin}, {origin + span}] wrapped into the period",
        stacklevel=3,
    )
    return origin + (x - origin) % span


def frame_state_discrete(s: Spectrum, g: FrameGrid, j: int) -> StateVector:
    """Unit-norm reading state |x_j⟩ = (1/√d)Σ_k e^{−i p_k x_j}|p_k⟩."""
    x = g.point(j)
    amps = np.exp(-1j * s.values * x) / math.sqrt(s.d)
    return make_state(amps, (s.d,), (tuple(s.values),))


def frame_state_continuous(s: Spectrum, x: float, origin: float = 0.0) -> StateVector:
    """Bare reading state |x⟩ = Σ_k e^{−i p_k x}|p_k⟩ (norm² = d), x wrapped mod L."""
    x = _wrap_reading(float(x), origin, s.L)
    amps = np.exp(-1j * s.values * x)
    return make_state(amps, (s.d,), (tuple(s.values),))


def frame_covector(s: Spectrum, x: float) -> np.ndarray:
    """Conjugated bare reading amplitudes e^{+i p_k x}, used for conditioning."""
    return np.exp(1j * s.values * float(x))


def identity_residual(s: Spectrum, g: FrameGrid) -> float:
    """Max-norm of (d/D)Σ_j |x_j⟩⟨x_j| − 1 over the discrete reading grid."""
    if g.D < s.d:
        raise ValueError(f"invalid grid: D = {g.D} < d = {s.d}")
    acc = np.zeros((s.d, s.d), dtype=np.complex128)
    for j in range(g.D):
        amps = frame_state_discrete(s, g, j).amplitudes
        acc += np.outer(amps, amps.conj())
    acc *= s.d / g.D
    return float(np.max(np.abs(acc - np.eye(s.d))))


def continuous_identity_residual(s: Spectrum, n_points: int | None = None) -> float:
    """Max-norm of (1/L)∫dx |x⟩⟨x| − 1 by trapezoid quadrature over one period.

    The integrand is a trigonometric polynomial with harmonics up to d−1, so a
    uniform grid with at least 2(d−1)+1 interior points integrates it exactly.
    """
    n = max(2 * (s.d - 1) + 1, 8) if n_points is None else int(n_points)
    xs = np.linspace(0.0, s.L, n + 1)
    acc = np.zeros((s.d, s.d), dtype=np.complex128)
    for i, x in enumerate(xs):
        amps = np.exp(-1j * s.values * x)
        weight = 0.5 if i in (0, n) else 1.0
        acc += weight * np.outer(amps, amps.conj())
    acc *= (s.L / n) / s.L
    return float(np.max(np.abs(acc - np.eye(s.d))))


def discrete_orthogonality_residual(s: Spectrum, g: FrameGrid) -> float:
    """Max deviation of Σ_j e^{−i x_j (p_k − p_n)} from D·δ_{kn} over all level pairs."""
    xs = g.points
    p = s.values
    mat = np.exp(-1j * np.outer(p, xs))  # rows: e^{−i p_k x_j}
    sums = mat @ mat.conj().T  # Σ_j e^{−i x_j (p_k − p_n)}
    return float(np.max(np.abs(sums - g.D * np.eye(s.d))))


def continuous_orthogonality_residual(s: Spectrum) -> float:
    """Max deviation of ∫_0^L e^{i y (p_k − p_n)} dy from L·δ (analytic integration)."""
    worst = 0.0
    p = s.values
    for k in range(s.d):
        for n in range(s.d):
            delta = p[k] - p[n]
            if k == n:
                value = s.L
            else:
                # ∫_0^L e^{iyδ} dy = (e^{iLδ} − 1)/(iδ), exact for δ = 2π·integer/L
                value = (np.exp(1j * s.L * delta) - 1.0) / (1j * delta)
            target = s.L if k == n else 0.0
            worst = max(worst, abs(value - target))
    return worst


def rationalize(values, rel_tol: float = RATIO_REL_TOL) -> tuple[float, float, list[Fraction]]:
    """Express floats as exact rational multiples of their smallest nonzero gap.

    Returns (base, unit, multiples) with values[i] ≈ base + multiples[i]·unit.
    Raises ValueError when any ratio is further than rel_tol (relative) from
    every fraction with denominator ≤ 10⁴.
    """
    vals = [float(v) for v in values]
    base = min(vals)
    shifted = [v - base for v in vals]
    gaps = sorted({round(b - a, 15) for a in shifted for b in shifted if b > a + 0.0})
    gaps = [gap for gap in gaps if gap > rel_tol * max(1.0, max(shifted, default=1.0))]
    if not gaps:
        return base, 0.0, [Fraction(0) for _ in vals]
    unit = gaps[0]
    multiples = []
    scale = max(abs(v) for v in shifted)
    for v in shifted:
        ratio = v / unit
        frac = Fraction(ratio).limit_denominator(RATIO_MAX_DENOMINATOR)
        if abs(float(frac) - ratio) * unit > rel_tol * max(1.0, scale):
            raise ValueError(
                f"value {base + v} is not a rational multiple of the gap {unit} "
                f"(closest fraction {frac})"
            )
        multiples.append(frac)
    return base, unit, multiples


@dataclass(frozen=True)
class ClockSpectrum:
    """Energy levels E_i = E0 + r_i·(2π/T) with exact integer r_i.

    `ratios` are the exact rationals (E_i − E_0)/(E_1 − E_0); r_1 is the least
    common multiple of their denominators, r_i = ratios_i·r_1, and the period
    is T = 2π·r_1/(E_1 − E_0).
    """

    d: int
    E0: float
    ratios: tuple[Fraction, ...]
    r: tuple[int, ...]
    T: float

    @property
    def energies(self) -> np.ndarray:
        return self.E0 + np.array(self.r, dtype=float) * (2.0 * math.pi / self.T)

    @property
    def r_max(self) -> int:
        return self.r[-1]


def clock_from_energies(E) -> ClockSpectrum:
    """Build the rational-ratio clock for strictly increasing energy levels.

    Accepts ints, Fractions, or floats; float inputs must sit within 1e-12
    (relative) of a rational pattern or the constructor raises.
    """
    levels = list(E)
    if len(levels) < 2:
        raise ValueError("clock needs at least two levels")
    exact = all(isinstance(v, (int, Fraction)) for v in levels)
    if exact:
        fracs = [Fraction(v) for v in levels]
        if any(b <= a for a, b in zip(fracs, fracs[1:])):
            raise ValueError("clock energies must be strictly increasing")
        gap1 = fracs[1] - fracs[0]
        ratios = [(v - fracs[0]) / gap1 for v in fracs]
        E0 = float(fracs[0])
        gap1_f = float(gap1)
    else:
        vals = [float(v) for v in levels]
        if any(b <= a for a, b in zip(vals, vals[1:])):
            raise ValueError("clock energies must be strictly increasing")
        _, unit, multiples = rationalize(vals)
        ratios = [(f - multiples[0]) / (multiples[1] - multiples[0]) for f in multiples]
        E0 = vals[0]
        gap1_f = vals[1] - vals[0]
    r1 = math.lcm(*[f.denominator for f in ratios[1:]])
    r = [f * r1 for f in ratios]
    assert all(f.denominator == 1 for f in r), "r_i failed to come out integral"
    T = 2.0 * math.pi * r1 / gap1_f
    return ClockSpectrum(len(levels), E0, tuple(ratios), tuple(int(f) for f in r), T)


def time_grid(c: ClockSpectrum, D: int | None = None, origin: float = 0.0) -> FrameGrid:
    """Clock reading grid: D ≥ r_max + 1 points over one period T."""
    D = max(c.d, c.r_max + 1) if D is None else int(D)
    if D < c.r_max + 1:
        raise ValueError(f"clock grid needs D >= r_max + 1 = {c.r_max + 1}, got {D}")
    return FrameGrid(D, float(origin), c.T / D)


def time_state(c: ClockSpectrum, g: FrameGrid, m: int) -> StateVector:
    """Unit-norm clock reading |t_m⟩ = (1/√d_C)Σ_i e^{−i E_i t_m}|E_i⟩."""
    t = g.point(m)
    amps = np.exp(-1j * c.energies * t) / math.sqrt(c.d)
    return make_state(amps, (c.d,), (tuple(c.energies),))


def time_state_continuous(c: ClockSpectrum, t: float, origin: float = 0.0) -> StateVector:
    """Bare clock reading Σ_i e^{−i E_i t}|E_i⟩ (norm² = d_C), t wrapped mod T."""
    t = _wrap_reading(float(t), origin, c.T)
    amps = np.exp(-1j * c.energies * t)
    return make_state(amps, (c.d,), (tuple(c.energies),))


def time_covector(energies, t: float) -> np.ndarray:
    """Conjugated bare clock amplitudes e^{+i E_i t}, used for conditioning."""
    return np.exp(1j * np.asarray(energies, dtype=float) * float(t))


def clock_identity_residual(c: ClockSpectrum, g: FrameGrid) -> float:
    """Max-norm of (d_C/D_C)Σ_m |t_m⟩⟨t_m| − 1 over the clock grid."""
    if g.D < c.r_max + 1:
        raise ValueError(f"clock grid needs D >= {c.r_max + 1}")
    acc = np.zeros((c.d, c.d), dtype=np.complex128)
    for m in range(g.D):
        amps = time_state(c, g, m).amplitudes
        acc += np.outer(amps, amps.conj())
    acc *= c.d / g.D
    return float(np.max(np.abs(acc - np.eye(c.d))))
