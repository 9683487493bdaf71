"""Constructors for globally constrained universe states.

A universe is a dense state over ordered factors (clock, rod axes, system
axes, and optionally spin or memory registers) together with the operator
terms that express its constraints.  Every constructor validates its output
by dense operator application — the constraint report is computed from the
assembled amplitudes and the Hamiltonian/momentum matrices, never from the
construction bookkeeping.

Momentum-type factors are labeled by their ladder values p_k; the clock factor
is labeled by its energy levels, which are synthesized to be exactly the
distinct values −ε demanded by the energy constraint (degenerate ε merged).
When at least two distinct clock levels exist and their ratios are rational,
the matching `ClockSpectrum` is attached so reading grids can be built.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .core import LinearOperator, StateVector, make_operator, make_state, residual_norm
from .frames import ClockSpectrum, Spectrum, clock_from_energies

MERGE_REL_TOL = 1e-9
NORMALIZATION_TOL = 1e-9

AXIS_NAMES = ("x", "y", "z")


@dataclass(frozen=True)
class Dispersion:
    """Energy as a function of momentum for one subsystem.

    kinds: 'free' (p²/2m), 'relativistic_scalar' (sign·√(|p|²+m²)),
    'oscillator' (structural marker; oscillator universes use ladder energies
    ω(n+½), not a function of a momentum label), 'dirac' (structural marker;
    the spin-½ constructor solves a 4×4 eigenproblem per momentum mode).
    """

    kind: str
    mass: float
    frequency: float | None = None
    sign: int = 1

    def __post_init__(self):
        if self.kind not in ("free", "oscillator", "relativistic_scalar", "dirac"):
            raise ValueError(f"unknown dispersion kind {self.kind!r}")
        if self.kind != "relativistic_scalar" and not self.mass > 0:
            raise ValueError("mass must be positive")

    def energy(self, p) -> np.ndarray | float:
        """Scalar dispersion ε(p) for a single momentum component."""
        p = np.asarray(p, dtype=float)
        return self._from_psq(p * p)

    def energy3(self, pvec) -> float:
        """Scalar dispersion for a 3-component momentum vector."""
        pvec = np.asarray(pvec, dtype=float)
        return float(self._from_psq(float(pvec @ pvec)))

    def _from_psq(self, psq):
        if self.kind == "free":
            return psq / (2.0 * self.mass)
        if self.kind == "relativistic_scalar":
            return self.sign * np.sqrt(psq + self.mass**2)
        raise ValueError(f"dispersion kind {self.kind!r} has no scalar energy function")


def free_dispersion(mass: float) -> Dispersion:
    return Dispersion("free", float(mass))


def scalar_dispersion(mass: float, sign: int = 1) -> Dispersion:
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    return Dispersion("relativistic_scalar", float(mass), sign=sign)


@dataclass(frozen=True)
class Factor:
    """One tensor slot of a universe: a name, a physical kind, and basis labels."""

    name: str
    kind: str  # 'clock' | 'momentum' | 'oscillator' | 'spin' | 'memory'
    labels: tuple
    spectrum: Spectrum | None = None

    @property
    def dim(self) -> int:
        return len(self.labels)


@dataclass(frozen=True)
class GlobalState:
    """A constrained universe: dense state, factor descriptors, constraint terms.

    `energy_terms` sum to the total Hamiltonian; `momentum_terms[axis]` sum to
    the total momentum along one axis.  `constraint_report` holds the dense
    residual norms ‖Ĥ_tot Ψ‖, ‖P̂_tot Ψ‖ (per axis) and the normalization
    defect, all computed by operator application on the assembled state.
    """

    state: StateVector
    factors: tuple[Factor, ...]
    energy_terms: tuple[LinearOperator, ...]
    momentum_terms: dict[str, tuple[LinearOperator, ...]]
    clock_spectrum: ClockSpectrum | None
    constraint_report: dict[str, float]
    meta: dict = field(repr=False, default_factory=dict)

    def factor_index(self, name: str) -> int:
        for i, f in enumerate(self.factors):
            if f.name == name:
                return i
        raise KeyError(f"no factor named {name!r}")

    def factor(self, name: str) -> Factor:
        return self.factors[self.factor_index(name)]

    @property
    def factor_names(self) -> tuple[str, ...]:
        return tuple(f.name for f in self.factors)


def _validate_coefficients(coeffs, expected_size: int) -> np.ndarray:
    c = np.asarray(coeffs, dtype=np.complex128).reshape(-1)
    if c.size != expected_size:
        raise ValueError(f"need {expected_size} coefficients, got {c.size}")
    nrm = np.linalg.norm(c)
    if abs(nrm - 1.0) > NORMALIZATION_TOL:
        raise ValueError(f"coefficients must be normalized (Σ|c|² = 1), got norm {nrm}")
    return c / nrm


def _partner_indices(rod: Spectrum, sys: Spectrum, coeffs: np.ndarray) -> np.ndarray:
    """Index a(k) of −p_k inside the rod ladder, for every occupied system level."""
    rod_vals = rod.values
    tol = 1e-9 * rod.spacing
    partners = np.full(sys.d, -1, dtype=int)
    missing = []
    for k, p in enumerate(sys.values):
        hits = np.nonzero(np.abs(rod_vals + p) <= tol)[0]
        if hits.size:
            partners[k] = hits[0]
        elif abs(coeffs[k]) > 0:
            missing.append(float(p))
    if missing:
        raise ValueError(f"rod ladder lacks partner levels -p for system momenta {missing}")
    return partners


def _momentum_operator(s: Spectrum, slot: int) -> LinearOperator:
    return make_operator(np.diag(s.values), (slot,))


def _report(state, energy_terms, momentum_terms, extra=None) -> dict[str, float]:
    report = {"normalization": abs(float(np.vdot(state.amplitudes, state.amplitudes)).real - 1.0)}
    if energy_terms:
        report["energy"] = residual_norm(energy_terms, state)
    for axis, terms in momentum_terms.items():
        key = "momentum" if axis == "x" and len(momentum_terms) == 1 else f"momentum_{axis}"
        report[key] = residual_norm(terms, state)
    if extra:
        report.update(extra)
    return report


def momentum_constrained_state(rod: Spectrum, sys: Spectrum, coeffs) -> GlobalState:
    """Total-momentum eigenstate with eigenvalue zero: Σ_k c_k |−p_k⟩_R |p_k⟩_S.

    Every occupied system level must have its mirrored partner −p_k in the rod
    ladder; the rod may be larger than the system.
    """
    c = _validate_coefficients(coeffs, sys.d)
    partners = _partner_indices(rod, sys, c)
    amps = np.zeros((rod.d, sys.d), dtype=np.complex128)
    for k in range(sys.d):
        if partners[k] >= 0:
            amps[partners[k], k] = c[k]
    state = make_state(amps, (rod.d, sys.d), (tuple(rod.values), tuple(sys.values)))
    momentum_terms = {"x": (_momentum_operator(rod, 0), _momentum_operator(sys, 1))}
    factors = (
        Factor("rod", "momentum", tuple(rod.values), rod),
        Factor("sys", "momentum", tuple(sys.values), sys),
    )
    return GlobalState(
        state=state,
        factors=factors,
        energy_terms=(),
        momentum_terms=momentum_terms,
        clock_spectrum=None,
        constraint_report=_report(state, (), momentum_terms),
        meta={"coefficients": c, "partners": partners},
    )


def _merge_levels(values: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Distinct values (ascending) and the slot index of each input value."""
    scale = max(1.0, float(np.max(np.abs(values))) if values.size else 1.0)
    levels: list[float] = []
    slots = np.zeros(values.size, dtype=int)
    for i, v in enumerate(sorted(range(values.size), key=lambda j: values[j])):
        if not levels or values[v] - levels[-1] > MERGE_REL_TOL * scale:
            levels.append(float(values[v]))
        slots[v] = len(levels) - 1
    return np.array(levels), slots


def _clock_spectrum_or_none(levels: np.ndarray, context: str) -> ClockSpectrum | None:
    if levels.size < 2:
        return None
    try:
        return clock_from_energies([float(v) for v in levels])
    except ValueError as exc:
        raise ValueError(f"{context}: clock level ratios are not rational ({exc})") from exc


def double_constrained_state(
    rod_disp: Dispersion,
    sys_disp: Dispersion,
    rod: Spectrum,
    sys: Spectrum,
    coeffs,
) -> GlobalState:
    """Simultaneous zero-eigenstate of total momentum and total energy.

    The clock is synthesized with exactly the levels −ε_k where
    ε_k = ε_rod(−p_k) + ε_sys(p_k); degenerate ε values share one clock level.
    The clock carries no momentum.  Raises when the level ratios are not
    rational (no reading grid could resolve the identity).
    """
    c = _validate_coefficients(coeffs, sys.d)
    partners = _partner_indices(rod, sys, c)
    eps = np.array(
        [float(rod_disp.energy(-p) + sys_disp.energy(p)) for p in sys.values]
    )
    levels, slots = _merge_levels(-eps)
    clock = _clock_spectrum_or_none(levels, "double_constrained_state")
    amps = np.zeros((levels.size, rod.d, sys.d), dtype=np.complex128)
    for k in range(sys.d):
        if partners[k] >= 0:
            amps[slots[k], partners[k], k] = c[k]
    state = make_state(
        amps,
        (levels.size, rod.d, sys.d),
        (tuple(levels), tuple(rod.values), tuple(sys.values)),
    )
    energy_terms = (
        make_operator(np.diag(levels), (0,)),
        make_operator(np.diag(rod_disp.energy(rod.values)), (1,)),
        make_operator(np.diag(sys_disp.energy(sys.values)), (2,)),
    )
    momentum_terms = {"x": (_momentum_operator(rod, 1), _momentum_operator(sys, 2))}
    factors = (
        Factor("clock", "clock", tuple(levels)),
        Factor("rod", "momentum", tuple(rod.values), rod),
        Factor("sys", "momentum", tuple(sys.values), sys),
    )
    return GlobalState(
        state=state,
        factors=factors,
        energy_terms=energy_terms,
        momentum_terms=momentum_terms,
        clock_spectrum=clock,
        constraint_report=_report(state, energy_terms, momentum_terms),
        meta={
            "coefficients": c,
            "partners": partners,
            "epsilon": eps,
            "clock_slots": slots,
            "rod_dispersion": rod_disp,
            "sys_dispersion": sys_disp,
        },
    )


def three_level_universe(L: float, M: float, m: float, coeffs) -> GlobalState:
    """Symmetric three-mode free universe: p ∈ {−2π/L, 0, +2π/L} for rod and system.

    The two outer modes share the energy ε = (2π/L)²(1/2M + 1/2m) and the
    middle mode has energy zero, so the synthesized clock has exactly two
    levels {−ε, 0}.
    """
    q = 2.0 * math.pi / L
    rod = Spectrum(3, -q, L)
    sys = Spectrum(3, -q, L)
    return double_constrained_state(free_dispersion(M), free_dispersion(m), rod, sys, coeffs)


@dataclass(frozen=True)
class ConstraintSearchResult:
    """Outcome of the exhaustive product-basis search for doubly constrained triples."""

    state: GlobalState | None
    solutions: tuple[tuple[int, int, int], ...]
    min_momentum_gap: float
    min_energy_gap: float
    nearest: tuple  # up to five (triple, |Σp|, |ΣE|) diagnostics, best first

    @property
    def empty(self) -> bool:
        return not self.solutions


def nonzero_clock_momentum_state(
    clock_levels,
    rod: Spectrum,
    sys: Spectrum,
    rod_disp: Dispersion,
    sys_disp: Dispersion,
    tol: float = 1e-9,
) -> ConstraintSearchResult:
    """Search a momentum-carrying clock for exactly constrained basis triples.

    `clock_levels` is a sequence of (energy, momentum) pairs for the clock
    basis.  Every product-basis triple (n, a, b) with
    p_n + p_a + p_b = 0 and E_n + ε_rod(p_a) + ε_sys(p_b) = 0 (within `tol`
    times the natural scale) enters a uniform superposition.  An empty search
    is reported, not raised.
    """
    clock_levels = [(float(E), float(p)) for E, p in clock_levels]
    rod_e = rod_disp.energy(rod.values)
    sys_e = sys_disp.energy(sys.values)
    p_scale = max(
        [abs(p) for _, p in clock_levels] + [float(np.max(np.abs(rod.values))), 1.0]
    )
    e_scale = max([abs(E) for E, _ in clock_levels] + [float(np.max(np.abs(sys_e))), 1.0])
    solutions = []
    candidates = []
    for n, (E_n, p_n) in enumerate(clock_levels):
        for a, p_a in enumerate(rod.values):
            for b, p_b in enumerate(sys.values):
                dp = abs(p_n + p_a + p_b)
                de = abs(E_n + float(rod_e[a]) + float(sys_e[b]))
                candidates.append(((n, a, b), dp, de))
                if dp <= tol * p_scale and de <= tol * e_scale:
                    solutions.append((n, a, b))
    candidates.sort(key=lambda item: max(item[1] / p_scale, item[2] / e_scale))
    nearest = tuple(candidates[:5])
    min_dp = min((c[1] for c in candidates), default=math.inf)
    min_de = min((c[2] for c in candidates), default=math.inf)
    if not solutions:
        return ConstraintSearchResult(None, (), min_dp, min_de, nearest)

    d_c, d_r, d_s = len(clock_levels), rod.d, sys.d
    amps = np.zeros((d_c, d_r, d_s), dtype=np.complex128)
    weight = 1.0 / math.sqrt(len(solutions))
    for n, a, b in solutions:
        amps[n, a, b] = weight
    state = make_state(
        amps,
        (d_c, d_r, d_s),
        (tuple(clock_levels), tuple(rod.values), tuple(sys.values)),
    )
    energy_terms = (
        make_operator(np.diag([E for E, _ in clock_levels]), (0,)),
        make_operator(np.diag(rod_e), (1,)),
        make_operator(np.diag(sys_e), (2,)),
    )
    momentum_terms = {
        "x": (
            make_operator(np.diag([p for _, p in clock_levels]), (0,)),
            _momentum_operator(rod, 1),
            _momentum_operator(sys, 2),
        )
    }
    factors = (
        Factor("clock", "clock", tuple(clock_levels)),
        Factor("rod", "momentum", tuple(rod.values), rod),
        Factor("sys", "momentum", tuple(sys.values), sys),
    )
    g = GlobalState(
        state=state,
        factors=factors,
        energy_terms=energy_terms,
        momentum_terms=momentum_terms,
        clock_spectrum=None,
        constraint_report=_report(state, energy_terms, momentum_terms),
        meta={"solutions": tuple(solutions)},
    )
    return ConstraintSearchResult(g, tuple(solutions), min_dp, min_de, nearest)


# --- coupled harmonic oscillators with continuous relative momentum ---------


@dataclass(frozen=True)
class QuadratureSpec:
    """Uniform trapezoid grid on [lo, hi] with n points (n ≥ 2)."""

    lo: float
    hi: float
    n: int = 257

    def __post_init__(self):
        if self.n < 2 or not self.hi > self.lo:
            raise ValueError("quadrature window needs hi > lo and n >= 2")

    @property
    def points(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, self.n)

    @property
    def weights(self) -> np.ndarray:
        h = (self.hi - self.lo) / (self.n - 1)
        w = np.full(self.n, h)
        w[0] = w[-1] = h / 2.0
        return w


def gaussian_window(sigma: float, center: float = 0.0, half_width_sigmas: float = 8.0,
                    n: int = 257) -> QuadratureSpec:
    """Default quadrature window: ±8σ around the amplitude center, 257 points."""
    if not sigma > 0:
        raise ValueError("sigma must be positive")
    return QuadratureSpec(center - half_width_sigmas * sigma,
                          center + half_width_sigmas * sigma, n)


def gaussian_amplitude(sigma: float, center: float = 0.0):
    """Normalized Gaussian momentum amplitude ψ(p) with ∫|ψ|² dp = 1."""
    if not sigma > 0:
        raise ValueError("sigma must be positive")
    norm = (2.0 * math.pi * sigma**2) ** -0.25

    def psi(p):
        return norm * np.exp(-((np.asarray(p, dtype=float) - center) ** 2) / (4.0 * sigma**2))

    return psi


def hermite_functions(u, trunc: int) -> np.ndarray:
    """Orthonormal Hermite functions h_0..h_{trunc−1} on the given points.

    Stable three-term recurrence: h_0 = π^{−1/4} e^{−u²/2}, h_1 = √2·u·h_0,
    h_k = √(2/k)·u·h_{k−1} − √((k−1)/k)·h_{k−2}.
    """
    u = np.asarray(u, dtype=float)
    out = np.zeros((trunc, u.size))
    out[0] = math.pi**-0.25 * np.exp(-u * u / 2.0)
    if trunc > 1:
        out[1] = math.sqrt(2.0) * u * out[0]
    for k in range(2, trunc):
        out[k] = math.sqrt(2.0 / k) * u * out[k - 1] - math.sqrt((k - 1) / k) * out[k - 2]
    return out


def oscillator_momentum_eigenfunctions(p, mass: float, omega: float, trunc: int) -> np.ndarray:
    """β(p, E_k) = ⟨E_k|p⟩ for the mass/frequency oscillator, rows k = 0..trunc−1.

    Real convention: φ_k(p) = (mω)^{−1/4}·h_k(p/√(mω)); parity
    φ_k(−p) = (−1)^k φ_k(p).
    """
    scale = mass * omega
    return scale**-0.25 * hermite_functions(np.asarray(p, dtype=float) / math.sqrt(scale), trunc)


def oscillator_ladder_momentum(mass: float, omega: float, trunc: int) -> np.ndarray:
    """Momentum operator i√(mω/2)(a† − a) on the truncated level basis."""
    mat = np.zeros((trunc, trunc), dtype=np.complex128)
    coeff = math.sqrt(mass * omega / 2.0)
    for k in range(trunc - 1):
        mat[k + 1, k] = 1j * coeff * math.sqrt(k + 1)
        mat[k, k + 1] = -1j * coeff * math.sqrt(k + 1)
    return mat


def oscillator_universe(
    M: float,
    m: float,
    omega_r: float,
    omega_s: float,
    clock_coeffs,
    psi,
    quad: QuadratureSpec | None = None,
    trunc: int = 12,
) -> GlobalState:
    """Two coupled oscillators sharing a continuous relative momentum amplitude.

    The raw pair state ∫dp ψ(p)|−p⟩_R|p⟩_S is expanded on the truncated level
    bases through the momentum-space eigenfunctions (trapezoid quadrature),
    giving pair amplitudes B_kl; the energy constraint then pins the clock to
    the distinct levels −ε_kl with ε_kl = ω_R(k+½) + ω_S(l+½), and
    `clock_coeffs` weight those levels in ascending-ε order.  The final
    amplitudes are renormalized; the truncation leakage 1 − Σ|B_kl|² is stored
    in `meta["leakage"]`.
    """
    if trunc < 1:
        raise ValueError("trunc must be >= 1")
    quad = quad if quad is not None else gaussian_window(1.0)
    p = quad.points
    w = quad.weights
    psi_vals = np.asarray([complex(psi(pi)) for pi in p])
    density = np.abs(psi_vals) ** 2
    total = float(np.sum(w * density))
    edge = float(max(density[0], density[-1]) * (p[-1] - p[0]))
    if total <= 0 or edge > 1e-8 * max(total, 1e-300):
        raise ValueError(
            f"quadrature window misses amplitude support (edge mass estimate {edge:.3e} "
            f"vs captured {total:.3e})"
        )

    phi_r = oscillator_momentum_eigenfunctions(-p, M, omega_r, trunc)
    phi_s = oscillator_momentum_eigenfunctions(p, m, omega_s, trunc)
    weighted = w * psi_vals / math.sqrt(total)
    B = np.einsum("i,ki,li->kl", weighted, phi_r, phi_s)
    captured = float(np.sum(np.abs(B) ** 2))
    leakage = 1.0 - captured

    eps = omega_r * (np.arange(trunc) + 0.5)[:, None] + omega_s * (np.arange(trunc) + 0.5)[None, :]
    levels, slots = _merge_levels(-eps.reshape(-1))
    slots = slots.reshape(trunc, trunc)
    n_levels = levels.size
    # clock_coeffs index distinct ε ascending; clock labels are −ε ascending,
    # so ascending ε rank j maps to clock slot n_levels − 1 − j.
    c = _validate_coefficients(clock_coeffs, n_levels)
    rank_of_slot = np.arange(n_levels)[::-1]
    A = np.zeros((n_levels, trunc, trunc), dtype=np.complex128)
    for k in range(trunc):
        for l in range(trunc):
            slot = slots[k, l]
            A[slot, k, l] = c[rank_of_slot[slot]] * B[k, l]
    nrm = np.linalg.norm(A)
    if nrm <= 0:
        raise ValueError("all amplitudes vanished (clock coefficients kill every level)")
    A /= nrm

    clock = _clock_spectrum_or_none(levels, "oscillator_universe")
    level_labels = tuple(range(trunc))
    state = make_state(
        A,
        (n_levels, trunc, trunc),
        (tuple(levels), level_labels, level_labels),
    )
    energy_terms = (
        make_operator(np.diag(levels), (0,)),
        make_operator(np.diag(omega_r * (np.arange(trunc) + 0.5)), (1,)),
        make_operator(np.diag(omega_s * (np.arange(trunc) + 0.5)), (2,)),
    )
    momentum_terms = {
        "x": (
            make_operator(oscillator_ladder_momentum(M, omega_r, trunc), (1,)),
            make_operator(oscillator_ladder_momentum(m, omega_s, trunc), (2,)),
        )
    }
    factors = (
        Factor("clock", "clock", tuple(levels)),
        Factor("rod", "oscillator", level_labels),
        Factor("sys", "oscillator", level_labels),
    )
    return GlobalState(
        state=state,
        factors=factors,
        energy_terms=energy_terms,
        momentum_terms=momentum_terms,
        clock_spectrum=clock,
        constraint_report=_report(state, energy_terms, momentum_terms),
        meta={
            "pair_amplitudes": B,
            "amplitudes": A,
            "leakage": leakage,
            "epsilon": eps,
            "clock_slots": slots,
            "quadrature": quad,
            "trunc": trunc,
            "masses": (M, m),
            "frequencies": (omega_r, omega_s),
        },
    )


def oscillator_momentum_profile(g: GlobalState, p) -> np.ndarray:
    """Re-expansion of the pair amplitudes on a momentum grid, one row per clock level.

    Row n evaluates Σ_{kl on level n} A_kl·β(−p, E_k^R)·β(p, E_l^S).
    """
    trunc = g.meta["trunc"]
    M, m = g.meta["masses"]
    omega_r, omega_s = g.meta["frequencies"]
    A = g.meta["amplitudes"]
    slots = g.meta["clock_slots"]
    p = np.asarray(p, dtype=float)
    phi_r = oscillator_momentum_eigenfunctions(-p, M, omega_r, trunc)
    phi_s = oscillator_momentum_eigenfunctions(p, m, omega_s, trunc)
    out = np.zeros((g.factors[0].dim, p.size), dtype=np.complex128)
    for k in range(trunc):
        for l in range(trunc):
            out[slots[k, l]] += A[slots[k, l], k, l] * phi_r[k] * phi_s[l]
    return out


# --- three spatial axes ------------------------------------------------------


def universe_3plus1(axes, rod_disp: Dispersion, sys_disp: Dispersion, coeffs) -> GlobalState:
    """Doubly constrained universe with three rod/system axis pairs.

    `axes` is a sequence of three (rod Spectrum, sys Spectrum) pairs and
    `coeffs` an array over the three system ladders.  The per-axis momentum
    constraints mirror each occupied system level into its rod ladder, and the
    clock is synthesized from the distinct total energies
    ε_ijk = Σ_J [ε_rod(−p^J) + ε_sys(p^J)].
    """
    axes = list(axes)
    if len(axes) != 3:
        raise ValueError("need exactly three (rod, sys) spectrum pairs")
    dims = tuple(sys.d for _, sys in axes)
    c = np.asarray(coeffs, dtype=np.complex128).reshape(dims)
    flat = _validate_coefficients(c, int(np.prod(dims))).reshape(dims)

    partner_maps = []
    for axis_idx, (rod, sys) in enumerate(axes):
        occupied = np.zeros(sys.d, dtype=np.complex128)
        take = np.moveaxis(flat, axis_idx, 0).reshape(sys.d, -1)
        occupied[:] = np.max(np.abs(take), axis=1)
        partner_maps.append(_partner_indices(rod, sys, occupied))

    sys_energy = [sys_disp.energy(sys.values) for _, sys in axes]
    rod_energy_of_sys = [rod_disp.energy(-sys.values) for _, sys in axes]
    eps = (
        (np.asarray(sys_energy[0]) + np.asarray(rod_energy_of_sys[0]))[:, None, None]
        + (np.asarray(sys_energy[1]) + np.asarray(rod_energy_of_sys[1]))[None, :, None]
        + (np.asarray(sys_energy[2]) + np.asarray(rod_energy_of_sys[2]))[None, None, :]
    )
    levels, slots = _merge_levels(eps.reshape(-1) * -1.0)
    slots = slots.reshape(dims)
    clock = _clock_spectrum_or_none(levels, "universe_3plus1")

    shape = (levels.size,) + tuple(rod.d for rod, _ in axes) + dims
    amps = np.zeros(shape, dtype=np.complex128)
    for i in range(dims[0]):
        for j in range(dims[1]):
            for k in range(dims[2]):
                if abs(flat[i, j, k]) > 0:
                    amps[
                        slots[i, j, k],
                        partner_maps[0][i],
                        partner_maps[1][j],
                        partner_maps[2][k],
                        i,
                        j,
                        k,
                    ] = flat[i, j, k]

    labels = (
        (tuple(levels),)
        + tuple(tuple(rod.values) for rod, _ in axes)
        + tuple(tuple(sys.values) for _, sys in axes)
    )
    state = make_state(amps, shape, labels)

    energy_terms = [make_operator(np.diag(levels), (0,))]
    momentum_terms: dict[str, tuple[LinearOperator, ...]] = {}
    factors = [Factor("clock", "clock", tuple(levels))]
    for axis_idx, (rod, sys) in enumerate(axes):
        rod_slot, sys_slot = 1 + axis_idx, 4 + axis_idx
        energy_terms.append(make_operator(np.diag(rod_disp.energy(rod.values)), (rod_slot,)))
        energy_terms.append(make_operator(np.diag(sys_disp.energy(sys.values)), (sys_slot,)))
        momentum_terms[AXIS_NAMES[axis_idx]] = (
            _momentum_operator(rod, rod_slot),
            _momentum_operator(sys, sys_slot),
        )
        factors.append(Factor(f"rod_{AXIS_NAMES[axis_idx]}", "momentum", tuple(rod.values), rod))
    for axis_idx, (_, sys) in enumerate(axes):
        factors.append(Factor(f"sys_{AXIS_NAMES[axis_idx]}", "momentum", tuple(sys.values), sys))

    factors = factors[:1] + factors[1:4] + factors[4:]
    return GlobalState(
        state=state,
        factors=tuple(factors),
        energy_terms=tuple(energy_terms),
        momentum_terms=momentum_terms,
        clock_spectrum=clock,
        constraint_report=_report(state, tuple(energy_terms), momentum_terms),
        meta={
            "coefficients": flat,
            "epsilon": eps,
            "clock_slots": slots,
            "partners": partner_maps,
            "rod_dispersion": rod_disp,
            "sys_dispersion": sys_disp,
        },
    )
