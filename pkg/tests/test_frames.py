"""Frame-state tests: spectra, reading states, clocks, identity resolutions."""

import math
from fractions import Fraction

import numpy as np
import pytest

from relspace import core, frames


class TestSpectrum:
    def test_symmetric_three_level(self):
        s = frames.momentum_spectrum(3, -1.0, 2 * math.pi)
        assert np.allclose(s.values, [-1.0, 0.0, 1.0])

    def test_single_level(self):
        s = frames.momentum_spectrum(1, 0.0, 1.0)
        assert np.allclose(s.values, [0.0])

    def test_direct_formula(self):
        s = frames.momentum_spectrum(4, 0.0, math.pi)
        assert np.allclose(s.values, [0.0, 2.0, 4.0, 6.0])

    def test_bad_inputs(self):
        with pytest.raises(ValueError):
            frames.momentum_spectrum(0, 0.0, 1.0)
        with pytest.raises(ValueError):
            frames.momentum_spectrum(2, 0.0, -1.0)


class TestFrameStates:
    def test_origin_state_uniform(self):
        s = frames.momentum_spectrum(3, -1.0, 2 * math.pi)
        g = frames.position_grid(s)
        v = frames.frame_state_discrete(s, g, 0)
        assert np.allclose(v.amplitudes, np.ones(3) / math.sqrt(3))

    def test_hand_phases_second_point(self):
        # d = D = 3, L = 2π, spectrum {−1,0,1}, x_1 = 2π/3.
        s = frames.momentum_spectrum(3, -1.0, 2 * math.pi)
        g = frames.position_grid(s)
        v = frames.frame_state_discrete(s, g, 1)
        expected = np.array(
            [np.exp(2j * math.pi / 3), 1.0, np.exp(-2j * math.pi / 3)]
        ) / math.sqrt(3)
        assert np.allclose(v.amplitudes, expected)

    def test_povm_states_not_orthogonal(self):
        s = frames.momentum_spectrum(3, -1.0, 2 * math.pi)
        g = frames.position_grid(s, D=5)
        a = frames.frame_state_discrete(s, g, 0)
        b = frames.frame_state_discrete(s, g, 1)
        assert abs(core.inner(a, b)) > 1e-6

    def test_translation_covariance(self):
        # Shifting the grid index by n multiplies the p_k amplitude by e^{−i p_k n·step}.
        s = frames.momentum_spectrum(4, 0.5, 3.0)
        g = frames.position_grid(s, D=7)
        for j, n in [(0, 1), (2, 3), (1, 5)]:
            a = frames.frame_state_discrete(s, g, j).amplitudes
            b = frames.frame_state_discrete(s, g, j + n if j + n < 7 else j).amplitudes
            if j + n < 7:
                phases = np.exp(-1j * s.values * n * g.step)
                assert np.max(np.abs(b - phases * a)) < 1e-12

    def test_generator_shift_property(self):
        # |x_j⟩ = e^{−i P (x_j − x_0)}|x_0⟩ with P = diag(p_k).
        s = frames.momentum_spectrum(5, -2.0, 4.0)
        g = frames.position_grid(s, D=8)
        P = core.make_operator(np.diag(s.values), (0,))
        x0 = frames.frame_state_discrete(s, g, 0)
        for j in range(8):
            expect = core.evolve(P, g.point(j) - g.point(0), x0)
            got = frames.frame_state_discrete(s, g, j)
            assert core.states_allclose(got, expect, tol=1e-12)

    def test_continuous_norm_and_wrap(self):
        s = frames.momentum_spectrum(3, -1.0, 2 * math.pi)
        v = frames.frame_state_continuous(s, 0.0)
        assert core.norm(v) ** 2 == pytest.approx(3.0)
        with pytest.warns(UserWarning):
            w = frames.frame_state_continuous(s, 2 * math.pi + 0.25)
        assert core.states_allclose(w, frames.frame_state_continuous(s, 0.25), tol=1e-9)

    def test_continuous_single_level(self):
        s = frames.momentum_spectrum(1, 2.0, 1.0)
        v = frames.frame_state_continuous(s, 0.3)
        assert core.norm(v) == pytest.approx(1.0)

    def test_continuous_resolution_on_random_vectors(self):
        # (1/L)∫|⟨x|v⟩|² dx = ‖v‖² by trapezoid quadrature.
        rng = np.random.default_rng(5)
        s = frames.momentum_spectrum(4, -1.5, 5.0)
        v = rng.normal(size=4) + 1j * rng.normal(size=4)
        n = 64
        xs = np.linspace(0.0, s.L, n, endpoint=False)
        total = 0.0
        for x in xs:
            amp = np.vdot(frames.frame_state_continuous(s, x).amplitudes, v)
            total += abs(amp) ** 2
        total *= (s.L / n) / s.L
        assert total == pytest.approx(np.linalg.norm(v) ** 2, abs=1e-9)


class TestIdentityResolutions:
    def test_orthonormal_case(self):
        s = frames.momentum_spectrum(3, -1.0, 2 * math.pi)
        assert frames.identity_residual(s, frames.position_grid(s)) < 1e-12

    def test_povm_case(self):
        s = frames.momentum_spectrum(3, -1.0, 2 * math.pi)
        assert frames.identity_residual(s, frames.position_grid(s, D=5)) < 1e-12

    def test_wide_grid(self):
        s = frames.momentum_spectrum(4, 0.0, 1.0)
        assert frames.identity_residual(s, frames.position_grid(s, D=64)) < 1e-12

    def test_invalid_grid_rejected(self):
        s = frames.momentum_spectrum(4, 0.0, 1.0)
        with pytest.raises(ValueError):
            frames.identity_residual(s, frames.FrameGrid(3, 0.0, s.L / 3))

    def test_continuous_identity(self):
        s = frames.momentum_spectrum(5, -2.0, 3.0)
        assert frames.continuous_identity_residual(s) < 1e-12

    def test_discrete_orthogonality_sums(self):
        for d, D in [(3, 3), (3, 5), (4, 24), (8, 24)]:
            s = frames.momentum_spectrum(d, -1.0, 2 * math.pi)
            g = frames.position_grid(s, D=D)
            assert frames.discrete_orthogonality_residual(s, g) < 1e-12 * D

    def test_continuous_orthogonality_integrals(self):
        s = frames.momentum_spectrum(6, 0.5, 4.0)
        assert frames.continuous_orthogonality_residual(s) < 1e-12


class TestClock:
    def test_half_integer_ratios(self):
        c = frames.clock_from_energies([0, 1, Fraction(3, 2)])
        assert c.ratios == (Fraction(0), Fraction(1), Fraction(3, 2))
        assert c.r == (0, 2, 3)
        assert c.T == pytest.approx(4 * math.pi)
        assert np.allclose(c.energies, [0.0, 1.0, 1.5])

    def test_harmonic_ladder(self):
        c = frames.clock_from_energies([0, 1, 2])
        assert c.r == (0, 1, 2)
        assert c.T == pytest.approx(2 * math.pi)

    def test_integer_gaps(self):
        c = frames.clock_from_energies([0, 2, 5])
        assert c.r == (0, 2, 5)
        assert c.T == pytest.approx(2 * math.pi)
        assert np.allclose(c.energies, [0.0, 2.0, 5.0])

    def test_float_inputs_rationalized(self):
        c = frames.clock_from_energies([0.25, 1.25, 1.75])
        assert c.r == (0, 2, 3)
        assert np.allclose(c.energies, [0.25, 1.25, 1.75])

    def test_irrational_rejected(self):
        with pytest.raises(ValueError):
            frames.clock_from_energies([0.0, 1.0, math.sqrt(2)])

    def test_non_increasing_rejected(self):
        with pytest.raises(ValueError):
            frames.clock_from_energies([0, 2, 1])

    def test_time_state_uniform_at_origin(self):
        c = frames.clock_from_energies([0, 1, 2])
        g = frames.time_grid(c)
        v = frames.time_state(c, g, 0)
        assert np.allclose(v.amplitudes, np.ones(3) / math.sqrt(3))

    def test_equally_spaced_orthogonal(self):
        c = frames.clock_from_energies([0, 1, 2, 3])
        g = frames.time_grid(c, D=4)
        for m in range(4):
            for n in range(4):
                ov = core.inner(frames.time_state(c, g, m), frames.time_state(c, g, n))
                assert abs(ov - (1.0 if m == n else 0.0)) < 1e-12

    def test_clock_shift_generator(self):
        # |t_m⟩ = e^{−i H_C (t_m − t_0)}|t_0⟩ with H_C = diag(E_i).
        c = frames.clock_from_energies([0, 1, Fraction(3, 2)])
        g = frames.time_grid(c, D=6)
        H = core.make_operator(np.diag(c.energies), (0,))
        t0 = frames.time_state(c, g, 0)
        for m in range(6):
            expect = core.evolve(H, g.point(m) - g.point(0), t0)
            assert core.states_allclose(frames.time_state(c, g, m), expect)

    def test_clock_identity_needs_enough_points(self):
        c = frames.clock_from_energies([0, 1, Fraction(3, 2)])  # r_max = 3
        with pytest.raises(ValueError):
            frames.time_grid(c, D=3)
        for D in (4, 5, 9):
            assert frames.clock_identity_residual(c, frames.time_grid(c, D=D)) < 1e-12

    def test_rationalize_roundtrip(self):
        base, unit, mult = frames.rationalize([0.5, 1.0, 2.0, 3.5])
        rebuilt = [base + float(f) * unit for f in mult]
        assert np.allclose(rebuilt, [0.5, 1.0, 2.0, 3.5])
