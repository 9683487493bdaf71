"""Constrained global quantum states with emergent time and space.

Modules
-------
core
    Dense labeled tensor-product linear algebra (states, operators, evolution).
frames
    Momentum/energy spectra, rod and clock frame states, identity resolutions.
universe
    Constructors for globally constrained states (momentum-only, doubly
    constrained, momentum-carrying clocks, coupled oscillators, three-axis).
relational
    Relative states, conditional probabilities/densities, covariance residuals,
    resolution and speed-limit diagnostics.
measurements
    Two-time measurement statistics: phase-averaged projector protocol and the
    memory-ancilla protocol, with the constrained-propagator cross-check.
relativistic
    Scalar and spin-1/2 dispersion universes with finite-difference wave-
    equation residuals.
cli / scenario
    Deterministic config-driven command line front end.
"""

__version__ = "0.1.0"
