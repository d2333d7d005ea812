"""Momentum distribution of the nucleus (diagonal of the reduced density
matrix in momentum representation).

Everything is expressed in dimensionless (a_B, hbar) units: q is the
momentum offset |p - P0| a_B / hbar and densities are in units of
a_B^3 / hbar^3. The distribution is the radial Fourier-sine transform of
the coherence kernel multiplied by the diagonal-averaged packet factor
exp(-s^2 z0^2 / 8); it interpolates between the packet's own Gaussian
momentum distribution (z0 large) and the bound electron's distribution
8/pi^2 (1+q^2)^-4 (z0 small), and is independent of time.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .density import CoherenceKernel
from .quadrature import (
    QuadratureError,
    QuadratureSpec,
    integrate_fourier_sine,
    integrate_semi_infinite,
)
from .wavepacket import GaussianPacket, evaluate_1d

#: below this q the sine transform switches to its analytic q -> 0 limit
_Q_SMALL = 1e-6


@dataclass(frozen=True)
class MomentumDistribution:
    """Radial momentum density sampled on a grid of dimensionless q."""

    q_grid: np.ndarray
    values: np.ndarray
    z0: float

    def __post_init__(self) -> None:
        if np.any(np.asarray(self.values) < 0.0):
            raise ValueError("momentum density must be nonnegative")


def _default_spec(z0: float) -> QuadratureSpec:
    # envelope exp(-s - s^2 z0^2/8): decay length min(1, 2*sqrt(2)/z0)
    scale = min(1.0, 2.0 * math.sqrt(2.0) / z0) if z0 > 0 else 1.0
    return QuadratureSpec(decay_scale=scale)


def momentum_density(q: float, z0: float, spec: QuadratureSpec | None = None) -> float:
    """Radial momentum density at dimensionless offset q for width ratio z0."""
    if q < 0.0:
        raise ValueError("q must be nonnegative")
    if z0 <= 0.0:
        raise ValueError("z0 must be positive")
    if spec is None:
        spec = _default_spec(z0)

    def envelope(s: float) -> float:
        return s * (1.0 + s + s * s / 3.0) * math.exp(-s - (s * z0) ** 2 / 8.0)

    if q < _Q_SMALL:
        res = integrate_semi_infinite(lambda s: s * envelope(s), spec)
        value = res.value
    else:
        res = integrate_fourier_sine(envelope, q, spec)
        value = res.value / q
    if not res.converged:
        raise QuadratureError(f"momentum density integral failed at q={q}, z0={z0}")
    return value / (2.0 * math.pi**2)


def gaussian_limit(p_offset: float, delta: float) -> float:
    """Momentum distribution of the bare packet:
    (2/pi)^{3/2} delta^3 exp(-2 (p - P0)^2 delta^2) in (a_B, hbar) units."""
    if delta <= 0.0:
        raise ValueError("delta must be positive")
    return (2.0 / math.pi) ** 1.5 * delta**3 * math.exp(-2.0 * (p_offset * delta) ** 2)


def electron_limit(q: float) -> float:
    """Momentum distribution of the bound 1s electron:
    (8/pi^2) (1 + q^2)^-4 in (a_B, hbar) units."""
    if q < 0.0:
        raise ValueError("q must be nonnegative")
    return 8.0 / math.pi**2 / (1.0 + q * q) ** 4


def momentum_distribution(z0: float, q_grid) -> MomentumDistribution:
    q_grid = np.asarray(q_grid, dtype=float)
    values = np.array([momentum_density(q, z0) for q in q_grid])
    return MomentumDistribution(q_grid, values, z0)


def normalization_integral(z0: float, spec: QuadratureSpec | None = None) -> float:
    """4 pi int q^2 n(q) dq; equals 1 by Tr rho = 1."""
    from scipy.integrate import quad

    q_max = max(60.0, 5.0 * z0)
    val, _ = quad(
        lambda q: q * q * momentum_density(q, z0, spec),
        0.0,
        q_max,
        epsabs=1e-12,
        epsrel=1e-9,
        limit=400,
        points=[min(z0, q_max / 2.0), 1.0],
    )
    return 4.0 * math.pi * val


def momentum_density_generic(
    packet: GaussianPacket,
    kernel: CoherenceKernel | None,
    p,
    t: float = 0.0,
    spec: QuadratureSpec | None = None,
    hbar: float = 1.0,
) -> float:
    """Momentum density by the generic route: numeric diagonal average of
    the packet's off-diagonal profile, multiplied by the kernel, then a
    radial Fourier transform.

    Restricted to isotropic kernels and Gaussian packets, which reduces
    the six-dimensional transform to nested 1D radial integrals. Passing
    ``kernel=None`` means no decoherence factor (D = 1). Result in
    (a_B, hbar) units, independent of t.
    """
    from scipy.integrate import quad

    p = np.asarray(p, dtype=float)
    q_vec = p - np.asarray(packet.P0)
    q = float(np.linalg.norm(q_vec)) / hbar
    delta = packet.delta

    # pick the axis carrying P0 (any axis works for P0 = 0)
    p0_arr = np.asarray(packet.P0)
    axis = int(np.argmax(np.abs(p0_arr))) if np.any(p0_arr) else 2
    x0 = packet.R0[axis]
    p0 = packet.P0[axis]

    half_span = 12.0 * max(delta, hbar * abs(t) / (2.0 * packet.M * delta))
    center = x0 + p0 * t / packet.M

    def diag_average(u: float) -> float:
        """int dx psi(x + u/2) psi*(x - u/2), phase exp(i p0 u) removed."""
        def integrand(x: float, part) -> float:
            val = (
                evaluate_1d(delta, x0, p0, packet.M, x + 0.5 * u, t, hbar)
                * np.conj(evaluate_1d(delta, x0, p0, packet.M, x - 0.5 * u, t, hbar))
                * np.exp(-1j * p0 * u / hbar)
            )
            return part(val)

        lo, hi = center - half_span, center + half_span
        re, _ = quad(lambda x: integrand(x, np.real), lo, hi, epsabs=1e-13, epsrel=1e-11)
        return re

    if spec is None:
        gauss_scale = 2.0 * math.sqrt(2.0) * delta
        scale = gauss_scale if kernel is None else min(1.0, gauss_scale)
        spec = QuadratureSpec(decay_scale=scale, abs_tol=1e-13)

    def envelope(u: float) -> float:
        d = float(kernel(u)) if kernel is not None else 1.0
        return u * d * diag_average(u)

    if q < _Q_SMALL:
        res = integrate_semi_infinite(lambda u: u * envelope(u), spec)
        value = res.value
    else:
        res = integrate_fourier_sine(envelope, q, spec)
        value = res.value / q
    if not res.converged:
        raise QuadratureError(f"generic momentum density failed at q={q}")
    return value / (2.0 * math.pi**2)
