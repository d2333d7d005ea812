"""Reduced density matrix of the nucleus.

The density matrix separates into the center-of-mass packet times a
coherence kernel D(s) that depends only on the dimensionless separation
s = |r - r'| / a_B. For a hydrogen-like 1s electron
D(s) = (1 + s + s^2/3) exp(-s); for the two-electron helium ground state
(effective charge Z* = 27/16) the kernel is the square of the hydrogen
kernel at the Z*-scaled argument. The purity Tr rho^2 reduces to a single
radial integral over s parametrized by z = a_B / Delta_x.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .quadrature import QuadratureError, QuadratureSpec, integrate_semi_infinite
from .wavepacket import GaussianPacket, evaluate, width, z_parameter

Z_EFF_HELIUM = 27.0 / 16.0


def hydrogen_kernel(s):
    """Coherence kernel (1 + s + s^2/3) e^{-s} of a 1s electron."""
    s = np.asarray(s, dtype=float)
    if np.any(s < 0.0):
        raise ValueError("separation s must be nonnegative")
    out = (1.0 + s + s * s / 3.0) * np.exp(-s)
    return float(out) if out.ndim == 0 else out


def helium_kernel(s_phys, z_eff: float = Z_EFF_HELIUM):
    """Coherence kernel of the helium nucleus: hydrogen_kernel(Z* s)^2."""
    s_phys = np.asarray(s_phys, dtype=float)
    if np.any(s_phys < 0.0):
        raise ValueError("separation must be nonnegative")
    return hydrogen_kernel(z_eff * s_phys) ** 2


@dataclass(frozen=True)
class CoherenceKernel:
    """Separable off-diagonal decay factor D(s), s in Bohr radii."""

    species: str = "hydrogen"
    z_eff: float = 1.0

    def __post_init__(self) -> None:
        if self.species not in ("hydrogen", "helium"):
            raise ValueError("species must be 'hydrogen' or 'helium'")

    @classmethod
    def hydrogen(cls) -> "CoherenceKernel":
        return cls("hydrogen", 1.0)

    @classmethod
    def helium(cls, z_eff: float = Z_EFF_HELIUM) -> "CoherenceKernel":
        return cls("helium", z_eff)

    def __call__(self, s_phys):
        if self.species == "hydrogen":
            return hydrogen_kernel(np.asarray(s_phys) * self.z_eff)
        return helium_kernel(s_phys, self.z_eff)


def reduced_density(
    packet: GaussianPacket,
    kernel: CoherenceKernel,
    r,
    r_prime,
    t: float,
    hbar: float = 1.0,
) -> complex:
    """rho(r, r'; t) = psi(r, t) psi*(r', t) D(|r - r'|)."""
    r = np.asarray(r, dtype=float)
    r_prime = np.asarray(r_prime, dtype=float)
    s = float(np.linalg.norm(r - r_prime))
    return evaluate(packet, r, t, hbar) * np.conj(evaluate(packet, r_prime, t, hbar)) * kernel(s)


def offdiagonal_bound(kernel: CoherenceKernel, s: float) -> float:
    """Envelope bounding |rho| / max|psi|^2 at dimensionless separation s."""
    if s < 0.0:
        raise ValueError("separation s must be nonnegative")
    return float(kernel(s))


def verify_offdiagonal_bound(
    packet: GaussianPacket,
    kernel: CoherenceKernel,
    s: float,
    t: float = 0.0,
    n_samples: int = 100,
    seed: int = 0,
    hbar: float = 1.0,
) -> bool:
    """Sample |rho(r, r')| at fixed separation s against the bound
    max|psi|^2 * envelope."""
    rng = np.random.default_rng(seed)
    peak = (2.0 * math.pi * width(packet, t, hbar) ** 2) ** -1.5
    bound = peak * offdiagonal_bound(kernel, s)
    for _ in range(n_samples):
        mid = np.asarray(packet.R0) + rng.normal(scale=3.0 * packet.delta, size=3)
        direction = rng.normal(size=3)
        direction /= np.linalg.norm(direction)
        r = mid + 0.5 * s * direction
        r_prime = mid - 0.5 * s * direction
        rho = reduced_density(packet, kernel, r, r_prime, t, hbar)
        if abs(rho) > bound * (1.0 + 1e-12):
            return False
    return True


def purity(z: float, spec: QuadratureSpec | None = None) -> float:
    """Tr rho^2 of the hydrogen-kernel reduced density matrix.

    Tr rho^2 = z^3/(2 sqrt(pi)) * int_0^inf s^2 (1+s+s^2/3)^2
    exp(-2s - s^2 z^2 / 4) ds; z = a_B/Delta_x. Lies in (0, 1].
    """
    if z <= 0.0:
        raise ValueError("z must be positive")
    if spec is None:
        spec = QuadratureSpec(decay_scale=min(0.5, 2.0 / z))

    def integrand(s: float) -> float:
        poly = 1.0 + s + s * s / 3.0
        return s * s * poly * poly * math.exp(-2.0 * s - (s * z) ** 2 / 4.0)

    res = integrate_semi_infinite(integrand, spec)
    if not res.converged:
        raise QuadratureError(f"purity integral did not converge at z={z}")
    return z**3 / (2.0 * math.sqrt(math.pi)) * res.value


def purity_from_packet(packet: GaussianPacket, t: float, hbar: float = 1.0) -> float:
    """Purity evaluated at z = a_B / Delta_x(t) of the packet."""
    return purity(z_parameter(packet, t, hbar))
