"""Value types for polarization states, couplings and Gaussian pointers.

Conventions: lengths in meters, angles in radians. Conversion from the
human units used on the command line (degrees, nm, um) happens in
``weakinterference.cli`` only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

NORM_TOL = 1e-12
INV_SQRT2 = math.sqrt(0.5)  # correctly rounded, unlike 1 / sqrt(2)


def wrap_angle(angle: float) -> float:
    """Reduce an angle to the half-open interval (-pi, pi]."""
    r = math.remainder(angle, 2.0 * math.pi)
    if r <= -math.pi:
        r += 2.0 * math.pi
    return r


@dataclass(frozen=True)
class PolarizationState:
    """Normalized Jones vector over the {H, V} basis."""

    a_H: complex
    a_V: complex

    def __post_init__(self):
        object.__setattr__(self, "a_H", complex(self.a_H))
        object.__setattr__(self, "a_V", complex(self.a_V))
        norm = abs(self.a_H) ** 2 + abs(self.a_V) ** 2
        if not abs(norm - 1.0) <= NORM_TOL:
            raise ValueError(f"polarization state must have unit norm, got {norm!r}")

    @property
    def vector(self) -> np.ndarray:
        return np.array([self.a_H, self.a_V], dtype=complex)

    def is_close(self, other: PolarizationState, tol: float = NORM_TOL) -> bool:
        return abs(self.a_H - other.a_H) <= tol and abs(self.a_V - other.a_V) <= tol


@dataclass(frozen=True)
class PostSelectionAngles:
    """Post-selection cos(alpha)|H> + exp(i xi) sin(alpha)|V>."""

    alpha: float
    xi: float = 0.0

    def state(self) -> PolarizationState:
        return make_post(self.alpha, self.xi)


@dataclass(frozen=True)
class CouplingParams:
    """Polarization-dependent displacements of the pointer and the relative phase.

    ``delta1`` shifts the H component and ``delta2`` the V component;
    ``phi`` is the phase picked up by V relative to H.
    """

    delta1: float
    delta2: float
    phi: float = 0.0

    @classmethod
    def symmetric(cls, delta: float, phi: float = 0.0) -> CouplingParams:
        """Opposite shifts ``+delta`` and ``-delta``, so ``delta_plus == 0``."""
        return cls(delta, -delta, phi)

    @property
    def delta_plus(self) -> float:
        return self.delta1 + self.delta2

    @property
    def delta_minus(self) -> float:
        return self.delta1 - self.delta2


@dataclass(frozen=True)
class GaussianPointer:
    """1-D Gaussian beam profile normalized to unit power.

    The amplitude is ``(pi w0^2)**-0.25 * exp(-(x - center)^2 / (2 w0^2))``,
    so that the integral of its square over the line is 1 and two copies
    displaced by ``d`` overlap as ``exp(-d^2 / (4 w0^2))``.
    """

    waist: float
    center: float = 0.0

    def __post_init__(self):
        if not self.waist > 0:
            raise ValueError(f"waist must be strictly positive, got {self.waist!r}")

    @property
    def peak(self) -> float:
        return (math.pi * self.waist**2) ** -0.25

    def amplitude(self, x):
        """Field amplitude at position(s) ``x`` (scalar or array)."""
        u = (np.asarray(x, dtype=float) - self.center) / self.waist
        return self.peak * np.exp(-0.5 * u**2)

    def amplitude_offset(self, u):
        """Amplitude as a function of the offset ``u = x - center``."""
        u = np.asarray(u, dtype=float) / self.waist
        return self.peak * np.exp(-0.5 * u**2)


def make_balanced_pre() -> PolarizationState:
    """The diagonal input polarization (|H> + |V>)/sqrt(2)."""
    return PolarizationState(INV_SQRT2, INV_SQRT2)


def make_post(alpha: float, xi: float = 0.0) -> PolarizationState:
    return PolarizationState(math.cos(alpha), complex(math.cos(xi), math.sin(xi)) * math.sin(alpha))


def overlap(pre: PolarizationState, post: PolarizationState) -> complex:
    """Inner product <post|pre>."""
    return post.a_H.conjugate() * pre.a_H + post.a_V.conjugate() * pre.a_V


@dataclass(frozen=True)
class MeasurementSetup:
    """Pre-selection, coupling, pointer and post-selection of one experiment."""

    post: PostSelectionAngles
    coupling: CouplingParams
    pointer: GaussianPointer
    pre: PolarizationState = field(default_factory=make_balanced_pre)

    @classmethod
    def from_angles(
        cls,
        alpha: float,
        theta: float,
        delta1: float,
        delta2: float,
        waist: float,
        center: float = 0.0,
    ) -> MeasurementSetup:
        """Balanced setup with ``phi = theta`` and ``xi = 0``."""
        return cls(
            post=PostSelectionAngles(alpha, 0.0),
            coupling=CouplingParams(delta1, delta2, theta),
            pointer=GaussianPointer(waist, center),
        )

    @property
    def theta(self) -> float:
        """Effective interference phase phi - xi, in (-pi, pi]."""
        return wrap_angle(self.coupling.phi - self.post.xi)

    @property
    def alpha(self) -> float:
        return self.post.alpha

    @property
    def balanced_pre(self) -> bool:
        return self.pre.is_close(make_balanced_pre())

    @property
    def post_state(self) -> PolarizationState:
        return self.post.state()


@dataclass(frozen=True)
class MeasurementResult:
    mean_position: float
    power_ratio: float
    fractional_loss: float
    amplification: float
    gamma: float
    overlap: complex
