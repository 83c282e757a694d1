"""Recover the displacement from a measured fractional power loss.

In the high-signal regime the output power still depends on the
separation of the two displaced pointers through gamma, even when the
mean position carries no information. Inverting

    dP/P = (gamma cos(theta) sin(2 alpha) - 1) / 2,
    gamma = exp(-dm^2 / (4 w0^2)),

for ``dm = delta1 - delta2`` is closed form. Only ``|dm|`` is observable
because the loss depends on ``dm**2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from weakinterference.analytics import one_minus_interference
from weakinterference.errors import NonInvertible, OutOfRange

DEFAULT_NOISE_FLOOR = 1e-7  # shot-noise-limited dP/P reached by MHz-modulated detection
_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class EstimationInput:
    measured_fractional_loss: float
    alpha: float
    theta: float
    waist: float

    def __post_init__(self):
        f = self.measured_fractional_loss
        if not -1.0 <= f <= 0.0:
            raise OutOfRange(f"fractional loss must lie in [-1, 0], got {f!r}")
        if not self.waist > 0:
            raise ValueError(f"waist must be strictly positive, got {self.waist!r}")

    @property
    def contrast(self) -> float:
        return interference_contrast(self.alpha, self.theta)


@dataclass(frozen=True)
class EstimateReport:
    delta_minus: float  # meters, magnitude only
    gamma_inferred: float
    sensitivity: float  # d(dP/P)/d(dm) at the estimate, per meter
    min_detectable: float  # meters, nan if the noise floor is beyond the model


def interference_contrast(alpha: float, theta: float) -> float:
    """sin(2 alpha) cos(theta), the weight of gamma in the loss."""
    return math.sin(2.0 * alpha) * math.cos(theta)


def _check_contrast(alpha: float, theta: float) -> float:
    s = interference_contrast(alpha, theta)
    # cos(pi/2) rounds to 6e-17, not 0; treat anything at rounding level as zero
    if not s > 4.0 * _EPS:
        raise NonInvertible(
            f"sin(2 alpha) cos(theta) = {s:.6g} <= 0: the loss does not determine the displacement"
        )
    return s


def invert_fractional_loss(inp: EstimationInput, noise_floor: float = DEFAULT_NOISE_FLOOR) -> EstimateReport:
    """Displacement magnitude |delta1 - delta2| implied by a measured loss.

    Raises
    ------
    NonInvertible
        If ``sin(2 alpha) cos(theta) <= 0`` (up to rounding).
    OutOfRange
        If the implied gamma is outside (0, 1], i.e. the loss cannot be
        produced by the interference alone (extra polarization-dependent
        loss, for instance).
    """
    s = _check_contrast(inp.alpha, inp.theta)
    f = inp.measured_fractional_loss
    # gamma - 1 = (2 f + 1 - s) / s, with 1 - s evaluated without cancellation
    d0 = float(one_minus_interference(inp.alpha, inp.theta, 0.0))
    gm1 = (2.0 * f + d0) / s
    if gm1 > 0.0:
        # allow the rounding of f itself at zero displacement; the eps^2 term
        # covers d0 at the rounded alpha = pi/4, which is O(eps^2) instead of 0
        if gm1 <= 4.0 * _EPS * (abs(2.0 * f) + d0 + _EPS) / s:
            gm1 = 0.0
        else:
            raise OutOfRange(
                f"implied gamma {1.0 + gm1:.12g} > 1: loss {f:.6g} is smaller than the model allows"
            )
    if gm1 <= -1.0:
        raise OutOfRange(f"implied gamma {1.0 + gm1:.6g} <= 0: loss {f:.6g} exceeds the model's floor")
    exponent = -math.log1p(gm1)
    dm = 2.0 * inp.waist * math.sqrt(exponent)
    try:
        floor_shift = min_detectable_shift(noise_floor, inp.alpha, inp.theta, inp.waist)
    except OutOfRange:
        floor_shift = math.nan
    return EstimateReport(
        delta_minus=dm,
        gamma_inferred=1.0 + gm1,
        sensitivity=sensitivity(dm, inp.alpha, inp.theta, inp.waist),
        min_detectable=floor_shift,
    )


def min_detectable_shift(noise_floor: float, alpha: float, theta: float, waist: float) -> float:
    """Smallest |dm| whose loss departs from the zero-shift loss by ``noise_floor``.

    At alpha = 45 deg and theta = 0 the zero-shift loss vanishes, so this
    is the smallest shift with ``|dP/P| >= noise_floor``.
    """
    if not noise_floor > 0:
        raise ValueError(f"noise floor must be positive, got {noise_floor!r}")
    s = _check_contrast(alpha, theta)
    r = 2.0 * noise_floor / s
    if r >= 1.0:
        raise OutOfRange(f"noise floor {noise_floor:g} is unreachable: 2 floor / contrast = {r:.6g} >= 1")
    return 2.0 * waist * math.sqrt(-math.log1p(-r))


def sensitivity(delta_minus, alpha: float, theta: float, waist: float):
    """Slope d(dP/P)/d(dm) = -sin(2a) cos(theta) gamma dm / (4 w0^2), per meter."""
    dm = np.asarray(delta_minus, dtype=float)
    g = np.exp(-((dm / (2.0 * waist)) ** 2))
    out = -interference_contrast(alpha, theta) * g * dm / (4.0 * waist**2)
    return out if out.ndim else float(out)
