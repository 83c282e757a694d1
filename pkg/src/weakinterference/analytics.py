"""Closed-form observables for a balanced pre-selection and a Gaussian pointer.

Every function here is exact for the Gaussian pointer; no expansion in
the displacement over the waist is made. The low-level helpers prefixed
with ``curve_`` broadcast over numpy arrays and are what the figure
sweeps use; the setup-level functions wrap them for a single
:class:`~weakinterference.model.MeasurementSetup`.

The interference term enters every observable through the product
``gamma * cos(theta) * sin(2 alpha)``. Near the dark port (product close
to -1) and near the bright port (close to +1) the quantities ``1 + prod``
and ``prod - 1`` suffer catastrophic cancellation, so both are routed
through :func:`one_minus_interference`, which is a sum of non-negative
terms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from weakinterference.errors import (
    DarkPort,
    OrthogonalPostSelection,
    UnsupportedPreSelection,
    ZeroPower,
)
from weakinterference.model import (
    CouplingParams,
    GaussianPointer,
    MeasurementResult,
    MeasurementSetup,
    PolarizationState,
    overlap,
)

# 1 + gamma sin(2 alpha) cos(theta) at or below this is treated as zero output.
DARK_PORT_THRESHOLD = 1e-15


@dataclass(frozen=True)
class WeakObservable:
    """Diagonal observable on {H, V}. Defaults to the sigma_z-like (+1, -1)."""

    eigen_H: float = 1.0
    eigen_V: float = -1.0


class OptimalAngle(NamedTuple):
    alpha0: float
    a_max: float
    ideal_limit: bool  # gamma |cos theta| == 1, a_max reported as +inf


def weak_value(
    pre: PolarizationState,
    post: PolarizationState,
    obs: WeakObservable = WeakObservable(),
) -> complex:
    """<post|A|pre> / <post|pre> for a diagonal observable ``A``."""
    ov = overlap(pre, post)
    if abs(ov) <= 1e-300:
        raise OrthogonalPostSelection("post-selection is orthogonal to pre-selection")
    num = post.a_H.conjugate() * obs.eigen_H * pre.a_H + post.a_V.conjugate() * obs.eigen_V * pre.a_V
    return num / ov


def separation_exponent(delta_minus, waist):
    """``(delta1 - delta2)^2 / (4 w0^2)``, i.e. ``-ln(gamma)``."""
    return (np.asarray(delta_minus, dtype=float) / (2.0 * np.asarray(waist, dtype=float))) ** 2


def curve_gamma(delta_minus, waist):
    return np.exp(-separation_exponent(delta_minus, waist))


def gamma(coupling: CouplingParams, pointer: GaussianPointer) -> float:
    """Overlap factor of the two displaced pointer states."""
    return math.exp(-float(separation_exponent(coupling.delta_minus, pointer.waist)))


def one_minus_interference(alpha, theta, exponent):
    """``1 - gamma |cos theta| |sin 2 alpha|`` without cancellation.

    Written as ``(1 - gamma) + gamma (1 - |c|) + gamma |c| (1 - |s|)`` with
    ``1 - |cos t| = sin(t)^2 / (1 + |cos t|)``; every term is >= 0.
    """
    alpha = np.asarray(alpha, dtype=float)
    theta = np.asarray(theta, dtype=float)
    exponent = np.asarray(exponent, dtype=float)
    g = np.exp(-exponent)
    c = np.abs(np.cos(theta))
    s = np.abs(np.sin(2.0 * alpha))
    one_minus_c = np.sin(theta) ** 2 / (1.0 + c)
    one_minus_s = np.cos(2.0 * alpha) ** 2 / (1.0 + s)
    return -np.expm1(-exponent) + g * one_minus_c + g * c * one_minus_s


def curve_power_ratio(alpha, theta, exponent):
    """P_out / P_in = (1 + gamma sin(2 alpha) cos(theta)) / 2, broadcasting."""
    alpha, theta, exponent = np.broadcast_arrays(
        np.asarray(alpha, dtype=float), np.asarray(theta, dtype=float), np.asarray(exponent, dtype=float)
    )
    prod = np.exp(-exponent) * np.sin(2.0 * alpha) * np.cos(theta)
    defect = one_minus_interference(alpha, theta, exponent)
    out = np.where(prod < 0.0, 0.5 * defect, 0.5 * (1.0 + prod))
    return out if out.ndim else float(out)


def curve_fractional_loss(alpha, theta, exponent):
    """(P_out - P_in) / P_in = (gamma cos(theta) sin(2 alpha) - 1) / 2, broadcasting."""
    alpha, theta, exponent = np.broadcast_arrays(
        np.asarray(alpha, dtype=float), np.asarray(theta, dtype=float), np.asarray(exponent, dtype=float)
    )
    prod = np.exp(-exponent) * np.sin(2.0 * alpha) * np.cos(theta)
    defect = one_minus_interference(alpha, theta, exponent)
    out = np.where(prod > 0.0, -0.5 * defect, 0.5 * (prod - 1.0))
    return out if out.ndim else float(out)


def curve_amplification(alpha, theta, exponent):
    """cos(2 alpha) / (1 + gamma sin(2 alpha) cos(theta)); inf/nan at the dark port."""
    denom = 2.0 * np.asarray(curve_power_ratio(alpha, theta, exponent))
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.cos(2.0 * np.asarray(alpha, dtype=float)) / denom
    return out if np.ndim(out) else float(out)


def _require_balanced(setup: MeasurementSetup) -> None:
    if not setup.balanced_pre:
        raise UnsupportedPreSelection(
            "closed forms hold only for the balanced pre-selection; use weakinterference.quadrature"
        )


def _exponent(setup: MeasurementSetup) -> float:
    return float(separation_exponent(setup.coupling.delta_minus, setup.pointer.waist))


def intensity_at(setup: MeasurementSetup, x):
    """Post-selected intensity profile |cos a Phi(x - d1) + sin a Phi(x - d2) e^{i theta}|^2.

    Carries no 1/2 from the pre-selection amplitudes, so with
    ``alpha = 0`` and no displacement it is exactly ``|Phi(x)|^2``.
    """
    _require_balanced(setup)
    a, th = setup.alpha, setup.theta
    p = setup.pointer
    x = np.asarray(x, dtype=float)
    field = math.cos(a) * p.amplitude(x - setup.coupling.delta1) + math.sin(a) * complex(
        math.cos(th), math.sin(th)
    ) * p.amplitude(x - setup.coupling.delta2)
    out = np.abs(field) ** 2
    return out if out.ndim else float(out)


def power_ratio(setup: MeasurementSetup) -> float:
    _require_balanced(setup)
    return float(curve_power_ratio(setup.alpha, setup.theta, _exponent(setup)))


def fractional_loss(setup: MeasurementSetup) -> float:
    _require_balanced(setup)
    return float(curve_fractional_loss(setup.alpha, setup.theta, _exponent(setup)))


def _denominator(setup: MeasurementSetup) -> float:
    denom = 2.0 * power_ratio(setup)
    if denom <= DARK_PORT_THRESHOLD:
        raise DarkPort(f"1 + gamma sin(2a) cos(theta) = {denom:.3e}: output power vanishes")
    return denom


def amplification(setup: MeasurementSetup) -> float:
    """Factor multiplying delta_minus / 2 in the mean pointer position."""
    return math.cos(2.0 * setup.alpha) / _denominator(setup)


def mean_position(setup: MeasurementSetup) -> float:
    """Mean pointer position <x> of the post-selected beam, in meters."""
    c = setup.coupling
    return setup.pointer.center + c.delta_plus / 2.0 + (c.delta_minus / 2.0) * amplification(setup)


def optimal_angle(gamma: float, theta: float) -> OptimalAngle:
    """Post-selection angle of maximum amplification and the maximum itself."""
    gc = gamma * math.cos(theta)
    alpha0 = -0.5 * math.asin(max(-1.0, min(1.0, gc)))
    rest = (1.0 - gc) * (1.0 + gc)
    if rest <= 0.0:
        return OptimalAngle(alpha0, math.inf, True)
    return OptimalAngle(alpha0, rest**-0.5, False)


def loss_db(power_ratio: float) -> float:
    if power_ratio == 0:
        raise ZeroPower("power ratio is zero; loss in dB is -infinity")
    if power_ratio < 0:
        raise ValueError(f"power ratio must be positive, got {power_ratio!r}")
    return 10.0 * math.log10(power_ratio)


def evaluate(setup: MeasurementSetup) -> MeasurementResult:
    """All closed-form observables of ``setup``. Raises DarkPort at the dark port."""
    pr = power_ratio(setup)
    return MeasurementResult(
        mean_position=mean_position(setup),
        power_ratio=pr,
        fractional_loss=fractional_loss(setup),
        amplification=amplification(setup),
        gamma=gamma(setup.coupling, setup.pointer),
        overlap=overlap(setup.pre, setup.post_state),
    )
