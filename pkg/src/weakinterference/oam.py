"""N-mode generalization: OAM modes through a rotating Dove prism.

Mode ``m`` of a beam crossing an element rotating at ``omega_rot`` is
frequency shifted by ``2 m omega_rot``. The transmitted state is
``sum_m Phi(w + 2 m Omega) |m>|w>``, so with this sign convention a positive
``m * Omega`` moves the spectrum of that mode *down* by ``2 m Omega``.
Post-selecting a superposition of modes makes the shifted spectra
interfere exactly as the displaced beams do in the polarization case.

The spectral pointer is ``GaussianPointer(waist=sigma, center=omega0)``,
i.e. ``Phi(w) ~ exp(-(w - omega0)^2 / (2 sigma^2))``. Under the mapping

    x <-> w,  delta1 <-> -2 m1 Omega,  delta2 <-> -2 m2 Omega,  w0 <-> sigma

a two-mode setup reproduces the core model (see :func:`two_mode_setup`
and :func:`core_equivalent`).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from weakinterference.errors import DarkPort
from weakinterference.model import (
    INV_SQRT2,
    NORM_TOL,
    CouplingParams,
    GaussianPointer,
    MeasurementSetup,
    PostSelectionAngles,
)
from weakinterference.quadrature import (
    DARK_PORT_POWER,
    QuadratureGrid,
    power_and_moment,
    simpson_weights,
    symmetric_offsets,
)


@dataclass(frozen=True)
class OamMode:
    m: int
    amp_in: complex
    amp_post: complex
    extra_phase: float = 0.0

    @property
    def coefficient(self) -> complex:
        """conj(amp_post) * amp_in * exp(i extra_phase)."""
        return complex(self.amp_post).conjugate() * complex(self.amp_in) * complex(
            math.cos(self.extra_phase), math.sin(self.extra_phase)
        )


@dataclass(frozen=True)
class OamSetup:
    modes: tuple[OamMode, ...]
    omega_rot: float  # rad/s
    pointer: GaussianPointer  # spectral: waist = sigma_omega, center = omega0, rad/s

    def __post_init__(self):
        object.__setattr__(self, "modes", tuple(self.modes))
        if not self.modes:
            raise ValueError("at least one mode is required")
        ms = [md.m for md in self.modes]
        if len(set(ms)) != len(ms):
            raise ValueError(f"mode indices must be distinct, got {ms}")
        for name in ("amp_in", "amp_post"):
            norm = sum(abs(getattr(md, name)) ** 2 for md in self.modes)
            if not abs(norm - 1.0) <= NORM_TOL:
                raise ValueError(f"sum |{name}|^2 must be 1, got {norm!r}")

    @property
    def shifts(self) -> np.ndarray:
        return np.array([mode_shift(md.m, self.omega_rot) for md in self.modes])


def mode_shift(m: int, omega_rot: float) -> float:
    """Rotational Doppler shift 2 m Omega of mode ``m`` (signed)."""
    return 2.0 * m * omega_rot


def output_spectrum(setup: OamSetup, omega):
    """|sum_m conj(post_m) in_m e^{i phase_m} Phi(w + 2 m Omega)|^2 at ``omega``."""
    omega = np.asarray(omega, dtype=float)
    field = np.zeros(omega.shape, dtype=complex)
    for md in setup.modes:
        field = field + md.coefficient * setup.pointer.amplitude(omega + mode_shift(md.m, setup.omega_rot))
    out = np.abs(field) ** 2
    return out if out.ndim else float(out)


def integrate_spectrum(setup: OamSetup, grid: QuadratureGrid = QuadratureGrid()) -> tuple[float, float]:
    """(post-selected power, mean frequency relative to omega0) by Simpson quadrature.

    The mean is ``nan`` when the power is exactly zero.
    """
    shifts = setup.shifts
    mid = 0.5 * (shifts.max() + shifts.min())
    half_width = grid.half_extent_in_waists * setup.pointer.waist + 0.5 * (shifts.max() - shifts.min())
    u, h = symmetric_offsets(half_width, grid.samples)
    w = simpson_weights(grid.samples, h)
    # grid center sits at omega0 - mid; Phi(w + s) = amplitude_offset(u + s - mid)
    field = np.zeros(u.shape, dtype=complex)
    for md, s in zip(setup.modes, shifts):
        field = field + md.coefficient * setup.pointer.amplitude_offset(u + (s - mid))
    p_out, m1 = power_and_moment(np.abs(field) ** 2, u, w)
    # input power about omega0 on the same step; the shifted grid would clip its tail
    p_in, _ = power_and_moment(setup.pointer.amplitude_offset(u) ** 2, u, w)
    mean = -mid + m1 / p_out if p_out > 0 else math.nan
    return p_out / p_in, mean


def post_selected_power(setup: OamSetup, grid: QuadratureGrid = QuadratureGrid()) -> float:
    return integrate_spectrum(setup, grid)[0]


def mean_frequency(setup: OamSetup, grid: QuadratureGrid = QuadratureGrid()) -> float:
    """Mean frequency of the post-selected spectrum minus omega0, in rad/s.

    Raises
    ------
    DarkPort
        If the post-selected power is below 1e-15.
    """
    power, mean = integrate_spectrum(setup, grid)
    if power < DARK_PORT_POWER:
        raise DarkPort(f"post-selected spectral power {power:.3e} is below {DARK_PORT_POWER:g}")
    return mean


def balanced_modes(ms, post=None, phases=None) -> tuple[OamMode, ...]:
    """Modes with equal input amplitudes 1/sqrt(N); post-selection balanced unless given."""
    n = len(ms)
    amp = 1.0 / math.sqrt(n)
    post = [amp] * n if post is None else list(post)
    phases = [0.0] * n if phases is None else list(phases)
    return tuple(OamMode(int(m), amp, p, ph) for m, p, ph in zip(ms, post, phases))


def two_mode_setup(
    alpha: float,
    xi: float,
    phi: float,
    omega_rot: float,
    sigma: float,
    omega0: float = 0.0,
    ms: tuple[int, int] = (1, -1),
) -> OamSetup:
    """Two modes playing the roles of H (first) and V (second).

    Post-selection ``cos(alpha)|m1> + e^{i xi} sin(alpha)|m2>`` and an
    extra phase ``phi`` on the second mode.
    """
    post = (math.cos(alpha), complex(math.cos(xi), math.sin(xi)) * math.sin(alpha))
    modes = (
        OamMode(ms[0], INV_SQRT2, post[0], 0.0),
        OamMode(ms[1], INV_SQRT2, post[1], phi),
    )
    return OamSetup(modes, omega_rot, GaussianPointer(sigma, omega0))


def core_equivalent(
    alpha: float,
    xi: float,
    phi: float,
    omega_rot: float,
    sigma: float,
    ms: tuple[int, int] = (1, -1),
) -> MeasurementSetup:
    """The polarization setup that :func:`two_mode_setup` maps onto (centered at 0)."""
    return MeasurementSetup(
        post=PostSelectionAngles(alpha, xi),
        coupling=CouplingParams(-mode_shift(ms[0], omega_rot), -mode_shift(ms[1], omega_rot), phi),
        pointer=GaussianPointer(sigma),
    )
