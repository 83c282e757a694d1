"""Command line: figure data, loss inversion, oracle verification, OAM spectra.

Inputs are taken in laboratory units (degrees, nm, um, Hz) and converted
to meters / radians / rad/s right after parsing. Every output is UTF-8
text with LF line endings: ``# key=value`` header lines, a column-name
line, then rows of ``%.12e`` numbers. Undefined cells are left empty.
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from weakinterference import analytics, estimation, oam, quadrature
from weakinterference.errors import DarkPort, NonInvertible, OutOfRange, WeakInterferenceError
from weakinterference.model import CouplingParams, GaussianPointer, MeasurementSetup, PostSelectionAngles

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_OUT_OF_RANGE = 3
EXIT_NON_INVERTIBLE = 4
EXIT_DARK_PORT = 5
EXIT_IO = 6

NM = 1e-9
UM = 1e-6
FLOAT_FMT = "%.12e"
AMPLIFICATION_GUARD = 1e-12  # power ratio below which the amplification cell is left empty

# Parameters of the four published figures.
FIGURE_DEFAULTS = {
    1: dict(theta_deg=0.01, delta_nm=10.0, waist_um=10.0, alpha_start_deg=-90.0, alpha_stop_deg=0.0),
    2: dict(theta_deg=0.01, delta_nm=10.0, waist_um=10.0, alpha_start_deg=-90.0, alpha_stop_deg=0.0),
    3: dict(alpha_deg=(45.0, 0.0, -30.0, -45.0), delta_nm=10.0, waist_um=10.0, theta_start_deg=-90.0, theta_stop_deg=90.0),
    4: dict(alpha_deg=45.0, theta_deg=(0.0, 0.1, 0.2, 0.3), waist_um=10.0, delta_start_nm=0.0, delta_stop_nm=50.0),
}
DEFAULT_POINTS = 2001


class UsageError(Exception):
    pass


@dataclass
class Table:
    header: dict
    columns: list[str]
    rows: list[list[float | None]] = field(default_factory=list)

    def render(self, fmt: str = "csv") -> str:
        sep = "," if fmt == "csv" else "\t"
        lines = [f"# {k}={_echo(v)}" for k, v in self.header.items()]
        lines.append(sep.join(self.columns))
        for row in self.rows:
            lines.append(sep.join("" if v is None else _fmt(v) for v in row))
        return "\n".join(lines) + "\n"


def _fmt(v) -> str:
    if isinstance(v, (int, np.integer)) and not isinstance(v, bool):
        return str(v)
    v = float(v)
    if not math.isfinite(v):
        return ""
    return FLOAT_FMT % v


def _echo(v) -> str:
    if isinstance(v, (list, tuple)):
        return ";".join(_echo(x) for x in v)
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _label(v: float) -> str:
    return f"{v:g}"


def _cell(v: float) -> float | None:
    return float(v) if math.isfinite(v) else None


def _loss_db_or_none(pr: float) -> float | None:
    return analytics.loss_db(pr) if pr > 0 else None


# ---------------------------------------------------------------- figures


def figure_table(n: int, params: dict | None = None, points: int = DEFAULT_POINTS) -> Table:
    """Data behind figure ``n`` (1-4), computed from the closed forms only."""
    if n not in FIGURE_DEFAULTS:
        raise UsageError(f"figure must be 1, 2, 3 or 4, got {n}")
    if points < 2:
        raise UsageError("--points must be at least 2")
    p = dict(FIGURE_DEFAULTS[n])
    for k, v in (params or {}).items():
        if k not in p:
            raise UsageError(f"figure {n} does not take {k}")
        p[k] = v
    waist = _positive(p["waist_um"], "--waist-um") * UM
    header = {"figure": n, **p, "points": points}

    if n in (1, 2):
        theta = math.radians(_scalar(p["theta_deg"], "--theta-deg"))
        exponent = analytics.separation_exponent(2.0 * p["delta_nm"] * NM, waist)
        alpha_deg = np.linspace(p["alpha_start_deg"], p["alpha_stop_deg"], points)
        alpha = np.radians(alpha_deg)
        pr = analytics.curve_power_ratio(alpha, theta, exponent)
        if n == 1:
            amp = analytics.curve_amplification(alpha, theta, exponent)
            dm = 2.0 * p["delta_nm"] * NM
            rows = [
                [a, None, None] if r < AMPLIFICATION_GUARD else [a, m, 0.5 * dm * m]
                for a, m, r in zip(alpha_deg, amp, pr)
            ]
            return Table(header, ["alpha_deg", "amplification", "mean_position_m"], rows)
        rows = [[a, r, _loss_db_or_none(r)] for a, r in zip(alpha_deg, pr)]
        return Table(header, ["alpha_deg", "power_ratio", "loss_db"], rows)

    if n == 3:
        alphas = _vector(p["alpha_deg"], "--alpha-deg")
        exponent = analytics.separation_exponent(2.0 * p["delta_nm"] * NM, waist)
        theta_deg = np.linspace(p["theta_start_deg"], p["theta_stop_deg"], points)
        curves = [
            analytics.curve_power_ratio(math.radians(a), np.radians(theta_deg), exponent) for a in alphas
        ]
        rows = [[t] + [_loss_db_or_none(c[i]) for c in curves] for i, t in enumerate(theta_deg)]
        return Table(header, ["theta_deg"] + [f"loss_db_alpha_{_label(a)}" for a in alphas], rows)

    alpha = math.radians(_scalar(p["alpha_deg"], "--alpha-deg"))
    thetas = _vector(p["theta_deg"], "--theta-deg")
    delta_nm = np.linspace(p["delta_start_nm"], p["delta_stop_nm"], points)
    exponent = analytics.separation_exponent(2.0 * delta_nm * NM, waist)
    curves = [analytics.curve_fractional_loss(alpha, math.radians(t), exponent) for t in thetas]
    rows = [[d] + [c[i] for c in curves] for i, d in enumerate(delta_nm)]
    return Table(header, ["delta_nm"] + [f"fractional_loss_theta_{_label(t)}" for t in thetas], rows)


def plot_script(table: Table, data_path: str, fmt: str) -> str:
    """A gnuplot script drawing every data column of ``table`` against the first."""
    sep = "," if fmt == "csv" else "\\t"
    lines = [
        f"set datafile separator '{sep}'",
        "set key autotitle columnhead",
        f"set xlabel '{table.columns[0]}'",
    ]
    if any(c.startswith("fractional_loss") or c == "amplification" for c in table.columns):
        lines.append("set ylabel 'value'")
    plots = [
        f"'{data_path}' using 1:{i + 1} with lines title '{c}'" for i, c in enumerate(table.columns[1:], 1)
    ]
    lines.append("plot " + ", \\\n     ".join(plots))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- sweep


SWEEP_VARIABLES = ("alpha", "theta", "delta")


def sweep_table(
    vary: str,
    start: float,
    stop: float,
    points: int,
    alpha_deg: float = 45.0,
    theta_deg: float = 0.0,
    delta1_nm: float = 10.0,
    delta2_nm: float = -10.0,
    waist_um: float = 10.0,
) -> Table:
    """All closed-form observables along one parameter (deg for angles, nm for delta).

    Sweeping ``delta`` sets ``delta1 = +delta`` and ``delta2 = -delta``.
    """
    if vary not in SWEEP_VARIABLES:
        raise UsageError(f"--vary must be one of {', '.join(SWEEP_VARIABLES)}")
    if points < 2:
        raise UsageError("--points must be at least 2")
    waist = _positive(waist_um, "--waist-um") * UM
    grid = np.linspace(start, stop, points)
    alpha = np.radians(grid) if vary == "alpha" else math.radians(alpha_deg)
    theta = np.radians(grid) if vary == "theta" else math.radians(theta_deg)
    if vary == "delta":
        d1, d2 = grid * NM, -grid * NM
    else:
        d1, d2 = delta1_nm * NM, delta2_nm * NM
    alpha, theta, d1, d2 = np.broadcast_arrays(alpha, theta, d1, d2)
    exponent = analytics.separation_exponent(d1 - d2, waist)
    g = analytics.curve_gamma(d1 - d2, waist)
    pr = analytics.curve_power_ratio(alpha, theta, exponent)
    fl = analytics.curve_fractional_loss(alpha, theta, exponent)
    amp = analytics.curve_amplification(alpha, theta, exponent)
    rows = []
    for i, v in enumerate(grid):
        dark = 2.0 * pr[i] <= analytics.DARK_PORT_THRESHOLD
        mean = None if dark else 0.5 * (d1[i] + d2[i]) + 0.5 * (d1[i] - d2[i]) * amp[i]
        rows.append([v, g[i], pr[i], _loss_db_or_none(pr[i]), fl[i], None if dark else amp[i], mean])
    header = {
        "vary": vary,
        "start": float(start),
        "stop": float(stop),
        "points": points,
        "alpha_deg": float(alpha_deg),
        "theta_deg": float(theta_deg),
        "delta1_nm": float(delta1_nm),
        "delta2_nm": float(delta2_nm),
        "waist_um": float(waist_um),
    }
    unit = "nm" if vary == "delta" else "deg"
    cols = [f"{vary}_{unit}", "gamma", "power_ratio", "loss_db", "fractional_loss", "amplification", "mean_position_m"]
    return Table(header, cols, rows)


# ---------------------------------------------------------------- estimate


def estimate_table(
    loss: float | None,
    alpha_deg: float,
    theta_deg: float,
    waist_um: float,
    noise_floor: float = estimation.DEFAULT_NOISE_FLOOR,
) -> Table:
    """Inversion report, or just the detection limit when ``loss`` is None."""
    alpha, theta = math.radians(alpha_deg), math.radians(theta_deg)
    waist = _positive(waist_um, "--waist-um") * UM
    header = {
        "alpha_deg": float(alpha_deg),
        "theta_deg": float(theta_deg),
        "waist_um": float(waist_um),
        "noise_floor": float(noise_floor),
    }
    if loss is None:
        shift = estimation.min_detectable_shift(noise_floor, alpha, theta, waist)
        return Table(header, ["min_detectable_m", "min_detectable_nm"], [[shift, shift / NM]])
    header = {"loss": float(loss), **header}
    rep = estimation.invert_fractional_loss(
        estimation.EstimationInput(loss, alpha, theta, waist), noise_floor=noise_floor
    )
    row = [
        rep.delta_minus,
        rep.delta_minus / NM,
        rep.gamma_inferred,
        rep.sensitivity,
        _cell(rep.min_detectable),
        _cell(rep.min_detectable / NM),
    ]
    cols = ["delta_minus_m", "delta_minus_nm", "gamma_inferred", "sensitivity_per_m", "min_detectable_m", "min_detectable_nm"]
    return Table(header, cols, [row])


def render_console(table: Table) -> str:
    width = max(len(c) for c in table.columns)
    lines = [f"{k}: {_echo(v)}" for k, v in table.header.items()]
    for row in table.rows:
        for c, v in zip(table.columns, row):
            lines.append(f"{c:<{width}}  {'-' if v is None else _fmt(v)}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- verify


def verification_battery(seed: int, cases: int) -> list[tuple[str, MeasurementSetup]]:
    """Figure scenarios plus ``cases`` seeded random balanced setups."""
    waist = 10.0 * UM
    delta = 10.0 * NM
    battery = []
    th1 = math.radians(0.01)
    g = math.exp(-float(analytics.separation_exponent(2 * delta, waist)))
    a0 = analytics.optimal_angle(g, th1).alpha0
    battery.append(("fig1_alpha0", MeasurementSetup.from_angles(a0, th1, delta, -delta, waist)))
    battery.append(("fig1_alpha_m30", MeasurementSetup.from_angles(math.radians(-30), th1, delta, -delta, waist)))
    battery.append(("fig2_alpha_m45", MeasurementSetup.from_angles(math.radians(-45), th1, delta, -delta, waist)))
    for a in FIGURE_DEFAULTS[3]["alpha_deg"]:
        for t in (0.0, 45.0, 90.0):
            battery.append(
                (f"fig3_alpha{_label(a)}_theta{_label(t)}",
                 MeasurementSetup.from_angles(math.radians(a), math.radians(t), delta, -delta, waist))
            )
    for t in FIGURE_DEFAULTS[4]["theta_deg"]:
        battery.append(
            (f"fig4_theta{_label(t)}", MeasurementSetup.from_angles(math.radians(45), math.radians(t), delta, -delta, waist))
        )
    for i, s in enumerate(random_setups(seed, cases)):
        battery.append((f"random_{i:04d}", s))
    return battery


def random_setups(seed: int, n: int) -> list[MeasurementSetup]:
    """Balanced setups: angles uniform, |d1|, |d2| <= w0/10, w0 log-uniform in [1 um, 1 mm]."""
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(n):
        w0 = 10.0 ** rng.uniform(-6.0, -3.0)
        d1, d2 = rng.uniform(-w0 / 10.0, w0 / 10.0, 2)
        alpha, xi, phi = rng.uniform(-math.pi, math.pi, 3)
        out.append(
            MeasurementSetup(PostSelectionAngles(alpha, xi), CouplingParams(d1, d2, phi), GaussianPointer(w0))
        )
    return out


def verify_report(seed: int = 42, cases: int = 100, grid: quadrature.QuadratureGrid | None = None) -> tuple[str, bool]:
    """Text report of the oracle comparison and whether every row passed."""
    grid = grid or quadrature.QuadratureGrid()
    lines = [
        f"# seed={seed}",
        f"# cases={cases}",
        f"# samples={grid.samples}",
        f"# half_extent_in_waists={grid.half_extent_in_waists!r}",
        f"# threshold={quadrature.FAIL_THRESHOLD!r}",
        "scenario,status,mean_rel_err,power_rel_err",
    ]
    worst = 0.0
    n_fail = 0
    for name, setup in verification_battery(seed, cases):
        rep = quadrature.compare_with_analytics(setup, grid)
        if rep.status == "FAIL":
            n_fail += 1
        if rep.status != "DARK_PORT":
            worst = max(worst, rep.max_rel_err)
        lines.append(f"{name},{rep.status},{_fmt(rep.mean_rel_err)},{_fmt(rep.power_rel_err)}")
    ok = n_fail == 0
    lines.append(f"# max_rel_err={FLOAT_FMT % worst}")
    lines.append(f"# failed={n_fail}")
    lines.append(f"# result={'PASS' if ok else 'FAIL'}")
    return "\n".join(lines) + "\n", ok


# ---------------------------------------------------------------- oam


def oam_table(
    modes: list[int],
    omega_hz: float,
    sigma_hz: float,
    points: int = DEFAULT_POINTS,
    alpha_deg: float | None = None,
    xi_deg: float = 0.0,
    phi_deg: float = 0.0,
    grid: quadrature.QuadratureGrid | None = None,
) -> Table:
    """Post-selected spectrum (offset from omega0) and its mean shift.

    Rates are given in Hz and converted with a factor 2 pi. With two modes
    and ``alpha_deg`` set, the post-selection is ``cos a |m1> + e^{i xi}
    sin a |m2>`` and ``phi`` is applied to ``m2``; otherwise every mode
    is weighted equally on input and output.
    """
    grid = grid or quadrature.QuadratureGrid()
    omega_rot = 2.0 * math.pi * omega_hz
    sigma = 2.0 * math.pi * _positive(sigma_hz, "--sigma-hz")
    if len(modes) == 2 and alpha_deg is not None:
        setup = oam.two_mode_setup(
            math.radians(alpha_deg), math.radians(xi_deg), math.radians(phi_deg), omega_rot, sigma, ms=tuple(modes)
        )
    elif alpha_deg is not None:
        raise UsageError("--alpha-deg post-selection needs exactly two modes")
    else:
        setup = oam.OamSetup(oam.balanced_modes(modes), omega_rot, GaussianPointer(sigma))
    power, mean = oam.integrate_spectrum(setup, grid)
    if power < quadrature.DARK_PORT_POWER:
        raise DarkPort(f"post-selected spectral power {power:.3e} vanishes")
    header = {
        "modes": list(modes),
        "omega_hz": float(omega_hz),
        "sigma_hz": float(sigma_hz),
        "points": points,
    }
    if alpha_deg is not None:
        header.update(alpha_deg=float(alpha_deg), xi_deg=float(xi_deg), phi_deg=float(phi_deg))
    header.update(post_selected_power=FLOAT_FMT % power, mean_shift_rad_s=FLOAT_FMT % mean)
    if len(modes) == 2 and alpha_deg is not None:
        core = oam.core_equivalent(
            math.radians(alpha_deg), math.radians(xi_deg), math.radians(phi_deg), omega_rot, sigma, ms=tuple(modes)
        )
        header["analytic_mean_shift_rad_s"] = FLOAT_FMT % analytics.mean_position(core)
    shifts = setup.shifts
    half = grid.half_extent_in_waists * sigma + 0.5 * (shifts.max() - shifts.min())
    offset = np.linspace(-half, half, points) - 0.5 * (shifts.max() + shifts.min())
    spectrum = oam.output_spectrum(setup, offset)
    rows = [[o, s] for o, s in zip(offset, spectrum)]
    return Table(header, ["omega_offset_rad_s", "spectrum"], rows)


# ---------------------------------------------------------------- parsing


def _floats(text: str) -> tuple[float, ...]:
    try:
        vals = tuple(float(t) for t in text.split(",") if t.strip())
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from exc
    if not vals:
        raise argparse.ArgumentTypeError("expected at least one number")
    return vals


def _ints(text: str) -> list[int]:
    try:
        vals = [int(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc
    if not vals:
        raise argparse.ArgumentTypeError("expected at least one mode index")
    return vals


def _scalar(v, flag: str) -> float:
    if isinstance(v, (list, tuple)):
        if len(v) != 1:
            raise UsageError(f"{flag} takes a single value here")
        v = v[0]
    return float(v)


def _vector(v, flag: str) -> tuple[float, ...]:
    return tuple(float(x) for x in v) if isinstance(v, (list, tuple)) else (float(v),)


def _positive(v: float, flag: str) -> float:
    if not v > 0:
        raise UsageError(f"{flag} must be positive, got {v!r}")
    return float(v)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="weak-interference", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def output_flags(p, formats=("csv", "tsv")):
        p.add_argument("--out", help="output file (default: stdout)")
        p.add_argument("--format", choices=formats, default=formats[0])

    def grid_flags(p):
        p.add_argument("--samples", type=int, default=quadrature.QuadratureGrid.samples)
        p.add_argument("--extent", type=float, default=quadrature.QuadratureGrid.half_extent_in_waists,
                       help="half width of the quadrature grid in waists")

    fig = sub.add_parser("figure", help="write the data behind one of the four figures")
    fig.add_argument("n", type=int, choices=(1, 2, 3, 4))
    fig.add_argument("--alpha-deg", type=_floats)
    fig.add_argument("--theta-deg", type=_floats)
    fig.add_argument("--delta-nm", type=float, help="delta1 = -delta2 (Figs. 1-3)")
    fig.add_argument("--delta-max-nm", type=float, help="upper end of the Fig. 4 shift axis")
    fig.add_argument("--waist-um", type=float)
    fig.add_argument("--points", type=int, default=DEFAULT_POINTS)
    fig.add_argument("--emit-plot", action="store_true", help="also write a gnuplot script next to --out")
    output_flags(fig)

    sw = sub.add_parser("sweep", help="all observables along alpha, theta or delta")
    sw.add_argument("--vary", choices=SWEEP_VARIABLES, required=True)
    sw.add_argument("--start", type=float, required=True)
    sw.add_argument("--stop", type=float, required=True)
    sw.add_argument("--points", type=int, default=DEFAULT_POINTS)
    sw.add_argument("--alpha-deg", type=float, default=45.0)
    sw.add_argument("--theta-deg", type=float, default=0.0)
    sw.add_argument("--delta-nm", type=float, help="shorthand for --delta1-nm X --delta2-nm -X")
    sw.add_argument("--delta1-nm", type=float, default=10.0)
    sw.add_argument("--delta2-nm", type=float, default=-10.0)
    sw.add_argument("--waist-um", type=float, default=10.0)
    sw.add_argument("--emit-plot", action="store_true")
    output_flags(sw)

    est = sub.add_parser("estimate", help="invert a measured fractional loss into |delta1 - delta2|")
    est.add_argument("--loss", type=float, help="measured dP/P (omit to report only the detection limit)")
    est.add_argument("--alpha-deg", type=float, default=45.0)
    est.add_argument("--theta-deg", type=float, default=0.0)
    est.add_argument("--waist-um", type=float, default=10.0)
    est.add_argument("--noise-floor", type=float, default=estimation.DEFAULT_NOISE_FLOOR)
    output_flags(est, formats=("table", "csv", "tsv"))

    ver = sub.add_parser("verify", help="closed forms against the quadrature oracle")
    ver.add_argument("--seed", type=int, default=42)
    ver.add_argument("--cases", type=int, default=100, help="number of random setups")
    ver.add_argument("--out")
    grid_flags(ver)

    om = sub.add_parser("oam", help="post-selected spectrum of OAM modes behind a rotating prism")
    om.add_argument("--modes", type=_ints, required=True, help="comma-separated OAM indices, e.g. 1,-1")
    om.add_argument("--omega-hz", type=float, required=True, help="rotation rate Omega / 2 pi")
    om.add_argument("--sigma-hz", type=float, default=1000.0, help="spectral width sigma / 2 pi")
    om.add_argument("--alpha-deg", type=float)
    om.add_argument("--xi-deg", type=float, default=0.0)
    om.add_argument("--phi-deg", type=float, default=0.0)
    om.add_argument("--points", type=int, default=DEFAULT_POINTS)
    om.add_argument("--emit-plot", action="store_true")
    grid_flags(om)
    output_flags(om)
    return parser


def _write(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    with open(out, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _emit(table: Table, args) -> None:
    _write(table.render(args.format), args.out)
    if getattr(args, "emit_plot", False):
        if args.out is None:
            raise UsageError("--emit-plot needs --out")
        script = Path(args.out).with_suffix(".gp")
        _write(plot_script(table, Path(args.out).name, args.format), str(script))


def _grid(args) -> quadrature.QuadratureGrid:
    try:
        return quadrature.QuadratureGrid(args.extent, args.samples)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _run(args) -> int:
    if args.command == "figure":
        params = {}
        if args.alpha_deg is not None:
            params["alpha_deg"] = args.alpha_deg
        if args.theta_deg is not None:
            params["theta_deg"] = args.theta_deg
        if args.delta_nm is not None:
            params["delta_nm"] = args.delta_nm
        if args.delta_max_nm is not None:
            params["delta_stop_nm"] = args.delta_max_nm
        if args.waist_um is not None:
            params["waist_um"] = args.waist_um
        _emit(figure_table(args.n, params, args.points), args)
        return EXIT_OK

    if args.command == "sweep":
        d1, d2 = args.delta1_nm, args.delta2_nm
        if args.delta_nm is not None:
            d1, d2 = args.delta_nm, -args.delta_nm
        table = sweep_table(args.vary, args.start, args.stop, args.points, args.alpha_deg, args.theta_deg, d1, d2, args.waist_um)
        _emit(table, args)
        return EXIT_OK

    if args.command == "estimate":
        table = estimate_table(args.loss, args.alpha_deg, args.theta_deg, args.waist_um, args.noise_floor)
        text = render_console(table) if args.format == "table" else table.render(args.format)
        _write(text, args.out)
        return EXIT_OK

    if args.command == "verify":
        if args.cases < 0:
            raise UsageError("--cases must be >= 0")
        text, ok = verify_report(args.seed, args.cases, _grid(args))
        _write(text, args.out)
        return EXIT_OK if ok else EXIT_FAIL

    if args.command == "oam":
        table = oam_table(
            args.modes, args.omega_hz, args.sigma_hz, args.points, args.alpha_deg, args.xi_deg, args.phi_deg, _grid(args)
        )
        _emit(table, args)
        return EXIT_OK

    raise UsageError(f"unknown command {args.command!r}")  # pragma: no cover


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _run(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OutOfRange as exc:
        print(f"error: out of range: {exc}", file=sys.stderr)
        return EXIT_OUT_OF_RANGE
    except NonInvertible as exc:
        print(f"error: not invertible: {exc}", file=sys.stderr)
        return EXIT_NON_INVERTIBLE
    except DarkPort as exc:
        print(f"error: dark port: {exc}", file=sys.stderr)
        return EXIT_DARK_PORT
    except (WeakInterferenceError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: cannot write output: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
