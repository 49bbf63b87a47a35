"""Command-line interface.

Five subcommands: power-profile and surface-bound write CSV slices,
turning-points writes a JSON extremum report, sample-density writes a
histogram CSV (plus an optional peak-match JSON and raw sample dump), and
validate-lerch writes a JSON comparison of the direct image series against
the closed form.  Exit codes: 0 success, 2 bad configuration or arguments,
3 numerical or runtime failure.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .config import ExperimentConfig, config_from_file
from .density import build_histogram, detect_peaks, match_peaks
from .errors import (
    ConvergenceError,
    DegenerateRangeError,
    MonotonicityError,
    NearSingularError,
    OutOfRangeError,
)
from .geometry import TxLocation
from .montecarlo import sample_location_power, sample_phase_power
from .signal import (
    power_profile,
    reflected_signal_sum,
    signal_lerch_closed_form,
    slice_power_function,
    surface_bound_grid,
)
from .turning import find_turning_points, predict_singularities

_RUN_ERRORS = (
    ConvergenceError,
    DegenerateRangeError,
    MonotonicityError,
    NearSingularError,
    OutOfRangeError,
    ValueError,
    ArithmeticError,
)


def _fmt(x) -> str:
    # repr of a Python float is the shortest exact round trip, so re-runs
    # are byte-identical
    return repr(float(x))


def _write_text(path: str | None, text: str) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _json_text(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _run_power_profile(cfg: ExperimentConfig) -> None:
    profile = power_profile(
        cfg.wall_config(), cfg.propagation(), cfg.slice_spec, cfg.include_los
    )
    lines = ["coordinate,power"]
    lines += [f"{_fmt(c)},{_fmt(p)}" for c, p in profile]
    _write_text(cfg.out, "\n".join(lines) + "\n")


def _run_surface_bound(cfg: ExperimentConfig) -> None:
    wall = cfg.wall_config()
    prop = cfg.propagation()
    spec = cfg.slice_spec
    grid = spec.grid()
    f_total = slice_power_function(wall, prop, spec.axis, spec.fixed, include_los=True)
    power = f_total(grid)
    x, y = (grid, spec.fixed) if spec.axis == "x" else (spec.fixed, grid)
    bound = surface_bound_grid(wall, prop, x, y)
    lines = ["coordinate,power,bound"]
    lines += [
        f"{_fmt(c)},{_fmt(p)},{_fmt(q)}" for c, p, q in zip(grid, power, bound)
    ]
    _write_text(cfg.out, "\n".join(lines) + "\n")


def _turning_analysis(cfg, wall, prop, axis, fixed, interval, include_los):
    f = slice_power_function(wall, prop, axis, fixed, include_los)
    params_arg = prop if cfg.k > 0.0 else None
    points = find_turning_points(f, interval, params_arg)
    return points, predict_singularities(points)


def _run_turning_points(cfg: ExperimentConfig) -> None:
    spec = cfg.slice_spec
    points, predicted = _turning_analysis(
        cfg,
        cfg.wall_config(),
        cfg.propagation(),
        spec.axis,
        spec.fixed,
        (spec.lo, spec.hi),
        cfg.include_los,
    )
    report = {
        "axis": spec.axis,
        "fixed": spec.fixed,
        "interval": [spec.lo, spec.hi],
        "turning_points": [
            {
                "t": p.t,
                "value": p.value,
                "second_deriv": p.second_deriv,
                "kind": p.kind,
                "degenerate": p.degenerate,
            }
            for p in points
        ],
        "predicted_singular_values": [
            {
                "value": s.value,
                "multiplicity": s.multiplicity,
                "locations": list(s.locations),
            }
            for s in predicted
        ],
    }
    _write_text(cfg.out, _json_text(report))


def _sample_predicted(cfg: ExperimentConfig, wall, prop):
    s = cfg.sample
    if s.model != "location":
        return []
    def varies(iv):
        return iv is not None and iv[0] < iv[1]
    if varies(s.x_interval) and not varies(s.y_interval):
        axis, fixed, interval = "x", s.y, s.x_interval
    elif varies(s.y_interval) and not varies(s.x_interval):
        axis, fixed, interval = "y", s.x, s.y_interval
    else:
        # nothing varies, or both coordinates do: no 1-D slice to analyze
        return []
    _, predicted = _turning_analysis(cfg, wall, prop, axis, fixed, interval, False)
    return predicted


def _run_sample_density(cfg: ExperimentConfig) -> None:
    wall = cfg.wall_config()
    prop = cfg.propagation()
    settings = cfg.sample
    spec = settings.to_spec(cfg.seed)
    if settings.model == "location":
        samples = sample_location_power(wall, prop, spec)
    else:
        samples = sample_phase_power(wall, prop, settings.x, spec)
    hist = build_histogram(samples, settings.bins)
    predicted = _sample_predicted(cfg, wall, prop)
    detected = detect_peaks(hist, settings.prominence_factor)
    report = match_peaks(detected, [p.value for p in predicted], hist)

    lines = ["bin_left,bin_right,count,density"]
    lines += [
        f"{_fmt(left)},{_fmt(right)},{int(count)},{_fmt(dens)}"
        for left, right, count, dens in zip(
            hist.edges[:-1], hist.edges[1:], hist.counts, hist.density
        )
    ]
    _write_text(cfg.out, "\n".join(lines) + "\n")

    if cfg.peaks_out is not None:
        payload = {
            "bin_width": hist.bin_width,
            "sample_count": hist.sample_count,
            "detected": [[c, h] for c, h in detected],
            "predicted_singular_values": [
                {
                    "value": p.value,
                    "multiplicity": p.multiplicity,
                    "locations": list(p.locations),
                }
                for p in predicted
            ],
            "matches": [
                {
                    "center": m.center,
                    "height": m.height,
                    "predicted_value": m.predicted_value,
                    "distance": m.distance,
                }
                for m in report.matches
            ],
            "unmatched_detected": [[c, h] for c, h in report.unmatched_detected],
            "unmatched_predicted": list(report.unmatched_predicted),
        }
        _write_text(cfg.peaks_out, _json_text(payload))

    if cfg.dump_samples is not None:
        if cfg.dump_samples.endswith(".csv"):
            rows = "\n".join(_fmt(v) for v in samples)
            _write_text(cfg.dump_samples, "power\n" + rows + "\n")
        else:
            samples.astype("<f8").tofile(cfg.dump_samples)


def _run_validate_lerch(cfg: ExperimentConfig) -> None:
    wall = cfg.wall_config()
    check = cfg.lerch_check
    grid = np.linspace(check.lo, check.hi, check.points)
    worst = {"deviation": 0.0, "x": float(grid[0]), "k": float(check.k_values[0])}
    for k in check.k_values:
        prop = cfg.propagation()
        prop = type(prop)(k=k, beta=prop.beta, eps_series=prop.eps_series)
        for x in grid:
            tx = TxLocation(float(x), 0.0)
            direct = reflected_signal_sum(wall, tx, prop).amplitude
            closed = signal_lerch_closed_form(wall.d, tx, prop, cfg.kappa)
            deviation = abs(closed - direct) / max(abs(direct), 1e-300)
            if deviation > worst["deviation"]:
                worst = {"deviation": deviation, "x": float(x), "k": float(k)}
    report = {
        "grid": {"lo": check.lo, "hi": check.hi, "points": check.points},
        "k_values": list(check.k_values),
        "eps_series": cfg.eps_series,
        "max_relative_deviation": worst["deviation"],
        "worst_x": worst["x"],
        "worst_k": worst["k"],
    }
    _write_text(cfg.out, _json_text(report))


_RUNNERS = {
    "power-profile": _run_power_profile,
    "turning-points": _run_turning_points,
    "sample-density": _run_sample_density,
    "validate-lerch": _run_validate_lerch,
    "surface-bound": _run_surface_bound,
}


def _add_common(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--config", default=None, metavar="PATH",
                    help="JSON config file; explicit flags override its values")
    sp.add_argument("--a", type=float, default=None, help="right wall position")
    sp.add_argument("--b", type=float, default=None, help="left wall position")
    sp.add_argument("--kappa", type=float, default=None,
                    help="power reflection coefficient in [0, 1)")
    sp.add_argument("--k", type=float, default=None, help="wavenumber")
    sp.add_argument("--beta", type=float, default=None,
                    help="attenuation exponent")
    sp.add_argument("--eps-series", type=float, default=None, dest="eps_series",
                    help="image-series stop tolerance")
    sp.add_argument("--seed", type=int, default=None, help="sampling seed")
    sp.add_argument("--out", default=None, metavar="PATH",
                    help="output file (stdout when omitted)")


def _add_slice(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--axis", choices=("x", "y"), default=None,
                    help="coordinate swept by the slice")
    sp.add_argument("--fixed", type=float, default=None,
                    help="value of the non-swept coordinate")
    sp.add_argument("--lo", type=float, default=None, help="slice start")
    sp.add_argument("--hi", type=float, default=None, help="slice end")
    sp.add_argument("--points", type=int, default=None, help="grid points")
    sp.add_argument("--include-los", action="store_const", const=True,
                    default=None, dest="include_los",
                    help="add the direct path to the reflected sum")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wallfade",
        description="Received power between two reflecting walls.",
    )
    sub = parser.add_subparsers(dest="kind", required=True)

    sp = sub.add_parser("power-profile", help="power along a coordinate slice (CSV)")
    _add_common(sp)
    _add_slice(sp)

    sp = sub.add_parser("turning-points",
                        help="slice extrema and predicted singular values (JSON)")
    _add_common(sp)
    _add_slice(sp)

    sp = sub.add_parser("surface-bound",
                        help="total power and its phase-free upper bound (CSV)")
    _add_common(sp)
    _add_slice(sp)

    sp = sub.add_parser("sample-density",
                        help="histogram of sampled received power (CSV)")
    _add_common(sp)
    sp.add_argument("--model", choices=("location", "phase"), default=None)
    sp.add_argument("--x", type=float, default=None, help="base x (phase model: axis distance)")
    sp.add_argument("--y", type=float, default=None, help="base y")
    sp.add_argument("--samples", type=int, default=None, dest="n_samples")
    sp.add_argument("--x-lo", type=float, default=None)
    sp.add_argument("--x-hi", type=float, default=None)
    sp.add_argument("--y-lo", type=float, default=None)
    sp.add_argument("--y-hi", type=float, default=None)
    sp.add_argument("--bins", type=int, default=None)
    sp.add_argument("--prominence", type=float, default=None, dest="prominence_factor")
    sp.add_argument("--peaks-out", default=None, metavar="PATH",
                    help="peak-match report JSON")
    sp.add_argument("--dump-samples", default=None, metavar="PATH",
                    help="raw samples; .csv for text, else little-endian float64")

    sp = sub.add_parser("validate-lerch",
                        help="compare the image series against the closed form (JSON)")
    _add_common(sp)
    sp.add_argument("--lo", type=float, default=None, help="first |x| on the axis")
    sp.add_argument("--hi", type=float, default=None, help="last |x| on the axis")
    sp.add_argument("--points", type=int, default=None)
    sp.add_argument("--k-values", default=None, dest="k_values",
                    help="comma-separated wavenumbers")
    return parser


def _merge_flag(data: dict, key: str, value) -> None:
    if value is not None:
        data[key] = value


def _build_config(args: argparse.Namespace) -> ExperimentConfig:
    data: dict = {}
    if args.config is not None:
        with open(args.config, encoding="utf-8") as fh:
            data = json.load(fh)
        if not isinstance(data, dict):
            raise ValueError("config file must hold a JSON object")
    data["kind"] = args.kind
    for key in ("a", "b", "kappa", "k", "beta", "eps_series", "seed", "out"):
        _merge_flag(data, key, getattr(args, key))

    if args.kind in ("power-profile", "turning-points", "surface-bound"):
        section = dict(data.get("slice") or {})
        for key in ("axis", "fixed", "lo", "hi", "points"):
            _merge_flag(section, key, getattr(args, key))
        section.setdefault("axis", "x")
        section.setdefault("fixed", 0.0)
        for key in ("lo", "hi"):
            if key not in section:
                raise ValueError(f"slice needs --{key}")
        section.setdefault("points", 201)
        data["slice"] = section
        _merge_flag(data, "include_los", args.include_los)
    elif args.kind == "sample-density":
        section = dict(data.get("sample") or {})
        for key in ("model", "x", "y", "n_samples", "bins", "prominence_factor"):
            _merge_flag(section, key, getattr(args, key))
        for axis in ("x", "y"):
            lo = getattr(args, f"{axis}_lo")
            hi = getattr(args, f"{axis}_hi")
            if (lo is None) != (hi is None):
                raise ValueError(f"--{axis}-lo and --{axis}-hi must be given together")
            if lo is not None:
                section[f"{axis}_interval"] = [lo, hi]
        data["sample"] = section
        _merge_flag(data, "peaks_out", args.peaks_out)
        _merge_flag(data, "dump_samples", args.dump_samples)
    elif args.kind == "validate-lerch":
        section = dict(data.get("lerch") or {})
        for key in ("lo", "hi", "points"):
            _merge_flag(section, key, getattr(args, key))
        if args.k_values is not None:
            section["k_values"] = [float(v) for v in args.k_values.split(",")]
        data["lerch"] = section

    try:
        return ExperimentConfig.from_dict(data)
    except TypeError as exc:
        raise ValueError(str(exc)) from exc


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        cfg = _build_config(args)
    except (ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        print(f"wallfade: configuration error: {exc}", file=sys.stderr)
        return 2
    try:
        _RUNNERS[cfg.kind](cfg)
    except _RUN_ERRORS as exc:
        print(f"wallfade: {exc}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
