"""Turning points of 1-D power slices.

Received power along a coordinate slice is smooth, so its local extrema are
the places where a uniformly random transmitter position piles up power
samples: the pushforward density behaves like (v - P(t*))^{-1/2} near the
power value of each interior extremum.  This module locates those extrema
(scan for derivative sign changes, then bisect), classifies them through the
second difference, collapses equal extremal values into predicted singular
values, and splits an interval into monotonic pieces between extrema.
"""

from __future__ import annotations

import logging
import math
import warnings
from dataclasses import dataclass
from typing import Callable, NamedTuple, Sequence

import numpy as np

from .errors import MonotonicityError, ResolutionWarning

__all__ = [
    "CURVATURE_FLOOR_REL",
    "DERIV_TOL_REL",
    "LOC_TOL",
    "MonotonicPartition",
    "PredictedSingularity",
    "TurningPoint",
    "find_turning_points",
    "monotonic_partition",
    "predict_singularities",
]

LOC_TOL = 1e-10
DERIV_TOL_REL = 1e-8
CURVATURE_FLOOR_REL = 1e-6
COLLAPSE_REL_TOL = 1e-6
_BISECT_ITERS = 80

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TurningPoint:
    """Interior extremum of a slice: location, value, curvature, and kind."""

    t: float
    value: float
    second_deriv: float
    kind: str
    degenerate: bool = False


class PredictedSingularity(NamedTuple):
    """A singular density value with the extrema that produce it."""

    value: float
    multiplicity: int
    locations: tuple[float, ...]


@dataclass(frozen=True)
class MonotonicPartition:
    """Breakpoints lo = c_0 < ... < c_n = hi and a direction per piece."""

    breakpoints: tuple[float, ...]
    increasing: tuple[bool, ...]


def _sign_change(sa: float, sb: float) -> bool:
    # a zero endpoint counts as a change (exact extremum on a node) unless
    # both ends vanish, which is a flat stretch with nothing to bracket
    if sa == 0.0 and sb == 0.0:
        return False
    return sa * sb <= 0.0


def find_turning_points(
    f: Callable[[np.ndarray], np.ndarray],
    interval: tuple[float, float],
    params=None,
    grid_step: float | None = None,
) -> list[TurningPoint]:
    """Locate interior extrema of f on the open interval.

    f must accept ndarray input.  The scan marches a grid of derivative
    estimates (central differences with step grid_step/10) and brackets sign
    changes; a midpoint derivative per cell catches pairs of changes hiding
    inside one cell, which trigger a ResolutionWarning and bracket both
    halves.  Brackets are refined by bisection on a fixed-step central
    difference, deduplicated within 2 * LOC_TOL, and classified through
    second differences with step grid_step/4.  Extrema within one grid step
    of an endpoint are dropped (logged at INFO level).

    grid_step defaults to wavelength/50 when params carries a wavenumber,
    else to 1/500 of the interval length.
    """
    lo, hi = float(interval[0]), float(interval[1])
    if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
        raise ValueError(f"invalid interval [{lo!r}, {hi!r}]")
    if grid_step is None:
        grid_step = (
            params.wavelength / 50.0 if params is not None else (hi - lo) / 500.0
        )
    if not (math.isfinite(grid_step) and 0.0 < grid_step < (hi - lo) / 2.0):
        raise ValueError(f"grid_step must lie in (0, (hi-lo)/2), got {grid_step!r}")

    h_scan = grid_step / 10.0
    n_cells = max(2, math.ceil((hi - lo - 2.0 * h_scan) / grid_step))
    nodes = np.linspace(lo + h_scan, hi - h_scan, n_cells + 1)
    mids = 0.5 * (nodes[:-1] + nodes[1:])

    def deriv(t: np.ndarray, h: float) -> np.ndarray:
        return (np.asarray(f(t + h)) - np.asarray(f(t - h))) / (2.0 * h)

    s_nodes = np.sign(deriv(nodes, h_scan))
    s_mids = np.sign(deriv(mids, h_scan))
    scale = float(np.max(np.abs(np.asarray(f(nodes)))))

    brackets: list[tuple[float, float]] = []
    for i in range(n_cells):
        sa, sm, sb = float(s_nodes[i]), float(s_mids[i]), float(s_nodes[i + 1])
        left = _sign_change(sa, sm)
        right = _sign_change(sm, sb)
        if left and right and sm != 0.0:
            warnings.warn(
                f"two derivative sign changes inside one grid cell near "
                f"t={mids[i]:.6g}; reduce grid_step",
                ResolutionWarning,
                stacklevel=2,
            )
        if left:
            brackets.append((nodes[i], mids[i]))
        if right and sm != 0.0:
            brackets.append((mids[i], nodes[i + 1]))

    if not brackets:
        return []

    # refinement derivative uses a fixed step so the refined location does
    # not move when the scan grid changes
    h_ref = 1e-6 * (hi - lo)
    b_lo = np.array([b[0] for b in brackets])
    b_hi = np.array([b[1] for b in brackets])
    g_lo = deriv(b_lo, h_ref)
    g_hi = deriv(b_hi, h_ref)
    # the scan step and the refinement step can disagree about an exact zero
    # at a node; keep only brackets the refinement derivative also crosses,
    # else bisection would drift to an endpoint that is no extremum
    valid = (g_lo * g_hi <= 0.0) & ~((g_lo == 0.0) & (g_hi == 0.0))
    if not valid.any():
        return []
    b_lo = b_lo[valid]
    b_hi = b_hi[valid]
    g_lo = g_lo[valid]
    for _ in range(_BISECT_ITERS):
        mid = 0.5 * (b_lo + b_hi)
        g_mid = deriv(mid, h_ref)
        take_left = g_lo * g_mid <= 0.0
        b_hi = np.where(take_left, mid, b_hi)
        b_lo = np.where(take_left, b_lo, mid)
        g_lo = np.where(take_left, g_lo, g_mid)
    roots = np.sort(0.5 * (b_lo + b_hi))

    # adjacent brackets can straddle one zero crossing (a node derivative
    # that is exactly zero, or the float noise band of a symmetric slice),
    # leaving twins up to the noise band apart; genuine extrema are at least
    # a grid cell apart under the resolution precondition, so merging within
    # half a scan step collapses twins without ever joining real neighbours
    merge_tol = max(2.0 * LOC_TOL, 0.5 * h_scan)
    merged: list[float] = []
    cluster: list[float] = [float(roots[0])]
    for t in roots[1:]:
        if t - cluster[-1] <= merge_tol:
            cluster.append(float(t))
        else:
            merged.append(sum(cluster) / len(cluster))
            cluster = [float(t)]
    merged.append(sum(cluster) / len(cluster))

    kept: list[float] = []
    for t in merged:
        if t < lo + grid_step or t > hi - grid_step:
            logger.info("extremum at t=%.12g within one grid step of an endpoint", t)
        else:
            kept.append(t)
    if not kept:
        return []

    t_arr = np.asarray(kept)
    # curvature step is tied to the oscillation scale, not the scan grid
    h2 = params.wavelength / 200.0 if params is not None else grid_step / 4.0
    values = np.asarray(f(t_arr), dtype=np.float64)
    second = (
        np.asarray(f(t_arr - h2)) - 2.0 * values + np.asarray(f(t_arr + h2))
    ) / h2**2
    third = (
        np.asarray(f(t_arr + 2.0 * h2))
        - 2.0 * np.asarray(f(t_arr + h2))
        + 2.0 * np.asarray(f(t_arr - h2))
        - np.asarray(f(t_arr - 2.0 * h2))
    ) / (2.0 * h2**3)

    floor = CURVATURE_FLOOR_REL * scale
    points = []
    for t, v, s2, s3 in zip(kept, values, second, third):
        degenerate = bool(abs(s2) <= floor)
        if degenerate:
            kind = "minimum" if s3 > 0.0 else "maximum"
        else:
            kind = "minimum" if s2 > 0.0 else "maximum"
        points.append(
            TurningPoint(
                t=float(t),
                value=float(v),
                second_deriv=float(s2),
                kind=kind,
                degenerate=degenerate,
            )
        )
    return points


def predict_singularities(
    points: Sequence[TurningPoint], collapse_rel_tol: float = COLLAPSE_REL_TOL
) -> list[PredictedSingularity]:
    """Collapse extremal values into distinct predicted singular values.

    Values within collapse_rel_tol (relative) of each other merge into one
    prediction whose value is the cluster mean and whose multiplicity counts
    the contributing extrema.
    """
    if not points:
        return []
    ordered = sorted(points, key=lambda p: p.value)
    clusters: list[list[TurningPoint]] = [[ordered[0]]]
    for p in ordered[1:]:
        ref = clusters[-1][0].value
        denom = max(abs(p.value), abs(ref))
        if denom == 0.0 or abs(p.value - ref) <= collapse_rel_tol * denom:
            clusters[-1].append(p)
        else:
            clusters.append([p])
    return [
        PredictedSingularity(
            value=sum(p.value for p in c) / len(c),
            multiplicity=len(c),
            locations=tuple(sorted(p.t for p in c)),
        )
        for c in clusters
    ]


def monotonic_partition(
    f: Callable[[np.ndarray], np.ndarray],
    interval: tuple[float, float],
    points: Sequence[float],
    check_points: int = 1000,
) -> MonotonicPartition:
    """Split the interval at the given turning locations into monotonic pieces.

    Each piece's direction comes from a central difference at its midpoint; a
    strict sampled monotonicity check (check_points per piece) rejects wrong
    partitions, tolerating only float noise below 1e-12 of the value scale.
    """
    lo, hi = float(interval[0]), float(interval[1])
    if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
        raise ValueError(f"invalid interval [{lo!r}, {hi!r}]")
    if check_points < 2:
        raise ValueError(f"check_points must be >= 2, got {check_points!r}")
    ts = [float(getattr(t, "t", t)) for t in points]
    if any(not math.isfinite(t) for t in ts):
        raise ValueError("turning locations must be finite")
    if any(t2 <= t1 for t1, t2 in zip(ts, ts[1:])):
        raise ValueError("turning locations must be strictly increasing")
    if ts and not (lo < ts[0] and ts[-1] < hi):
        raise ValueError("turning locations must lie strictly inside the interval")

    breakpoints = (lo, *ts, hi)
    h_ref = 1e-6 * (hi - lo)
    increasing: list[bool] = []
    for c0, c1 in zip(breakpoints, breakpoints[1:]):
        mid = 0.5 * (c0 + c1)
        slope = (float(np.asarray(f(np.array([mid + h_ref])))[0])
                 - float(np.asarray(f(np.array([mid - h_ref])))[0])) / (2.0 * h_ref)
        increasing.append(slope > 0.0)
        u = np.linspace(c0, c1, check_points)
        fv = np.asarray(f(u), dtype=np.float64)
        diffs = np.diff(fv)
        noise = 1e-12 * max(1.0, float(np.max(np.abs(fv))))
        bad = diffs < -noise if increasing[-1] else diffs > noise
        if bad.any():
            j = int(np.argmax(bad))
            raise MonotonicityError(
                f"piece [{c0:.9g}, {c1:.9g}] is not "
                f"{'increasing' if increasing[-1] else 'decreasing'} near "
                f"t={u[j]:.9g}"
            )
    return MonotonicPartition(breakpoints=breakpoints, increasing=tuple(increasing))
