"""Received-power densities and their singular structure.

A random transmitter position U pushed through a smooth power slice g yields
a received-power density f_V(v) = sum over preimages of f_U(g^{-1}(v)) /
|g'(g^{-1}(v))|.  Interior extrema of g make the derivative vanish, so f_V
blows up like an inverse square root at each extremal power value; near a
local minimum t* the local law is

    F(v) ~ (2 / |interval|) sqrt(2 / g''(t*)) sqrt(v - g(t*)).

This module evaluates pushforward densities on monotonic pieces, provides
the fold asymptotics, and builds/compares histograms against the predicted
singular values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple, Sequence

import numpy as np

from .errors import DegenerateRangeError, NearSingularError, OutOfRangeError
from .turning import MonotonicPartition, TurningPoint

__all__ = [
    "DEFAULT_PROMINENCE",
    "DERIV_FLOOR",
    "EXCLUSION_BIN_RADIUS",
    "Histogram",
    "MonotonicPiece",
    "PeakMatch",
    "PeakReport",
    "asymptotic_density",
    "asymptotic_distribution",
    "build_histogram",
    "detect_peaks",
    "match_peaks",
    "pieces_from_partition",
    "pushforward_density",
    "pushforward_density_monotone",
    "uniform_density",
]

DERIV_FLOOR = 1e-12
IMAGE_SLACK_REL = 1e-10
EXCLUSION_BIN_RADIUS = 2
DEFAULT_PROMINENCE = 3.0
_INVERT_TOL = 1e-12


def _scalar(f: Callable, u: float) -> float:
    return float(np.asarray(f(np.array([u])))[0])


@dataclass(frozen=True)
class MonotonicPiece:
    """A slice restricted to an interval where it is strictly monotonic."""

    f: Callable[[np.ndarray], np.ndarray]
    lo: float
    hi: float
    increasing: bool

    def image(self) -> tuple[float, float]:
        """Value range (vmin, vmax) attained on the closed piece."""
        va = _scalar(self.f, self.lo)
        vb = _scalar(self.f, self.hi)
        return (va, vb) if va <= vb else (vb, va)

    def _slack(self, vmin: float, vmax: float) -> float:
        # float evaluation at a breakpoint wobbles at relative rounding
        # level, so image membership uses a closed interval with slack
        return IMAGE_SLACK_REL * (1.0 + max(abs(vmin), abs(vmax)))

    def contains_value(self, v: float) -> bool:
        vmin, vmax = self.image()
        slack = self._slack(vmin, vmax)
        return vmin - slack <= v <= vmax + slack

    def invert(self, v: float) -> float:
        """Preimage of v by bisection to absolute tolerance 1e-12."""
        vmin, vmax = self.image()
        slack = self._slack(vmin, vmax)
        if not vmin - slack <= v <= vmax + slack:
            raise OutOfRangeError(
                f"value {v!r} outside the piece image [{vmin!r}, {vmax!r}]"
            )
        lo, hi = self.lo, self.hi
        while hi - lo > _INVERT_TOL:
            mid = 0.5 * (lo + hi)
            if (_scalar(self.f, mid) < v) == self.increasing:
                lo = mid
            else:
                hi = mid
        return 0.5 * (lo + hi)

    def deriv(self, u: float) -> float:
        """Symmetric central difference, step 1e-6 of the piece width.

        The window is not clamped to the piece: a symmetric window reports
        the true local slope next to a parabolic endpoint (the quadratic
        terms cancel), which is what the near-singular floor keys on.  The
        slice function must therefore tolerate arguments one step beyond
        the ends.
        """
        h = 1e-6 * (self.hi - self.lo)
        return (_scalar(self.f, u + h) - _scalar(self.f, u - h)) / (2.0 * h)


def pieces_from_partition(
    partition: MonotonicPartition, f: Callable[[np.ndarray], np.ndarray]
) -> list[MonotonicPiece]:
    return [
        MonotonicPiece(f=f, lo=c0, hi=c1, increasing=inc)
        for c0, c1, inc in zip(
            partition.breakpoints, partition.breakpoints[1:], partition.increasing
        )
    ]


def pushforward_density_monotone(
    piece: MonotonicPiece, f_u: Callable, v: float
) -> float:
    """Density of g(U) at v when U has density f_u and g is the monotonic piece.

    Raises OutOfRangeError outside the piece image and NearSingularError when
    the slice derivative at the preimage is below DERIV_FLOOR.
    """
    u = piece.invert(v)
    slope = piece.deriv(u)
    if abs(slope) <= DERIV_FLOOR:
        raise NearSingularError(
            f"slice derivative {slope!r} at preimage {u!r} is below {DERIV_FLOOR}"
        )
    return float(np.asarray(f_u(u))) / abs(slope)


def pushforward_density(
    partition: MonotonicPartition,
    f: Callable[[np.ndarray], np.ndarray],
    f_u: Callable,
    v: float,
) -> float:
    """Total pushforward density at v, summed over pieces whose image contains v.

    Returns 0.0 when no piece attains v (outside the support).
    """
    total = 0.0
    hit = False
    for piece in pieces_from_partition(partition, f):
        if piece.contains_value(v):
            total += pushforward_density_monotone(piece, f_u, v)
            hit = True
    return total if hit else 0.0


def _check_fold_args(
    t_prev: float, t_next: float, point: TurningPoint
) -> None:
    if not t_prev < point.t < t_next:
        raise ValueError(
            f"turning location {point.t!r} must lie inside ({t_prev!r}, {t_next!r})"
        )
    if not point.second_deriv > 0.0:
        raise ValueError(
            f"fold asymptotics need positive curvature, got {point.second_deriv!r}"
        )


def asymptotic_distribution(
    t_prev: float, t_next: float, point: TurningPoint, v: float
) -> float:
    """Local law of P(g(U) <= v) just above the value of a local minimum."""
    _check_fold_args(t_prev, t_next, point)
    if v < point.value:
        raise ValueError(f"v={v!r} below the minimum value {point.value!r}")
    return (
        2.0
        / (t_next - t_prev)
        * math.sqrt(2.0 / point.second_deriv)
        * math.sqrt(v - point.value)
    )


def asymptotic_density(
    t_prev: float, t_next: float, point: TurningPoint, v: float
) -> float:
    """Inverse square-root density just above the value of a local minimum."""
    _check_fold_args(t_prev, t_next, point)
    if not v > point.value:
        raise ValueError(f"v={v!r} must exceed the minimum value {point.value!r}")
    return (
        1.0
        / (t_next - t_prev)
        * math.sqrt(2.0 / point.second_deriv)
        / math.sqrt(v - point.value)
    )


@dataclass(frozen=True)
class Histogram:
    """Equal-width histogram with densities normalized to unit total mass."""

    edges: np.ndarray
    counts: np.ndarray
    density: np.ndarray
    sample_count: int

    @property
    def bin_width(self) -> float:
        return float(self.edges[1] - self.edges[0])

    @property
    def centers(self) -> np.ndarray:
        return 0.5 * (self.edges[:-1] + self.edges[1:])


def build_histogram(
    samples,
    bins: int = 200,
    value_range: tuple[float, float] | None = None,
) -> Histogram:
    """Histogram samples into equal-width bins; the top edge closes the last bin.

    sample_count is the number of samples inside the range; densities are
    normalized so that sum(density * width) = 1.
    """
    arr = np.asarray(samples, dtype=np.float64).ravel()
    if arr.size == 0:
        raise ValueError("no samples")
    if not np.all(np.isfinite(arr)):
        raise ValueError("samples must be finite")
    if bins < 1:
        raise ValueError(f"bins must be >= 1, got {bins!r}")
    if value_range is None:
        lo, hi = float(arr.min()), float(arr.max())
        if lo == hi:
            raise DegenerateRangeError(f"all samples equal {lo!r}")
    else:
        lo, hi = float(value_range[0]), float(value_range[1])
        if not lo < hi:
            raise DegenerateRangeError(f"empty range [{lo!r}, {hi!r}]")
    counts, edges = np.histogram(arr, bins=bins, range=(lo, hi))
    total = int(counts.sum())
    if total == 0:
        raise ValueError("no samples fall inside the range")
    density = counts / (total * np.diff(edges))
    return Histogram(edges=edges, counts=counts, density=density, sample_count=total)


def detect_peaks(
    hist: Histogram, prominence_factor: float = DEFAULT_PROMINENCE
) -> list[tuple[float, float]]:
    """Bins that strictly dominate their two neighbours on each side and
    exceed prominence_factor times the median density.

    Returns (bin center, density) pairs in ascending center order.
    """
    if not prominence_factor > 0.0:
        raise ValueError(f"prominence_factor must be positive, got {prominence_factor!r}")
    density = hist.density
    centers = hist.centers
    threshold = prominence_factor * float(np.median(density))
    peaks: list[tuple[float, float]] = []
    n = density.size
    for i in range(n):
        here = density[i]
        if not here > threshold:
            continue
        lo = max(0, i - 2)
        hi = min(n, i + 3)
        neighbours = [density[j] for j in range(lo, hi) if j != i]
        if all(here > nb for nb in neighbours):
            peaks.append((float(centers[i]), float(here)))
    return peaks


class PeakMatch(NamedTuple):
    center: float
    height: float
    predicted_value: float
    distance: float


@dataclass(frozen=True)
class PeakReport:
    """Greedy nearest-neighbour matching of detected peaks to predicted values."""

    matches: tuple[PeakMatch, ...]
    unmatched_detected: tuple[tuple[float, float], ...]
    unmatched_predicted: tuple[float, ...]


def match_peaks(
    detected: Sequence[tuple[float, float]],
    predicted: Sequence[float],
    hist: Histogram,
) -> PeakReport:
    """Pair detected peaks with predicted singular values within one bin width.

    Greedy on ascending distance; each peak and each prediction matches at
    most once.
    """
    cutoff = hist.bin_width
    candidates = sorted(
        (abs(det[0] - pred), i, j)
        for i, det in enumerate(detected)
        for j, pred in enumerate(predicted)
    )
    used_det: set[int] = set()
    used_pred: set[int] = set()
    matches: list[PeakMatch] = []
    for dist, i, j in candidates:
        if dist > cutoff:
            break
        if i in used_det or j in used_pred:
            continue
        used_det.add(i)
        used_pred.add(j)
        matches.append(
            PeakMatch(
                center=float(detected[i][0]),
                height=float(detected[i][1]),
                predicted_value=float(predicted[j]),
                distance=float(dist),
            )
        )
    matches.sort(key=lambda m: m.center)
    return PeakReport(
        matches=tuple(matches),
        unmatched_detected=tuple(
            (float(c), float(h))
            for i, (c, h) in enumerate(detected)
            if i not in used_det
        ),
        unmatched_predicted=tuple(
            float(p) for j, p in enumerate(predicted) if j not in used_pred
        ),
    )


def uniform_density(lo: float, hi: float) -> Callable:
    """Density of the uniform law on [lo, hi], vector-safe."""
    if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
        raise ValueError(f"invalid uniform support [{lo!r}, {hi!r}]")
    height = 1.0 / (hi - lo)

    def f_u(u):
        u = np.asarray(u, dtype=np.float64)
        out = np.where((u >= lo) & (u <= hi), height, 0.0)
        return float(out) if out.ndim == 0 else out

    return f_u
