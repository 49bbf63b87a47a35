"""Extremum location, classification, and monotonic splitting of 1-d slices."""

from __future__ import annotations

import logging
import math

import numpy as np
import pytest

from wallfade.errors import MonotonicityError, ResolutionWarning
from wallfade.geometry import WallConfig
from wallfade.signal import PropagationParams, slice_power_function
from wallfade.turning import (
    LOC_TOL,
    TurningPoint,
    find_turning_points,
    monotonic_partition,
    predict_singularities,
)

WALL = WallConfig(0.5, 0.5, 0.5)
P10 = PropagationParams(k=10.0, beta=4.0)
P100 = PropagationParams(k=100.0, beta=4.0)


def sin_f(t):
    return np.sin(np.asarray(t))


def test_sin_extrema():
    pts = find_turning_points(sin_f, (0.1, 3.0 * math.pi - 0.1))
    assert len(pts) == 3
    for p, (t, v, kind) in zip(
        pts,
        [
            (math.pi / 2, 1.0, "maximum"),
            (3 * math.pi / 2, -1.0, "minimum"),
            (5 * math.pi / 2, 1.0, "maximum"),
        ],
    ):
        assert p.t == pytest.approx(t, abs=1e-9)
        assert p.value == pytest.approx(v, rel=1e-9)
        assert p.kind == kind
        # |sin''| = 1 at the crests
        assert abs(p.second_deriv) == pytest.approx(1.0, rel=1e-4)
        assert not p.degenerate


def test_quadratic_minimum():
    pts = find_turning_points(lambda t: (np.asarray(t) - 1.0) ** 2, (-1.0, 3.0))
    assert len(pts) == 1
    p = pts[0]
    assert p.t == pytest.approx(1.0, abs=1e-10)
    assert p.value == pytest.approx(0.0, abs=1e-18)
    assert p.second_deriv == pytest.approx(2.0, rel=1e-6)
    assert p.kind == "minimum"


def test_reflected_slice_k10():
    f = slice_power_function(WALL, P10, "x", 0.0)
    pts = find_turning_points(f, (0.05, 0.45), params=P10)
    got = [(p.t, p.kind, p.value) for p in pts]
    want = [
        (0.149082, "minimum", 0.233713),
        (0.338626, "maximum", 4.837016),
        (0.420330, "minimum", 4.167056),
    ]
    assert len(got) == 3
    for (t, kind, v), (tw, kw, vw) in zip(got, want):
        assert t == pytest.approx(tw, abs=1e-6)
        assert kind == kw
        assert v == pytest.approx(vw, rel=1e-5)


def test_reflected_slice_k100_thirteen_points():
    f = slice_power_function(WALL, P100, "x", 0.0)
    pts = find_turning_points(f, (0.15, 0.35), params=P100)
    assert len(pts) == 13
    locs = [
        0.157097, 0.172584, 0.188523, 0.203954, 0.219955, 0.235320, 0.251392,
        0.266679, 0.282837, 0.298030, 0.314292, 0.329370, 0.345760,
    ]
    vals = [
        1.800522, 0.235454, 1.935241, 0.346224, 2.107950, 0.489836, 2.327224,
        0.675114, 2.604696, 0.914123, 2.956217, 1.223468, 3.403568,
    ]
    for i, p in enumerate(pts):
        assert p.t == pytest.approx(locs[i], abs=1e-6)
        assert p.value == pytest.approx(vals[i], rel=1e-5)
        assert p.kind == ("maximum" if i % 2 == 0 else "minimum")
        assert (p.second_deriv < 0) == (p.kind == "maximum")
        assert not p.degenerate


def test_derivative_vanishes_at_roots():
    f = slice_power_function(WALL, P10, "x", 0.0)
    pts = find_turning_points(f, (0.05, 0.45), params=P10)
    grid = np.linspace(0.05, 0.45, 2001)
    scale = float(np.max(np.abs(f(grid))))
    h = 1e-7
    for p in pts:
        dp = (f(np.array([p.t + h])) - f(np.array([p.t - h])))[0] / (2 * h)
        assert abs(dp) <= 1e-8 * scale


def test_locations_stable_under_grid_halving():
    f = slice_power_function(WALL, P10, "x", 0.0)
    g = P10.wavelength / 50.0
    coarse = find_turning_points(f, (0.05, 0.45), grid_step=g)
    fine = find_turning_points(f, (0.05, 0.45), grid_step=g / 2.0)
    assert len(coarse) == len(fine)
    for p, q in zip(coarse, fine):
        assert abs(p.t - q.t) <= 10.0 * LOC_TOL


def test_coarse_grid_warns_and_still_brackets():
    with pytest.warns(ResolutionWarning):
        pts = find_turning_points(sin_f, (0.1, 20.0), grid_step=4.5)
    # crests within one grid step of an endpoint are dropped on top of that
    assert len(pts) == 4
    want = [3 * math.pi / 2, 5 * math.pi / 2, 7 * math.pi / 2, 9 * math.pi / 2]
    for p, t in zip(pts, want):
        assert p.t == pytest.approx(t, abs=1e-8)


def test_extremum_near_endpoint_is_dropped(caplog):
    f = lambda t: (np.asarray(t) - 0.0005) ** 2
    with caplog.at_level(logging.INFO, logger="wallfade.turning"):
        pts = find_turning_points(f, (0.0, 2.0))
    assert pts == []
    assert any("within one grid step" in r.message for r in caplog.records)


def test_degenerate_quartic_flagged():
    pts = find_turning_points(lambda t: np.asarray(t) ** 4, (-2.0, 2.0))
    assert len(pts) == 1
    p = pts[0]
    assert p.t == pytest.approx(0.0, abs=1e-9)
    assert p.value == pytest.approx(0.0, abs=1e-20)
    assert p.degenerate
    preds = predict_singularities(pts)
    assert len(preds) == 1 and preds[0].multiplicity == 1


def test_monotone_function_yields_nothing():
    assert find_turning_points(lambda t: np.exp(-np.asarray(t)), (0.0, 5.0)) == []


@pytest.mark.parametrize(
    "interval,step",
    [((1.0, 1.0), None), ((2.0, 1.0), None), ((0.0, 1.0), 0.0), ((0.0, 1.0), 0.6)],
)
def test_find_rejects_bad_arguments(interval, step):
    with pytest.raises(ValueError):
        find_turning_points(sin_f, interval, grid_step=step)


def _pt(t, value):
    return TurningPoint(t=t, value=value, second_deriv=1.0, kind="minimum")


def test_predict_collapses_shared_values():
    pts = find_turning_points(sin_f, (0.1, 3.0 * math.pi - 0.1))
    preds = predict_singularities(pts)
    assert [(round(s.value, 9), s.multiplicity) for s in preds] == [(-1.0, 2 - 1), (1.0, 2)]
    assert preds[1].locations == pytest.approx(
        (math.pi / 2, 5 * math.pi / 2), abs=1e-9
    )
    assert preds[0].value < preds[1].value


def test_predict_relative_tolerance_boundary():
    near = [_pt(0.0, 1.0), _pt(1.0, 1.0 + 5e-7)]
    merged = predict_singularities(near)
    assert len(merged) == 1 and merged[0].multiplicity == 2
    far = [_pt(0.0, 1.0), _pt(1.0, 1.01)]
    assert len(predict_singularities(far)) == 2


def test_predict_handles_zero_and_empty():
    assert predict_singularities([]) == []
    zeros = predict_singularities([_pt(0.0, 0.0), _pt(1.0, 0.0)])
    assert len(zeros) == 1 and zeros[0].multiplicity == 2


def test_y_slice_predictions():
    f = slice_power_function(WALL, P100, "y", 0.1)
    sym = find_turning_points(f, (-0.5, 0.5), params=P100)
    assert len(sym) == 3
    preds = predict_singularities(sym)
    assert [(s.multiplicity) for s in preds] == [1, 2]
    assert preds[0].value == pytest.approx(1.162565, rel=1e-5)
    assert preds[1].value == pytest.approx(2.271555, rel=1e-5)

    off = find_turning_points(f, (0.0, 0.6), params=P100)
    assert len(off) == 2
    preds = predict_singularities(off)
    assert [s.multiplicity for s in preds] == [1, 1]
    assert preds[0].value == pytest.approx(0.497788, rel=1e-5)
    assert preds[1].value == pytest.approx(2.271555, rel=1e-5)


def test_partition_sin_four_pieces():
    lo, hi = 0.1, 3.0 * math.pi - 0.1
    pts = find_turning_points(sin_f, (lo, hi))
    part = monotonic_partition(sin_f, (lo, hi), [p.t for p in pts])
    assert part.breakpoints[0] == lo and part.breakpoints[-1] == hi
    assert part.increasing == (True, False, True, False)


def test_partition_accepts_turning_point_objects():
    lo, hi = 0.1, 3.0 * math.pi - 0.1
    pts = find_turning_points(sin_f, (lo, hi))
    part = monotonic_partition(sin_f, (lo, hi), pts)
    assert len(part.increasing) == 4


def test_partition_monotone_function_single_piece():
    part = monotonic_partition(lambda t: np.exp(-np.asarray(t)), (0.0, 5.0), [])
    assert part.breakpoints == (0.0, 5.0)
    assert part.increasing == (False,)


def test_partition_k100_fourteen_pieces():
    f = slice_power_function(WALL, P100, "x", 0.0)
    pts = find_turning_points(f, (0.15, 0.35), params=P100)
    part = monotonic_partition(f, (0.15, 0.35), [p.t for p in pts])
    assert len(part.increasing) == 14
    assert part.increasing == tuple(i % 2 == 0 for i in range(14))


def test_partition_rejects_missing_turning_point():
    lo, hi = 0.1, 3.0 * math.pi - 0.1
    # omitting the crest at pi/2 leaves a non-monotone first piece
    with pytest.raises(MonotonicityError):
        monotonic_partition(sin_f, (lo, hi), [3 * math.pi / 2, 5 * math.pi / 2])


@pytest.mark.parametrize(
    "interval,points,kwargs",
    [
        ((0.0, 1.0), [0.7, 0.3], {}),
        ((0.0, 1.0), [0.0], {}),
        ((0.0, 1.0), [1.0], {}),
        ((0.0, 1.0), [math.nan], {}),
        ((1.0, 0.0), [], {}),
        ((0.0, 1.0), [], {"check_points": 1}),
    ],
)
def test_partition_rejects_bad_arguments(interval, points, kwargs):
    with pytest.raises(ValueError):
        monotonic_partition(sin_f, interval, points, **kwargs)
