"""Monte Carlo sampling of received power.

Two randomization models:

* location: the transmitter position is drawn uniformly from an axis-aligned
  box (either coordinate may instead be held fixed) and the reflected-series
  power is evaluated exactly at each draw;
* phase: the transmitter stays fixed while the arrival phases of the two
  image families are replaced by one shared uniform pair (U, V), U
  independent of V, giving |C_R e^{jU} + C_L e^{jV}|^2 with deterministic
  ray-sum coefficients.

Sampling is chunked, and every chunk derives its own generator from the
spec seed and the chunk index, so results are reproducible and independent
of the chunk size actually used.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import signal as _signal
from .geometry import TxLocation, WallConfig, image_distance_xy
from .signal import PropagationParams, reflected_terms

__all__ = [
    "CHUNK",
    "SampleSpec",
    "ks_uniform_distance",
    "phase_ray_coefficients",
    "phase_wrap_statistics",
    "sample_location_power",
    "sample_phase_power",
]

CHUNK = 1 << 16
_TWO_PI = 2.0 * math.pi
_MODELS = ("location", "phase")


@dataclass(frozen=True)
class SampleSpec:
    """What to randomize, how many draws, and the seed.

    An interval of zero width is allowed and pins that coordinate to its
    single value while still consuming draws, so sample streams stay aligned
    across width sweeps.  A coordinate with no interval is held at the base
    location and consumes no draws.
    """

    model: str
    base: TxLocation
    n_samples: int
    seed: int
    x_interval: tuple[float, float] | None = None
    y_interval: tuple[float, float] | None = None

    def __post_init__(self) -> None:
        if self.model not in _MODELS:
            raise ValueError(f"model must be one of {_MODELS}, got {self.model!r}")
        if self.n_samples < 1:
            raise ValueError(f"n_samples must be >= 1, got {self.n_samples!r}")
        if not (isinstance(self.seed, int) and self.seed >= 0):
            raise ValueError(f"seed must be a non-negative integer, got {self.seed!r}")
        for name in ("x_interval", "y_interval"):
            iv = getattr(self, name)
            if iv is None:
                continue
            lo, hi = float(iv[0]), float(iv[1])
            if not (math.isfinite(lo) and math.isfinite(hi) and lo <= hi):
                raise ValueError(f"{name} must be ordered and finite, got {iv!r}")


def _chunk_rng(seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(index,)))


def _chunk_sizes(n: int):
    index = 0
    start = 0
    while start < n:
        size = min(CHUNK, n - start)
        yield index, start, size
        index += 1
        start += size


def _draw_positions(
    spec: SampleSpec, rng: np.random.Generator, size: int
) -> tuple[np.ndarray, np.ndarray]:
    # x is always drawn before y within a chunk
    if spec.x_interval is not None:
        x = rng.uniform(spec.x_interval[0], spec.x_interval[1], size)
    else:
        x = np.full(size, spec.base.x)
    if spec.y_interval is not None:
        y = rng.uniform(spec.y_interval[0], spec.y_interval[1], size)
    else:
        y = np.full(size, spec.base.y)
    return x, y


def _check_x_range(config: WallConfig, spec: SampleSpec) -> None:
    if spec.x_interval is not None:
        lo, hi = spec.x_interval
        if not (-config.b < lo and hi < config.a):
            raise ValueError(
                f"x interval [{lo!r}, {hi!r}] is not strictly between the walls "
                f"(-{config.b!r}, {config.a!r})"
            )
    elif not config.contains(spec.base.x):
        raise ValueError(f"base x={spec.base.x!r} is not strictly between the walls")


def sample_location_power(
    config: WallConfig, params: PropagationParams, spec: SampleSpec
) -> np.ndarray:
    """Reflected-series power at n_samples random transmitter positions."""
    if spec.model != "location":
        raise ValueError(f"location model required, got {spec.model!r}")
    _check_x_range(config, spec)
    out = np.empty(spec.n_samples, dtype=np.float64)
    for index, start, size in _chunk_sizes(spec.n_samples):
        x, y = _draw_positions(spec, _chunk_rng(spec.seed, index), size)
        amp, _ = _signal.reflected_amplitude_grid(config, params, x, y)
        out[start : start + size] = np.abs(amp) ** 2
    return out


def phase_ray_coefficients(
    config: WallConfig, tx: TxLocation, params: PropagationParams
) -> tuple[float, float]:
    """Signed attenuation sums (C_R, C_L) of the two image families."""
    c_r = 0.0
    c_l = 0.0
    for term in reflected_terms(config, tx, params):
        c_r += term.coefficient * term.attenuation_right
        c_l += term.coefficient * term.attenuation_left
    return c_r, c_l


def sample_phase_power(
    config: WallConfig, params: PropagationParams, r: float, spec: SampleSpec
) -> np.ndarray:
    """Power samples |C_R e^{jU} + C_L e^{jV}|^2 with U, V uniform on [0, 2pi).

    One independent (U, V) pair per sample; U is drawn before V within a
    chunk.
    """
    if spec.model != "phase":
        raise ValueError(f"phase model required, got {spec.model!r}")
    if not (r > 0.0 and config.contains(r)):
        raise ValueError(f"r={r!r} must be positive and strictly inside the walls")
    c_r, c_l = phase_ray_coefficients(config, TxLocation(r, 0.0), params)
    out = np.empty(spec.n_samples, dtype=np.float64)
    for index, start, size in _chunk_sizes(spec.n_samples):
        rng = _chunk_rng(spec.seed, index)
        u = rng.uniform(0.0, _TWO_PI, size)
        v = rng.uniform(0.0, _TWO_PI, size)
        power = c_r * c_r + c_l * c_l + 2.0 * c_r * c_l * np.cos(u - v)
        out[start : start + size] = np.maximum(power, 0.0)
    return out


def ks_uniform_distance(values: np.ndarray, period: float) -> float:
    """Kolmogorov-Smirnov distance of values against uniform on [0, period)."""
    if not period > 0.0:
        raise ValueError(f"period must be positive, got {period!r}")
    arr = np.sort(np.asarray(values, dtype=np.float64).ravel()) / period
    n = arr.size
    if n == 0:
        raise ValueError("no values")
    if arr[0] < 0.0 or arr[-1] > 1.0:
        raise ValueError("values must lie in [0, period]")
    grid = np.arange(1, n + 1) / n
    d_plus = float(np.max(grid - arr))
    d_minus = float(np.max(arr - (grid - 1.0 / n)))
    return max(d_plus, d_minus)


def phase_wrap_statistics(
    config: WallConfig,
    params: PropagationParams,
    spec: SampleSpec,
    m: int = 1,
) -> float:
    """KS distance of the wrapped m-th right-image phase from uniform.

    Draws positions exactly as sample_location_power does, computes
    k * distance to the m-th right image modulo 2pi, and measures how far
    that wrapped phase is from uniform; wide position intervals drive it to
    the sampling-noise floor.
    """
    if spec.model != "location":
        raise ValueError(f"location model required, got {spec.model!r}")
    if m < 1:
        raise ValueError(f"image index m must be >= 1, got {m!r}")
    _check_x_range(config, spec)
    phases = np.empty(spec.n_samples, dtype=np.float64)
    for index, start, size in _chunk_sizes(spec.n_samples):
        x, y = _draw_positions(spec, _chunk_rng(spec.seed, index), size)
        dist = image_distance_xy("right", m, config, x, y)
        phases[start : start + size] = np.mod(params.k * dist, _TWO_PI)
    return ks_uniform_distance(phases, _TWO_PI)
