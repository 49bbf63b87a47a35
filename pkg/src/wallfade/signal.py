"""Field sums between two reflecting walls.

The received complex amplitude is a sum over mirror images.  A ray that
bounces m times arrives with power reflection loss kappa^m, so its amplitude
carries (-sqrt(kappa))^m (each bounce flips the phase), free-space
attenuation alpha(rho) = rho^{-beta/2} at the unfolded path length rho, and
the propagation phase e^{j k rho}.  Summing the right-wall and left-wall
image families in ascending m gives the reflected-only amplitude; adding the
direct term alpha(r) e^{j k r} gives the total.  Received power is the
squared magnitude.

On the axis y = 0 of the symmetric geometry (a = b = d/2) the series
collapses to two Lerch transcendent tails, which this module exposes as an
independent cross-check of the direct summation.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Iterator, NamedTuple

import numpy as np

from . import kernels
from .errors import ConvergenceError
from .geometry import TxLocation, WallConfig, single_wall_image_distance
from .lerch import LerchArgs, lerch_tail

__all__ = [
    "M_MAX",
    "PropagationParams",
    "R_MIN",
    "SeriesTerm",
    "SignalValue",
    "SliceSpec",
    "attenuation",
    "los_signal",
    "one_wall_signal",
    "power_profile",
    "reflected_amplitude_grid",
    "reflected_signal_sum",
    "reflected_terms",
    "signal_lerch_closed_form",
    "slice_power_function",
    "surface_bound_grid",
    "surface_bound_power",
    "total_signal",
]

# distances at or below R_MIN make the attenuation blow up
R_MIN = 1e-9
# hard cap on image pairs; unreachable for kappa < 1 with any sane tolerance
M_MAX = 10**6


@dataclass(frozen=True)
class PropagationParams:
    """Wavenumber k, attenuation exponent beta, and the series stop tolerance."""

    k: float
    beta: float
    eps_series: float = 1e-12

    def __post_init__(self) -> None:
        if not (math.isfinite(self.k) and self.k >= 0.0):
            raise ValueError(f"k must be finite and >= 0, got {self.k!r}")
        if not (math.isfinite(self.beta) and self.beta > 0.0):
            raise ValueError(f"beta must be positive, got {self.beta!r}")
        if not (math.isfinite(self.eps_series) and self.eps_series > 0.0):
            raise ValueError(f"eps_series must be positive, got {self.eps_series!r}")

    @property
    def wavelength(self) -> float:
        if self.k == 0.0:
            raise ValueError("wavelength undefined for k = 0")
        return 2.0 * math.pi / self.k


@dataclass(frozen=True)
class SignalValue:
    """Complex amplitude, its squared magnitude, and the image-pair count.

    terms is None for values that are not truncated series (pure line of
    sight); for series values it is the number of image pairs summed.
    """

    amplitude: complex
    power: float
    terms: int | None = None

    @classmethod
    def from_amplitude(cls, amplitude: complex, terms: int | None = None) -> SignalValue:
        # np.abs so scalar and vectorized powers round identically
        power = float(np.abs(np.complex128(amplitude)) ** 2)
        return cls(amplitude=amplitude, power=power, terms=terms)


class SeriesTerm(NamedTuple):
    """One image pair of the reflected series."""

    m: int
    coefficient: float
    distance_right: float
    distance_left: float
    attenuation_right: float
    attenuation_left: float


def attenuation(r, beta: float):
    """Free-space amplitude decay r^{-beta/2}; rejects r <= R_MIN."""
    r = np.asarray(r, dtype=np.float64)
    if not np.all(r > R_MIN):
        raise ValueError(f"distance must exceed {R_MIN}")
    out = r ** (-0.5 * beta)
    return float(out) if out.ndim == 0 else out


def los_signal(r, params: PropagationParams):
    """Direct-path amplitude alpha(r) e^{j k r}."""
    r = np.asarray(r, dtype=np.float64)
    amp = attenuation(r, params.beta) * np.exp(1j * params.k * r)
    return complex(amp) if amp.ndim == 0 else amp


def _validate_positions(config: WallConfig, x: np.ndarray, y: np.ndarray) -> None:
    if not np.all((x > -config.b) & (x < config.a)):
        raise ValueError(
            f"x coordinates must lie strictly between the walls "
            f"(-{config.b!r}, {config.a!r})"
        )
    if config.kappa > 0.0:
        # nearest images must stay clear of the receiver, else alpha blows up
        d1 = np.minimum(
            np.hypot(2.0 * config.a - x, y), np.hypot(2.0 * config.b + x, y)
        )
        if not np.all(d1 > R_MIN):
            raise ValueError(f"a first-order image lies within {R_MIN} of the receiver")


def reflected_amplitude_grid(
    config: WallConfig,
    params: PropagationParams,
    x,
    y,
    m_max: int = M_MAX,
) -> tuple[np.ndarray, np.ndarray]:
    """Reflected-series amplitude and pair count over broadcast coordinates."""
    xb, yb = np.broadcast_arrays(
        np.asarray(x, dtype=np.float64), np.asarray(y, dtype=np.float64)
    )
    shape = xb.shape
    xf = np.ascontiguousarray(xb, dtype=np.float64).ravel()
    yf = np.ascontiguousarray(yb, dtype=np.float64).ravel()
    _validate_positions(config, xf, yf)
    amp, terms = kernels.reflected_amplitude(
        xf,
        yf,
        config.a,
        config.b,
        config.kappa,
        params.k,
        params.beta,
        params.eps_series,
        m_max,
    )
    if np.any(terms < 0):
        raise ConvergenceError(f"image series exceeded {m_max} pairs")
    return amp.reshape(shape), terms.reshape(shape)


def reflected_signal_sum(
    config: WallConfig, tx: TxLocation, params: PropagationParams
) -> SignalValue:
    """Reflections-only amplitude at the receiver for a transmitter at tx."""
    amp, terms = reflected_amplitude_grid(config, params, tx.x, tx.y)
    return SignalValue.from_amplitude(complex(amp[()]), int(terms[()]))


def total_signal(
    config: WallConfig, tx: TxLocation, params: PropagationParams
) -> SignalValue:
    """Direct path plus reflections."""
    reflected = reflected_signal_sum(config, tx, params)
    amp = los_signal(tx.r, params) + reflected.amplitude
    return SignalValue.from_amplitude(amp, reflected.terms)


def one_wall_signal(
    a: float, tx: TxLocation, params: PropagationParams, kappa: float
) -> SignalValue:
    """Direct path plus the single mirror image of one wall at x = a.

    No series is involved, so kappa = 1 (a perfect reflector) is allowed;
    at x = a the two contributions then cancel exactly.
    """
    if not (0.0 <= kappa <= 1.0):
        raise ValueError(f"kappa must lie in [0, 1] for one wall, got {kappa!r}")
    d1 = single_wall_image_distance(a, tx)
    amp = los_signal(tx.r, params) - math.sqrt(kappa) * attenuation(
        d1, params.beta
    ) * cmath.exp(1j * params.k * d1)
    return SignalValue.from_amplitude(amp, 1)


def reflected_terms(
    config: WallConfig, tx: TxLocation, params: PropagationParams
) -> Iterator[SeriesTerm]:
    """Yield the image pairs of the truncated reflected series in order.

    Applies the same stop rule as the kernels, so collecting the stream and
    summing coefficient * (att_r e^{jk d_r} + att_l e^{jk d_l}) reproduces
    reflected_signal_sum term for term.
    """
    xf = np.array([tx.x], dtype=np.float64)
    yf = np.array([tx.y], dtype=np.float64)
    _validate_positions(config, xf, yf)
    if config.kappa == 0.0:
        return
    sqk = math.sqrt(config.kappa)
    inv_gap = 1.0 / (1.0 - sqk)
    d = config.d
    coef = 1.0
    for m in range(1, M_MAX + 1):
        coef *= sqk
        if m % 2:
            c_r = (m - 1) * d + 2.0 * config.a
            c_l = (m - 1) * d + 2.0 * config.b
        else:
            c_r = c_l = m * d
        d_r = math.hypot(c_r - tx.x, tx.y)
        d_l = math.hypot(c_l + tx.x, tx.y)
        a_r = d_r ** (-0.5 * params.beta)
        a_l = d_l ** (-0.5 * params.beta)
        if coef * inv_gap * (a_r + a_l) < params.eps_series:
            return
        yield SeriesTerm(m, -coef if m % 2 else coef, d_r, d_l, a_r, a_l)
    raise ConvergenceError(f"image series exceeded {M_MAX} pairs")


def signal_lerch_closed_form(
    d: float, tx: TxLocation, params: PropagationParams, kappa: float
) -> complex:
    """Reflections-only amplitude on the symmetric axis via Lerch tails.

    Valid for a = b = d/2, y = 0 and 0 < |x| < d/2, where the image series
    collapses to

        e^{-jkr} d^{-beta/2} T(-r/d) + e^{+jkr} d^{-beta/2} T(+r/d),

    with r = |x| and T(gamma) the n >= 1 tail of Phi(-sqrt(kappa) e^{jkd},
    beta/2, gamma).  Absolute error is about d^{-beta/2} * eps_series.
    """
    if not (math.isfinite(d) and d > 0.0):
        raise ValueError(f"wall separation d must be positive, got {d!r}")
    if not (0.0 <= kappa < 1.0):
        raise ValueError(f"kappa must lie in [0, 1), got {kappa!r}")
    if tx.y != 0.0:
        raise ValueError("closed form requires y = 0")
    r = abs(tx.x)
    if not 0.0 < r < d / 2.0:
        raise ValueError("closed form requires 0 < |x| < d/2")
    half = 0.5 * params.beta
    zeta = -math.sqrt(kappa) * cmath.exp(1j * params.k * d)
    scale = d**-half
    eps = 0.5 * params.eps_series
    tail_minus = lerch_tail(LerchArgs(zeta, half, -r / d), eps)
    tail_plus = lerch_tail(LerchArgs(zeta, half, r / d), eps)
    return scale * (
        cmath.exp(-1j * params.k * r) * tail_minus
        + cmath.exp(1j * params.k * r) * tail_plus
    )


def surface_bound_grid(
    config: WallConfig, params: PropagationParams, x, y
) -> np.ndarray:
    """Pointwise upper bound on total received power over broadcast coordinates.

    Dropping every phase factor in the total field and applying the triangle
    inequality gives |S| <= alpha(r) + sum_m sqrt(kappa)^m (alpha_r + alpha_l),
    so the square of that attenuation sum bounds the power.
    """
    xb, yb = np.broadcast_arrays(
        np.asarray(x, dtype=np.float64), np.asarray(y, dtype=np.float64)
    )
    shape = xb.shape
    xf = np.ascontiguousarray(xb, dtype=np.float64).ravel()
    yf = np.ascontiguousarray(yb, dtype=np.float64).ravel()
    _validate_positions(config, xf, yf)
    direct = attenuation(np.hypot(xf, yf), params.beta)
    total, terms = kernels.bound_sum(
        xf,
        yf,
        config.a,
        config.b,
        config.kappa,
        params.beta,
        params.eps_series,
        M_MAX,
    )
    if np.any(terms < 0):
        raise ConvergenceError(f"image series exceeded {M_MAX} pairs")
    return ((np.atleast_1d(direct) + total) ** 2).reshape(shape)


def surface_bound_power(
    config: WallConfig, tx: TxLocation, params: PropagationParams
) -> float:
    """Scalar surface bound at a transmitter location."""
    return float(surface_bound_grid(config, params, tx.x, tx.y)[()])


@dataclass(frozen=True)
class SliceSpec:
    """A 1-D coordinate sweep: vary `axis` from lo to hi with the other fixed."""

    axis: str
    fixed: float
    lo: float
    hi: float
    points: int

    def __post_init__(self) -> None:
        if self.axis not in ("x", "y"):
            raise ValueError(f"axis must be 'x' or 'y', got {self.axis!r}")
        for name in ("fixed", "lo", "hi"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")
        if not self.lo < self.hi:
            raise ValueError(f"need lo < hi, got [{self.lo!r}, {self.hi!r}]")
        if self.points < 2:
            raise ValueError(f"points must be >= 2, got {self.points!r}")

    def grid(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, self.points)


def slice_power_function(
    config: WallConfig,
    params: PropagationParams,
    axis: str,
    fixed: float,
    include_los: bool = False,
):
    """Vectorized received power as a function of one coordinate.

    Returns f(t) mapping an array (or scalar) of coordinates along `axis`
    to reflected-only power, or total power when include_los is set.
    """
    if axis not in ("x", "y"):
        raise ValueError(f"axis must be 'x' or 'y', got {axis!r}")

    def f(t):
        t = np.asarray(t, dtype=np.float64)
        x, y = (t, fixed) if axis == "x" else (fixed, t)
        amp, _ = reflected_amplitude_grid(config, params, x, y)
        amp = np.atleast_1d(np.asarray(amp))
        if include_los:
            xb, yb = np.broadcast_arrays(
                np.asarray(x, dtype=np.float64), np.asarray(y, dtype=np.float64)
            )
            r = np.atleast_1d(np.hypot(xb, yb))
            amp = amp + attenuation(r, params.beta) * np.exp(1j * params.k * r)
        power = np.abs(amp) ** 2
        return float(power[0]) if t.ndim == 0 else power.reshape(t.shape)

    return f


def power_profile(
    config: WallConfig,
    params: PropagationParams,
    slice_spec: SliceSpec,
    include_los: bool = False,
) -> np.ndarray:
    """Power along a coordinate slice; returns an (n, 2) array of (coordinate, power)."""
    f = slice_power_function(
        config, params, slice_spec.axis, slice_spec.fixed, include_los
    )
    grid = slice_spec.grid()
    return np.column_stack([grid, f(grid)])
