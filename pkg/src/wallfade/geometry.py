"""Wall geometry and method-of-images distances.

Two infinite parallel walls sit at x = a (right) and x = -b (left); the
receiver is at the origin and the transmitter at (x, y) between the walls.
Unfolding the bounce sequences gives, for each image index m >= 1, one image
behind each wall.  Odd m (an even number of traversals of the strip) places
the right image at axial offset 2nd + 2a with n = (m-1)/2 and the left image
at 2nd + 2b; even m = 2n places both at 2nd, mirrored in x.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "TxLocation",
    "WallConfig",
    "image_distance",
    "image_distance_symmetric",
    "image_distance_xy",
    "single_wall_image_distance",
]

_SIDES = ("right", "left")


@dataclass(frozen=True)
class WallConfig:
    """Wall positions and the common power reflection coefficient kappa."""

    a: float
    b: float
    kappa: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.a) and self.a >= 0.0):
            raise ValueError(f"a must be finite and >= 0, got {self.a!r}")
        if not (math.isfinite(self.b) and self.b >= 0.0):
            raise ValueError(f"b must be finite and >= 0, got {self.b!r}")
        if not self.a + self.b > 0.0:
            raise ValueError("wall separation a + b must be positive")
        if not (0.0 <= self.kappa < 1.0):
            raise ValueError(f"kappa must lie in [0, 1), got {self.kappa!r}")

    @property
    def d(self) -> float:
        """Wall separation a + b."""
        return self.a + self.b

    def contains(self, x: float) -> bool:
        """True when the abscissa lies strictly between the walls."""
        return -self.b < x < self.a


@dataclass(frozen=True)
class TxLocation:
    """Transmitter position; must not coincide with the receiver at the origin."""

    x: float
    y: float = 0.0

    def __post_init__(self) -> None:
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError("coordinates must be finite")
        if self.x == 0.0 and self.y == 0.0:
            raise ValueError("transmitter coincides with the receiver")

    @property
    def r(self) -> float:
        return math.hypot(self.x, self.y)

    @property
    def theta(self) -> float:
        return math.atan2(self.y, self.x)


def _check_side(side: str) -> None:
    if side not in _SIDES:
        raise ValueError(f"side must be one of {_SIDES}, got {side!r}")


def _axial_offset(side: str, m: int, a: float, b: float) -> tuple[float, float]:
    """Offset c and sign s such that the image distance is hypot(c + s*x, y).

    The odd-m offsets (m-1)d + 2a and (m-1)d + 2b are evaluated as
    m*d + (a-b) and m*d + (b-a): algebraically identical, and for a = b they
    collapse to the symmetric form m*d without rounding.
    """
    d = a + b
    if side == "right":
        sx = -1.0
        c = m * d + (a - b) if m % 2 else m * d
    else:
        sx = 1.0
        c = m * d + (b - a) if m % 2 else m * d
    return c, sx


def image_distance(side: str, m: int, config: WallConfig, tx: TxLocation) -> float:
    """Distance from the receiver to the m-th image behind the given wall."""
    _check_side(side)
    if m < 1:
        raise ValueError(f"image index m must be >= 1, got {m!r}")
    if not config.contains(tx.x):
        raise ValueError(
            f"transmitter x={tx.x!r} is not strictly between the walls "
            f"(-{config.b!r}, {config.a!r})"
        )
    c, sx = _axial_offset(side, m, config.a, config.b)
    # same hypot as the vectorized path so the two agree bit for bit
    return float(np.hypot(c + sx * tx.x, tx.y))


def image_distance_xy(
    side: str, m: int, config: WallConfig, x: np.ndarray, y: np.ndarray
) -> np.ndarray:
    """Vectorized image_distance over coordinate arrays."""
    _check_side(side)
    if m < 1:
        raise ValueError(f"image index m must be >= 1, got {m!r}")
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if not np.all((x > -config.b) & (x < config.a)):
        raise ValueError("some x coordinates are not strictly between the walls")
    c, sx = _axial_offset(side, m, config.a, config.b)
    return np.hypot(c + sx * x, y)


def image_distance_symmetric(side: str, m: int, d: float, tx: TxLocation) -> float:
    """Image distance in the symmetric geometry a = b = d/2.

    The odd/even cases merge: the m-th image sits at axial offset m*d, so the
    distance is hypot(m*d -/+ x, y) for the right/left side.
    """
    _check_side(side)
    if m < 1:
        raise ValueError(f"image index m must be >= 1, got {m!r}")
    if not (math.isfinite(d) and d > 0.0):
        raise ValueError(f"wall separation d must be positive, got {d!r}")
    if not -d / 2.0 < tx.x < d / 2.0:
        raise ValueError(f"transmitter x={tx.x!r} outside the symmetric strip")
    u = m * d - tx.x if side == "right" else m * d + tx.x
    return float(np.hypot(u, tx.y))


def single_wall_image_distance(a: float, tx: TxLocation) -> float:
    """Distance to the single mirror image for one wall at x = a."""
    if not (math.isfinite(a) and a >= 0.0):
        raise ValueError(f"wall position a must be finite and >= 0, got {a!r}")
    if tx.x > a:
        raise ValueError(f"transmitter x={tx.x!r} lies beyond the wall at {a!r}")
    return math.hypot(2.0 * a - tx.x, tx.y)
