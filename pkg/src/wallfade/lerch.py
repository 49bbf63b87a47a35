"""Lerch transcendent evaluation with a certified truncation depth.

In the symmetric two-wall geometry the image series collapses to a pair of
Lerch transcendent sums

    Phi(zeta, s, gamma) = sum_{n>=0} zeta^n / (n + gamma)^s,   |zeta| < 1,

so an independent evaluator for Phi (and for its n>=1 tail, which is what the
collapsed field sum actually uses) doubles as a cross-check on the direct
image summation.  Truncation after term N is certified by the geometric
envelope |zeta|^{N+1} / ((N+1+gamma)^s (1-|zeta|)), valid once N+1+gamma >= 1.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import ConvergenceError

__all__ = [
    "DEFAULT_EPS",
    "LerchArgs",
    "N_MAX",
    "lerch_phi",
    "lerch_tail",
    "truncation_bound",
]

N_MAX = 10_000_000
DEFAULT_EPS = 1e-12


@dataclass(frozen=True)
class LerchArgs:
    """Argument triple (zeta, s, gamma) of the Lerch transcendent.

    zeta must lie strictly inside the unit disc, s must be non-negative, and
    gamma must not be zero or a negative integer (those make a term blow up).
    """

    zeta: complex
    s: float
    gamma: float

    def __post_init__(self) -> None:
        if not (cmath.isfinite(self.zeta) and abs(self.zeta) < 1.0):
            raise ValueError(f"zeta must satisfy |zeta| < 1, got {self.zeta!r}")
        if not (math.isfinite(self.s) and self.s >= 0.0):
            raise ValueError(f"s must be finite and >= 0, got {self.s!r}")
        g = self.gamma
        if not math.isfinite(g) or (g <= 0.0 and float(g).is_integer()):
            raise ValueError(f"gamma must not be a non-positive integer, got {g!r}")


def truncation_bound(args: LerchArgs, eps: float = DEFAULT_EPS) -> int:
    """Smallest N for which the tail envelope is <= eps.

    Dropping every term past n = N leaves a remainder bounded by
    |zeta|^{N+1} / ((N+1+gamma)^s (1-|zeta|)); the bound only holds once
    N+1+gamma >= 1, so N is never returned below that threshold.  The bound
    decreases monotonically in N there, which lets exponential search plus
    bisection find the exact crossing.
    """
    if not (eps > 0.0):
        raise ValueError(f"eps must be positive, got {eps!r}")
    az = abs(args.zeta)
    n_min = max(0, math.ceil(-args.gamma))
    if az == 0.0:
        return n_min
    s, gamma = args.s, args.gamma
    log_eps = math.log(eps)
    log_az = math.log(az)
    log_one_minus = math.log1p(-az)

    def log_bound(n: int) -> float:
        return (n + 1) * log_az - s * math.log(n + 1 + gamma) - log_one_minus

    if log_bound(n_min) <= log_eps:
        return n_min
    lo = n_min
    hi = max(2 * n_min, 1)
    while log_bound(hi) > log_eps:
        lo = hi
        hi *= 2
        if hi >= N_MAX:
            if log_bound(N_MAX) > log_eps:
                raise ConvergenceError(
                    f"truncation depth exceeds {N_MAX} for |zeta|={az}, eps={eps}"
                )
            hi = N_MAX
            break
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if log_bound(mid) <= log_eps:
            hi = mid
        else:
            lo = mid
    return hi


def lerch_phi(args: LerchArgs, eps: float = DEFAULT_EPS) -> complex:
    """Evaluate Phi(zeta, s, gamma) with absolute truncation error <= eps."""
    return _compensated_series(args, 0, truncation_bound(args, eps))


def lerch_tail(args: LerchArgs, eps: float = DEFAULT_EPS) -> complex:
    """Evaluate the n >= 1 part of Phi with absolute truncation error <= eps.

    Requires gamma > -1 so that every base n + gamma in the tail is positive.
    """
    if not args.gamma > -1.0:
        raise ValueError(f"tail requires gamma > -1, got {args.gamma!r}")
    return _compensated_series(args, 1, truncation_bound(args, eps))


def _principal_power(base: float, expo: float) -> complex:
    # base^expo on the principal branch; base < 0 picks up e^{j*pi*expo}
    if base > 0.0:
        return complex(math.exp(expo * math.log(base)), 0.0)
    return cmath.exp(expo * complex(math.log(-base), math.pi))


def _compensated_series(args: LerchArgs, n_start: int, n_stop: int) -> complex:
    """Sum terms n_start..n_stop (inclusive) in ascending order.

    Each term is exp(n Log(zeta) - s Log(n+gamma)) on principal branches, so
    a negative base n + gamma (possible for n = 0 with negative gamma) yields
    a complex value rather than NaN.  Real and imaginary parts are
    accumulated with Neumaier compensation to keep rounding error flat over
    long sums.
    """
    if n_stop < n_start:
        return 0j
    zeta, s, gamma = args.zeta, args.s, args.gamma
    if zeta == 0:
        # only the n = 0 term survives (0^0 = 1 by the series convention)
        return _principal_power(gamma, -s) if n_start == 0 else 0j
    log_zeta = cmath.log(zeta)
    sum_re = sum_im = comp_re = comp_im = 0.0
    for n in range(n_start, n_stop + 1):
        base = n + gamma
        if base > 0.0:
            expo = complex(
                n * log_zeta.real - s * math.log(base), n * log_zeta.imag
            )
        else:
            expo = n * log_zeta - s * complex(math.log(-base), math.pi)
        term = cmath.exp(expo)
        sum_re, comp_re = _neumaier_step(sum_re, comp_re, term.real)
        sum_im, comp_im = _neumaier_step(sum_im, comp_im, term.imag)
    return complex(sum_re + comp_re, sum_im + comp_im)


def _neumaier_step(total: float, comp: float, x: float) -> tuple[float, float]:
    new_total = total + x
    if abs(total) >= abs(x):
        comp += (total - new_total) + x
    else:
        comp += (x - new_total) + total
    return new_total, comp
