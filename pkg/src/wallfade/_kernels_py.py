"""Pure-numpy image-series kernels.

Fallback used when the compiled wallfade._kernels extension is unavailable;
the semantics are identical.  Both kernels accumulate image pairs in
ascending m and stop, per sample, at the first m whose remaining-tail
envelope sqrt(kappa)^m (alpha_r + alpha_l) / (1 - sqrt(kappa)) drops below
eps; that pair is not added.  A terms entry of -1 marks a sample that failed
to converge within m_max pairs (the caller turns that into an error).
"""

from __future__ import annotations

import numpy as np


def _pair_offsets(m: int, a: float, b: float) -> tuple[float, float]:
    d = a + b
    if m % 2:
        return (m - 1) * d + 2.0 * a, (m - 1) * d + 2.0 * b
    return m * d, m * d


def reflected_amplitude(
    x: np.ndarray,
    y: np.ndarray,
    a: float,
    b: float,
    kappa: float,
    k: float,
    beta: float,
    eps: float,
    m_max: int,
) -> tuple[np.ndarray, np.ndarray]:
    """Truncated two-wall image-series amplitude at each (x, y).

    Returns (amplitude, pairs) where pairs[i] is the number of image pairs
    summed for sample i.
    """
    x = np.ascontiguousarray(x, dtype=np.float64)
    y = np.ascontiguousarray(y, dtype=np.float64)
    n = x.shape[0]
    amp = np.zeros(n, dtype=np.complex128)
    terms = np.zeros(n, dtype=np.int64)
    if kappa == 0.0 or n == 0:
        return amp, terms
    sqk = np.sqrt(kappa)
    inv_gap = 1.0 / (1.0 - sqk)
    neg_half_beta = -0.5 * beta
    active = np.ones(n, dtype=bool)
    coef = 1.0
    m = 1
    while True:
        if m > m_max:
            terms[active] = -1
            break
        coef *= sqk
        c_r, c_l = _pair_offsets(m, a, b)
        d_r = np.hypot(c_r - x, y)
        d_l = np.hypot(c_l + x, y)
        a_r = d_r**neg_half_beta
        a_l = d_l**neg_half_beta
        active &= coef * inv_gap * (a_r + a_l) >= eps
        if not active.any():
            break
        signed = -coef if m % 2 else coef
        contrib = signed * (a_r * np.exp(1j * k * d_r) + a_l * np.exp(1j * k * d_l))
        np.add(amp, contrib, out=amp, where=active)
        terms[active] = m
        m += 1
    return amp, terms


def bound_sum(
    x: np.ndarray,
    y: np.ndarray,
    a: float,
    b: float,
    kappa: float,
    beta: float,
    eps: float,
    m_max: int,
) -> tuple[np.ndarray, np.ndarray]:
    """Truncated positive attenuation sum sum_m sqrt(kappa)^m (alpha_r + alpha_l).

    Same stop rule and return convention as reflected_amplitude.
    """
    x = np.ascontiguousarray(x, dtype=np.float64)
    y = np.ascontiguousarray(y, dtype=np.float64)
    n = x.shape[0]
    total = np.zeros(n, dtype=np.float64)
    terms = np.zeros(n, dtype=np.int64)
    if kappa == 0.0 or n == 0:
        return total, terms
    sqk = np.sqrt(kappa)
    inv_gap = 1.0 / (1.0 - sqk)
    neg_half_beta = -0.5 * beta
    active = np.ones(n, dtype=bool)
    coef = 1.0
    m = 1
    while True:
        if m > m_max:
            terms[active] = -1
            break
        coef *= sqk
        c_r, c_l = _pair_offsets(m, a, b)
        pair = (
            np.hypot(c_r - x, y) ** neg_half_beta
            + np.hypot(c_l + x, y) ** neg_half_beta
        )
        active &= coef * inv_gap * pair >= eps
        if not active.any():
            break
        np.add(total, coef * pair, out=total, where=active)
        terms[active] = m
        m += 1
    return total, terms
