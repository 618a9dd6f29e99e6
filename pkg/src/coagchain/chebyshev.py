"""Overflow-safe Chebyshev polynomials of the second kind.

The secular equation multiplies U_{L-1} factors whose magnitude grows like
(2|x|)^L outside [-1, 1]; at the chain lengths and rate ranges this
library accepts, that can overflow doubles.  The three-term recurrence is
therefore run in a split (mantissa, base-2 exponent) representation:
after every step the working pair is renormalized with frexp/ldexp so the
mantissas stay in a safe range while the common exponent accumulates
separately.  Signs are exact, magnitudes carry ordinary double-precision
relative error.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class ScaledValue:
    """A real number stored as mantissa * 2**exp2."""

    mantissa: float
    exp2: int

    @property
    def sign(self) -> int:
        return int(np.sign(self.mantissa))

    def to_float(self) -> float:
        try:
            return math.ldexp(self.mantissa, self.exp2)
        except OverflowError:
            return math.inf if self.mantissa > 0 else -math.inf

    def log2_abs(self) -> float:
        if self.mantissa == 0.0:
            return -math.inf
        return math.log2(abs(self.mantissa)) + self.exp2


def chebyshev_u_pair_scaled(n: int, x: np.ndarray):
    """(U_n, U_{n-1}) at each x, as mantissa arrays with a shared exponent.

    Returns ``(u_n, u_nm1, exp2)`` with ``U_n(x) = u_n * 2**exp2`` and
    ``U_{n-1}(x) = u_nm1 * 2**exp2`` elementwise.  ``n = -1`` and ``n = 0``
    are valid (U_{-1} = 0, U_0 = 1).
    """
    x = np.asarray(x, dtype=float)
    if n < -1:
        raise ValueError(f"n must be >= -1, got {n}")
    u_prev = np.zeros_like(x)          # U_{-1}
    u_cur = np.ones_like(x)            # U_0
    exp2 = np.zeros(x.shape, dtype=np.int64)
    if n == -1:
        return np.zeros_like(x), np.full_like(x, np.nan), exp2

    def renormalize(u_cur, u_prev):
        mag = np.maximum(np.abs(u_cur), np.abs(u_prev))
        _, e = np.frexp(mag)
        e = np.where(mag == 0.0, 0, e).astype(np.int64)
        return np.ldexp(u_cur, -e), np.ldexp(u_prev, -e), e

    # per-step growth is bounded by 2|x| + 2, so renormalizing on a fixed
    # stride keeps everything far from overflow while saving array passes
    x_max = float(np.max(np.abs(x))) if x.size else 0.0
    stride = max(1, int(900.0 / math.log2(2.0 * x_max + 4.0)))
    for step in range(1, n + 1):
        u_next = 2.0 * x * u_cur - u_prev
        u_prev, u_cur = u_cur, u_next
        if step % stride == 0:
            u_cur, u_prev, e = renormalize(u_cur, u_prev)
            exp2 += e
    u_cur, u_prev, e = renormalize(u_cur, u_prev)
    exp2 += e
    return u_cur, u_prev, exp2


def chebyshev_u(n: int, x: float) -> float:
    """Plain U_n(x) as a float (may overflow to inf for large n, |x|>1)."""
    u_n, _, exp2 = chebyshev_u_pair_scaled(n, np.asarray([x]))
    return ScaledValue(float(u_n[0]), int(exp2[0])).to_float()
