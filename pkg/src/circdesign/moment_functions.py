"""The moment-function family of the 5-point construction.

For a rational ``r > 0`` and ``x`` in ``(-1, 1/2)``::

    f_r(x) = 1 + 2 cos(r arccos x) + 2 cos(r arccos(-x - 1/2))

``f_{k/t}(x)`` is the k-th moment of the 5-point design built from ``(t, x)``,
and ``f_1`` vanishes identically.  For integer ``k`` the Chebyshev identity
``cos(k arccos u) = T_k(u)`` gives a trig-free evaluation used as an oracle.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

import numpy as np

from .errors import DomainError

Rational = Union[Fraction, int, tuple]

X_LO = -1.0
X_HI = 0.5
ZERO_FLAG_TOL = 1e-12
BISECT_WIDTH = 1e-12


def as_rational(r: Rational) -> Fraction:
    """Coerce ``r`` (Fraction, int, ``(num, den)`` or ``"num/den"``) to a positive Fraction."""
    if isinstance(r, tuple):
        r = Fraction(int(r[0]), int(r[1]))
    elif isinstance(r, str):
        r = Fraction(r)
    elif isinstance(r, float):
        raise TypeError("pass r as an exact rational, not a float")
    else:
        r = Fraction(r)
    if r <= 0:
        raise DomainError(f"r must be positive, got {r}")
    return r


def _check_x(x: float) -> None:
    if not (X_LO < x < X_HI):
        raise DomainError(f"x={x!r} outside the open interval (-1, 1/2)")


def _f_values(num: int, den: int, xs: np.ndarray) -> np.ndarray:
    return (1.0 + 2.0 * np.cos(num * np.arccos(xs) / den)
            + 2.0 * np.cos(num * np.arccos(-xs - 0.5) / den))


def f_eval(r: Rational, x: float) -> float:
    """Evaluate ``f_r(x)``; ``r`` is applied as ``num * arccos(.) / den``."""
    r = as_rational(r)
    _check_x(x)
    a = math.acos(x)
    b = math.acos(-x - 0.5)
    n, d = r.numerator, r.denominator
    return 1.0 + 2.0 * math.cos(n * a / d) + 2.0 * math.cos(n * b / d)


def chebyshev_t(k: int, u):
    """``T_k(u)`` by the three-term recurrence (scalar or array ``u``)."""
    if k < 0:
        raise ValueError("k must be non-negative")
    u = np.asarray(u, dtype=float)
    prev, cur = np.ones_like(u), u.copy()
    if k == 0:
        return prev if prev.ndim else float(prev)
    for _ in range(k - 1):
        prev, cur = cur, 2.0 * u * cur - prev
    return cur if cur.ndim else float(cur)


def f_eval_chebyshev(k: int, x):
    """Evaluate ``f_k(x) = 1 + 2 T_k(x) + 2 T_k(-x - 1/2)`` without trig calls."""
    if k < 1:
        raise DomainError(f"k must be >= 1, got {k}")
    xa = np.asarray(x, dtype=float)
    if np.any((xa <= X_LO) | (xa >= X_HI)):
        raise DomainError("x outside the open interval (-1, 1/2)")
    out = 1.0 + 2.0 * chebyshev_t(k, xa) + 2.0 * chebyshev_t(k, -xa - 0.5)
    return out if np.ndim(out) else float(out)


@dataclass
class ZeroScanResult:
    """Sign-change zeros of ``f_r`` found on a uniform grid.

    Only zeros where ``f_r`` changes sign between grid points are reported;
    tangential zeros or pairs of zeros inside one grid cell are invisible.
    """

    r: Fraction
    lo: float
    hi: float
    grid_step: float
    brackets: list[tuple[float, float]] = field(default_factory=list)
    refined_zeros: list[float] = field(default_factory=list)
    identically_zero: bool = False

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["r_num", "r_den", "lo", "hi", "zero"])
        head = [self.r.numerator, self.r.denominator, repr(self.lo), repr(self.hi)]
        if self.identically_zero:
            w.writerow(head + ["IDENTICALLY_ZERO"])
        else:
            for z in self.refined_zeros:
                w.writerow(head + [repr(z)])
        return buf.getvalue()


def _bisect(num: int, den: int, a: float, b: float, fa: float) -> tuple[float, float, float]:
    """Shrink a sign-change bracket down to adjacent floats.

    Returns the final bracket and the endpoint with the smaller ``|f|``.
    """
    f = lambda v: float(_f_values(num, den, np.array([v]))[0])  # noqa: E731
    fb = f(b)
    while True:
        m = 0.5 * (a + b)
        if m <= a or m >= b:
            break
        fm = f(m)
        if fm == 0.0:
            return m, m, m
        if (fm < 0) == (fa < 0):
            a, fa = m, fm
        else:
            b, fb = m, fm
    return a, b, (a if abs(fa) <= abs(fb) else b)


def scan_zeros(r: Rational, lo: float, hi: float, steps: int) -> ZeroScanResult:
    """Bracket the sign changes of ``f_r`` on ``steps`` equal cells of ``[lo, hi]``.

    Each bracket is refined by bisection well below ``1e-12`` width.  When
    every grid value is within ``1e-12`` of zero the result carries the
    ``identically_zero`` flag instead of brackets (the ``r = 1`` case).
    """
    r = as_rational(r)
    if not (X_LO < lo < hi < X_HI):
        raise DomainError(f"need -1 < lo < hi < 1/2, got lo={lo!r}, hi={hi!r}")
    if steps < 2:
        raise DomainError(f"steps must be >= 2, got {steps}")
    num, den = r.numerator, r.denominator
    grid = np.linspace(lo, hi, steps + 1)
    vals = _f_values(num, den, grid)
    result = ZeroScanResult(r, float(lo), float(hi), (hi - lo) / steps)
    if np.all(np.abs(vals) <= ZERO_FLAG_TOL):
        result.identically_zero = True
        return result

    for i in range(steps + 1):
        if vals[i] == 0.0:
            g = float(grid[i])
            result.brackets.append((g, g))
            result.refined_zeros.append(g)
            continue
        if i < steps and vals[i + 1] != 0.0 and (vals[i] < 0) != (vals[i + 1] < 0):
            a, b, z = _bisect(num, den, float(grid[i]), float(grid[i + 1]), float(vals[i]))
            result.brackets.append((a, b))
            result.refined_zeros.append(z)
    return result


def margin(t: int, x: float, k_max: int) -> float:
    """Smallest ``|f_{k/t}(x)|`` over ``1 <= k <= k_max``, ``k != t``.

    This is the smallest moment magnitude of the 5-point design for ``(t, x)``
    among degrees that should not vanish.
    """
    if t < 1:
        raise DomainError(f"t must be >= 1, got {t}")
    if k_max < t:
        raise DomainError(f"k_max={k_max} must be >= t={t}")
    _check_x(x)
    ks = np.arange(1, k_max + 1, dtype=float)
    ks = ks[ks != t]
    if ks.size == 0:
        return math.inf
    a = math.acos(x)
    b = math.acos(-x - 0.5)
    vals = 1.0 + 2.0 * np.cos(ks * a / t) + 2.0 * np.cos(ks * b / t)
    return float(np.abs(vals).min())
