"""Bounded certification of harmonic strength.

On the circle a degree ``k`` belongs to the harmonic strength of ``X`` exactly
when the moment ``P_k(X)`` vanishes.  Only finitely many degrees can be
checked numerically, so every result here is relative to a degree bound
``k_max``: a report certifies ``Hst(X) & [1, k_max] == T & [1, k_max]`` and
nothing beyond.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

import numpy as np

from .core import Design, moments
from .errors import BoundError, TraceError
from .moment_functions import f_eval

ZERO = "ZERO"
NONZERO = "NONZERO"
CROSS_CHECK_DEGREES = 100
CROSS_CHECK_TOL = 1e-10


def default_zero_tol(X: Design) -> float:
    return 1e-10 * len(X)


@dataclass(frozen=True)
class DegreeResult:
    k: int
    magnitude: float
    is_zero: bool

    @property
    def cls(self) -> str:
        return ZERO if self.is_zero else NONZERO


@dataclass(frozen=True)
class BoundedStrength:
    """The degrees ``k <= k_max`` with ``|P_k| <= zero_tol``.

    An approximation of the harmonic strength from below the bound only; it
    may be empty (a single point annihilates nothing).
    """

    degrees: tuple[int, ...]
    k_max: int
    zero_tol: float

    def __iter__(self):
        return iter(self.degrees)

    def __contains__(self, k: object) -> bool:
        return k in self.degrees

    def __len__(self) -> int:
        return len(self.degrees)


@dataclass(frozen=True)
class VerificationReport:
    k_max: int
    zero_tol: float
    claimed: tuple[int, ...]
    per_degree: tuple[DegreeResult, ...]
    max_zero_residual: float
    min_nonzero_margin: float
    verdict: str
    # claimed degrees that are not zero, and zero degrees that were not claimed
    claimed_nonzero: tuple[int, ...] = ()
    unclaimed_zero: tuple[int, ...] = ()

    @property
    def passed(self) -> bool:
        return self.verdict == "PASS"

    @property
    def zero_degrees(self) -> tuple[int, ...]:
        return tuple(d.k for d in self.per_degree if d.is_zero)

    def to_dict(self) -> dict:
        return {
            "k_max": self.k_max,
            "zero_tol": self.zero_tol,
            "claimed": list(self.claimed),
            "verdict": self.verdict,
            "max_zero_residual": self.max_zero_residual,
            "min_nonzero_margin": (None if math.isinf(self.min_nonzero_margin)
                                   else self.min_nonzero_margin),
            "claimed_nonzero": list(self.claimed_nonzero),
            "unclaimed_zero": list(self.unclaimed_zero),
            "degrees": [{"k": d.k, "magnitude": d.magnitude, "class": d.cls}
                        for d in self.per_degree],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["k", "magnitude", "class"])
        for d in self.per_degree:
            w.writerow([d.k, repr(d.magnitude), d.cls])
        return buf.getvalue()

    def summary(self) -> str:
        lines = [f"verdict: {self.verdict} (degrees checked: 1..{self.k_max}, "
                 f"zero_tol={self.zero_tol:.3e})",
                 f"zero degrees <= {self.k_max}: {list(self.zero_degrees)}",
                 f"max_zero_residual: {self.max_zero_residual:.3e}",
                 f"min_nonzero_margin: {self.min_nonzero_margin:.3e}"]
        if self.claimed_nonzero:
            lines.append(f"claimed but nonzero: {list(self.claimed_nonzero)}")
        if self.unclaimed_zero:
            lines.append(f"zero but unclaimed: {list(self.unclaimed_zero)}")
        return "\n".join(lines)


def _magnitudes(X: Design, k_max: int) -> np.ndarray:
    return np.abs(moments(X, range(1, k_max + 1)))


def verify(X: Design, claimed: Iterable[int], k_max: int,
           zero_tol: Optional[float] = None) -> VerificationReport:
    """Classify ``|P_k(X)|`` for ``k = 1..k_max`` and compare with ``claimed``.

    PASS iff the ZERO degrees are exactly the claimed degrees up to ``k_max``.
    """
    claimed = tuple(sorted(set(int(k) for k in claimed)))
    if zero_tol is None:
        zero_tol = default_zero_tol(X)
    if not zero_tol > 0:
        raise ValueError(f"zero_tol must be positive, got {zero_tol}")
    if k_max < 1:
        raise BoundError(f"k_max must be >= 1, got {k_max}")
    if claimed and k_max < claimed[-1]:
        raise BoundError(f"k_max={k_max} is below the largest claimed degree {claimed[-1]}")

    mags = _magnitudes(X, k_max)
    per_degree = tuple(DegreeResult(k, float(m), bool(m <= zero_tol))
                       for k, m in enumerate(mags, start=1))
    zeros = {d.k for d in per_degree if d.is_zero}
    expected = {k for k in claimed if k <= k_max}
    zero_mags = [d.magnitude for d in per_degree if d.is_zero]
    nonzero_mags = [d.magnitude for d in per_degree if not d.is_zero]
    return VerificationReport(
        k_max=k_max,
        zero_tol=zero_tol,
        claimed=claimed,
        per_degree=per_degree,
        max_zero_residual=max(zero_mags, default=0.0),
        min_nonzero_margin=min(nonzero_mags, default=math.inf),
        verdict="PASS" if zeros == expected else "FAIL",
        claimed_nonzero=tuple(sorted(expected - zeros)),
        unclaimed_zero=tuple(sorted(zeros - expected)),
    )


def strength_within_bound(X: Design, k_max: int, zero_tol: Optional[float] = None) -> BoundedStrength:
    """Degrees up to ``k_max`` whose moment magnitude is at most ``zero_tol``."""
    if zero_tol is None:
        zero_tol = default_zero_tol(X)
    if not zero_tol > 0:
        raise ValueError(f"zero_tol must be positive, got {zero_tol}")
    mags = _magnitudes(X, k_max)
    degs = tuple(int(k) for k in np.flatnonzero(mags <= zero_tol) + 1)
    return BoundedStrength(degs, k_max, zero_tol)


def cross_check(X: Design) -> bool:
    """Compare the moments of a 5-point design with the moment function.

    For the design built from ``(t, x)``, ``P_k`` must equal ``f_{k/t}(x)``
    (a real number) for ``k = 1..100`` within ``1e-10``.
    """
    if X.trace is None or len(X.trace.steps) != 1:
        raise TraceError("cross_check needs a design carrying a single (t, x) trace step")
    step = X.trace.steps[0]
    ms = moments(X, range(1, CROSS_CHECK_DEGREES + 1))
    for k, m in enumerate(ms, start=1):
        expected = f_eval(Fraction(k, step.t), step.x)
        if abs(m - expected) > CROSS_CHECK_TOL:
            return False
    return True
