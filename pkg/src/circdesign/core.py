"""Points and finite point sets on the unit circle.

Points are stored as angles in ``[0, 2*pi)``.  Products of point sets are
angle sums, conjugation is negation, and the Cartesian form is derived on
demand so nothing drifts off the circle.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Any, Iterable, Optional, Sequence

import numpy as np

from .errors import CollisionError, DegenerateError, DesignError, SingletonError

TWO_PI = 2.0 * math.pi
DEFAULT_SEPARATION = 1e-9


def canonicalize(theta: float) -> float:
    """Reduce an angle to its representative in ``[0, 2*pi)``."""
    a = float(theta) % TWO_PI
    # float modulo may round up to exactly 2*pi for tiny negative inputs
    if a >= TWO_PI:
        a = 0.0
    return a


def circular_distance(a: float, b: float) -> float:
    d = abs(a - b) % TWO_PI
    return min(d, TWO_PI - d)


@dataclass(frozen=True)
class UnitPoint:
    angle: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "angle", canonicalize(self.angle))

    @property
    def re(self) -> float:
        return math.cos(self.angle)

    @property
    def im(self) -> float:
        return math.sin(self.angle)

    def __complex__(self) -> complex:
        return complex(self.re, self.im)


@dataclass(frozen=True)
class Moment:
    """Value of the complex moment ``P_k(X) = sum_{z in X} z**k``."""

    re: float
    im: float

    def __complex__(self) -> complex:
        return complex(self.re, self.im)

    def __abs__(self) -> float:
        return math.hypot(self.re, self.im)

    @property
    def magnitude(self) -> float:
        return abs(self)


@dataclass(frozen=True)
class TraceStep:
    t: int
    x: float


@dataclass(frozen=True)
class ConstructionTrace:
    """Record of the parameters used to build a design.

    ``config`` is a plain dict snapshot of the search configuration, kept so a
    construction can be replayed.
    """

    steps: tuple[TraceStep, ...]
    seed: Optional[int] = None
    config: Optional[dict] = None

    def __post_init__(self) -> None:
        steps = tuple(s if isinstance(s, TraceStep) else TraceStep(int(s[0]), float(s[1]))
                      for s in self.steps)
        for s in steps:
            if s.t < 1:
                raise DesignError(f"trace degree must be >= 1, got {s.t}")
            if not (-1.0 < s.x < 0.5) or s.x == -0.25:
                raise DesignError(f"trace parameter {s.x!r} outside (-1, 1/2) \\ {{-1/4}}")
        if self.seed is not None and not 0 <= self.seed < 2**64:
            raise DesignError(f"seed must be an unsigned 64-bit integer, got {self.seed}")
        object.__setattr__(self, "steps", steps)

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(s.t for s in self.steps)


@dataclass(frozen=True)
class Design:
    """A non-empty finite set of distinct points on the unit circle.

    Distinctness is certified at construction: every pair of points must be at
    least ``separation`` radians apart.  The threshold is kept with the design
    so later checks use the same notion of "distinct".
    """

    points: tuple[UnitPoint, ...]
    separation: float = DEFAULT_SEPARATION
    trace: Optional[ConstructionTrace] = field(default=None, compare=False)

    def __post_init__(self) -> None:
        pts = tuple(p if isinstance(p, UnitPoint) else UnitPoint(p) for p in self.points)
        if not pts:
            raise DesignError("a design needs at least one point")
        if not self.separation > 0:
            raise DesignError(f"separation must be positive, got {self.separation}")
        object.__setattr__(self, "points", pts)
        if len(pts) > 1:
            sep = min_separation(self)
            if sep < self.separation:
                raise DegenerateError(
                    f"points not separated: minimal distance {sep:.3e} < {self.separation:.3e}")

    @classmethod
    def from_angles(cls, angles: Iterable[float], separation: float = DEFAULT_SEPARATION,
                    trace: Optional[ConstructionTrace] = None) -> "Design":
        return cls(tuple(UnitPoint(a) for a in angles), separation, trace)

    @property
    def angles(self) -> np.ndarray:
        return np.array([p.angle for p in self.points], dtype=float)

    def __len__(self) -> int:
        return len(self.points)

    def with_trace(self, trace: Optional[ConstructionTrace]) -> "Design":
        return Design(self.points, self.separation, trace)

    # -- serialization -------------------------------------------------

    def to_dict(self) -> dict[str, Any]:
        trace = None
        if self.trace is not None:
            trace = {"seed": self.trace.seed,
                     "steps": [{"t": s.t, "x": s.x} for s in self.trace.steps]}
            if self.trace.config is not None:
                trace["config"] = dict(self.trace.config)
        return {
            "points": [{"angle": p.angle, "re": p.re, "im": p.im} for p in self.points],
            "separation": self.separation,
            "trace": trace,
        }

    def to_json(self) -> str:
        # repr-based float output is the shortest string that round-trips exactly
        return json.dumps(self.to_dict(), indent=2) + "\n"

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "Design":
        try:
            angles = [float(p["angle"]) for p in data["points"]]
            separation = float(data.get("separation", DEFAULT_SEPARATION))
            raw = data.get("trace")
        except (KeyError, TypeError, ValueError) as exc:
            raise DesignError(f"malformed design document: {exc}") from exc
        trace = None
        if raw is not None:
            try:
                trace = ConstructionTrace(
                    steps=tuple(TraceStep(int(s["t"]), float(s["x"])) for s in raw["steps"]),
                    seed=None if raw.get("seed") is None else int(raw["seed"]),
                    config=raw.get("config"),
                )
            except (KeyError, TypeError, ValueError) as exc:
                raise DesignError(f"malformed trace: {exc}") from exc
        return cls.from_angles(angles, separation, trace)

    @classmethod
    def from_json(cls, text: str) -> "Design":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise DesignError(f"invalid JSON: {exc}") from exc
        if not isinstance(data, dict):
            raise DesignError("design document must be a JSON object")
        return cls.from_dict(data)


def moment(X: Design, k: int) -> Moment:
    """Complex moment ``P_k(X)`` by direct summation of ``exp(i*k*theta)``."""
    if k < 1:
        raise ValueError(f"degree must be >= 1, got {k}")
    phase = k * X.angles
    return Moment(float(np.sum(np.cos(phase))), float(np.sum(np.sin(phase))))


def moments(X: Design, ks: Sequence[int]) -> np.ndarray:
    """Complex moments for several degrees at once, as a complex array."""
    ks = np.asarray(ks, dtype=float)
    if ks.size and ks.min() < 1:
        raise ValueError("degrees must be >= 1")
    phase = np.outer(ks, X.angles)
    return np.cos(phase).sum(axis=1) + 1j * np.sin(phase).sum(axis=1)


def min_separation(X: Design) -> float:
    """Smallest circular distance between two points of ``X``."""
    if len(X.points) < 2:
        raise SingletonError("minimal separation needs at least two points")
    a = np.sort(np.array([p.angle for p in X.points]))
    gaps = np.diff(a)
    wrap = TWO_PI - (a[-1] - a[0])
    return float(min(gaps.min(), wrap))


def product(X1: Design, X2: Design, separation: float = DEFAULT_SEPARATION) -> Design:
    """Pointwise product ``{c*d : c in X1, d in X2}`` as a sorted design.

    Raises CollisionError when two of the ``|X1|*|X2|`` products are closer
    than ``separation``, i.e. when the product set is smaller than expected.
    """
    sums = (X1.angles[:, None] + X2.angles[None, :]).ravel()
    sums = np.mod(sums, TWO_PI)
    sums[sums >= TWO_PI] = 0.0
    sums = np.sort(sums)
    if sums.size > 1:
        gaps = np.diff(sums)
        wrap = TWO_PI - (sums[-1] - sums[0])
        closest = min(float(gaps.min()), wrap)
        if closest < separation:
            raise CollisionError(
                f"product of {len(X1)} x {len(X2)} points has a collision "
                f"(distance {closest:.3e} < {separation:.3e})")
    return Design.from_angles(sums.tolist(), separation)


def conjugate_closed(X: Design, separation: Optional[float] = None) -> bool:
    """True iff the design is mapped to itself by ``theta -> -theta``."""
    sep = X.separation if separation is None else separation
    a = X.angles
    d = np.mod(a[:, None] + a[None, :], TWO_PI)
    d = np.minimum(d, TWO_PI - d)
    return bool(np.all(d.min(axis=1) < sep))
