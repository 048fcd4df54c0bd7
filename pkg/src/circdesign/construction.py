"""Designs with prescribed harmonic strength.

A 5-point design annihilating exactly the degree ``t`` is built from a
parameter ``x``; designs for a set ``T`` of degrees are products of such
5-point designs, one per degree, with parameters chosen so the product has
full size ``5**|T|``.  Regular polygons and pairs of antipodal pairs serve
as reference designs of known strength.
"""

from __future__ import annotations

import logging
import math
from dataclasses import asdict, dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from .core import (DEFAULT_SEPARATION, ConstructionTrace, Design, TraceStep,
                   canonicalize, product)
from .errors import (CollisionError, DegenerateError, DomainError, SearchExhaustedError)
from .moment_functions import margin

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class StrengthSpec:
    """A non-empty set of positive degrees, kept strictly increasing."""

    degrees: tuple[int, ...]

    def __post_init__(self) -> None:
        degs = tuple(int(d) for d in self.degrees)
        if not degs:
            raise ValueError("strength set must be non-empty")
        if any(d < 1 for d in degs):
            raise ValueError(f"degrees must be >= 1, got {list(degs)}")
        if any(b <= a for a, b in zip(degs, degs[1:])):
            raise ValueError(f"degrees must be strictly increasing, got {list(degs)}")
        object.__setattr__(self, "degrees", degs)

    @classmethod
    def of(cls, degrees: Iterable[int]) -> "StrengthSpec":
        """Build from any iterable, sorting and dropping duplicates."""
        return cls(tuple(sorted(set(int(d) for d in degrees))))

    @classmethod
    def parse(cls, text: str) -> "StrengthSpec":
        """Parse comma-separated integers such as ``"2,5"``."""
        parts = [p.strip() for p in text.split(",") if p.strip()]
        try:
            return cls.of(int(p) for p in parts)
        except ValueError as exc:
            raise ValueError(f"bad strength set {text!r}: {exc}") from None

    def __iter__(self):
        return iter(self.degrees)

    def __len__(self) -> int:
        return len(self.degrees)

    def __contains__(self, k: object) -> bool:
        return k in self.degrees

    def __str__(self) -> str:
        return ",".join(map(str, self.degrees))


@dataclass(frozen=True)
class SearchConfig:
    """Knobs of the parameter search.

    ``k_max=None`` means ``max(10 * max(T), 200)`` for the strength set at hand.
    """

    k_max: Optional[int] = None
    margin_min: float = 1e-6
    separation: float = DEFAULT_SEPARATION
    max_retries: int = 10_000
    seed: int = 0
    domain_shrink: float = 1e-3

    def __post_init__(self) -> None:
        if self.k_max is not None and self.k_max < 1:
            raise ValueError("k_max must be positive")
        if self.margin_min < 0:
            raise ValueError("margin_min must be >= 0")
        if not self.separation > 0:
            raise ValueError("separation must be positive")
        if self.max_retries < 1:
            raise ValueError("max_retries must be positive")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be an unsigned 64-bit integer")
        # both halves of the sampling domain have length 3/4 - 2*eps
        if not 0 <= self.domain_shrink < 0.375:
            raise ValueError("domain_shrink must lie in [0, 3/8)")

    def resolve_k_max(self, degrees: Iterable[int]) -> int:
        if self.k_max is not None:
            return self.k_max
        return max(10 * max(degrees), 200)

    def snapshot(self) -> dict:
        return asdict(self)


def singleton_angles(t: int, x: float) -> list[float]:
    a = math.acos(x) / t
    b = math.acos(-x - 0.5) / t
    return [0.0, canonicalize(a), canonicalize(-a), canonicalize(b), canonicalize(-b)]


def construct_singleton(t: int, x: float, separation: float = DEFAULT_SEPARATION) -> Design:
    """The 5-point design ``{1, e^{+-i arccos(x)/t}, e^{+-i arccos(-x-1/2)/t}}``.

    Its t-th moment is ``f_1(x) = 0`` for every admissible ``x``; for a
    well-chosen ``x`` no other degree vanishes.
    """
    if t < 1:
        raise DomainError(f"t must be >= 1, got {t}")
    if not (-1.0 < x < 0.5):
        raise DomainError(f"x={x!r} outside the open interval (-1, 1/2)")
    try:
        design = Design.from_angles(singleton_angles(t, x), separation)
    except DegenerateError as exc:
        raise DegenerateError(f"5-point design for t={t}, x={x!r} degenerates: {exc}") from None
    return design.with_trace(ConstructionTrace((TraceStep(t, x),)))


def _sampling_stream(seed: int, t: int, context_size: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([seed, t, context_size]))


def _draw(rng: np.random.Generator, eps: float) -> float:
    """Uniform draw from ``(-1+eps, 1/2-eps)`` minus ``(-1/4-eps, -1/4+eps)``."""
    half = 0.75 - 2.0 * eps
    u = rng.random() * 2.0 * half
    if u < half:
        return -1.0 + eps + u
    return -0.25 + eps + (u - half)


def search_parameter(t: int, cfg: SearchConfig, collision_context: Optional[Design] = None,
                     k_max: Optional[int] = None) -> float:
    """First acceptable ``x`` from a seeded uniform stream.

    A candidate is accepted when the 5-point design for ``(t, x)`` keeps every
    moment of degree ``k != t``, ``k <= k_max``, at least ``cfg.margin_min``
    in magnitude and, if ``collision_context`` is given, its product with the
    context is collision-free.  The stream depends only on ``cfg.seed``, ``t``
    and the size of the context.
    """
    k_max = k_max if k_max is not None else cfg.resolve_k_max([t])
    if k_max < t:
        raise DomainError(f"k_max={k_max} must be >= t={t}")
    rng = _sampling_stream(cfg.seed, t, 0 if collision_context is None else len(collision_context))
    for attempt in range(cfg.max_retries):
        x = _draw(rng, cfg.domain_shrink)
        if margin(t, x, k_max) < cfg.margin_min:
            continue
        try:
            single = construct_singleton(t, x, cfg.separation)
            if collision_context is not None:
                product(collision_context, single, cfg.separation)
        except (DegenerateError, CollisionError):
            continue
        log.debug("t=%d: accepted x=%r after %d rejections", t, x, attempt)
        return x
    raise SearchExhaustedError(
        f"no acceptable parameter for t={t} in {cfg.max_retries} draws "
        f"(margin_min={cfg.margin_min}, k_max={k_max})")


def assemble(steps: Iterable[TraceStep], separation: float = DEFAULT_SEPARATION) -> Design:
    """Multiply out the 5-point designs of a trace, in order."""
    design = None
    for s in steps:
        single = construct_singleton(s.t, s.x, separation)
        design = single if design is None else product(design, single, separation)
    if design is None:
        raise ValueError("no construction steps")
    return design


def construct_design(T: StrengthSpec, cfg: SearchConfig = SearchConfig(),
                     order: Optional[Sequence[int]] = None) -> Design:
    """Design with ``5**|T|`` points whose vanishing moments up to k_max are exactly ``T``.

    Degrees are processed in increasing order unless ``order`` gives another
    permutation of ``T``; each new parameter is searched with the design
    built so far as collision context.
    """
    if order is None:
        order = T.degrees
    elif sorted(order) != list(T.degrees):
        raise ValueError(f"order {list(order)} is not a permutation of {list(T.degrees)}")
    k_max = cfg.resolve_k_max(T.degrees)
    steps: list[TraceStep] = []
    design: Optional[Design] = None
    for t in order:
        x = search_parameter(t, cfg, design, k_max=k_max)
        steps.append(TraceStep(t, x))
        single = construct_singleton(t, x, cfg.separation)
        design = single if design is None else product(design, single, cfg.separation)
    snapshot = cfg.snapshot()
    snapshot["k_max"] = k_max
    trace = ConstructionTrace(tuple(steps), seed=cfg.seed, config=snapshot)
    return design.with_trace(trace)


def replay(trace: ConstructionTrace, separation: float = DEFAULT_SEPARATION) -> Design:
    """Rebuild a design from the parameters recorded in its trace."""
    if trace.config is not None:
        separation = float(trace.config.get("separation", separation))
    return assemble(trace.steps, separation).with_trace(trace)


def regular_ngon(n: int, offset: float = 0.0, separation: float = DEFAULT_SEPARATION) -> Design:
    """Vertices ``offset + 2*pi*j/n`` of a regular n-gon."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return Design.from_angles([offset + 2.0 * math.pi * j / n for j in range(n)], separation)


def antipodal_pairs(theta: float, separation: float = DEFAULT_SEPARATION) -> Design:
    """The two antipodal pairs ``{0, pi}`` and ``{theta, theta + pi}``; every odd degree vanishes."""
    try:
        return Design.from_angles([0.0, math.pi, theta, theta + math.pi], separation)
    except DegenerateError as exc:
        raise DegenerateError(f"antipodal pairs coincide for theta={theta!r}: {exc}") from None
