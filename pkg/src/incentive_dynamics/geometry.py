"""Points on probability simplices and products of simplices.

A :class:`SimplexPoint` is a probability vector over the pure strategies of
one population, a :class:`StateProfile` is one such vector per population.
Both are immutable; the underlying arrays are flagged read-only.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence, Union

import numpy as np

from .errors import (
    BadEpsilon,
    BoundaryCenter,
    DimensionMismatch,
    InfeasibleRadius,
    NegativeWeight,
    ZeroMass,
)

SUM_TOL = 1e-12
DEFAULT_MIN_COMPONENT = 1e-6


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr = np.array(arr, dtype=float, copy=True)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class SimplexPoint:
    """Probability vector over one population's pure strategies."""

    weights: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float)
        if w.ndim != 1 or w.size == 0:
            raise DimensionMismatch(f"weights must be a nonempty 1-d vector, got shape {w.shape}")
        if not np.all(np.isfinite(w)):
            raise ValueError("weights must be finite")
        if np.any(w < 0):
            raise NegativeWeight(f"negative weight in {w}")
        if abs(w.sum() - 1.0) > SUM_TOL:
            raise ValueError(f"weights sum to {w.sum()!r}, not 1")
        object.__setattr__(self, "weights", _frozen(w))

    def __len__(self) -> int:
        return self.weights.size

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.weights, dtype=dtype)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SimplexPoint):
            return NotImplemented
        return np.array_equal(self.weights, other.weights)

    def __hash__(self) -> int:
        return hash(self.weights.tobytes())

    def __repr__(self) -> str:
        return f"SimplexPoint({np.array2string(self.weights, precision=6)})"

    @property
    def dim(self) -> int:
        return self.weights.size


@dataclass(frozen=True, eq=False)
class StateProfile:
    """One :class:`SimplexPoint` per population, in declaration order."""

    populations: tuple

    def __post_init__(self):
        pops = tuple(self.populations)
        if not pops:
            raise DimensionMismatch("a state profile needs at least one population")
        pops = tuple(p if isinstance(p, SimplexPoint) else SimplexPoint(p) for p in pops)
        object.__setattr__(self, "populations", pops)

    @classmethod
    def normalized(cls, *raw) -> "StateProfile":
        """Build a profile by normalizing each raw nonnegative vector."""
        return cls(tuple(make_simplex_point(r) for r in raw))

    @classmethod
    def from_flat(cls, flat, sizes: Sequence[int]) -> "StateProfile":
        flat = np.asarray(flat, dtype=float)
        if flat.size != sum(sizes):
            raise DimensionMismatch(f"flat vector of size {flat.size} does not match sizes {tuple(sizes)}")
        return cls(tuple(np.split(flat, np.cumsum(sizes)[:-1])))

    def __len__(self) -> int:
        return len(self.populations)

    def __iter__(self) -> Iterator[SimplexPoint]:
        return iter(self.populations)

    def __getitem__(self, i: int) -> SimplexPoint:
        return self.populations[i]

    def __eq__(self, other) -> bool:
        if not isinstance(other, StateProfile):
            return NotImplemented
        return self.sizes == other.sizes and all(a == b for a, b in zip(self, other))

    def __hash__(self) -> int:
        return hash(tuple(hash(p) for p in self.populations))

    def __repr__(self) -> str:
        inner = ", ".join(np.array2string(p.weights, precision=6) for p in self.populations)
        return f"StateProfile({inner})"

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(p.dim for p in self.populations)

    def arrays(self) -> list[np.ndarray]:
        return [p.weights for p in self.populations]

    def flat(self) -> np.ndarray:
        return np.concatenate(self.arrays())

    def min(self) -> float:
        return float(min(p.weights.min() for p in self.populations))

    def tolist(self) -> list[list[float]]:
        return [p.weights.tolist() for p in self.populations]


StateLike = Union[StateProfile, SimplexPoint, Sequence]


def as_profile(x: StateLike) -> StateProfile:
    """Coerce a profile, a single simplex point or nested sequences to a profile.

    A flat sequence of numbers is read as a single population; a sequence of
    sequences as one vector per population. Raw input is validated, not
    normalized.
    """
    if isinstance(x, StateProfile):
        return x
    if isinstance(x, SimplexPoint):
        return StateProfile((x,))
    if isinstance(x, np.ndarray) and x.ndim == 1:
        return StateProfile((x,))
    items = list(x)
    if items and all(isinstance(it, (SimplexPoint, np.ndarray, list, tuple)) for it in items):
        return StateProfile(tuple(items))
    return StateProfile((np.asarray(items, dtype=float),))


def make_simplex_point(raw) -> SimplexPoint:
    """Normalize a nonnegative vector to unit mass.

    >>> make_simplex_point([0.3, 0.3, 0.6]).weights
    array([0.25, 0.25, 0.5 ])
    """
    w = np.asarray(raw, dtype=float)
    if w.ndim != 1 or w.size == 0:
        raise DimensionMismatch(f"expected a nonempty 1-d vector, got shape {w.shape}")
    if not np.all(np.isfinite(w)):
        raise ValueError("entries must be finite")
    if np.any(w < 0):
        raise NegativeWeight(f"negative entry in {w}")
    total = w.sum()
    if total <= 0:
        raise ZeroMass("entries sum to zero")
    return SimplexPoint(w / total)


def _clamp_array(w: np.ndarray, eps: float) -> np.ndarray:
    # Mix with the barycenter just enough to lift the smallest entry to eps.
    # Also accepts slightly negative entries coming out of an explicit step.
    w = w / w.sum()
    m = w.min()
    if m >= eps:
        return w
    n = w.size
    c = (eps - m) / (1.0 - n * eps)
    q = (w + c) / (1.0 + n * c)
    return np.maximum(q, eps)


def interior_clamp(p: SimplexPoint, eps: float) -> SimplexPoint:
    """Push ``p`` into the ``eps``-interior of its simplex.

    Points whose entries are all ``>= eps`` are returned unchanged. Otherwise
    the point is moved toward the barycenter by the smallest amount that lifts
    every entry to at least ``eps``, so the map is idempotent.
    """
    if not isinstance(p, SimplexPoint):
        p = SimplexPoint(p)
    if not (0.0 < eps < 1.0 / p.dim):
        raise BadEpsilon(f"eps={eps} outside (0, 1/{p.dim})")
    if p.weights.min() >= eps:
        return p
    return SimplexPoint(_clamp_array(p.weights, eps))


def _perturb(rng: np.random.Generator, center: np.ndarray, radius: float) -> np.ndarray:
    n = center.size
    if n == 1:
        return center.copy()
    direction = rng.dirichlet(np.ones(n)) - 1.0 / n
    size = np.abs(direction).max()
    if size == 0.0:
        return center.copy()
    scale = radius * rng.uniform() ** (1.0 / (n - 1)) / size
    return center + scale * direction


def sample_neighborhood(
    center,
    radius: float,
    count: int,
    min_component: float = DEFAULT_MIN_COMPONENT,
    seed: int = 0,
    max_tries: int | None = None,
) -> list:
    """Draw ``count`` points from the sup-norm ball around ``center``.

    Every point differs from ``center``, lies within ``radius`` of it in the
    sup norm (over all populations when ``center`` is a profile), and has all
    entries ``>= min_component``. Directions are Dirichlet draws centered at
    the barycenter; candidates breaking a constraint are redrawn.

    Returns a list of the same type as ``center`` (``SimplexPoint`` or
    ``StateProfile``).
    """
    single = isinstance(center, SimplexPoint)
    profile = as_profile(center)
    if radius <= 0:
        raise ValueError("radius must be positive")
    if count < 1:
        raise ValueError("count must be at least 1")
    if profile.min() < min_component:
        raise BoundaryCenter(f"center has an entry below min_component={min_component}")

    rng = np.random.default_rng(seed)
    arrays = profile.arrays()
    if max_tries is None:
        max_tries = 1000 * count + 10_000
    out = []
    tries = 0
    while len(out) < count:
        if tries >= max_tries:
            raise InfeasibleRadius(
                f"only {len(out)} of {count} admissible points after {tries} draws "
                f"(radius={radius}, min_component={min_component})"
            )
        tries += 1
        cand = [_perturb(rng, c, radius) for c in arrays]
        if any(np.any(w < min_component) for w in cand):
            continue
        try:
            point = StateProfile.normalized(*cand)
        except (NegativeWeight, ZeroMass):
            continue
        deltas = [np.abs(p.weights - c).max() for p, c in zip(point, arrays)]
        if max(deltas) > radius or max(deltas) == 0.0:
            continue
        if point.min() < min_component:
            continue
        out.append(point[0] if single else point)
    return out
