"""Incentive vector field and fixed-step integration on products of simplices."""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import DimensionMismatch, LeftSimplex, NonFinite
from .games import Game, check_compatible
from .geometry import StateProfile, StateLike, _clamp_array, as_profile
from .incentives import Incentive, _phi
from .stability.lyapunov import _derivative, _value

METHODS = ("rk4-fixed", "euler-fixed")
BOUNDARY_POLICIES = ("clamp", "reject")

TangentVector = tuple


@dataclass(frozen=True)
class SolverConfig:
    method: str = "rk4-fixed"
    h: float = 1e-3
    t_end: float = 10.0
    record_every: int = 1
    boundary_policy: str = "clamp"
    eps: float = 1e-12

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}; expected one of {METHODS}")
        if self.boundary_policy not in BOUNDARY_POLICIES:
            raise ValueError(f"unknown boundary policy {self.boundary_policy!r}")
        if not (self.h > 0 and math.isfinite(self.h)):
            raise ValueError("h must be positive")
        if not (self.t_end > 0 and math.isfinite(self.t_end)):
            raise ValueError("t_end must be positive")
        if int(self.record_every) != self.record_every or self.record_every < 1:
            raise ValueError("record_every must be a positive integer")
        if not (self.eps > 0):
            raise ValueError("eps must be positive")


def _tangent(xs, phi) -> list[np.ndarray]:
    return [p - x * p.sum() for x, p in zip(xs, phi)]


def make_field(inc: Incentive, game: Game) -> Callable:
    """The incentive dynamic as a callable on per-population arrays."""

    def field(xs):
        return _tangent(xs, _phi(inc, game, xs))

    return field


def vector_field(inc: Incentive, game: Game, x: StateLike) -> TangentVector:
    """``x_dot_ia = phi_ia(x) - x_ia * sum_b phi_ib(x)`` for every population."""
    x = as_profile(x)
    check_compatible(game, x)
    xs = x.arrays()
    return tuple(_tangent(xs, _phi(inc, game, xs)))


def _flat_field(field: Callable, sizes: Sequence[int]) -> Callable:
    if len(sizes) == 1:
        return lambda y: np.asarray(field((y,))[0], dtype=float)
    cuts = np.cumsum(sizes)[:-1]
    return lambda y: np.concatenate(field(tuple(np.split(y, cuts))))


def _advance(fn: Callable, y: np.ndarray, h: float, method: str) -> np.ndarray:
    if method == "euler-fixed":
        return y + h * fn(y)
    k1 = fn(y)
    k2 = fn(y + 0.5 * h * k1)
    k3 = fn(y + 0.5 * h * k2)
    k4 = fn(y + h * k3)
    return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def _apply_policy(y: np.ndarray, sizes, policy: str, eps: float) -> np.ndarray:
    out = []
    start = 0
    for n in sizes:
        w = y[start:start + n]
        start += n
        if policy == "reject":
            if np.any(w < 0):
                raise LeftSimplex(f"step produced negative weights {w}")
            out.append(w / w.sum())
        else:
            out.append(_clamp_array(w, eps))
    return out[0] if len(out) == 1 else np.concatenate(out)


def step(field: Callable, x: StateLike, cfg: SolverConfig, h: Optional[float] = None) -> StateProfile:
    """Advance ``x`` by one explicit step, then apply the boundary policy.

    ``field`` maps a tuple of per-population arrays to per-population
    velocities (see :func:`make_field`). ``h`` overrides ``cfg.h``.
    """
    x = as_profile(x)
    fn = _flat_field(field, x.sizes)
    y = _advance(fn, x.flat(), cfg.h if h is None else h, cfg.method)
    if not np.all(np.isfinite(y)):
        raise NonFinite("step produced a non-finite state")
    return StateProfile.from_flat(_apply_policy(y, x.sizes, cfg.boundary_policy, cfg.eps), x.sizes)


def _frozen(a):
    if a is None:
        return None
    a = np.asarray(a)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class Trajectory:
    """Recorded states of one integration run.

    ``flat`` holds one row per record with populations concatenated in
    declaration order. ``V`` and ``Vdot`` are present when a monitor target
    was given.
    """

    times: np.ndarray
    flat: np.ndarray
    sizes: tuple
    V: Optional[np.ndarray] = None
    Vdot: Optional[np.ndarray] = None
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        for name in ("times", "flat", "V", "Vdot"):
            object.__setattr__(self, name, _frozen(getattr(self, name)))
        n = len(self.times)
        if self.flat.shape != (n, sum(self.sizes)):
            raise DimensionMismatch("state rows do not match times/sizes")
        for ch in (self.V, self.Vdot):
            if ch is not None and len(ch) != n:
                raise DimensionMismatch("monitor channel length differs from times")
        if n > 1 and not np.all(np.diff(self.times) > 0):
            raise ValueError("times must be strictly increasing")

    def __len__(self) -> int:
        return len(self.times)

    def state(self, k: int) -> StateProfile:
        return StateProfile.from_flat(self.flat[k], self.sizes)

    @property
    def states(self) -> list[StateProfile]:
        return [self.state(k) for k in range(len(self))]

    @property
    def final(self) -> StateProfile:
        return self.state(len(self) - 1)


def _step_schedule(h: float, t_end: float):
    n = int(round(t_end / h))
    if n >= 1 and abs(n * h - t_end) <= 1e-9 * max(1.0, t_end):
        return n, h
    n = math.ceil(t_end / h)
    return n, t_end - (n - 1) * h


def integrate(
    game: Game,
    inc: Incentive,
    x0: StateLike,
    cfg: SolverConfig = SolverConfig(),
    target: Optional[StateLike] = None,
) -> Trajectory:
    """Integrate the incentive dynamic from ``x0`` up to ``cfg.t_end``.

    States are recorded at ``t = 0``, every ``cfg.record_every`` steps and at
    the final time. With a ``target``, the KL monitor ``V`` and its analytic
    derivative are recorded alongside.
    """
    x0 = as_profile(x0)
    check_compatible(game, x0)
    sizes = x0.sizes
    ts = None
    if target is not None:
        target = as_profile(target)
        check_compatible(game, target)
        if target.min() <= 0:
            raise ValueError("monitor target must be strictly interior")
        ts = target.arrays()
    cuts = np.cumsum(sizes)[:-1]
    fn = _flat_field(make_field(inc, game), sizes)
    n_steps, h_last = _step_schedule(cfg.h, cfg.t_end)

    times, rows, V, Vdot = [], [], [], []

    def record(t, y):
        times.append(t)
        rows.append(y)
        if ts is not None:
            xs = np.split(y, cuts)
            v = _value(ts, xs)
            d = _derivative(ts, xs, _phi(inc, game, xs))
            if not (math.isfinite(v) and math.isfinite(d)):
                raise NonFinite(f"monitor became non-finite at t={t}")
            V.append(v)
            Vdot.append(d)

    y = x0.flat()
    record(0.0, y)
    for k in range(1, n_steps + 1):
        h = h_last if k == n_steps else cfg.h
        y = _advance(fn, y, h, cfg.method)
        if not np.all(np.isfinite(y)):
            raise NonFinite(f"state became non-finite at step {k}")
        y = _apply_policy(y, sizes, cfg.boundary_policy, cfg.eps)
        if k == n_steps:
            record(cfg.t_end, y)
        elif k % cfg.record_every == 0:
            record(k * cfg.h, y)

    meta = {"game": game, "incentive": inc, "config": cfg, "target": target, "seed": None}
    return Trajectory(
        np.array(times), np.array(rows), sizes,
        np.array(V) if ts is not None else None,
        np.array(Vdot) if ts is not None else None,
        meta,
    )


def integrate_many(
    game: Game,
    inc: Incentive,
    x0s: Sequence[StateLike],
    cfg: SolverConfig = SolverConfig(),
    target: Optional[StateLike] = None,
    workers: Optional[int] = None,
) -> list[Trajectory]:
    """Integrate several initial states; results keep the input order."""
    if workers == 1 or len(x0s) <= 1:
        return [integrate(game, inc, x0, cfg, target) for x0 in x0s]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda x0: integrate(game, inc, x0, cfg, target), x0s))
