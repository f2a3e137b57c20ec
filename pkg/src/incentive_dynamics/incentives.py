"""Incentive functions and their validity check.

An incentive assigns each population a vector ``phi_i(x)`` and generates the
dynamic ``x_dot = phi - x * sum(phi)``. It is valid when ``phi_ia(x) >= 0``
wherever ``x_ia == 0`` and ``sum_a phi_ia(x) != -1``.

User callables (``g_shift`` and custom tables) receive the state as a tuple of
per-population numpy arrays and must be deterministic.
"""
from __future__ import annotations

import numbers
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import BoundaryState, DimensionMismatch
from .games import TIE_TOL, TIEBREAK_RULES, Game, _best_reply_sets, _fitness, _indicator, check_compatible
from .geometry import StateProfile, StateLike, as_profile

KINDS = ("replicator", "best-reply", "projection", "custom-table")
SUM_TOL = 1e-9
PROJECTION_EPS = 1e-12

IncentiveVector = tuple


@dataclass(frozen=True, eq=False)
class Incentive:
    """Specification of an incentive.

    Prefer the factory functions :func:`replicator`, :func:`best_reply`,
    :func:`projection` and :func:`custom_table` over calling this directly.
    """

    kind: str
    g_shift: Optional[Callable] = None
    tiebreak: Optional[str] = None
    table: Optional[Callable] = None
    interior_eps: Optional[float] = None
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown incentive kind {self.kind!r}; expected one of {KINDS}")
        present = {
            "g_shift": self.g_shift is not None,
            "tiebreak": self.tiebreak is not None,
            "table": self.table is not None,
            "interior_eps": self.interior_eps is not None,
        }
        allowed = {
            "replicator": {"g_shift"},
            "best-reply": {"tiebreak"},
            "projection": {"interior_eps"},
            "custom-table": {"table"},
        }[self.kind]
        extra = [k for k, v in present.items() if v and k not in allowed]
        if extra:
            raise ValueError(f"{self.kind} incentive does not take {extra}")
        if self.kind == "best-reply" and self.tiebreak not in TIEBREAK_RULES:
            raise ValueError(f"best-reply incentive needs tiebreak in {TIEBREAK_RULES}")
        if self.kind == "custom-table" and not callable(self.table):
            raise ValueError("custom-table incentive needs a callable table")
        if self.kind == "projection" and not (self.interior_eps > 0):
            raise ValueError("projection interior_eps must be positive")

    @property
    def identifier(self) -> str:
        if self.kind == "replicator":
            if self.g_shift is None:
                return "replicator"
            return f"replicator(g={self.name or getattr(self.g_shift, '__name__', 'custom')})"
        if self.kind == "best-reply":
            return f"best-reply({self.tiebreak})"
        if self.kind == "projection":
            return "projection"
        return f"custom-table({self.name or getattr(self.table, '__name__', 'table')})"

    def __repr__(self) -> str:
        return f"Incentive({self.identifier})"


def replicator(g_shift=None) -> Incentive:
    """Replicator incentive ``phi_ia = x_ia * (f_ia(x) + g_i(x))``.

    ``g_shift`` may be a number, or a callable returning one scalar per
    population (a scalar is broadcast). It cancels in the induced dynamic.
    """
    if g_shift is None:
        return Incentive("replicator")
    if isinstance(g_shift, numbers.Real):
        c = float(g_shift)
        return Incentive("replicator", g_shift=lambda xs: c, name=f"{c!r}")
    return Incentive("replicator", g_shift=g_shift)


def best_reply(tiebreak: str = "lowest-index") -> Incentive:
    return Incentive("best-reply", tiebreak=tiebreak)


def projection(interior_eps: float = PROJECTION_EPS) -> Incentive:
    """Incentive ``phi = f - mean(f) + x`` inducing ``x_dot = f - mean(f)``.

    Defined only on states whose entries are all at least ``interior_eps``.
    """
    return Incentive("projection", interior_eps=interior_eps)


def custom_table(table: Callable, name: str = "") -> Incentive:
    return Incentive("custom-table", table=table, name=name)


def _phi(inc: Incentive, game: Game, xs) -> list[np.ndarray]:
    kind = inc.kind
    if kind == "replicator":
        f = _fitness(game, xs)
        if inc.g_shift is None:
            return [x * fi for x, fi in zip(xs, f)]
        g = np.broadcast_to(np.asarray(inc.g_shift(tuple(xs)), dtype=float), (len(xs),))
        return [x * (fi + gi) for x, fi, gi in zip(xs, f, g)]
    if kind == "best-reply":
        sets = _best_reply_sets(_fitness(game, xs), TIE_TOL)
        return _indicator(sets, [x.size for x in xs], inc.tiebreak)
    if kind == "projection":
        if min(x.min() for x in xs) < inc.interior_eps:
            raise BoundaryState(f"projection incentive needs entries >= {inc.interior_eps}")
        f = _fitness(game, xs)
        return [fi - fi.mean() + x for x, fi in zip(xs, f)]
    out = [np.asarray(v, dtype=float) for v in inc.table(tuple(xs))]
    if len(out) != len(xs) or any(v.shape != x.shape for v, x in zip(out, xs)):
        raise DimensionMismatch("custom table returned vectors of the wrong shape")
    return out


def evaluate_incentive(inc: Incentive, game: Game, x: StateLike) -> IncentiveVector:
    """Incentive vector ``phi(x)``, one array per population."""
    x = as_profile(x)
    check_compatible(game, x)
    return tuple(_phi(inc, game, x.arrays()))


@dataclass(frozen=True)
class Violation:
    state: tuple
    population: int
    strategy: Optional[int]
    kind: str  # "negativity-at-zero" or "sum-equals-minus-one"


@dataclass
class ValidityReport:
    sampled_states: int
    violations: list
    skipped: int = 0
    incentive: str = ""
    game: str = ""
    seed: Optional[int] = None

    @property
    def verdict(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "type": "validity",
            "game": self.game,
            "incentive": self.incentive,
            "seed": self.seed,
            "sampled_states": self.sampled_states,
            "skipped_states": self.skipped,
            "violations": [
                {"state": [list(p) for p in v.state], "population": v.population,
                 "strategy": v.strategy, "kind": v.kind}
                for v in self.violations
            ],
            "verdict": self.verdict,
        }


def _probe_states(rng, sizes, samples):
    for _ in range(samples):
        xs = [rng.dirichlet(np.ones(n)) for n in sizes]
        yield xs
        for i, n in enumerate(sizes):
            if n == 1:
                continue
            for a in range(n):
                pinned = xs[i].copy()
                pinned[a] = 0.0
                if pinned.sum() == 0.0:
                    continue
                ys = list(xs)
                ys[i] = pinned / pinned.sum()
                yield ys


def validate_incentive(
    inc: Incentive, game: Game, samples: int = 200, seed: int = 0, sum_tol: float = SUM_TOL
) -> ValidityReport:
    """Probe the validity conditions on random states and their boundary faces.

    For each of ``samples`` interior Dirichlet draws, the draw itself is
    checked and so is every state obtained by zeroing one coordinate of one
    population. States where the incentive is undefined (projection at the
    boundary) are counted as skipped.
    """
    if samples < 1:
        raise ValueError("samples must be at least 1")
    rng = np.random.default_rng(seed)
    violations = []
    checked = skipped = 0
    for xs in _probe_states(rng, game.strategy_counts, samples):
        try:
            phi = _phi(inc, game, xs)
        except BoundaryState:
            skipped += 1
            continue
        checked += 1
        state = tuple(tuple(float(v) for v in x) for x in xs)
        for i, (x, p) in enumerate(zip(xs, phi)):
            for a in np.flatnonzero((x == 0.0) & (p < 0.0)):
                violations.append(Violation(state, i, int(a), "negativity-at-zero"))
            if not abs(p.sum() + 1.0) > sum_tol:
                violations.append(Violation(state, i, None, "sum-equals-minus-one"))
    return ValidityReport(checked, violations, skipped, inc.identifier, game.identifier, seed)
