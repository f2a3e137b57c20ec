"""Bilinear payoff structures for one and two populations.

For one population with payoff matrix ``A`` the fitness landscape is
``f(x) = A @ x``. For two populations with matrices ``A`` and ``B`` (both of
shape ``(n1, n2)``) it is ``f1(x) = A @ x2`` and ``f2(x) = B.T @ x1``.
"""
from __future__ import annotations

import hashlib
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch
from .geometry import StateProfile, StateLike, as_profile

TIE_TOL = 1e-9
TIEBREAK_RULES = ("lowest-index", "uniform-mixture")

# per-population vectors f_i(x), one array per population
FitnessVector = tuple


@dataclass(frozen=True, eq=False)
class Game:
    """Payoff matrices of a one- or two-population bilinear game."""

    matrices: tuple

    def __post_init__(self):
        mats = tuple(np.array(m, dtype=float) for m in self.matrices)
        for m in mats:
            if m.ndim != 2:
                raise DimensionMismatch(f"payoff matrices must be 2-d, got shape {m.shape}")
            if not np.all(np.isfinite(m)):
                raise ValueError("payoff entries must be finite")
            m.setflags(write=False)
        if len(mats) == 1:
            if mats[0].shape[0] != mats[0].shape[1]:
                raise DimensionMismatch(f"single-population payoff must be square, got {mats[0].shape}")
        elif len(mats) == 2:
            if mats[0].shape != mats[1].shape:
                raise DimensionMismatch(f"bimatrix shapes differ: {mats[0].shape} vs {mats[1].shape}")
        else:
            raise DimensionMismatch("only 1 or 2 populations are supported")
        object.__setattr__(self, "matrices", mats)

    @classmethod
    def symmetric(cls, A) -> "Game":
        return cls((A,))

    @classmethod
    def bimatrix(cls, A, B) -> "Game":
        return cls((A, B))

    @property
    def population_count(self) -> int:
        return len(self.matrices)

    @property
    def strategy_counts(self) -> tuple[int, ...]:
        if self.population_count == 1:
            return (self.matrices[0].shape[0],)
        return self.matrices[0].shape

    @property
    def identifier(self) -> str:
        h = hashlib.sha256()
        for m in self.matrices:
            h.update(np.ascontiguousarray(m).tobytes())
        shape = "x".join(str(n) for n in self.strategy_counts)
        kind = "symmetric" if self.population_count == 1 else "bimatrix"
        return f"{kind}[{shape}]#{h.hexdigest()[:12]}"

    def __repr__(self) -> str:
        return f"Game({self.identifier})"


def rps(win: float, lose: float) -> Game:
    """Rock-paper-scissors with payoff ``win`` for a win and ``-lose`` for a loss.

    Rows are ``[0, -lose, win]``, ``[win, 0, -lose]``, ``[-lose, win, 0]``.
    The barycenter is an ESS when ``win > lose``.
    """
    a, b = float(win), float(lose)
    return Game.symmetric([[0.0, -b, a], [a, 0.0, -b], [-b, a, 0.0]])


def zero_game(n: int) -> Game:
    return Game.symmetric(np.zeros((n, n)))


def check_compatible(game: Game, x: StateProfile) -> None:
    if x.sizes != game.strategy_counts:
        raise DimensionMismatch(f"state sizes {x.sizes} do not match game {game.strategy_counts}")


def _fitness(game: Game, xs) -> list[np.ndarray]:
    if len(game.matrices) == 1:
        return [game.matrices[0] @ xs[0]]
    A, B = game.matrices
    return [A @ xs[1], B.T @ xs[0]]


def fitness(game: Game, x: StateLike) -> FitnessVector:
    """Fitness of every pure strategy, one array per population."""
    x = as_profile(x)
    check_compatible(game, x)
    return tuple(_fitness(game, x.arrays()))


def expected_payoff(game: Game, p: StateLike, x: StateLike) -> np.ndarray:
    """Per-population payoff ``p_i . f_i(x)`` of playing ``p`` against ``x``."""
    p, x = as_profile(p), as_profile(x)
    check_compatible(game, p)
    check_compatible(game, x)
    f = _fitness(game, x.arrays())
    return np.array([pi @ fi for pi, fi in zip(p.arrays(), f)])


def _best_reply_sets(f, tie_tol: float) -> list[np.ndarray]:
    return [np.flatnonzero(fi >= fi.max() - tie_tol) for fi in f]


def best_reply_set(game: Game, x: StateLike, tie_tol: float = TIE_TOL) -> tuple[tuple[int, ...], ...]:
    """Indices within ``tie_tol`` of the best fitness, per population."""
    x = as_profile(x)
    check_compatible(game, x)
    return tuple(tuple(int(k) for k in s) for s in _best_reply_sets(_fitness(game, x.arrays()), tie_tol))


def _indicator(sets, sizes, tiebreak: str) -> list[np.ndarray]:
    out = []
    for s, n in zip(sets, sizes):
        e = np.zeros(n)
        if tiebreak == "lowest-index":
            e[s[0]] = 1.0
        else:
            e[s] = 1.0 / len(s)
        out.append(e)
    return out


def best_reply_indicator(
    game: Game, x: StateLike, tiebreak: str = "lowest-index", tie_tol: float = TIE_TOL
) -> StateProfile:
    """Best reply to ``x`` as a state profile.

    ``"lowest-index"`` picks the pure strategy with the smallest index among
    the tied best replies; ``"uniform-mixture"`` spreads mass evenly over them.
    """
    if tiebreak not in TIEBREAK_RULES:
        raise ValueError(f"unknown tiebreak {tiebreak!r}; expected one of {TIEBREAK_RULES}")
    x = as_profile(x)
    check_compatible(game, x)
    sets = _best_reply_sets(_fitness(game, x.arrays()), tie_tol)
    return StateProfile(tuple(_indicator(sets, x.sizes, tiebreak)))
