"""The summed KL divergence to a target state and its time derivative.

Along the incentive dynamic, ``V(x) = sum_i D(xhat_i || x_i)`` has derivative
``sum_i sum_a (x_ia - xhat_ia) / x_ia * phi_ia(x)``, which is negative exactly
when the per-population incentive margins are positive in aggregate. The
margin of population ``i`` is ``xhat_i . (phi_i / x_i) - sum_a phi_ia``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import BoundaryState, DimensionMismatch, TooShort
from ..games import TIE_TOL, _best_reply_sets, _fitness
from ..geometry import StateProfile, StateLike, as_profile
from ..incentives import _phi
from .measures import kl_divergence

MONOTONE_TOL = 1e-12
REL_ERROR_FLOOR = 1e-10


def _shapes_match(a: StateProfile, b: StateProfile) -> None:
    if a.sizes != b.sizes:
        raise DimensionMismatch(f"profiles of different shape {a.sizes} and {b.sizes}")


def _require_interior(xs) -> None:
    if min(x.min() for x in xs) <= 0.0:
        raise BoundaryState("state must be strictly interior")


def _value(ts, xs) -> float:
    return sum(kl_divergence(t, x) for t, x in zip(ts, xs))


def _derivative(ts, xs, phi) -> float:
    return float(sum(((x - t) / x) @ p for t, x, p in zip(ts, xs, phi)))


def _margins(ts, xs, phi) -> np.ndarray:
    return np.array([t @ (p / x) - p.sum() for t, x, p in zip(ts, xs, phi)])


def lyapunov_value(target: StateLike, x: StateLike) -> float:
    target, x = as_profile(target), as_profile(x)
    _shapes_match(target, x)
    return _value(target.arrays(), x.arrays())


def lyapunov_derivative(target: StateLike, x: StateLike, phi) -> float:
    """Rate of change of :func:`lyapunov_value` along the incentive dynamic at ``x``."""
    target, x = as_profile(target), as_profile(x)
    _shapes_match(target, x)
    xs = x.arrays()
    _require_interior(xs)
    phi = [np.asarray(p, dtype=float) for p in phi]
    if [p.shape for p in phi] != [v.shape for v in xs]:
        raise DimensionMismatch("incentive vector does not match the state")
    return _derivative(target.arrays(), xs, phi)


def iss_margin(target: StateLike, x: StateLike, phi) -> np.ndarray:
    """Per-population incentive stability margin of ``target`` against ``x``.

    ``target`` is incentive-stable against ``x`` when every entry is positive.
    """
    target, x = as_profile(target), as_profile(x)
    _shapes_match(target, x)
    xs = x.arrays()
    _require_interior(xs)
    phi = [np.asarray(p, dtype=float) for p in phi]
    if [p.shape for p in phi] != [v.shape for v in xs]:
        raise DimensionMismatch("incentive vector does not match the state")
    return _margins(target.arrays(), xs, phi)


@dataclass
class LyapunovReport:
    t: np.ndarray
    V: np.ndarray
    Vdot_analytic: np.ndarray
    Vdot_fd: np.ndarray
    max_rel_error: float
    monotone: bool
    violations: int
    switch_flags: np.ndarray
    floor: float = REL_ERROR_FLOOR
    tol: float = MONOTONE_TOL

    def to_dict(self) -> dict:
        return {
            "type": "lyapunov",
            "records": int(self.t.size),
            "V_start": float(self.V[0]),
            "V_end": float(self.V[-1]),
            "max_rel_error": self.max_rel_error,
            "rel_error_floor": self.floor,
            "monotone": self.monotone,
            "monotonicity_tol": self.tol,
            "violations": self.violations,
            "switch_adjacent": int(self.switch_flags.sum()),
        }


def lyapunov_report(
    traj, target: StateLike, game=None, inc=None, tol: float = MONOTONE_TOL, floor: float = REL_ERROR_FLOOR
) -> LyapunovReport:
    """Compare the analytic derivative of V with finite differences along ``traj``.

    ``game`` and ``inc`` default to those stored in the trajectory metadata.
    The finite-difference series uses central differences and is NaN at both
    ends. For best-reply incentives, records within one step of a change of
    the best-reply set are flagged; flagged records are left out of the
    monotonicity count and the relative-error maximum.
    """
    game = game if game is not None else traj.metadata["game"]
    inc = inc if inc is not None else traj.metadata["incentive"]
    target = as_profile(target)
    if target.sizes != traj.sizes:
        raise DimensionMismatch(f"target sizes {target.sizes} do not match trajectory {traj.sizes}")
    n = len(traj.times)
    if n < 3:
        raise TooShort(f"need at least 3 records, got {n}")
    ts = target.arrays()
    _require_interior(ts)
    cuts = np.cumsum(traj.sizes)[:-1]
    t = np.asarray(traj.times, dtype=float)
    V = np.empty(n)
    Vdot = np.empty(n)
    br = []
    for k, row in enumerate(traj.flat):
        xs = np.split(row, cuts)
        V[k] = _value(ts, xs)
        Vdot[k] = _derivative(ts, xs, _phi(inc, game, xs))
        if inc.kind == "best-reply":
            br.append(tuple(tuple(s) for s in _best_reply_sets(_fitness(game, xs), TIE_TOL)))

    fd = np.full(n, np.nan)
    fd[1:-1] = (V[2:] - V[:-2]) / (t[2:] - t[:-2])

    flags = np.zeros(n, dtype=bool)
    if br:
        change = np.array([br[k] != br[k + 1] for k in range(n - 1)])
        flags[:-1] |= change
        flags[1:] |= change

    steps = np.diff(V)
    usable = ~(flags[:-1] | flags[1:])
    violations = int(np.sum((steps > tol) & usable))

    mask = np.isfinite(fd) & (np.abs(Vdot) > floor) & ~flags
    rel = np.abs(Vdot[mask] - fd[mask]) / np.abs(Vdot[mask])
    max_rel = float(rel.max()) if rel.size else 0.0
    return LyapunovReport(t, V, Vdot, fd, max_rel, violations == 0, violations, flags, floor, tol)
