"""Damped Newton search for interior rest points of an incentive dynamic."""
from __future__ import annotations

import numpy as np

from ..errors import LeftInterior, NoConvergence
from ..games import Game, check_compatible
from ..geometry import StateProfile, StateLike, as_profile
from ..incentives import Incentive, _phi

FD_STEP = 1e-7
MAX_ITER = 200
MIN_COMPONENT = 1e-8


def _expand(z, sizes):
    # reduced coordinates drop the last weight of every population
    xs, start = [], 0
    for n in sizes:
        head = z[start:start + n - 1]
        start += n - 1
        xs.append(np.append(head, 1.0 - head.sum()))
    return xs


def _field(inc, game, xs):
    return [p - x * p.sum() for x, p in zip(xs, _phi(inc, game, xs))]


def find_interior_rest_point(
    game: Game,
    inc: Incentive,
    guess: StateLike,
    tol: float = 1e-10,
    max_iter: int = MAX_ITER,
    fd_step: float = FD_STEP,
    min_component: float = MIN_COMPONENT,
) -> StateProfile:
    """Solve ``x_dot(x) = 0`` from an interior ``guess``.

    Newton steps are taken in the reduced coordinates of each simplex with a
    central-difference Jacobian, halving the step until the residual drops
    and the iterate keeps every weight above ``min_component``.
    """
    guess = as_profile(guess)
    check_compatible(game, guess)
    if guess.min() <= min_component:
        raise LeftInterior(f"guess has a weight below {min_component}")
    sizes = guess.sizes
    z = np.concatenate([x[:-1] for x in guess.arrays()])

    def residual(z):
        xs = _expand(z, sizes)
        full = _field(inc, game, xs)
        return np.concatenate([v[:-1] for v in full]), max(np.abs(v).max() for v in full)

    F, err = residual(z)
    for _ in range(max_iter + 1):
        if err < tol:
            return StateProfile(tuple(_expand(z, sizes)))
        J = np.empty((F.size, z.size))
        for j in range(z.size):
            dz = np.zeros_like(z)
            dz[j] = fd_step
            J[:, j] = (residual(z + dz)[0] - residual(z - dz)[0]) / (2 * fd_step)
        d = np.linalg.lstsq(J, -F, rcond=None)[0]
        norm = np.abs(F).max()
        alpha, moved, stayed_inside = 1.0, False, False
        while alpha > 1e-12:
            z_new = z + alpha * d
            if min(x.min() for x in _expand(z_new, sizes)) > min_component:
                stayed_inside = True
                F_new, err_new = residual(z_new)
                if np.abs(F_new).max() < norm:
                    z, F, err, moved = z_new, F_new, err_new, True
                    break
            alpha *= 0.5
        if not moved:
            if not stayed_inside:
                raise LeftInterior(f"every damped Newton step drops a weight below {min_component}")
            raise NoConvergence(f"Newton stalled with residual {err:.3e}")
    raise NoConvergence(f"no convergence in {max_iter} iterations (residual {err:.3e})")
