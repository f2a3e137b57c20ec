"""Sampling certificates for incentive-stable and evolutionarily stable states.

Both checks draw points from a sup-norm neighborhood of the candidate and
test the defining strict inequality at each one. A true verdict is evidence,
not proof; the radius, sample count and seed are recorded so every
certificate can be reproduced.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ..games import Game, _fitness
from ..geometry import DEFAULT_MIN_COMPONENT, StateLike, as_profile, sample_neighborhood
from ..incentives import Incentive, _phi
from .lyapunov import _margins


@dataclass
class _Certificate:
    candidate: list
    radius: float
    samples: int
    seed: int
    min_component: float
    per_sample: np.ndarray
    argmin_state: list
    violating: list
    game: str
    verdict: bool = field(init=False)

    def __post_init__(self):
        self.verdict = bool(np.all(self.per_sample > 0))

    def _common(self) -> dict:
        return {
            "game": self.game,
            "candidate": self.candidate,
            "radius": self.radius,
            "samples": self.samples,
            "seed": self.seed,
            "min_component": self.min_component,
            "argmin_state": self.argmin_state,
            "violating_samples": [{"index": i, "state": s} for i, s in self.violating],
            "verdict": self.verdict,
        }


@dataclass
class ISSCertificate(_Certificate):
    incentive: str = ""

    @property
    def margins(self) -> np.ndarray:
        return self.per_sample

    @property
    def min_margin(self) -> float:
        return float(self.per_sample.min())

    def to_dict(self) -> dict:
        d = {"type": "iss", "incentive": self.incentive}
        d.update(self._common())
        d["min_margin"] = self.min_margin
        d["per_sample_min_margin"] = self.per_sample.tolist()
        return d


@dataclass
class ESSCertificate(_Certificate):
    @property
    def gaps(self) -> np.ndarray:
        return self.per_sample

    @property
    def min_gap(self) -> float:
        return float(self.per_sample.min())

    def to_dict(self) -> dict:
        d = {"type": "ess"}
        d.update(self._common())
        d["min_gap"] = self.min_gap
        d["per_sample_min_gap"] = self.per_sample.tolist()
        return d


def _sample(candidate, radius, samples, min_component, seed):
    candidate = as_profile(candidate)
    points = sample_neighborhood(candidate, radius, samples, min_component, seed)
    return candidate, points


def _collect(values, points):
    values = np.asarray(values)
    k = int(np.argmin(values))
    violating = [(int(i), points[i].tolist()) for i in np.flatnonzero(values <= 0)]
    return values, points[k].tolist(), violating


def check_iss(
    game: Game,
    inc: Incentive,
    candidate: StateLike,
    radius: float = 0.1,
    samples: int = 1000,
    seed: int = 0,
    min_component: float = DEFAULT_MIN_COMPONENT,
) -> ISSCertificate:
    """Test the incentive stability inequality on ``samples`` nearby states.

    The recorded value per sample is the smallest margin over populations.
    """
    candidate, points = _sample(candidate, radius, samples, min_component, seed)
    ts = candidate.arrays()
    per_sample = []
    for p in points:
        xs = p.arrays()
        per_sample.append(_margins(ts, xs, _phi(inc, game, xs)).min())
    values, argmin_state, violating = _collect(per_sample, points)
    return ISSCertificate(
        candidate.tolist(), radius, samples, seed, min_component, values, argmin_state, violating,
        game.identifier, incentive=inc.identifier,
    )


def check_ess(
    game: Game,
    candidate: StateLike,
    radius: float = 0.1,
    samples: int = 1000,
    seed: int = 0,
    min_component: float = DEFAULT_MIN_COMPONENT,
) -> ESSCertificate:
    """Test ``u(xhat, x) > u(x, x)`` on ``samples`` nearby states.

    With two populations the gap is taken per population and the smallest
    one is recorded.
    """
    candidate, points = _sample(candidate, radius, samples, min_component, seed)
    ts = candidate.arrays()
    per_sample = []
    for p in points:
        xs = p.arrays()
        f = _fitness(game, xs)
        per_sample.append(min(t @ fi - x @ fi for t, x, fi in zip(ts, xs, f)))
    values, argmin_state, violating = _collect(per_sample, points)
    return ESSCertificate(
        candidate.tolist(), radius, samples, seed, min_component, values, argmin_state, violating,
        game.identifier,
    )
