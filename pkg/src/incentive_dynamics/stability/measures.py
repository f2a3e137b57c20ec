"""Entropy, cross entropy and KL divergence in nats."""
from __future__ import annotations

import numpy as np

from ..errors import DimensionMismatch


def _vec(p) -> np.ndarray:
    return np.asarray(getattr(p, "weights", p), dtype=float)


def _pair(p, q):
    p, q = _vec(p), _vec(q)
    if p.shape != q.shape:
        raise DimensionMismatch(f"distributions of different shape {p.shape} and {q.shape}")
    return p, q


def shannon_entropy(p) -> float:
    """``-sum p ln p`` with ``0 ln 0 = 0``."""
    p = _vec(p)
    s = p > 0
    return float(-np.sum(p[s] * np.log(p[s])))


def cross_entropy(p, q) -> float:
    """``-sum p ln q``; infinite when ``q`` vanishes somewhere ``p`` does not."""
    p, q = _pair(p, q)
    s = p > 0
    if np.any(q[s] == 0):
        return float("inf")
    return float(-np.sum(p[s] * np.log(q[s])))


def kl_divergence(p, q) -> float:
    """Relative entropy ``D(p || q) = sum p ln(p / q)``.

    Rounding can make the sum slightly negative for nearly equal arguments;
    the result is clipped at zero.
    """
    p, q = _pair(p, q)
    s = p > 0
    if np.any(q[s] == 0):
        return float("inf")
    return max(0.0, float(np.sum(p[s] * np.log(p[s] / q[s]))))
