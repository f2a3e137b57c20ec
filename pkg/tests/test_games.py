import numpy as np
import pytest

from incentive_dynamics import (
    Game, StateProfile, best_reply_indicator, best_reply_set, expected_payoff, fitness, rps, zero_game,
)
from incentive_dynamics.errors import DimensionMismatch

from conftest import random_interior

DIAG = Game.symmetric([[2, 0], [0, 1]])


def test_rps_layout():
    np.testing.assert_array_equal(rps(2, 1).matrices[0], [[0, -1, 2], [2, 0, -1], [-1, 2, 0]])


def test_fitness_examples():
    np.testing.assert_array_equal(fitness(zero_game(3), [0.2, 0.3, 0.5])[0], [0, 0, 0])
    np.testing.assert_allclose(fitness(rps(2, 1), [1 / 3] * 3)[0], [1 / 3] * 3, atol=1e-15)
    np.testing.assert_allclose(fitness(DIAG, [0.4, 0.6])[0], [0.8, 0.6], atol=1e-15)


def test_bimatrix_fitness():
    A = np.array([[1.0, 2.0, 0.0], [0.0, 1.0, 3.0]])
    B = np.array([[2.0, 0.0, 1.0], [1.0, 1.0, 0.0]])
    x = StateProfile(([0.25, 0.75], [0.2, 0.3, 0.5]))
    f1, f2 = fitness(Game.bimatrix(A, B), x)
    np.testing.assert_allclose(f1, [0.2 + 0.6, 0.3 + 1.5])
    np.testing.assert_allclose(f2, [0.5 + 0.75, 0.75, 0.25])


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        fitness(rps(2, 1), [0.5, 0.5])
    with pytest.raises(DimensionMismatch):
        Game.symmetric([[1, 2, 3], [4, 5, 6]])
    with pytest.raises(DimensionMismatch):
        Game.bimatrix(np.zeros((2, 3)), np.zeros((3, 2)))


def test_expected_payoff_examples(rng):
    zero_sum = rps(1, 1)
    for _ in range(1000):
        x = random_interior(rng, (3,), floor=0)
        assert abs(expected_payoff(zero_sum, x, x)[0]) < 1e-12
    bary = [1 / 3] * 3
    for _ in range(50):
        x = random_interior(rng, (3,), floor=0)
        assert abs(expected_payoff(rps(2, 1), bary, x)[0] - 1 / 3) < 1e-12
    x = StateProfile(([0.2, 0.3, 0.5],))
    assert expected_payoff(rps(2, 1), x, x)[0] == pytest.approx(x[0].weights @ fitness(rps(2, 1), x)[0], abs=1e-15)


def test_expected_payoff_linear_in_strategy(rng):
    for _ in range(200):
        n = int(rng.integers(2, 6))
        game = Game.symmetric(rng.normal(size=(n, n)))
        p, q, x = (random_interior(rng, (n,), floor=0) for _ in range(3))
        lam = rng.uniform()
        mix = StateProfile((lam * p[0].weights + (1 - lam) * q[0].weights,))
        lhs = expected_payoff(game, mix, x)[0]
        rhs = lam * expected_payoff(game, p, x)[0] + (1 - lam) * expected_payoff(game, q, x)[0]
        assert abs(lhs - rhs) < 1e-12


def test_best_reply_set_examples():
    assert best_reply_set(DIAG, [0.4, 0.6]) == ((0,),)
    assert best_reply_set(zero_game(4), [0.1, 0.2, 0.3, 0.4]) == ((0, 1, 2, 3),)
    assert best_reply_set(rps(2, 1), [1 / 3] * 3) == ((0, 1, 2),)


def test_best_reply_indicator_examples():
    np.testing.assert_array_equal(best_reply_indicator(DIAG, [0.4, 0.6])[0].weights, [1, 0])
    uni = best_reply_indicator(rps(2, 1), [1 / 3] * 3, tiebreak="uniform-mixture")
    np.testing.assert_allclose(uni[0].weights, [1 / 3] * 3)
    low = best_reply_indicator(rps(2, 1), [1 / 3] * 3)
    np.testing.assert_array_equal(low[0].weights, [1, 0, 0])


def test_tiebreak_rules_agree_without_ties(rng):
    for _ in range(200):
        n = int(rng.integers(2, 6))
        game = Game.symmetric(rng.normal(size=(n, n)))
        x = random_interior(rng, (n,))
        a = best_reply_indicator(game, x, "lowest-index")
        b = best_reply_indicator(game, x, "uniform-mixture")
        if len(best_reply_set(game, x)[0]) == 1:
            assert a == b
        assert abs(b[0].weights.sum() - 1) < 1e-12


def test_bad_tiebreak():
    with pytest.raises(ValueError):
        best_reply_indicator(DIAG, [0.5, 0.5], tiebreak="random")
