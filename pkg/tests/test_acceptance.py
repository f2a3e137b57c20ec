"""Acceptance criteria, one test each.

Every test records a PASS/FAIL line that is printed in the pytest terminal
summary. Run standalone with ``pytest tests/test_acceptance.py -v``.
"""
import math
import time

import numpy as np
import pytest
from scipy.integrate import solve_ivp

from incentive_dynamics import (
    Game, SolverConfig, best_reply, best_reply_indicator, best_reply_set, check_iss, cross_entropy,
    evaluate_incentive, expected_payoff, integrate, iss_margin, kl_divergence, lyapunov_derivative,
    lyapunov_report, projection, replicator, rps, shannon_entropy, vector_field,
)
from incentive_dynamics.cli import main

from conftest import BARY3, random_game, random_interior, rps_surplus

RESULTS = []
X0 = [0.6, 0.2, 0.2]


def verdict(name, ok, detail):
    RESULTS.append(f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}")
    assert ok, detail


@pytest.fixture(scope="module")
def ess_run():
    start = time.perf_counter()
    traj = integrate(rps(2, 1), replicator(), X0, SolverConfig(h=1e-3, t_end=50, record_every=1), target=BARY3)
    return traj, time.perf_counter() - start


def test_c01_tangency():
    rng = np.random.default_rng(101)
    start = time.perf_counter()
    worst = 0.0
    for _ in range(1000):
        game = random_game(rng)
        inc = [replicator(), best_reply(), projection()][int(rng.integers(3))]
        x = random_interior(rng, game.strategy_counts)
        worst = max(worst, max(abs(v.sum()) for v in vector_field(inc, game, x)))
    elapsed = time.perf_counter() - start
    verdict("C1 tangency", worst < 1e-12 and elapsed < 5, f"max |sum x_dot| = {worst:.2e}, {elapsed:.2f}s")


def test_c02_sign_equivalence():
    rng = np.random.default_rng(102)
    game, inc = rps(2, 1), replicator()
    start = time.perf_counter()
    checked = mismatches = 0
    for _ in range(1000):
        x = random_interior(rng, (3,), floor=0)
        phi = evaluate_incentive(inc, game, x)
        vdot = lyapunov_derivative(BARY3, x, phi)
        if abs(vdot) > 1e-12:
            checked += 1
            mismatches += np.sign(vdot) != -np.sign(iss_margin(BARY3, x, phi).min())
    elapsed = time.perf_counter() - start
    verdict("C2 sign equivalence", mismatches == 0 and checked > 900 and elapsed < 5,
            f"{mismatches} mismatches in {checked} states, {elapsed:.2f}s")


def test_c03_ess_convergence(ess_run):
    traj, elapsed = ess_run
    dist = np.abs(traj.final.flat() - 1 / 3).max()
    rep = lyapunov_report(traj, BARY3, tol=1e-12)
    worst_step = np.diff(traj.V).max()
    ok = dist < 1e-4 and rep.monotone and worst_step < 0 and elapsed < 10
    verdict("C3 ESS convergence", ok,
            f"final distance {dist:.2e}, max dV {worst_step:.2e}, violations {rep.violations}, {elapsed:.2f}s")


def test_c04_conservation():
    start = time.perf_counter()
    traj = integrate(rps(1, 1), replicator(), X0, SolverConfig(h=1e-3, t_end=100, record_every=1), target=BARY3)
    elapsed = time.perf_counter() - start
    drift = np.abs(traj.V - traj.V[0]).max()
    verdict("C4 zero-sum conservation", drift < 1e-6 and elapsed < 20, f"max |V - V0| = {drift:.2e}, {elapsed:.2f}s")


def test_c05_finite_difference(ess_run):
    traj, _ = ess_run
    rep = lyapunov_report(traj, BARY3, floor=1e-8)
    verdict("C5 analytic vs finite-difference Vdot", rep.max_rel_error < 1e-4,
            f"max relative error {rep.max_rel_error:.2e}")


def test_c06_iss_certificate():
    start = time.perf_counter()
    good = check_iss(rps(2, 1), replicator(), BARY3, radius=0.1, samples=1000, seed=6)
    closed = rps_surplus(2, 1, good.argmin_state[0])
    bad = check_iss(rps(1, 2), replicator(), BARY3, radius=0.1, samples=1000, seed=6)
    elapsed = time.perf_counter() - start
    err = abs(good.min_margin - closed)
    ok = good.verdict and err < 1e-10 and not bad.verdict and elapsed < 5
    verdict("C6 ISS certificate", ok,
            f"RPS(2,1) verdict {good.verdict} min margin {good.min_margin:.3e} (closed-form error {err:.1e}); "
            f"RPS(1,2) verdict {bad.verdict}; {elapsed:.2f}s")


def test_c07_replicator_reduction():
    rng = np.random.default_rng(107)
    worst = 0.0
    for _ in range(1000):
        game = random_game(rng)
        t = random_interior(rng, game.strategy_counts)
        x = random_interior(rng, game.strategy_counts)
        m = iss_margin(t, x, evaluate_incentive(replicator(), game, x))
        gap = expected_payoff(game, t, x) - expected_payoff(game, x, x)
        worst = max(worst, np.abs(m - gap).max())
    verdict("C7 replicator reduces to ESS gap", worst < 1e-12, f"max |margin - gap| = {worst:.2e}")


def test_c08_best_reply():
    rng = np.random.default_rng(108)
    mismatches = 0
    for _ in range(1000):
        game = random_game(rng)
        t = random_interior(rng, game.strategy_counts)
        x = random_interior(rng, game.strategy_counts)
        m = iss_margin(t, x, evaluate_incentive(best_reply(), game, x))
        for mi, ti, xi, bi in zip(m, t.arrays(), x.arrays(), best_reply_indicator(game, x).arrays()):
            b = int(np.argmax(bi))
            mismatches += np.sign(mi) != np.sign(ti[b] - xi[b])

    game = Game.symmetric([[2, 0], [0, 1]])
    traj = integrate(game, best_reply(), [0.9, 0.1], SolverConfig(h=1e-3, t_end=10))
    sets = {best_reply_set(game, s) for s in traj.states[::100]}
    br = np.array([1.0, 0.0])
    exact = br + np.outer(np.exp(-traj.times), np.array([0.9, 0.1]) - br)
    err = np.abs(traj.flat - exact).max()
    ok = mismatches == 0 and sets == {((0,),)} and err < 1e-4
    verdict("C8 best-reply checks", ok, f"(a) {mismatches} sign mismatches; (b) max error {err:.2e}, no switch")


def test_c09_integrator_order():
    A = rps(2, 1).matrices[0]

    def direct(_, x):
        f = A @ x
        return x * (f - x @ f)

    ref = solve_ivp(direct, (0, 5), X0, method="DOP853", rtol=1e-13, atol=1e-15).y[:, -1]
    errs = []
    for h in (0.05, 0.025):
        traj = integrate(rps(2, 1), replicator(), X0, SolverConfig(h=h, t_end=5, record_every=10**6))
        errs.append(np.abs(traj.final.flat() - ref).max())
    ratio = errs[0] / errs[1]
    verdict("C9 RK4 order", 12 <= ratio <= 20, f"errors {errs[0]:.3e} -> {errs[1]:.3e}, ratio {ratio:.2f}")


def test_c10_information_measures():
    rng = np.random.default_rng(110)
    worst_split, min_kl, worst_self = 0.0, math.inf, 0.0
    for _ in range(1000):
        n = int(rng.integers(2, 8))
        p, q = rng.dirichlet(np.ones(n)), rng.dirichlet(np.ones(n))
        d = kl_divergence(p, q)
        min_kl = min(min_kl, d)
        worst_split = max(worst_split, abs(d - (cross_entropy(p, q) - shannon_entropy(p))))
        worst_self = max(worst_self, abs(kl_divergence(p, p)))
    infinite = kl_divergence([1, 0], [0, 1]) == math.inf and cross_entropy([0.5, 0.5], [1, 0]) == math.inf
    ok = min_kl > 0 and worst_self == 0 and worst_split < 1e-12 and infinite
    verdict("C10 information measures", ok,
            f"min D(p||q) {min_kl:.2e}, max D(p||p) {worst_self}, max split error {worst_split:.2e}, "
            f"support mismatch -> inf {infinite}")


CONFIG = """\
game:
  populations: 1
  payoff: [[0, -{b}, {a}], [{a}, 0, -{b}], [-{b}, {a}, 0]]
incentive: {{kind: replicator}}
solver: {{method: rk4-fixed, h: 0.001, t_end: 5, record_every: 10}}
initial_states: [[0.6, 0.2, 0.2]]
monitor: {{target: barycenter}}
check: {{candidate: barycenter, radius: 0.1, samples: 1000, seed: 6}}
"""


def test_c11_cli_reproducibility(tmp_path):
    good = tmp_path / "good.yaml"
    good.write_text(CONFIG.format(a=2, b=1))
    bad = tmp_path / "bad.yaml"
    bad.write_text(CONFIG.format(a=1, b=2))
    outputs = []
    codes = []
    for run in ("a", "b"):
        out = tmp_path / run
        codes.append(main(["simulate", str(good), "--out-dir", str(out), "--quiet"]))
        codes.append(main(["check", "--mode", "iss", str(good), "--out-dir", str(out), "--quiet", "--seed", "6"]))
        outputs.append([(out / n).read_bytes() for n in ("run_0.csv", "run_iss_certificate.json")])
    negative = main(["check", "--mode", "iss", str(bad), "--out-dir", str(tmp_path / "c"), "--quiet", "--seed", "6"])
    identical = outputs[0] == outputs[1]
    ok = identical and codes == [0, 0, 0, 0] and negative == 1
    verdict("C11 CLI reproducibility", ok, f"byte-identical {identical}, exit codes {codes} / negative {negative}")
