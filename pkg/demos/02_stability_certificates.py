"""Sampling certificates for incentive-stable and evolutionarily stable states."""
import numpy as np

import incentive_dynamics as idn

bary = [1 / 3, 1 / 3, 1 / 3]

# %% Replicator incentive: the ISS margin is the ESS payoff gap
for win, lose in ((2, 1), (1, 1), (1, 2)):
    game = idn.rps(win, lose)
    iss = idn.check_iss(game, idn.replicator(), bary, radius=0.1, samples=1000, seed=0)
    ess = idn.check_ess(game, bary, radius=0.1, samples=1000, seed=0)
    print(f"RPS({win},{lose}): ISS {iss.verdict} (min margin {iss.min_margin:+.2e}), "
          f"ESS {ess.verdict} (min gap {ess.min_gap:+.2e})")

# %% The margin at one state, by hand and by the library
x = [0.5, 0.3, 0.2]
phi = idn.evaluate_incentive(idn.replicator(), idn.rps(2, 1), x)
s = 0.5 * 0.3 + 0.3 * 0.2 + 0.2 * 0.5
print("margin", idn.iss_margin(bary, x, phi), "closed form", (2 - 1) * (1 / 3 - s))

# %% Best reply: the margin is xhat_b / x_b - 1 for the chosen best reply b
phi = idn.evaluate_incentive(idn.best_reply(), idn.rps(2, 1), x)
b = int(np.argmax(phi[0]))
print("best reply", b, "margin", idn.iss_margin(bary, x, phi)[0], "=", bary[b] / x[b] - 1)

# %% Validity of the built-in incentives, and of a broken one
game = idn.rps(2, 1)
for inc in (idn.replicator(), idn.best_reply(), idn.projection()):
    rep = idn.validate_incentive(inc, game, samples=100, seed=1)
    print(f"{inc.identifier:28s} valid={rep.verdict} checked={rep.sampled_states} skipped={rep.skipped}")

broken = idn.custom_table(lambda xs: [xs[0] - 0.1], name="shifted")
rep = idn.validate_incentive(broken, game, samples=20, seed=1)
print("shifted table valid:", rep.verdict, "first violation:", rep.violations[0].kind)
