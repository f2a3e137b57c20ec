"""Best-reply and projection dynamics, and interior rest points."""
import numpy as np

import incentive_dynamics as idn

# %% Best reply on a coordination game: straight-line approach to e_0
game = idn.Game.symmetric([[2, 0], [0, 1]])
traj = idn.integrate(game, idn.best_reply(), [0.9, 0.1], idn.SolverConfig(h=1e-3, t_end=5, record_every=1000))
for t, row in zip(traj.times, traj.flat):
    print(f"t={t:4.1f}  x={row.round(6)}  closed form={1 - 0.1 * np.exp(-t):.6f}")

# %% Best reply on RPS: switching surfaces are flagged in the Lyapunov report
bary = [1 / 3] * 3
traj = idn.integrate(idn.rps(2, 1), idn.best_reply(), [0.5, 0.3, 0.2],
                     idn.SolverConfig(h=1e-3, t_end=20, record_every=10))
rep = idn.lyapunov_report(traj, bary)
print("switch-adjacent records:", int(rep.switch_flags.sum()), "of", len(rep.t))
print("V start/end:", rep.V[0], rep.V[-1])

# %% Projection dynamics x_dot = f - mean(f)
traj = idn.integrate(idn.rps(2, 1), idn.projection(), [0.5, 0.3, 0.2],
                     idn.SolverConfig(h=1e-3, t_end=30, record_every=1000), target=bary)
print("projection final:", traj.final.flat().round(6))

# %% Rest points by damped Newton
for g, inc, guess in [
    (idn.rps(2, 1), idn.replicator(), [0.5, 0.3, 0.2]),
    (game, idn.replicator(), [0.5, 0.5]),
    (idn.rps(3, 1), idn.projection(), [0.2, 0.2, 0.6]),
]:
    x = idn.find_interior_rest_point(g, inc, guess)
    print(f"{inc.identifier:12s} {g.identifier:28s} rest point {x.flat().round(10)}")
