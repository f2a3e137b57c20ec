"""Two populations: matching pennies.

The KL sum over both populations is conserved by replicator dynamics
(zero-sum with an interior equilibrium), while best-reply dynamics spiral in
until fixed-step switching error takes over near the center.
"""
import numpy as np

import incentive_dynamics as idn

game = idn.Game.bimatrix([[1, -1], [-1, 1]], [[-1, 1], [1, -1]])
center = [[0.5, 0.5], [0.5, 0.5]]
x0 = [[0.8, 0.2], [0.3, 0.7]]
cfg = idn.SolverConfig(h=1e-3, t_end=20, record_every=1000)

# %% Replicator: V is a constant of motion
traj = idn.integrate(game, idn.replicator(), x0, cfg, target=center)
print("replicator V:", np.round(traj.V, 10))

# %% Best reply: V collapses, then chatters at the O(h) switching scale
traj = idn.integrate(game, idn.best_reply(), x0, cfg, target=center)
print("best-reply V:", np.round(traj.V, 6))
print("final:", traj.final)

# %% Certificates per population
cert = idn.check_iss(game, idn.replicator(), center, radius=0.1, samples=500, seed=0)
print("replicator ISS:", cert.verdict, "min margin", cert.min_margin)
print("rest point:", idn.find_interior_rest_point(game, idn.replicator(), x0))
