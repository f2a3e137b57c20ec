"""KL divergence as a Lyapunov function for replicator dynamics on RPS.

With win payoff 2 and loss payoff 1, the barycenter is an ESS and the
summed KL divergence from it shrinks along every interior orbit. With win and
loss equal (zero-sum) the same quantity is a constant of motion instead.
"""
import numpy as np

import incentive_dynamics as idn

bary = [1 / 3, 1 / 3, 1 / 3]
cfg = idn.SolverConfig(method="rk4-fixed", h=1e-3, t_end=50, record_every=1)

# %% An ESS: V goes to zero monotonically
traj = idn.integrate(idn.rps(2, 1), idn.replicator(), [0.6, 0.2, 0.2], cfg, target=bary)
print("final state     ", np.round(traj.final.flat(), 6))
print("V(0), V(50)     ", traj.V[0], traj.V[-1])
print("largest V step  ", np.diff(traj.V).max())

report = idn.lyapunov_report(traj, bary, floor=1e-8)
print("analytic vs finite-difference Vdot, max rel. error:", report.max_rel_error)

# %% Zero-sum RPS: orbits are closed and V is conserved
cycle = idn.integrate(idn.rps(1, 1), idn.replicator(), [0.6, 0.2, 0.2], cfg, target=bary)
print("zero-sum drift of V:", np.abs(cycle.V - cycle.V[0]).max())

# %% Reversed payoffs: the barycenter repels and V grows
cfg_short = idn.SolverConfig(h=1e-3, t_end=20, record_every=1000)
away = idn.integrate(idn.rps(1, 2), idn.replicator(), [0.3, 0.35, 0.35], cfg_short, target=bary)
print("reversed RPS, V over time:", np.round(away.V, 4))

# %% Optional picture on the 2-simplex
try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    from incentive_dynamics.cli import ternary_coordinates

    fig, ax = plt.subplots(figsize=(5, 4.5))
    for t, label in ((traj, "win 2 / lose 1"), (cycle, "zero-sum")):
        uv = ternary_coordinates(t.flat[::50])
        ax.plot(uv[:, 0], uv[:, 1], lw=0.8, label=label)
    ax.plot([0, 1, 0.5, 0], [0, 0, np.sqrt(3) / 2, 0], "k-", lw=0.5)
    ax.set_aspect("equal")
    ax.axis("off")
    ax.legend(loc="upper right")
    fig.savefig("rps_orbits.png", dpi=120)
    print("wrote rps_orbits.png")
except ImportError:
    pass
