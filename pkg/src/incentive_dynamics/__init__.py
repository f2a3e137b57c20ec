"""Incentive dynamics on products of probability simplices.

Simulate game dynamics generated by incentive functions and certify rest
points with the summed KL divergence as a Lyapunov function.
"""
from . import errors
from .dynamics import (
    SolverConfig, Trajectory, integrate, integrate_many, make_field, step, vector_field,
)
from .games import Game, best_reply_indicator, best_reply_set, expected_payoff, fitness, rps, zero_game
from .geometry import (
    SimplexPoint, StateProfile, as_profile, interior_clamp, make_simplex_point, sample_neighborhood,
)
from .incentives import (
    Incentive, ValidityReport, best_reply, custom_table, evaluate_incentive, projection, replicator,
    validate_incentive,
)
from .stability import (
    ESSCertificate, ISSCertificate, LyapunovReport, check_ess, check_iss, cross_entropy,
    find_interior_rest_point, iss_margin, kl_divergence, lyapunov_derivative, lyapunov_report,
    lyapunov_value, shannon_entropy,
)

__version__ = "0.1.0"
