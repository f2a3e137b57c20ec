"""Information measures, the KL Lyapunov function, and stability checks."""
from .certificates import ESSCertificate, ISSCertificate, check_ess, check_iss
from .lyapunov import LyapunovReport, iss_margin, lyapunov_derivative, lyapunov_report, lyapunov_value
from .measures import cross_entropy, kl_divergence, shannon_entropy
from .rest_points import find_interior_rest_point

__all__ = [
    "ESSCertificate", "ISSCertificate", "LyapunovReport", "check_ess", "check_iss",
    "cross_entropy", "find_interior_rest_point", "iss_margin", "kl_divergence",
    "lyapunov_derivative", "lyapunov_report", "lyapunov_value", "shannon_entropy",
]
