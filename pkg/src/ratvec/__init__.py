"""Ratio vectors of real-rooted quartics: forward map, membership test,
reconstruction, and machine-checked identities.

The scikit-learn style estimators live in :mod:`ratvec.estimators` and are
not imported here, so the core and the CLI need neither numpy nor sklearn.
"""
from .errors import RatvecError
from .fields import Surd, approximate, parse_scalar
from .quartic import (CanonicalQuartic, CriticalPoints, QuarticRoots, RatioVector,
                      critical_points, forward_ratio_vector, normalize_roots)
from .characterization import (MembershipVerdict, Region, classify_region,
                               eval_d, eval_k, eval_R, is_ratio_vector, l1_bounds,
                               peyser_bounds)
from .reconstruction import line_family, reconstruct, round_trip, solve_w
from .identities import verify_all, verify_identity
from .campaign import sample_campaign

__version__ = "0.1.0"

__all__ = [
    "RatvecError", "Surd", "approximate", "parse_scalar",
    "CanonicalQuartic", "CriticalPoints", "QuarticRoots", "RatioVector",
    "critical_points", "forward_ratio_vector", "normalize_roots",
    "MembershipVerdict", "Region", "classify_region", "eval_R", "eval_k", "eval_d",
    "is_ratio_vector", "l1_bounds", "peyser_bounds",
    "line_family", "reconstruct", "round_trip", "solve_w",
    "verify_all", "verify_identity", "sample_campaign",
]
