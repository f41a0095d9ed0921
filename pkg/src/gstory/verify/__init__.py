"""Independent exact-arithmetic checks for drawing stories and forest drawings."""

from .checks import (
    VerificationReport,
    check_bucket_pair_planarity,
    check_definition1,
    check_frame_planarity,
    check_grid_bounds,
    check_induced_planarity,
    check_position_stability,
)

__all__ = [
    "VerificationReport",
    "check_bucket_pair_planarity",
    "check_definition1",
    "check_frame_planarity",
    "check_grid_bounds",
    "check_induced_planarity",
    "check_position_stability",
]
