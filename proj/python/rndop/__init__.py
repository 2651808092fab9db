"""Anchor placement and DOP evaluation for ToA localization beyond the anchors' convex hull."""

try:
    from ._rndop import (
        RndopError,
        exact_dop,
        far_away_threshold,
        max_rndop,
        minimax_lower_bounds,
        nls_fix,
        place,
        rndop,
        rndop_bounds,
        simulate_ranges,
    )
except ImportError:  # in-tree runs import the extension from the build directory
    from _rndop import (
        RndopError,
        exact_dop,
        far_away_threshold,
        max_rndop,
        minimax_lower_bounds,
        nls_fix,
        place,
        rndop,
        rndop_bounds,
        simulate_ranges,
    )

__all__ = [
    "RndopError",
    "exact_dop",
    "far_away_threshold",
    "max_rndop",
    "minimax_lower_bounds",
    "nls_fix",
    "place",
    "rndop",
    "rndop_bounds",
    "simulate_ranges",
]

__version__ = "0.1.0"
