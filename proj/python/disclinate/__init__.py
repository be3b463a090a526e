"""Disclination connection fields, SO(3) kernel, loop invariants and solver."""

from ._disclinate import (
    CORE_EPSILON,
    BranchCutError,
    CoreSingularity,
    DisclinationConfig,
    NonConvergence,
    curvature_fd,
    curvature_flux,
    dualize,
    enclosed_winding,
    frank_vector,
    holonomy,
    rodrigues,
    rotate_director,
    solve,
    undualize,
)

__all__ = [
    "CORE_EPSILON",
    "BranchCutError",
    "CoreSingularity",
    "DisclinationConfig",
    "NonConvergence",
    "curvature_fd",
    "curvature_flux",
    "dualize",
    "enclosed_winding",
    "frank_vector",
    "holonomy",
    "rodrigues",
    "rotate_director",
    "solve",
    "undualize",
]
