"""Coadjoint orbits, asymptotic cones and wave front sets of real reductive groups."""

from ._core import (
    LieAlgebra,
    OrbitconeError,
    build_algebra,
    classify,
    density_ratio,
    dual_cone,
    exp_jacobian,
    golden_table,
    orbit_invariants,
    orbit_sample,
    run,
    saturation,
    sopq_conditions,
    tempered,
    tensor,
    wavefront,
)

__all__ = [
    "LieAlgebra",
    "OrbitconeError",
    "build_algebra",
    "classify",
    "density_ratio",
    "dual_cone",
    "exp_jacobian",
    "golden_table",
    "orbit_invariants",
    "orbit_sample",
    "run",
    "saturation",
    "sopq_conditions",
    "tempered",
    "tensor",
    "wavefront",
]
