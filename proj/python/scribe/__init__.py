"""Python access to the scribe polytope library."""

from ._core import (
    FormatError,
    GeometryError,
    Polytope,
    cube,
    cyclic,
    fixture,
    fixture_names,
    from_json,
    hull,
    is_k_ply,
    odd_cyclic,
    polar_dual,
    regular_simplex,
    report,
    ridge_stacked_path,
    thresholds,
    verdict,
)

__all__ = [
    "FormatError",
    "GeometryError",
    "Polytope",
    "cube",
    "cyclic",
    "fixture",
    "fixture_names",
    "from_json",
    "hull",
    "is_k_ply",
    "odd_cyclic",
    "polar_dual",
    "regular_simplex",
    "report",
    "ridge_stacked_path",
    "thresholds",
    "verdict",
]
