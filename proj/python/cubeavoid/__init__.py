"""Latin cubes of even order avoiding forbidden entries.

Thin python surface over the C++ core: starting-cube construction, instance
generation, the isotopy+swap solver, the exhaustive oracle and the structure
verifier.
"""

from ._cubeavoid import (
    Cell,
    ForbiddenCube,
    LatinCube,
    Params,
    backtracking_avoid,
    candidate_slack,
    conflicts,
    generate_instance,
    is_latin,
    solve,
    starting_cube,
    starting_square,
    subcubes_through,
    union_bound_total,
    verify_properties,
)

__all__ = [
    "Cell",
    "ForbiddenCube",
    "LatinCube",
    "Params",
    "backtracking_avoid",
    "candidate_slack",
    "conflicts",
    "generate_instance",
    "is_latin",
    "solve",
    "starting_cube",
    "starting_square",
    "subcubes_through",
    "union_bound_total",
    "verify_properties",
]
