"""Generalized Newton iteration for small nonlinear systems.

Thin wrapper over the C++ core. Problems come from ``load_problem`` (a builtin
name or ``file:<path>``) or ``parse_system``; generalizers are named
("identity", "cube", "sinh", "exp", "tan").
"""

from ._gnewton import (
    GNewtonError,
    Problem,
    basin,
    bench,
    builtin_names,
    estimate_lambda,
    generalizer_names,
    load_problem,
    parse_system,
    solve,
    step,
)

__all__ = [
    "GNewtonError",
    "Problem",
    "basin",
    "bench",
    "builtin_names",
    "estimate_lambda",
    "generalizer_names",
    "load_problem",
    "parse_system",
    "solve",
    "step",
]
