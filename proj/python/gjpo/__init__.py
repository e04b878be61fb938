"""GPO and graph-joining de Bruijn sequence generation."""

from ._gjpo import (
    FeedbackFunction,
    GjpoError,
    analyze,
    enumerate,
    gjpo_generate,
    gpo_generate,
    gpo_generate_unchecked,
    is_de_bruijn,
    nonlinear_complexity,
    parse_function,
    reverse_engineer,
    rooted_trees,
    rotation_canonical,
)

__all__ = [
    "FeedbackFunction",
    "GjpoError",
    "analyze",
    "enumerate",
    "gjpo_generate",
    "gpo_generate",
    "gpo_generate_unchecked",
    "is_de_bruijn",
    "nonlinear_complexity",
    "parse_function",
    "reverse_engineer",
    "rooted_trees",
    "rotation_canonical",
]
