"""Minimization and reduction of integral models of hypersurfaces."""

from .forms import (
    INFINITY,
    Form,
    TransformRecord,
    apply_weight,
    content,
    is_unstable,
    normalize,
    parse_form,
    substitute,
    valuation,
)

__version__ = "0.1.0"

__all__ = [
    "INFINITY",
    "Form",
    "TransformRecord",
    "apply_weight",
    "content",
    "is_unstable",
    "normalize",
    "parse_form",
    "substitute",
    "valuation",
    "__version__",
]
