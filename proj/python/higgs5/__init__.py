"""Exact computations with rank-2 parabolic Higgs bundles on P^1 minus five points."""

from ._core import (  # noqa: F401
    DomainError,
    MalformedInput,
    elem,
    fiber,
    higgs_det,
    higgs_space,
    limit,
    lines,
    nilpotent,
    stability,
    sweep,
    thm64_family,
    verify_paper,
)

__all__ = [
    "DomainError",
    "MalformedInput",
    "elem",
    "fiber",
    "higgs_det",
    "higgs_space",
    "limit",
    "lines",
    "nilpotent",
    "stability",
    "sweep",
    "thm64_family",
    "verify_paper",
]
