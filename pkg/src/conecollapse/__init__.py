"""Quantum states, LDOS and classical orbits on a truncated cone."""

from conecollapse.cone import ConeGeometry, GrapheneMapping
from conecollapse.errors import (
    BracketFailure,
    ConeCollapseError,
    DomainError,
    Inconsistent,
    InsufficientResolution,
    NonConvergence,
    SpecfunOverflow,
    StepFailure,
)

__version__ = "0.1.0"

__all__ = [
    "BracketFailure",
    "ConeCollapseError",
    "ConeGeometry",
    "DomainError",
    "GrapheneMapping",
    "Inconsistent",
    "InsufficientResolution",
    "NonConvergence",
    "SpecfunOverflow",
    "StepFailure",
    "__version__",
]
