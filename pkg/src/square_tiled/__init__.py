"""Square-tiled surfaces: enumeration, canonical forms and fake-torus classification."""

from .core import (
    CanonicalKey,
    DisconnectedOrigami,
    InvalidPermutation,
    Origami,
    Permutation,
    canonical_form,
    canonical_key,
    commutator,
    compose,
    is_connected,
    origami_from_key,
)
from .topology import (
    PeriodLattice,
    Stratum,
    UndecidedAtThisSize,
    genus,
    is_holonomy_torus,
    is_normal,
    is_primitive,
    is_reduced,
    period_lattice,
    stratum,
)

__all__ = [
    "CanonicalKey",
    "DisconnectedOrigami",
    "InvalidPermutation",
    "Origami",
    "Permutation",
    "canonical_form",
    "canonical_key",
    "commutator",
    "compose",
    "is_connected",
    "origami_from_key",
    "PeriodLattice",
    "Stratum",
    "UndecidedAtThisSize",
    "genus",
    "is_holonomy_torus",
    "is_normal",
    "is_primitive",
    "is_reduced",
    "period_lattice",
    "stratum",
]

__version__ = "0.1.0"
