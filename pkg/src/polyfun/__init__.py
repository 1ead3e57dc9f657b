"""Polynomial functions on finite non-commutative rings.

Null-polynomial modules, null-ideal set classification, integer-valued
polynomial ringset probing over matrix algebras, and a search harness.
"""

from polyfun.config import Caps, get_caps
from polyfun.errors import (
    CapError,
    PolyfunError,
    RingSpecError,
    TheoremViolation,
    VerificationError,
)
from polyfun.ring import (
    FiniteRing,
    IdealDesc,
    RingElement,
    SubringDesc,
    SubsetSpec,
    builtin_ring,
    make_matrix_ring,
    make_triangular_ring,
    load_ring_spec,
)
from polyfun.poly import FracPoly, Poly

__all__ = [
    "CapError",
    "Caps",
    "FiniteRing",
    "FracPoly",
    "IdealDesc",
    "Poly",
    "PolyfunError",
    "RingElement",
    "RingSpecError",
    "SubringDesc",
    "SubsetSpec",
    "TheoremViolation",
    "VerificationError",
    "builtin_ring",
    "get_caps",
    "load_ring_spec",
    "make_matrix_ring",
    "make_triangular_ring",
]
