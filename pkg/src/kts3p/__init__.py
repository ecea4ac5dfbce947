"""Kirkman triple systems carried by a sharply transitive group action that
fixes three points: construction routes, a component catalog, and an
independent verifier."""

from .pipeline import (Classification, KirkmanSystem, UnsupportedOrder,
                       automorphism_lower_bound, build_kts, classify_order,
                       construct)
from .verify import verify_full

__version__ = "1.0.0"

__all__ = [
    "Classification", "KirkmanSystem", "UnsupportedOrder",
    "automorphism_lower_bound", "build_kts", "classify_order", "construct",
    "verify_full", "__version__",
]
