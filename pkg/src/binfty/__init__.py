"""Two models of the crystal B(infinity) and a singular-support checker.

The string model lives in :mod:`binfty.strings`, the geometric model on
irreducible components of nilpotent quiver varieties in :mod:`binfty.geom`,
and the Schubert-pair reduction calculus in :mod:`binfty.checker`.
"""

from .quiver import Orientation, QuiverGraph, Representation, omega0, type_a
from .crystal import MINUS_INF, check_axioms
from .strings import CofinalSequence, StringElement, element_of_word, parse_word
from .geom import (
    DEFAULT_SEED,
    GenericityError,
    GeomContext,
    OrbitKey,
    apply_word,
    enumerate_orbits,
)
from .checker import check_conjecture, check_pair, verify_a5, verify_a8
from .modp import DEFAULT_PRIME

__version__ = "0.1.0"

__all__ = [
    "QuiverGraph",
    "Orientation",
    "Representation",
    "type_a",
    "omega0",
    "MINUS_INF",
    "check_axioms",
    "CofinalSequence",
    "StringElement",
    "parse_word",
    "element_of_word",
    "GeomContext",
    "OrbitKey",
    "GenericityError",
    "enumerate_orbits",
    "apply_word",
    "DEFAULT_SEED",
    "DEFAULT_PRIME",
    "check_pair",
    "check_conjecture",
    "verify_a5",
    "verify_a8",
    "__version__",
]
