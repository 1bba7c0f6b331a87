"""Lefschetz fibrations over surfaces via monodromy data.

Homological (symplectic) surrogates for mapping classes, exact Meyer
signatures, cobordism invariants, universal-fibration data and a text
format with a small CLI.
"""
from .exceptions import (
    CalibrationError,
    DimensionError,
    FiberMismatchError,
    InvariantViolation,
    LefschetzError,
    ParseError,
    UnsupportedCurveError,
    UnsupportedError,
    ValidationError,
)
from .surfaces import ANNULUS, TORUS, CurveClass, FiberSurface
from .mcg import Presentation, SignedTwist, relation_library, torus_presentation, word_to_matrix
from .fibration import (
    BaseSurface,
    FibrationData,
    elliptic,
    fiber_sum,
    from_word,
    hurwitz_move,
    pullback_cover,
    reverse_orientation,
    trivial_bundle,
    validate,
)
from .meyer import calibrate_local_terms, fibration_signature, meyer_cocycle
from .cobordism import CobordismClass, MoveWitness, apply_move, class_sum, eta, sigma_class

__version__ = "0.1.0"
