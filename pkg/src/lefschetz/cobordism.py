"""Lefschetz cobordism classes over 2-dimensional bases: sums, invariants, moves."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from ._linalg import hermite_basis_z2
from .exceptions import FiberMismatchError, InvariantViolation, UnsupportedError
from .fibration import (
    FibrationData,
    conjugate,
    critical_counts,
    euler_characteristic,
    fiber_sum,
    hurwitz_move,
    insert_cancelling_pair,
    reverse_orientation,
)
from .meyer import fibration_signature
from .surfaces import FiberSurface

MOVE_KINDS = ("hurwitz", "conjugation", "cancelling_pair", "fibersum_split", "disjoint_union_reorder")


@dataclass(frozen=True)
class CobordismClass:
    """A class in the cobordism group, held as a disjoint union of representatives.

    The empty list is the zero class.  Equality is equality of
    representative lists, not of cobordism classes.
    """

    genus: int
    representatives: tuple = ()
    m: int = 2

    def __post_init__(self):
        reps = tuple(self.representatives)
        object.__setattr__(self, "representatives", reps)
        for f in reps:
            if f.fiber != FiberSurface(self.genus, 0):
                raise FiberMismatchError(f"representative with fiber {f.fiber} in a genus-{self.genus} class")
            if not f.base.closed:
                raise ValueError("cobordism classes need closed bases")

    @classmethod
    def of(cls, *fibrations: FibrationData) -> "CobordismClass":
        if not fibrations:
            raise ValueError("use CobordismClass(genus) for the empty class")
        return cls(fibrations[0].fiber.genus, fibrations)


def class_sum(x: CobordismClass, y: CobordismClass) -> CobordismClass:
    if (x.genus, x.m) != (y.genus, y.m):
        raise FiberMismatchError(f"cannot add classes of (g, m) = {(x.genus, x.m)} and {(y.genus, y.m)}")
    return CobordismClass(x.genus, x.representatives + y.representatives, x.m)


def class_negate(x: CobordismClass) -> CobordismClass:
    return CobordismClass(x.genus, tuple(reverse_orientation(f) for f in x.representatives), x.m)


def _need_dim2(x: CobordismClass):
    if x.m != 2:
        raise UnsupportedError(f"no invariants implemented for base dimension {x.m}")


def eta(x: CobordismClass) -> int:
    _need_dim2(x)
    total = 0
    for f in x.representatives:
        plus, minus = critical_counts(f)
        total += plus - minus
    return total


def sigma_class(x: CobordismClass) -> int:
    _need_dim2(x)
    return sum(fibration_signature(f) for f in x.representatives)


def forgetful_phi(x: CobordismClass) -> tuple[int, int]:
    """(signature of the total space, class of the base in Omega_2 = 0)."""
    _need_dim2(x)
    return sigma_class(x), 0


def chi_parity(x: CobordismClass) -> int:
    return sum(euler_characteristic(f) for f in x.representatives) % 2


@dataclass(frozen=True)
class MoveWitness:
    """A move together with its parameters.

    hurwitz: rep, i (1-based), direction.  conjugation: rep, word.
    cancelling_pair: rep, position, curve, first_sign.
    fibersum_split: first, second (0-based rep indices), glue.
    disjoint_union_reorder: order (a permutation of the rep indices).
    """

    kind: str
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in MOVE_KINDS:
            raise ValueError(f"unknown move {self.kind!r}; choose from {MOVE_KINDS}")


def _rep(x: CobordismClass, p: dict) -> int:
    i = p.get("rep", 0)
    if not 0 <= i < len(x.representatives):
        raise IndexError(f"representative {i} outside 0..{len(x.representatives) - 1}")
    return i


def _replace_rep(x: CobordismClass, i: int, f: FibrationData) -> CobordismClass:
    reps = list(x.representatives)
    reps[i] = f
    return CobordismClass(x.genus, reps, x.m)


def _move(x: CobordismClass, w: MoveWitness) -> CobordismClass:
    p = w.params
    if w.kind == "disjoint_union_reorder":
        order = list(p["order"])
        if sorted(order) != list(range(len(x.representatives))):
            raise ValueError(f"{order} is not a permutation of the representatives")
        return CobordismClass(x.genus, [x.representatives[k] for k in order], x.m)
    if w.kind == "fibersum_split":
        i, j = p.get("first", 0), p.get("second", 1)
        n = len(x.representatives)
        if i == j or not (0 <= i < n and 0 <= j < n):
            raise IndexError(f"fiber sum needs two distinct representatives among 0..{n - 1}")
        merged = fiber_sum(x.representatives[i], x.representatives[j], p.get("glue", ()))
        reps = [f for k, f in enumerate(x.representatives) if k not in (i, j)]
        reps.insert(min(i, j), merged)
        return CobordismClass(x.genus, reps, x.m)
    i = _rep(x, p)
    f = x.representatives[i]
    if w.kind == "hurwitz":
        return _replace_rep(x, i, hurwitz_move(f, p["i"], p.get("direction", 1)))
    if w.kind == "conjugation":
        return _replace_rep(x, i, conjugate(f, p["word"]))
    return _replace_rep(x, i, insert_cancelling_pair(f, p["position"], p["curve"], p.get("first_sign", 1)))


def apply_move(x: CobordismClass, w: MoveWitness) -> CobordismClass:
    """Apply a move and check that sigma, eta and chi mod 2 are unchanged."""
    before = (sigma_class(x), eta(x), chi_parity(x))
    y = _move(x, w)
    after = (sigma_class(y), eta(y), chi_parity(y))
    if before != after:
        raise InvariantViolation(f"{w.kind} changed (sigma, eta, chi mod 2) from {before} to {after}")
    return y


def invariant_image_lattice(classes: Sequence[CobordismClass]) -> tuple:
    """Hermite basis of the subgroup of Z^2 generated by the (sigma, eta) of ``classes``."""
    return hermite_basis_z2([(sigma_class(x), eta(x)) for x in classes])
