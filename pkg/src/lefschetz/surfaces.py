"""Fiber surfaces, their integral homology and curve classes.

Homology of F_{g,b} with b in {0, 1} is identified with Z^{2g} in the
basis a1, b1, ..., ag, bg (for b = 1 the boundary is capped off).  The
pairing is x^T J y with J block diagonal of [[0, 1], [-1, 0]].
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from ._linalg import pairing
from .exceptions import DimensionError, UnsupportedCurveError

HomologyClass = tuple[int, ...]

EXCEPTIONAL = frozenset({(0, 0), (0, 1), (0, 2), (1, 0)})


@dataclass(frozen=True)
class FiberSurface:
    genus: int
    boundary_count: int = 0

    def __post_init__(self):
        if self.genus < 0 or self.boundary_count < 0:
            raise ValueError(f"negative surface data: {self}")

    @property
    def admissible(self) -> bool:
        """Sphere and disk are excluded as fibers."""
        return (self.genus, self.boundary_count) not in {(0, 0), (0, 1)}

    @property
    def has_homology(self) -> bool:
        return self.boundary_count in (0, 1)

    @property
    def homology_rank(self) -> int:
        return 2 * self.genus

    @property
    def euler_characteristic(self) -> int:
        return 2 - 2 * self.genus - self.boundary_count

    def zero(self) -> HomologyClass:
        return (0,) * self.homology_rank

    def basis(self) -> list[HomologyClass]:
        n = self.homology_rank
        return [tuple(int(i == j) for j in range(n)) for i in range(n)]

    def __str__(self):
        return f"F_{{{self.genus},{self.boundary_count}}}"


TORUS = FiberSurface(1, 0)
ANNULUS = FiberSurface(0, 2)


def is_exceptional(fiber: FiberSurface) -> bool:
    """True iff Pi_1(F) = pi_1(Diff(F), id) is nonzero."""
    return (fiber.genus, fiber.boundary_count) in EXCEPTIONAL


def intersection_pairing(x: Sequence[int], y: Sequence[int]) -> int:
    return pairing(x, y)


def normalize_class(v: Sequence[int]) -> HomologyClass:
    """Representative of +-v whose first nonzero coordinate is positive."""
    for c in v:
        if c:
            return tuple(v) if c > 0 else tuple(-x for x in v)
    return tuple(v)


def class_name(v: Sequence[int]) -> str:
    """Deterministic identifier for a derived curve with class v."""
    return "h_" + "_".join(str(x) if x >= 0 else f"m{-x}" for x in v)


@dataclass(frozen=True)
class CurveClass:
    """A simple closed curve known only through its homology class.

    For b in {0, 1} a simple closed curve is separating exactly when its
    class vanishes; that equivalence is enforced whenever a class is given.
    """

    name: str
    homology: HomologyClass
    separating: bool = False

    def __post_init__(self):
        object.__setattr__(self, "homology", tuple(int(v) for v in self.homology))
        if self.homology:
            zero = not any(self.homology)
            if zero != self.separating:
                raise ValueError(
                    f"curve {self.name!r}: separating={self.separating} "
                    f"inconsistent with homology {self.homology}"
                )

    @property
    def essential(self) -> bool:
        return any(self.homology)

    @property
    def rank(self) -> int:
        return len(self.homology)


@dataclass(frozen=True)
class MarkedSurface:
    genus: int
    boundary_count: int
    marked_points: int = 2
    components: int = 1


def surger(fiber: FiberSurface, curve: CurveClass) -> MarkedSurface:
    """Surface obtained by cutting along a nonseparating curve and capping with marked disks."""
    if not fiber.has_homology:
        raise UnsupportedCurveError(f"surgery needs b in {{0,1}}, got {fiber}")
    if curve.rank != fiber.homology_rank:
        raise DimensionError(f"curve {curve.name!r} has rank {curve.rank}, fiber needs {fiber.homology_rank}")
    if curve.separating or not curve.essential:
        raise UnsupportedCurveError(f"curve {curve.name!r} is separating; only nonseparating surgery is supported")
    return MarkedSurface(fiber.genus - 1, fiber.boundary_count, 2, 1)


def essential_curve_class_count(fiber: FiberSurface) -> Optional[int]:
    """Number of homologically essential curves up to diffeomorphism, or None if unknown.

    Only b in {0, 1} has a known answer (one class, the nonseparating one).
    """
    return 1 if fiber.boundary_count in (0, 1) else None


def pi1_fiber_rank(fiber: FiberSurface) -> int:
    """Rank of the free abelian group Pi_1(F) for admissible fibers: Z^2, Z or 0."""
    if not fiber.admissible:
        raise ValueError(f"{fiber} is not an admissible fiber")
    if (fiber.genus, fiber.boundary_count) == (1, 0):
        return 2
    if (fiber.genus, fiber.boundary_count) == (0, 2):
        return 1
    return 0


def pi1_fiber_kind(fiber: FiberSurface) -> str:
    return {2: "Z2", 1: "Z", 0: "trivial"}[pi1_fiber_rank(fiber)]
