"""Dehn twist words and their symplectic images.

A word is a tuple of SignedTwist letters read left to right; its image
is the ordered product of the letters' transvection matrices.  Equality
of mapping classes is only ever decided in this symplectic quotient.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from ._linalg import SymplecticMatrix, pairing
from .exceptions import DimensionError, FiberMismatchError
from .surfaces import CurveClass, FiberSurface, class_name, normalize_class

VERIFIED = "verified"
CONSISTENT = "homologically-consistent"
DECLARED = "declared"


class InessentialCurveWarning(UserWarning):
    pass


@dataclass(frozen=True)
class SignedTwist:
    curve: CurveClass
    sign: int = 1

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError(f"twist sign must be +1 or -1, got {self.sign}")

    def inverse(self) -> "SignedTwist":
        return SignedTwist(self.curve, -self.sign)

    def __str__(self):
        return self.curve.name if self.sign == 1 else f"{self.curve.name}^-1"


TwistWord = tuple  # tuple[SignedTwist, ...]


def word(*letters: SignedTwist) -> TwistWord:
    return tuple(letters)


def invert_word(w: Sequence[SignedTwist]) -> TwistWord:
    return tuple(t.inverse() for t in reversed(w))


def word_power(w: Sequence[SignedTwist], k: int) -> TwistWord:
    if k < 0:
        return tuple(invert_word(w)) * (-k)
    return tuple(w) * k


@lru_cache(maxsize=4096)
def _transvection(c: tuple[int, ...], sign: int) -> SymplecticMatrix:
    n = len(c)
    # column j is e_j + sign * <e_j, c> * c
    col_pair = []
    for j in range(n):
        col_pair.append(c[j + 1] if j % 2 == 0 else -c[j - 1])
    rows = tuple(tuple(int(i == j) + sign * col_pair[j] * c[i] for j in range(n)) for i in range(n))
    return SymplecticMatrix(rows, check=False)


def transvection_matrix(t: SignedTwist) -> SymplecticMatrix:
    """Matrix of x -> x + sign * <x, c> c."""
    c = t.curve.homology
    if len(c) % 2:
        raise DimensionError(f"odd homology rank for curve {t.curve.name!r}")
    if not any(c):
        warnings.warn(f"twist about inessential curve {t.curve.name!r} acts trivially on homology",
                      InessentialCurveWarning, stacklevel=2)
    return _transvection(c, t.sign)


def word_rank(w: Iterable[SignedTwist], default: int | None = None) -> int:
    ranks = {t.curve.rank for t in w}
    if len(ranks) > 1:
        raise FiberMismatchError(f"letters from different fibers: homology ranks {sorted(ranks)}")
    if ranks:
        return ranks.pop()
    if default is None:
        raise DimensionError("empty word needs an explicit genus")
    return default


def word_to_matrix(w: Sequence[SignedTwist], genus: int | None = None) -> SymplecticMatrix:
    n = word_rank(w, None if genus is None else 2 * genus)
    if genus is not None and n != 2 * genus:
        raise FiberMismatchError(f"word lives in rank {n}, expected {2 * genus}")
    m = SymplecticMatrix.identity(n // 2)
    for t in w:
        if any(t.curve.homology):
            m = m @ _transvection(t.curve.homology, t.sign)
    return m


def curve_for_class(v: Sequence[int], known: Iterable[CurveClass] = ()) -> CurveClass:
    """Nonseparating curve with class +-v, reusing a known curve of that class when present."""
    v = normalize_class(v)
    for c in known:
        if not c.separating and normalize_class(c.homology) == v:
            return c
    return CurveClass(class_name(v), v, False)


def conjugate_letter(t: SignedTwist, m: SymplecticMatrix, known: Iterable[CurveClass] = ()) -> SignedTwist:
    """phi t_c phi^-1 = t_{phi(c)} at the level of homology; separating letters are kept as is."""
    if t.curve.separating:
        return t
    return SignedTwist(curve_for_class(m.apply(t.curve.homology), known), t.sign)


def conjugate_word(w: Sequence[SignedTwist], m: SymplecticMatrix, known: Iterable[CurveClass] = ()) -> TwistWord:
    known = list(known)
    return tuple(conjugate_letter(t, m, known) for t in w)


# ---------------------------------------------------------------------------
# classical relations used as fixtures


def _unit(n: int, *terms: tuple[int, int]) -> tuple[int, ...]:
    v = [0] * n
    for idx, coef in terms:
        v[idx] += coef
    return tuple(v)


def _a(i: int) -> tuple[int, int]:
    return (2 * (i - 1), 1)


def _b(i: int) -> tuple[int, int]:
    return (2 * (i - 1) + 1, 1)


def _neg(t: tuple[int, int]) -> tuple[int, int]:
    return (t[0], -t[1])


def _curve(name: str, v: tuple[int, ...]) -> CurveClass:
    return CurveClass(name, normalize_class(v), not any(v))


def chain_curves(genus: int, length: int) -> list[CurveClass]:
    """Curves c1..c_length of a chain (consecutive ones meet once, others are disjoint).

    c1 = b1, c2 = a1, c3 = b1 - b2, c4 = a2, ..., c_{2g} = a_g, c_{2g+1} = b_g.
    """
    n = 2 * genus
    if not 1 <= length <= 2 * genus + 1:
        raise ValueError(f"a chain of length {length} does not fit in genus {genus}")
    curves = []
    for k in range(1, length + 1):
        if k % 2 == 0:
            v = _unit(n, _a(k // 2))
        elif k == 1:
            v = _unit(n, _b(1))
        elif k == 2 * genus + 1:
            v = _unit(n, _b(genus))
        else:
            i = (k - 1) // 2
            v = _unit(n, _b(i), _neg(_b(i + 1)))
        curves.append(_curve(f"c{k}", v))
    return curves


def _braid(fiber):
    n = fiber.homology_rank
    a = SignedTwist(_curve("a", _unit(n, _a(1))))
    b = SignedTwist(_curve("b", _unit(n, _b(1))))
    return (a, b, a), (b, a, b)


def _chain(fiber):
    g = fiber.genus
    cs = [SignedTwist(c) for c in chain_curves(g, 2 * g)]
    if g == 1:
        cs = [SignedTwist(_curve("a", _unit(2, _a(1)))), SignedTwist(_curve("b", _unit(2, _b(1))))]
    lhs = tuple(cs) * (4 * g + 2)
    if fiber.boundary_count == 1:
        return lhs, (SignedTwist(_curve("bd", (0,) * (2 * g))),)
    return lhs, ()


def _hyperelliptic(fiber):
    if fiber.boundary_count != 0:
        raise ValueError("the hyperelliptic relation holds only on closed fibers")
    cs = [SignedTwist(c) for c in chain_curves(fiber.genus, 2 * fiber.genus + 1)]
    half = tuple(cs) + tuple(reversed(cs))
    return half * 2, ()


def _lantern(fiber):
    g, n = fiber.genus, fiber.homology_rank
    if g == 2:
        # complement of the four-holed sphere is two annuli: d1 ~ d2, d3 ~ d4, x separates
        d = [_curve("d1", _unit(n, _a(1))), _curve("d2", _unit(n, _a(1))),
             _curve("d3", _unit(n, _a(2))), _curve("d4", _unit(n, _a(2)))]
        x = _curve("x", (0,) * n)
        y = _curve("y", _unit(n, _a(1), _neg(_a(2))))
        z = _curve("z", _unit(n, _a(1), _a(2)))
    else:
        # complement is connected: all seven curves nonseparating
        d = [_curve("d1", _unit(n, _a(1))), _curve("d2", _unit(n, _a(2))),
             _curve("d3", _unit(n, _a(3))), _curve("d4", _unit(n, _a(1), _a(2), _a(3)))]
        x = _curve("x", _unit(n, _a(1), _a(2)))
        y = _curve("y", _unit(n, _a(2), _a(3)))
        z = _curve("z", _unit(n, _a(1), _a(3)))
    return tuple(SignedTwist(c) for c in d), (SignedTwist(x), SignedTwist(y), SignedTwist(z))


_RELATIONS = {
    "braid": (1, _braid),
    "chain": (1, _chain),
    "hyperelliptic": (1, _hyperelliptic),
    "lantern": (2, _lantern),
}


def relation_library(name: str, fiber: FiberSurface) -> tuple[TwistWord, TwistWord]:
    """(lhs, rhs) twist words of a classical relation on ``fiber``.

    braid: t_a t_b t_a = t_b t_a t_b.  chain: (t_c1 ... t_c2g)^(4g+2) equals the
    boundary twist (trivial when closed).  hyperelliptic: (t_c1..t_c2g+1 t_c2g+1..t_c1)^2 = 1.
    lantern: t_d1 t_d2 t_d3 t_d4 = t_x t_y t_z; on genus 2 the curve x is separating.
    """
    if name not in _RELATIONS:
        raise KeyError(f"unknown relation {name!r}; choose from {sorted(_RELATIONS)}")
    if not fiber.has_homology:
        raise ValueError(f"relations are stored homologically; {fiber} has b > 1")
    min_genus, build = _RELATIONS[name]
    if fiber.genus < min_genus:
        raise ValueError(f"{name} relation needs genus >= {min_genus}, fiber is {fiber}")
    lhs, rhs = build(fiber)
    return lhs, rhs


def relator(name: str, fiber: FiberSurface) -> TwistWord:
    """The relation as a single relator word lhs * rhs^-1."""
    lhs, rhs = relation_library(name, fiber)
    return tuple(lhs) + invert_word(rhs)


# ---------------------------------------------------------------------------
# presentations


@dataclass(frozen=True)
class Presentation:
    """Finite presentation of M_{g,b} by twist generators.

    Relator letters are actual twists: a letter about a generator curve with
    sign s is delta^(s * generator sign).
    """

    fiber: FiberSurface
    generators: tuple
    relators: tuple
    relator_names: tuple = field(default=(), compare=False)

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        object.__setattr__(self, "relators", tuple(tuple(r) for r in self.relators))
        names = tuple(self.relator_names) or tuple(f"r{i + 1}" for i in range(len(self.relators)))
        if len(names) != len(self.relators):
            raise ValueError("one name per relator")
        object.__setattr__(self, "relator_names", names)


@dataclass
class PresentationReport:
    generators: list = field(default_factory=list)   # (name, verdict, message)
    relators: list = field(default_factory=list)     # (name, verdict, message)

    @property
    def ok(self) -> bool:
        return all(v == "pass" for _, v, _ in self.generators + self.relators)

    def lines(self) -> list[str]:
        out = [f"presentation={'pass' if self.ok else 'fail'}"]
        out += [f"generator.{n}={v}" for n, v, _ in self.generators]
        out += [f"relator.{n}={v}" for n, v, _ in self.relators]
        return out


def torus_presentation() -> Presentation:
    """<t_a, t_b | t_a t_b t_a t_b^-1 t_a^-1 t_b^-1, (t_a t_b)^6> for M_{1,0} = SL(2, Z)."""
    fiber = FiberSurface(1, 0)
    a, b = _braid(fiber)[0][:2]
    return Presentation(fiber, (a, b), (relator("braid", fiber), relation_library("chain", fiber)[0]),
                        ("braid", "chain"))


def validate_presentation(p: Presentation) -> PresentationReport:
    rep = PresentationReport()
    gen_curves = {t.curve.name: t.curve for t in p.generators}
    n = p.fiber.homology_rank
    for t in p.generators:
        c = t.curve
        if c.rank != n:
            rep.generators.append((c.name, "fail", f"rank {c.rank} != {n}"))
        elif c.separating or not c.essential:
            rep.generators.append((c.name, "fail", "generator curve must be nonseparating"))
        else:
            rep.generators.append((c.name, "pass", ""))
    for name, r in zip(p.relator_names, p.relators):
        foreign = [t.curve.name for t in r if gen_curves.get(t.curve.name) != t.curve]
        if foreign:
            rep.relators.append((name, "fail", f"letters not among generators: {sorted(set(foreign))}"))
            continue
        try:
            m = word_to_matrix(r, p.fiber.genus)
        except (DimensionError, FiberMismatchError) as exc:
            rep.relators.append((name, "fail", str(exc)))
            continue
        if m.is_identity():
            rep.relators.append((name, "pass", ""))
        else:
            rep.relators.append((name, "fail", "symplectic image is not the identity"))
    return rep


def twist_pairing(c: CurveClass, d: CurveClass) -> int:
    return pairing(c.homology, d.homology)
