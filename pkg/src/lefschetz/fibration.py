"""Lefschetz fibrations over surfaces, encoded by a monodromy sequence.

A FibrationData over a base of genus h with d boundary circles holds the
Lefschetz letters delta_1..delta_n (one signed twist per critical value)
and the bundle words:

* d = 0: alpha_1, beta_1, ..., alpha_h, beta_h with
  delta_1 ... delta_n [alpha_1, beta_1] ... [alpha_h, beta_h] = 1;
* d >= 1: a free basis of pi_1(base) complementing the meridians, namely
  alpha_j, beta_j followed by the loops around d - 1 boundary circles
  (lifted data from a cover use the Schreier basis instead, which has the
  same size 2h + d - 1).

The closing relation is only checked in the symplectic quotient.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Iterable, Optional, Sequence

from ._linalg import SymplecticMatrix
from .covers import SchreierSystem, orbits, restrict, word_permutation
from .exceptions import DimensionError, FiberMismatchError, UnsupportedError, ValidationError
from .mcg import (
    SignedTwist,
    conjugate_letter,
    conjugate_word,
    invert_word,
    relation_library,
    twist_pairing,
    word_to_matrix,
)
from .surfaces import CurveClass, FiberSurface, is_exceptional, pi1_fiber_rank


@dataclass(frozen=True)
class BaseSurface:
    genus: int = 0
    boundary_count: int = 0

    def __post_init__(self):
        if self.genus < 0 or self.boundary_count < 0:
            raise ValueError(f"negative base data: {self}")

    @property
    def closed(self) -> bool:
        return self.boundary_count == 0

    @property
    def euler_characteristic(self) -> int:
        return 2 - 2 * self.genus - self.boundary_count

    @property
    def bundle_word_count(self) -> int:
        if self.boundary_count == 0:
            return 2 * self.genus
        return 2 * self.genus + self.boundary_count - 1


SPHERE = BaseSurface(0, 0)


@dataclass(frozen=True)
class FibrationData:
    fiber: FiberSurface
    base: BaseSurface = SPHERE
    lefschetz: tuple = ()
    bundle: tuple = ()
    twist: Optional[tuple] = None
    surjective: bool = False
    curves: tuple = field(default=(), compare=False, repr=False)
    # boundary circles as words in generator indices (meridians first, then
    # bundle words); None means the standard layout described above
    boundary_loops: Optional[tuple] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "lefschetz", tuple(self.lefschetz))
        object.__setattr__(self, "bundle", tuple(tuple(w) for w in self.bundle))
        if len(self.bundle) != self.base.bundle_word_count:
            raise ValueError(
                f"base genus {self.base.genus} with {self.base.boundary_count} boundary circles "
                f"needs {self.base.bundle_word_count} bundle words, got {len(self.bundle)}"
            )
        rank = pi1_fiber_rank(self.fiber) if self.fiber.admissible else 0
        tw = tuple(int(v) for v in self.twist) if self.twist is not None else (0,) * rank
        if len(tw) != rank:
            raise DimensionError(f"structure twist for {self.fiber} has rank {rank}, got {tw}")
        object.__setattr__(self, "twist", tw)
        object.__setattr__(self, "curves", tuple(self.curves))
        if self.boundary_loops is not None:
            loops = tuple(tuple((int(x), int(e)) for x, e in w) for w in self.boundary_loops)
            if len(loops) != self.base.boundary_count:
                raise ValueError(f"{len(loops)} boundary loops for {self.base.boundary_count} boundary circles")
            object.__setattr__(self, "boundary_loops", loops)

    @property
    def genus(self) -> int:
        return self.fiber.genus

    def all_letters(self) -> list[SignedTwist]:
        out = list(self.lefschetz)
        for w in self.bundle:
            out.extend(w)
        return out

    def known_curves(self) -> list[CurveClass]:
        seen = {}
        for c in list(self.curves) + [t.curve for t in self.all_letters()]:
            seen.setdefault(c.name, c)
        return list(seen.values())

    def commutator_word(self) -> tuple:
        """[alpha_1, beta_1] ... [alpha_h, beta_h] as a twist word (closed bases)."""
        out = ()
        for j in range(self.base.genus):
            a, b = self.bundle[2 * j], self.bundle[2 * j + 1]
            out += tuple(a) + tuple(b) + invert_word(a) + invert_word(b)
        return out

    def closure_word(self) -> tuple:
        return self.lefschetz + self.commutator_word()


def _with_curves(f: FibrationData, **changes) -> FibrationData:
    new = replace(f, **changes)
    known = f.known_curves()
    names = {c.name for c in known}
    extra = [t.curve for t in new.all_letters() if t.curve.name not in names]
    merged = {}
    for c in known + extra:
        merged.setdefault(c.name, c)
    object.__setattr__(new, "curves", tuple(merged.values()))
    return new


# ---------------------------------------------------------------------------
# constructors


def trivial_bundle(fiber: FiberSurface, base: BaseSurface = SPHERE) -> FibrationData:
    return FibrationData(fiber, base, (), ((),) * base.bundle_word_count)


def from_word(fiber: FiberSurface, w: Iterable[SignedTwist], surjective: bool = False) -> FibrationData:
    """Fibration over the sphere with Lefschetz letters ``w``."""
    w = tuple(w)
    return FibrationData(fiber, SPHERE, w, (), surjective=surjective,
                         curves=tuple({t.curve.name: t.curve for t in w}.values()))


def elliptic(n: int = 1) -> FibrationData:
    """E(n): genus-1 fibration over the sphere with monodromy (t_a t_b)^(6n)."""
    torus = FiberSurface(1, 0)
    lhs, _ = relation_library("chain", torus)
    return from_word(torus, tuple(lhs) * n, surjective=True)


# ---------------------------------------------------------------------------
# validation


@dataclass
class FibrationReport:
    verdicts: dict = field(default_factory=dict)
    messages: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(v in ("pass", "not-applicable", "declared") for v in self.verdicts.values())

    def lines(self) -> list[str]:
        out = [f"valid={'pass' if self.ok else 'fail'}"]
        for k, v in self.verdicts.items():
            out.append(f"{k}={v}")
            if k in self.messages:
                out.append(f"{k}.reason={self.messages[k]}")
        return out


def validate(f: FibrationData) -> FibrationReport:
    rep = FibrationReport()
    fiber = f.fiber
    if not fiber.admissible:
        rep.verdicts["fiber"] = "fail"
        rep.messages["fiber"] = f"{fiber} is the sphere or the disk"
    else:
        rep.verdicts["fiber"] = "pass"
    bad_rank = [t.curve.name for t in f.all_letters() if t.curve.rank != fiber.homology_rank]
    if bad_rank:
        rep.verdicts["fiber"] = "fail"
        rep.messages["fiber"] = f"curves of wrong homology rank: {sorted(set(bad_rank))}"

    if not fiber.has_homology:
        rep.verdicts["allowable"] = "declared"
    else:
        inessential = [t.curve.name for t in f.lefschetz if t.curve.separating or not t.curve.essential]
        if inessential:
            rep.verdicts["allowable"] = "fail"
            rep.messages["allowable"] = "homologically inessential vanishing cycles: " + ",".join(
                sorted(set(inessential)))
        else:
            rep.verdicts["allowable"] = "pass"

    if not f.base.closed:
        rep.verdicts["closure"] = "not-applicable"
    elif not fiber.has_homology:
        rep.verdicts["closure"] = "declared"
    elif bad_rank:
        rep.verdicts["closure"] = "fail"
        rep.messages["closure"] = "rank mismatch"
    elif word_to_matrix(f.closure_word(), fiber.genus).is_identity():
        rep.verdicts["closure"] = "pass"
    else:
        rep.verdicts["closure"] = "fail"
        rep.messages["closure"] = "symplectic image of the closing word is not the identity"

    if any(f.twist) and not is_exceptional(fiber):
        rep.verdicts["structure_twist"] = "fail"
        rep.messages["structure_twist"] = "nonzero structure twist on a non-exceptional fiber"
    else:
        rep.verdicts["structure_twist"] = "pass"
    return rep


def require_closed(f: FibrationData) -> None:
    """Raise unless the datum is a closed-base fibration whose closing word checks out."""
    if not f.base.closed:
        raise UnsupportedError("base has boundary")
    rep = validate(f)
    if rep.verdicts["closure"] != "pass" or rep.verdicts["fiber"] != "pass":
        raise ValidationError("closing relation fails in the symplectic quotient", rep)


# ---------------------------------------------------------------------------
# elementary invariants


def critical_counts(f: FibrationData) -> tuple[int, int]:
    plus = sum(1 for t in f.lefschetz if t.sign == 1)
    return plus, len(f.lefschetz) - plus


def euler_characteristic(f: FibrationData) -> int:
    return f.base.euler_characteristic * f.fiber.euler_characteristic + len(f.lefschetz)


# ---------------------------------------------------------------------------
# orientation reversal and equivalence moves


def reverse_orientation(f: FibrationData) -> FibrationData:
    """-f: meridians reversed (signs flip, order reverses), structure twist negated.

    Loops in the base keep their monodromy.  Over a closed base the handle
    pairs are relabelled (alpha_j, beta_j) -> (beta_j, alpha_j) in reverse order
    so the closing relation still holds; over a bounded base the bundle words
    are kept and only the boundary loops are re-indexed.
    """
    h, n = f.base.genus, len(f.lefschetz)
    if f.base.closed:
        handles = []
        for j in reversed(range(h)):
            handles += [f.bundle[2 * j + 1], f.bundle[2 * j]]
        return replace(f, lefschetz=invert_word(f.lefschetz), bundle=tuple(handles),
                       twist=tuple(-v for v in f.twist))
    loops = tuple(
        tuple((n - 1 - x, -e) if x < n else (x, e) for x, e in w) for w in boundary_loops(f)
    )
    return replace(f, lefschetz=invert_word(f.lefschetz), twist=tuple(-v for v in f.twist),
                   boundary_loops=loops)


def hurwitz_move(f: FibrationData, i: int, direction: int = 1) -> FibrationData:
    """Elementary Hurwitz move at positions i, i+1 (1-based).

    direction +1: (d_i, d_i+1) -> (d_i+1, d_i+1^-1 d_i d_i+1)
    direction -1: (d_i, d_i+1) -> (d_i d_i+1 d_i^-1, d_i)
    """
    n = len(f.lefschetz)
    if not 1 <= i < n:
        raise IndexError(f"Hurwitz index {i} outside 1..{n - 1}")
    if direction not in (1, -1):
        raise ValueError("direction must be +1 or -1")
    g = f.fiber.genus
    letters = list(f.lefschetz)
    first, second = letters[i - 1], letters[i]
    known = f.known_curves()
    if direction == 1:
        m = word_to_matrix((second,), g).inverse()
        letters[i - 1:i + 1] = [second, conjugate_letter(first, m, known)]
    else:
        m = word_to_matrix((first,), g)
        letters[i - 1:i + 1] = [conjugate_letter(second, m, known), first]
    return _with_curves(f, lefschetz=tuple(letters))


def conjugate(f: FibrationData, h: Sequence[SignedTwist]) -> FibrationData:
    """Global conjugation: every letter t_c becomes t_{phi(c)}, phi the image of ``h``."""
    m = word_to_matrix(tuple(h), f.fiber.genus)
    known = f.known_curves()
    return _with_curves(
        f,
        lefschetz=conjugate_word(f.lefschetz, m, known),
        bundle=tuple(conjugate_word(w, m, known) for w in f.bundle),
    )


def insert_cancelling_pair(f: FibrationData, position: int, curve: CurveClass, first_sign: int = 1) -> FibrationData:
    """Insert t_c^s t_c^-s before Lefschetz letter ``position`` (0-based, 0..n)."""
    if not 0 <= position <= len(f.lefschetz):
        raise IndexError(f"insertion point {position} outside 0..{len(f.lefschetz)}")
    if curve.rank != f.fiber.homology_rank:
        raise FiberMismatchError(f"curve {curve.name!r} does not live on {f.fiber}")
    pair = (SignedTwist(curve, first_sign), SignedTwist(curve, -first_sign))
    letters = f.lefschetz[:position] + pair + f.lefschetz[position:]
    return _with_curves(f, lefschetz=letters)


def fiber_sum(f1: FibrationData, f2: FibrationData, glue: Sequence[SignedTwist] = ()) -> FibrationData:
    """Fiber sum over closed bases with gluing mapping class ``glue``.

    The sum has Lefschetz letters delta(f1) followed by delta(f2) conjugated by
    C1 * glue (C1 the commutator word of f1), and bundle words of f1 followed by
    those of f2 conjugated by ``glue``; this keeps the closing relation.
    """
    if f1.fiber != f2.fiber:
        raise FiberMismatchError(f"fiber sum of {f1.fiber} and {f2.fiber}")
    if not (f1.base.closed and f2.base.closed):
        raise UnsupportedError("fiber sum is implemented for closed bases")
    g = f1.fiber.genus
    glue = tuple(glue)
    known = f1.known_curves() + f2.known_curves()
    m_glue = word_to_matrix(glue, g)
    m_shift = word_to_matrix(f1.commutator_word(), g) @ m_glue
    letters = f1.lefschetz + conjugate_word(f2.lefschetz, m_shift, known)
    bundle = f1.bundle + tuple(conjugate_word(w, m_glue, known) for w in f2.bundle)
    base = BaseSurface(f1.base.genus + f2.base.genus, 0)
    merged = {c.name: c for c in known}
    return FibrationData(
        f1.fiber, base, letters, bundle,
        twist=tuple(a + b for a, b in zip(f1.twist, f2.twist)),
        surjective=f1.surjective or f2.surjective,
        curves=tuple(merged.values()),
    )


# ---------------------------------------------------------------------------
# twisting


def twist(f: FibrationData, psi: Sequence[int]) -> FibrationData:
    psi = tuple(int(v) for v in psi)
    if not any(psi):
        if len(psi) not in (0, len(f.twist)):
            raise DimensionError(f"twist element {psi} for Pi_1 of rank {len(f.twist)}")
        return f
    if not is_exceptional(f.fiber) or not f.fiber.admissible:
        raise UnsupportedError(f"{f.fiber} is not exceptional; Pi_1 is trivial")
    if len(psi) != len(f.twist):
        raise DimensionError(f"twist element {psi} for Pi_1 of rank {len(f.twist)}")
    return replace(f, twist=tuple(a + b for a, b in zip(f.twist, psi)))


def lefschetz_surjectivity(f: FibrationData) -> Optional[str]:
    """'declared', 'verified' or None.

    Verification is only attempted on the torus, where two vanishing cycles
    meeting once already generate SL(2, Z) = M_1.
    """
    if f.surjective:
        return "declared"
    if f.fiber == FiberSurface(1, 0):
        cs = [t.curve for t in f.lefschetz if t.curve.essential]
        for i in range(len(cs)):
            for j in range(i + 1, len(cs)):
                if abs(twist_pairing(cs[i], cs[j])) == 1:
                    return "verified"
    return None


def twist_normalize(f: FibrationData) -> FibrationData:
    """Drop the structure twist when the Lefschetz monodromy is surjective."""
    if any(f.twist) and lefschetz_surjectivity(f) is not None:
        return replace(f, twist=(0,) * len(f.twist))
    return f


# ---------------------------------------------------------------------------
# pullbacks along finite unbranched covers of a bounded base


@dataclass
class PullbackSystem:
    """Reidemeister-Schreier data of one connected component of a cover.

    ``positions[k]`` says where Schreier generator k lands in the lifted
    datum: ('lefschetz', index) or ('bundle', index).
    """

    system: SchreierSystem
    meridians: int
    positions: list


def _generator_words(f: FibrationData) -> list[tuple]:
    return [(t,) for t in f.lefschetz] + [tuple(w) for w in f.bundle]


def _omega(f: FibrationData, w) -> tuple:
    images = _generator_words(f)
    out = ()
    for x, e in w:
        out += images[x] if e == 1 else invert_word(images[x])
    return out


def boundary_loops(f: FibrationData) -> list:
    """Boundary circles as words in generator indices (orientation up to inversion)."""
    if f.boundary_loops is not None:
        return [list(w) for w in f.boundary_loops]
    n, h = len(f.lefschetz), f.base.genus
    loops = [[(n + 2 * h + k, 1)] for k in range(f.base.boundary_count - 1)]
    w = [(k, 1) for k in range(n)]
    for j in range(h):
        a, b = n + 2 * j, n + 2 * j + 1
        w += [(a, 1), (b, 1), (a, -1), (b, -1)]
    w += [(n + 2 * h + k, 1) for k in range(f.base.boundary_count - 1)]
    loops.append(w)
    return loops


def _check_cover_input(f, base_perms, meridian_perms):
    if f.base.closed:
        raise UnsupportedError("pullbacks along covers need a base with boundary")
    base_perms = [tuple(p) for p in base_perms]
    if len(base_perms) != len(f.bundle):
        raise ValueError(f"need {len(f.bundle)} permutations (one per base generator), got {len(base_perms)}")
    degree = len(base_perms[0]) if base_perms else (len(meridian_perms[0]) if meridian_perms else 1)
    if meridian_perms is not None:
        if len(meridian_perms) != len(f.lefschetz):
            raise ValueError("one meridian permutation per Lefschetz letter")
        for p in meridian_perms:
            if tuple(p) != tuple(range(len(p))):
                raise UnsupportedError("meridians must act trivially: branched covers are not supported")
    ident = tuple(range(degree))
    perms = [ident] * len(f.lefschetz) + base_perms
    for p in perms:
        if sorted(p) != list(ident):
            raise ValueError(f"{p} is not a permutation of degree {degree}")
    return perms, degree


def pullback_systems(f: FibrationData, base_perms, meridian_perms=None) -> list[PullbackSystem]:
    perms, degree = _check_cover_input(f, base_perms, meridian_perms)
    n = len(f.lefschetz)
    out = []
    for sheets in orbits(perms, degree):
        sub = restrict(perms, sheets)
        system = SchreierSystem(sub, len(sheets))
        positions = []
        nl = nb = 0
        for gen in system.generators:
            if gen.generator < n:
                positions.append(("lefschetz", nl))
                nl += 1
            else:
                positions.append(("bundle", nb))
                nb += 1
        out.append(PullbackSystem(system, n, positions))
    return out


def pullback_cover(f: FibrationData, base_perms, meridian_perms=None):
    """Pullback of ``f`` along the finite cover given by permutations of the base generators.

    ``base_perms[j]`` is the permutation (of 0..deg-1, as a tuple of images)
    by which bundle generator j moves the sheets.  Returns a FibrationData for
    a connected cover, otherwise a list with one datum per component.
    """
    systems = pullback_systems(f, base_perms, meridian_perms)
    g = f.fiber.genus
    known = f.known_curves()
    boundary_words = boundary_loops(f)
    lifts = []
    for ps in systems:
        system = ps.system
        deg = system.degree
        letters, bundle = [], []
        for gen in system.generators:
            if gen.generator < ps.meridians:
                # t_i xi t_i^-1 lifts to a twist about omega(t_i)(c)
                t_word = system.transversal[gen.sheet]
                m = word_to_matrix(_omega(f, t_word), g)
                letters.append(conjugate_letter(f.lefschetz[gen.generator], m, known))
            else:
                bundle.append(_omega(f, gen.word))
        n_lift = len(letters)
        index = [pos if kind == "lefschetz" else n_lift + pos for kind, pos in ps.positions]
        loops = []
        for w in boundary_words:
            perm = word_permutation(system.perms, w, deg)
            seen = set()
            for start in range(deg):
                if start in seen:
                    continue
                length, j = 0, start
                while j not in seen:
                    seen.add(j)
                    j = perm[j]
                    length += 1
                t = system.transversal[start]
                loop = tuple(t) + tuple(w) * length + tuple((x, -e) for x, e in reversed(t))
                loops.append(tuple((index[k], e) for k, e in system.rewrite(loop)))
        d_lift = len(loops)
        chi = deg * f.base.euler_characteristic
        h2 = 2 - chi - d_lift
        if h2 < 0 or h2 % 2:
            raise AssertionError(f"inconsistent cover: chi={chi}, boundary circles={d_lift}")
        base = BaseSurface(h2 // 2, d_lift)
        lifts.append(FibrationData(
            f.fiber, base, tuple(letters), tuple(bundle),
            twist=tuple(deg * v for v in f.twist),
            surjective=f.surjective,
            curves=tuple(known),
            boundary_loops=tuple(loops),
        ))
    return lifts[0] if len(lifts) == 1 else lifts


# ---------------------------------------------------------------------------
# singular monodromy compatibility


@dataclass(frozen=True)
class SingularMonodromyData:
    component: int
    vanishing_cycle: CurveClass
    images: tuple  # twist words assigned to generators of pi_1 of the critical component


def singular_compatibility_check(s: SingularMonodromyData) -> str:
    """'pass' iff every image fixes the vanishing class up to sign."""
    c = s.vanishing_cycle.homology
    neg = tuple(-v for v in c)
    g = len(c) // 2
    for w in s.images:
        image = word_to_matrix(tuple(w), g).apply(c)
        if image != c and image != neg:
            return "fail"
    return "pass"


def total_monodromy(f: FibrationData) -> SymplecticMatrix:
    return word_to_matrix(f.closure_word(), f.fiber.genus)
