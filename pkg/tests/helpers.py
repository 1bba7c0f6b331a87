"""Random data and known fibrations shared by the test modules."""
import random

from lefschetz.fibration import (
    BaseSurface,
    FibrationData,
    conjugate,
    elliptic,
    from_word,
    hurwitz_move,
)
from lefschetz.mcg import SignedTwist, chain_curves, invert_word, relation_library, word_to_matrix
from lefschetz.surfaces import FiberSurface

T2 = FiberSurface(1, 0)
G2 = FiberSurface(2, 0)
G3 = FiberSurface(3, 0)


def generators(genus):
    return [SignedTwist(c) for c in chain_curves(genus, 2 * genus + 1 if genus > 1 else 2)]


def random_word(rng, genus, length):
    gens = generators(genus)
    return tuple(SignedTwist(rng.choice(gens).curve, rng.choice((1, -1))) for _ in range(length))


def random_symplectic(rng, genus, length=8):
    return word_to_matrix(random_word(rng, genus, length), genus)


def chain_word(genus, length, power):
    return tuple(SignedTwist(c) for c in chain_curves(genus, length)) * power


def torus_bundle_over_torus(k=1, m=2):
    """Monodromies (t_a t_b)^k, (t_a t_b)^m commute, so the closing relation holds."""
    ab = chain_word(1, 2, 1)
    return FibrationData(T2, BaseSurface(1, 0), (), (ab * k, ab * m))


def lantern_pair(fiber, prefix=(), suffix=()):
    """(before, after): ... rhs rhs^-1 ... and the same with the first rhs replaced by lhs."""
    lhs, rhs = relation_library("lantern", fiber)
    before = from_word(fiber, tuple(prefix) + rhs + invert_word(rhs) + tuple(suffix))
    after = from_word(fiber, tuple(prefix) + lhs + invert_word(rhs) + tuple(suffix))
    return before, after


# Closed-base fibrations with known total spaces, signatures from the
# classical intersection forms:
#   E(1) = CP2 # 9(-CP2): -8;  E(2) = K3: -16
#   genus-2 hyperelliptic word: CP2 # 13(-CP2): -12
#   genus-2 (c1..c5)^6: K3 # 2(-CP2): -18
#   genus-2 (c1..c4)^10: -24 (from the chain relation, K3 # ... family)
#   genus-3 hyperelliptic word: -16
#   torus bundles over the torus: 0 (fiber genus <= 2 bundles have sigma = 0)
def known_signatures():
    hyp2, _ = relation_library("hyperelliptic", G2)
    hyp3, _ = relation_library("hyperelliptic", G3)
    return [
        ("E(1)", elliptic(1), -8),
        ("E(2)", elliptic(2), -16),
        ("hyperelliptic g2", from_word(G2, hyp2), -12),
        ("(c1..c5)^6 g2", from_word(G2, chain_word(2, 5, 6)), -18),
        ("(c1..c4)^10 g2", from_word(G2, chain_word(2, 4, 10)), -24),
        ("hyperelliptic g3", from_word(G3, hyp3), -16),
        ("T2 bundle over T2", torus_bundle_over_torus(), 0),
    ]


def pool(genus):
    """Valid closed-base fibrations of fiber genus 1 or 2 used as random seeds."""
    if genus == 1:
        return [elliptic(1), elliptic(2), torus_bundle_over_torus(1, 2), torus_bundle_over_torus(0, 3)]
    hyp2, _ = relation_library("hyperelliptic", G2)
    before, after = lantern_pair(G2, suffix=hyp2)
    return [from_word(G2, hyp2), from_word(G2, chain_word(2, 5, 6)), before, after]


def scramble(rng, f, moves=6):
    """Random Hurwitz moves and one random global conjugation."""
    for _ in range(moves):
        if len(f.lefschetz) < 2:
            break
        f = hurwitz_move(f, rng.randrange(1, len(f.lefschetz)), rng.choice((1, -1)))
    return conjugate(f, random_word(rng, f.fiber.genus, 4))


def transitive_perms(rng, count, degree):
    while True:
        perms = []
        for _ in range(count):
            p = list(range(degree))
            rng.shuffle(p)
            perms.append(tuple(p))
        seen, stack = {0}, [0]
        while stack:
            i = stack.pop()
            for p in perms:
                for j in (p[i], p.index(i)):
                    if j not in seen:
                        seen.add(j)
                        stack.append(j)
        if len(seen) == degree:
            return perms


def rng_for(seed):
    return random.Random(seed)


def local_signature_oracle(f):
    """Signature from local signatures, independent of the Meyer cocycle code.

    Genus 1: every nonseparating point contributes -2/3.  Genus 2 (all
    mapping classes hyperelliptic): nonseparating -3/5, separating -1/5.
    Negative points contribute the opposite.  Surface bundles over surfaces
    with fiber genus <= 2 have signature 0, so this covers every base genus.
    """
    from fractions import Fraction

    g = f.fiber.genus
    weights = {1: (Fraction(-2, 3), None), 2: (Fraction(-3, 5), Fraction(-1, 5))}[g]
    total = Fraction(0)
    for t in f.lefschetz:
        w = weights[1] if t.curve.separating else weights[0]
        total += t.sign * w
    assert total.denominator == 1, total
    return int(total)


def random_bounded(rng, genus=None):
    """Random datum over a bounded base with at least one free base generator."""
    genus = genus or rng.choice((1, 2))
    fiber = FiberSurface(genus, 0)
    while True:
        h, d = rng.choice((0, 1)), rng.choice((1, 2, 3))
        if 2 * h + d - 1 >= 1:
            break
    base = BaseSurface(h, d)
    letters = random_word(rng, genus, rng.randint(0, 4))
    bundle = tuple(random_word(rng, genus, rng.randint(0, 3)) for _ in range(base.bundle_word_count))
    return FibrationData(fiber, base, letters, bundle)


def pullback_images_agree(f, perms):
    """Lifted generators map to the composed monodromy of their Schreier words."""
    from lefschetz.fibration import _omega, pullback_cover, pullback_systems

    lifted = pullback_cover(f, perms)
    (ps,) = pullback_systems(f, perms)
    g = f.fiber.genus
    n_lift = len(lifted.lefschetz)
    for gen, (kind, pos) in zip(ps.system.generators, ps.positions):
        image = (lifted.lefschetz[pos],) if kind == "lefschetz" else lifted.bundle[pos]
        if word_to_matrix(image, g) != word_to_matrix(_omega(f, gen.word), g):
            return False, lifted
    assert n_lift == sum(1 for k, _ in ps.positions if k == "lefschetz")
    return True, lifted
