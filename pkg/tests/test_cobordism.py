import random

import pytest

from lefschetz.cobordism import (
    CobordismClass,
    MoveWitness,
    apply_move,
    chi_parity,
    class_negate,
    class_sum,
    eta,
    forgetful_phi,
    invariant_image_lattice,
    sigma_class,
)
from lefschetz.exceptions import FiberMismatchError, InvariantViolation, UnsupportedError
from lefschetz.fibration import elliptic, from_word, trivial_bundle
from lefschetz.mcg import relator
from lefschetz.surfaces import TORUS, FiberSurface

from helpers import pool, random_word

E1 = CobordismClass.of(elliptic(1))
EMPTY = CobordismClass(1)


def test_eta_examples():
    assert eta(E1) == 12
    assert eta(CobordismClass.of(from_word(TORUS, relator("braid", TORUS)))) == 0
    assert eta(class_negate(E1)) == -12


def test_sigma_examples():
    assert sigma_class(E1) == -8
    assert sigma_class(CobordismClass.of(trivial_bundle(TORUS))) == 0
    assert sigma_class(class_sum(E1, class_negate(E1))) == 0


def test_phi():
    assert forgetful_phi(E1) == (-8, 0)
    assert forgetful_phi(EMPTY) == (0, 0)
    with pytest.raises(UnsupportedError):
        forgetful_phi(CobordismClass(1, (), m=3))


def test_sum_identity_and_errors():
    assert class_sum(E1, EMPTY) == E1
    with pytest.raises(FiberMismatchError):
        class_sum(E1, CobordismClass(2))
    with pytest.raises(FiberMismatchError):
        CobordismClass(2, (elliptic(1),))


def test_additivity_random():
    rng = random.Random(0)
    for _ in range(10):
        g = rng.choice((1, 2))
        x = CobordismClass.of(*rng.sample(pool(g), 2))
        y = CobordismClass.of(rng.choice(pool(g)))
        s = class_sum(x, y)
        assert eta(s) == eta(x) + eta(y)
        assert sigma_class(s) == sigma_class(x) + sigma_class(y)
        assert forgetful_phi(s) == tuple(a + b for a, b in zip(forgetful_phi(x), forgetful_phi(y)))


def test_moves_preserve_invariants():
    x = CobordismClass.of(elliptic(1), pool(1)[2])
    c = elliptic(1).lefschetz[0].curve
    witnesses = [
        MoveWitness("hurwitz", {"rep": 0, "i": 3, "direction": -1}),
        MoveWitness("conjugation", {"rep": 1, "word": random_word(random.Random(1), 1, 3)}),
        MoveWitness("cancelling_pair", {"rep": 0, "position": 2, "curve": c, "first_sign": 1}),
        MoveWitness("disjoint_union_reorder", {"order": [1, 0]}),
        MoveWitness("fibersum_split", {"first": 0, "second": 1}),
    ]
    for w in witnesses:
        y = apply_move(x, w)
        assert (sigma_class(y), eta(y), chi_parity(y)) == (sigma_class(x), eta(x), chi_parity(x))
    assert len(apply_move(x, witnesses[-1]).representatives) == 1


def test_bad_witnesses():
    with pytest.raises(ValueError):
        MoveWitness("surgery")
    with pytest.raises(IndexError):
        apply_move(E1, MoveWitness("hurwitz", {"rep": 3, "i": 1}))
    with pytest.raises(ValueError):
        apply_move(E1, MoveWitness("disjoint_union_reorder", {"order": [0, 0]}))
    with pytest.raises(IndexError):
        apply_move(E1, MoveWitness("fibersum_split", {}))


def test_invariant_violation_is_detected(monkeypatch):
    import lefschetz.cobordism as cob

    monkeypatch.setattr(cob, "_move", lambda x, w: class_sum(x, x))
    with pytest.raises(InvariantViolation):
        apply_move(E1, MoveWitness("hurwitz", {"i": 1}))


def test_lattice():
    assert invariant_image_lattice([E1]) == ((8, -12),)
    assert invariant_image_lattice([]) == ()
    assert invariant_image_lattice([E1, class_negate(E1)]) == invariant_image_lattice([E1])


def test_eta_of_relator_words():
    for g in (1, 2, 3):
        fiber = FiberSurface(g, 0)
        for name in ("braid", "chain", "hyperelliptic"):
            r = relator(name, fiber)
            x = CobordismClass.of(from_word(fiber, r))
            assert eta(x) == sum(t.sign for t in r)
