import pytest

from lefschetz.exceptions import DimensionError, UnsupportedCurveError
from lefschetz.surfaces import (
    ANNULUS,
    TORUS,
    CurveClass,
    FiberSurface,
    class_name,
    essential_curve_class_count,
    intersection_pairing,
    is_exceptional,
    normalize_class,
    pi1_fiber_kind,
    pi1_fiber_rank,
    surger,
)


def test_admissible():
    assert not FiberSurface(0, 0).admissible
    assert not FiberSurface(0, 1).admissible
    assert ANNULUS.admissible and TORUS.admissible and FiberSurface(2, 3).admissible


def test_exceptional_fibers():
    assert is_exceptional(TORUS) and is_exceptional(ANNULUS)
    assert not is_exceptional(FiberSurface(2, 0))
    assert not is_exceptional(FiberSurface(1, 1))
    assert pi1_fiber_rank(TORUS) == 2 and pi1_fiber_kind(TORUS) == "Z2"
    assert pi1_fiber_rank(ANNULUS) == 1
    assert pi1_fiber_rank(FiberSurface(3, 1)) == 0
    with pytest.raises(ValueError):
        pi1_fiber_rank(FiberSurface(0, 1))


def test_euler_characteristic():
    assert FiberSurface(2, 1).euler_characteristic == -3
    assert ANNULUS.euler_characteristic == 0


def test_pairing_standard_basis():
    a1, b1 = (1, 0), (0, 1)
    assert intersection_pairing(a1, b1) == 1
    assert intersection_pairing(b1, a1) == -1
    assert intersection_pairing((1, 0, 0, 0), (0, 0, 0, 1)) == 0
    with pytest.raises(DimensionError):
        intersection_pairing((1, 0), (1, 0, 0, 0))


def test_curve_separating_matches_homology():
    CurveClass("x", (0, 0, 0, 0), True)
    with pytest.raises(ValueError):
        CurveClass("x", (0, 0), False)
    with pytest.raises(ValueError):
        CurveClass("a", (1, 0), True)


def test_surger():
    m = surger(FiberSurface(2, 0), CurveClass("a", (1, 0, 0, 0)))
    assert (m.genus, m.boundary_count, m.marked_points, m.components) == (1, 0, 2, 1)
    with pytest.raises(UnsupportedCurveError):
        surger(FiberSurface(2, 0), CurveClass("x", (0, 0, 0, 0), True))
    with pytest.raises(DimensionError):
        surger(FiberSurface(2, 0), CurveClass("a", (1, 0)))


def test_class_count():
    assert essential_curve_class_count(FiberSurface(3, 1)) == 1
    assert essential_curve_class_count(FiberSurface(1, 3)) is None


def test_normalize_and_names():
    assert normalize_class((0, -1, 2)) == (0, 1, -2)
    assert class_name((1, -1)) == "h_1_m1"
