"""Exact integer and rational matrix helpers.

Everything here works on tuples of Python ints or Fractions; no floating
point. Matrices are small (at most a few dozen rows), so plain nested
loops are fast enough and keep the arithmetic exact.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .exceptions import DimensionError

Vector = tuple[int, ...]


def standard_form(genus: int) -> tuple[tuple[int, ...], ...]:
    """Block diagonal J with blocks [[0, 1], [-1, 0]] in the basis a1, b1, ..., ag, bg."""
    n = 2 * genus
    rows = [[0] * n for _ in range(n)]
    for i in range(genus):
        rows[2 * i][2 * i + 1] = 1
        rows[2 * i + 1][2 * i] = -1
    return tuple(tuple(r) for r in rows)


def pairing(x: Sequence[int], y: Sequence[int]) -> int:
    """x^T J y for the standard form, computed blockwise."""
    if len(x) != len(y):
        raise DimensionError(f"rank mismatch: {len(x)} vs {len(y)}")
    if len(x) % 2:
        raise DimensionError(f"odd rank {len(x)}")
    return sum(x[i] * y[i + 1] - x[i + 1] * y[i] for i in range(0, len(x), 2))


def mat_mul(a, b):
    bt = tuple(zip(*b))
    return tuple(tuple(sum(p * q for p, q in zip(row, col)) for col in bt) for row in a)


def mat_vec(a, v):
    return tuple(sum(p * q for p, q in zip(row, v)) for row in a)


def identity(n: int):
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def transpose(a):
    return tuple(zip(*a))


class SymplecticMatrix:
    """An integral 2g x 2g matrix M with M^T J M = J.

    Products and inverses of symplectic matrices are closed, so internal
    arithmetic skips the check; construction from raw rows verifies it.
    """

    __slots__ = ("rows", "_hash")

    def __init__(self, rows: Iterable[Iterable[int]], check: bool = True):
        self.rows = tuple(tuple(int(v) for v in r) for r in rows)
        self._hash = None
        n = len(self.rows)
        if any(len(r) != n for r in self.rows) or n % 2:
            raise DimensionError(f"not a square matrix of even size: {n}")
        if check and not self.is_symplectic():
            raise ValueError("matrix is not symplectic")

    @classmethod
    def identity(cls, genus: int) -> "SymplecticMatrix":
        return cls(identity(2 * genus), check=False)

    @property
    def size(self) -> int:
        return len(self.rows)

    @property
    def genus(self) -> int:
        return len(self.rows) // 2

    def is_symplectic(self) -> bool:
        j = standard_form(self.genus)
        return mat_mul(mat_mul(transpose(self.rows), j), self.rows) == j

    def is_identity(self) -> bool:
        return self.rows == identity(self.size)

    def __matmul__(self, other: "SymplecticMatrix") -> "SymplecticMatrix":
        if self.size != other.size:
            raise DimensionError(f"size mismatch: {self.size} vs {other.size}")
        return SymplecticMatrix(mat_mul(self.rows, other.rows), check=False)

    def inverse(self) -> "SymplecticMatrix":
        # M^-1 = -J M^T J for symplectic M
        j = standard_form(self.genus)
        prod = mat_mul(mat_mul(j, transpose(self.rows)), j)
        return SymplecticMatrix(tuple(tuple(-v for v in r) for r in prod), check=False)

    def apply(self, v: Sequence[int]) -> Vector:
        if len(v) != self.size:
            raise DimensionError(f"vector of length {len(v)} for matrix of size {self.size}")
        return mat_vec(self.rows, v)

    def __eq__(self, other):
        if not isinstance(other, SymplecticMatrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.rows)
        return self._hash

    def __repr__(self):
        return f"SymplecticMatrix({[list(r) for r in self.rows]})"

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.rows]


def rational_nullspace(rows: Sequence[Sequence[int]], ncols: int) -> list[tuple[int, ...]]:
    """Integral basis of the rational kernel of an integer matrix.

    Reduced row echelon form over Q; each kernel vector is cleared of
    denominators and divided by its content.
    """
    m = [[Fraction(v) for v in r] for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -m[i][fc]
        basis.append(_integral(v))
    return basis


def _integral(v: Sequence[Fraction]) -> tuple[int, ...]:
    den = 1
    for x in v:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    return tuple(x // g for x in ints) if g > 1 else tuple(ints)


def hermite_basis_z2(vectors: Iterable[Sequence[int]]) -> tuple[tuple[int, int], ...]:
    """Canonical row-style Hermite basis of the subgroup of Z^2 spanned by ``vectors``.

    Returns () for the trivial subgroup, ((a, b),) with the first nonzero
    entry positive for rank one, and ((a, b), (0, d)) with a, d > 0 and
    0 <= b < d for rank two.
    """
    rows = [tuple(int(x) for x in v) for v in vectors]
    for v in rows:
        if len(v) != 2:
            raise DimensionError(f"expected vectors in Z^2, got length {len(v)}")
    # column 0: gcd of first coordinates via extended Euclid on rows
    first = None
    rest = []
    for v in rows:
        if first is None:
            first = v
            continue
        a, b = first, v
        while b[0] != 0:
            q = a[0] // b[0]
            a, b = b, (a[0] - q * b[0], a[1] - q * b[1])
        first = a
        rest.append(b)  # b[0] == 0
    if first is None:
        return ()
    d = 0
    for v in rest:
        d = gcd(d, v[1])
    if first[0] == 0:
        d = gcd(d, first[1])
        return ((0, d),) if d else ()
    if first[0] < 0:
        first = (-first[0], -first[1])
    if d == 0:
        return (first,)
    return ((first[0], first[1] % d), (0, d))
