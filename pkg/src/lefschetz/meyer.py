"""Meyer's signature cocycle and signatures of Lefschetz fibrations.

For symplectic A, B let V = {(x, y) : (A^-1 - I) x + (B - I) y = 0} and
put <(x1, y1), (x2, y2)> = (x1 + y1)^T W (I - B) y2 with W the intersection
form of the fiber.  tau(A, B) is the signature of (the symmetrisation of)
this form on V.  All arithmetic is exact.

Signature of a fibration over a closed base: cut the base into a planar
surface whose boundary loops carry the monodromies m_1, ..., m_N (one per
critical value, then alpha_j and beta_j alpha_j^-1 beta_j^-1 per handle),
neighbourhoods of singular fibers and a disk.  Novikov additivity gives

    sigma = -sum_k tau(m_1 ... m_k, m_k+1) + sum of local terms,

where the local term of a nonseparating vanishing cycle is a calibrated
constant c_+ or c_- and a separating one contributes -1 (positive) or +1
(negative): the 2-handle is attached along a null-homologous curve with
framing -1 (resp. +1) relative to the fiber.
"""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

from ._linalg import SymplecticMatrix, mat_mul, rational_nullspace, standard_form
from .exceptions import CalibrationError, DimensionError, UnsupportedError
from .fibration import FibrationData, elliptic, insert_cancelling_pair, require_closed, reverse_orientation
from .mcg import invert_word, word_to_matrix

WORKERS_ENV = "LEFSCHETZ_WORKERS"
_PARALLEL_MIN_TERMS = 8


def fiber_form(genus: int):
    """Intersection form of the fiber orientation in which x -> x + <x, c> c is a right-handed twist.

    With <x, y> = x^T J y, the twist formula above is right-handed for the
    opposite orientation, so the fiber's intersection form is -J.
    """
    return tuple(tuple(-v for v in row) for row in standard_form(genus))


def signature_of_form(q: Sequence[Sequence]) -> int:
    """Signature of a symmetric rational matrix by congruence diagonalisation."""
    n = len(q)
    m = [[Fraction(v) for v in row] for row in q]
    if any(len(row) != n for row in m):
        raise DimensionError("form must be square")
    for i in range(n):
        for j in range(i):
            if m[i][j] != m[j][i]:
                raise ValueError("form is not symmetric")
    pos = neg = 0
    size = n
    while size:
        # find a usable pivot among the remaining (last ``size``) indices
        idx = list(range(n - size, n))
        p = next((i for i in idx if m[i][i] != 0), None)
        if p is None:
            pair = next(((i, j) for i in idx for j in idx if j > i and m[i][j] != 0), None)
            if pair is None:
                break  # remaining block is zero
            i, j = pair
            # replace e_i by e_i + e_j: new diagonal entry 2 m_ij != 0
            for k in range(n):
                m[i][k] += m[j][k]
            for k in range(n):
                m[k][i] += m[k][j]
            p = i
        top = n - size
        if p != top:
            m[p], m[top] = m[top], m[p]
            for row in m:
                row[p], row[top] = row[top], row[p]
        d = m[top][top]
        if d > 0:
            pos += 1
        else:
            neg += 1
        for i in range(top + 1, n):
            if m[i][top] != 0:
                f = m[i][top] / d
                for k in range(top, n):
                    m[i][k] -= f * m[top][k]
                for k in range(top, n):
                    m[k][i] = m[i][k] if k >= i else m[k][i]
                m[i][top] = Fraction(0)
                m[top][i] = Fraction(0)
        # restore symmetry of the trailing block
        for i in range(top + 1, n):
            for k in range(i + 1, n):
                m[k][i] = m[i][k]
        size -= 1
    return pos - neg


def _sub_identity(a):
    return tuple(tuple(v - int(i == j) for j, v in enumerate(row)) for i, row in enumerate(a))


@lru_cache(maxsize=1 << 16)
def _cocycle_rows(a_rows, b_rows, w_rows) -> int:
    n = len(a_rows)
    a = SymplecticMatrix(a_rows, check=False)
    a_inv_minus = _sub_identity(a.inverse().rows)
    b_minus = _sub_identity(b_rows)
    system = [tuple(a_inv_minus[i]) + tuple(b_minus[i]) for i in range(n)]
    basis = rational_nullspace(system, 2 * n)
    if not basis:
        return 0
    i_minus_b = tuple(tuple(-v for v in row) for row in b_minus)
    w_map = mat_mul(w_rows, i_minus_b)
    xs = [v[:n] for v in basis]
    ys = [v[n:] for v in basis]
    sums = [tuple(p + q for p, q in zip(x, y)) for x, y in zip(xs, ys)]
    wy = [tuple(sum(w_map[r][c] * y[c] for c in range(n)) for r in range(n)) for y in ys]
    k = len(basis)
    q = [[sum(s * t for s, t in zip(sums[i], wy[j])) for j in range(k)] for i in range(k)]
    sym = [[q[i][j] + q[j][i] for j in range(k)] for i in range(k)]
    return signature_of_form(sym)


def meyer_cocycle(a: SymplecticMatrix, b: SymplecticMatrix, form=None) -> int:
    """tau(A, B); ``form`` defaults to the standard J."""
    if a.size != b.size:
        raise DimensionError(f"size mismatch: {a.size} vs {b.size}")
    w = standard_form(a.genus) if form is None else tuple(tuple(r) for r in form)
    return _cocycle_rows(a.rows, b.rows, w)


def fiber_cocycle(a: SymplecticMatrix, b: SymplecticMatrix) -> int:
    """tau with respect to the fiber's own intersection form."""
    return meyer_cocycle(a, b, fiber_form(a.genus))


# ---------------------------------------------------------------------------
# fibrations


def boundary_monodromies(f: FibrationData) -> list[SymplecticMatrix]:
    g = f.fiber.genus
    mats = [word_to_matrix((t,), g) for t in f.lefschetz]
    for j in range(f.base.genus):
        a, b = f.bundle[2 * j], f.bundle[2 * j + 1]
        mats.append(word_to_matrix(a, g))
        mats.append(word_to_matrix(tuple(b) + invert_word(a) + invert_word(b), g))
    return mats


def _term(args):
    a_rows, b_rows, w_rows = args
    return _cocycle_rows(a_rows, b_rows, w_rows)


def default_workers() -> int:
    raw = os.environ.get(WORKERS_ENV)
    if raw is None:
        return 1
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def cocycle_sum(f: FibrationData, workers: Optional[int] = None) -> int:
    """sum_k tau(m_1 ... m_k, m_k+1) over the boundary monodromies of the planar piece."""
    mats = boundary_monodromies(f)
    g = f.fiber.genus
    w = fiber_form(g)
    jobs = []
    prefix = SymplecticMatrix.identity(g)
    for k in range(len(mats) - 1):
        prefix = prefix @ mats[k]
        jobs.append((prefix.rows, mats[k + 1].rows, w))
    workers = default_workers() if workers is None else workers
    if workers > 1 and len(jobs) >= _PARALLEL_MIN_TERMS:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return sum(pool.map(_term, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    return sum(_term(j) for j in jobs)


@dataclass(frozen=True)
class Calibration:
    c_plus: Fraction
    c_minus: Fraction
    checks: dict = field(default_factory=dict, compare=False)

    def lines(self) -> list[str]:
        out = [f"c_plus={self.c_plus}", f"c_minus={self.c_minus}"]
        out += [f"check.{k}={v}" for k, v in self.checks.items()]
        return out


E1_SIGNATURE = -8   # CP^2 # 9 (-CP^2): b+ = 1, b- = 9
E2_SIGNATURE = -16  # K3 surface: b+ = 3, b- = 19


def _local_sum(f: FibrationData, c_plus: Fraction, c_minus: Fraction) -> Fraction:
    total = Fraction(0)
    for t in f.lefschetz:
        if t.curve.separating:
            total += -t.sign
        else:
            total += c_plus if t.sign == 1 else c_minus
    return total


def _raw_signature(f: FibrationData, c_plus, c_minus, workers=None) -> Fraction:
    return -cocycle_sum(f, workers) + _local_sum(f, c_plus, c_minus)


@lru_cache(maxsize=1)
def calibrate_local_terms() -> Calibration:
    """Fix c_+ from E(1), set c_- = -c_+, then check E(2) and a cancelling pair."""
    e1 = elliptic(1)
    n = len(e1.lefschetz)
    c_plus = Fraction(E1_SIGNATURE + cocycle_sum(e1, 1), n)
    c_minus = -c_plus
    checks = {}
    e2_value = _raw_signature(elliptic(2), c_plus, c_minus, 1)
    checks["e2"] = "pass" if e2_value == E2_SIGNATURE else f"fail({e2_value})"
    a = e1.lefschetz[0].curve
    padded = insert_cancelling_pair(e1, 5, a, 1)
    pad_value = _raw_signature(padded, c_plus, c_minus, 1)
    checks["cancelling_pair"] = "pass" if pad_value == E1_SIGNATURE else f"fail({pad_value})"
    rev_value = _raw_signature(reverse_orientation(e1), c_plus, c_minus, 1)
    checks["reverse_e1"] = "pass" if rev_value == -E1_SIGNATURE else f"fail({rev_value})"
    cal = Calibration(c_plus, c_minus, checks)
    bad = {k: v for k, v in checks.items() if v != "pass"}
    if bad:
        raise CalibrationError(f"calibration inconsistent: c_plus={c_plus}, failures {bad}")
    return cal


def fibration_signature(f: FibrationData, workers: Optional[int] = None) -> int:
    """Signature of the total space of a fibration with closed fiber over a closed base."""
    if f.fiber.boundary_count != 0:
        raise UnsupportedError("signature needs a closed fiber")
    if not f.base.closed:
        raise UnsupportedError("signature needs a closed base")
    require_closed(f)
    cal = calibrate_local_terms()
    value = _raw_signature(f, cal.c_plus, cal.c_minus, workers)
    if value.denominator != 1:
        raise CalibrationError(f"non-integral signature {value}")
    return int(value)
