"""Finite covers of a free group given by permutation actions.

Generators act on the right on sheets 0..d-1: sheet i moves to perms[x][i]
along generator x.  A word is a sequence of (generator, exponent) pairs
with exponent +1 or -1.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Sequence

Letter = tuple[int, int]


def check_permutation(p: Sequence[int], degree: int) -> tuple[int, ...]:
    p = tuple(int(v) for v in p)
    if sorted(p) != list(range(degree)):
        raise ValueError(f"{p} is not a permutation of 0..{degree - 1}")
    return p


def invert_permutation(p: Sequence[int]) -> tuple[int, ...]:
    inv = [0] * len(p)
    for i, v in enumerate(p):
        inv[v] = i
    return tuple(inv)


def act(perms: Sequence[Sequence[int]], sheet: int, w: Sequence[Letter]) -> int:
    for x, e in w:
        sheet = perms[x][sheet] if e == 1 else invert_permutation(perms[x])[sheet]
    return sheet


def word_permutation(perms: Sequence[Sequence[int]], w: Sequence[Letter], degree: int) -> tuple[int, ...]:
    return tuple(act(perms, i, w) for i in range(degree))


def cycle_count(p: Sequence[int]) -> int:
    seen = [False] * len(p)
    count = 0
    for i in range(len(p)):
        if not seen[i]:
            count += 1
            j = i
            while not seen[j]:
                seen[j] = True
                j = p[j]
    return count


def orbits(perms: Sequence[Sequence[int]], degree: int) -> list[list[int]]:
    """Sheets grouped by the connected components of the cover, in order of least sheet."""
    seen = [False] * degree
    out = []
    for start in range(degree):
        if seen[start]:
            continue
        comp = []
        queue = deque([start])
        seen[start] = True
        while queue:
            i = queue.popleft()
            comp.append(i)
            for p in perms:
                for j in (p[i], invert_permutation(p)[i]):
                    if not seen[j]:
                        seen[j] = True
                        queue.append(j)
        out.append(sorted(comp))
    return out


def restrict(perms: Sequence[Sequence[int]], sheets: Sequence[int]) -> list[tuple[int, ...]]:
    """Action on an invariant set of sheets, relabelled 0..len-1 in increasing order."""
    index = {s: k for k, s in enumerate(sheets)}
    return [tuple(index[p[s]] for s in sheets) for p in perms]


@dataclass(frozen=True)
class SchreierGenerator:
    sheet: int
    generator: int
    word: tuple  # word in the original generators (tuple of Letter)


class SchreierSystem:
    """Reidemeister-Schreier data for a transitive action of a free group.

    ``transversal[i]`` is a word carrying sheet 0 to sheet i built by
    breadth-first search over generators in index order (positive letters
    first).  The free basis of the stabiliser of sheet 0 consists of
    t_i x t_{i.x}^-1 over all (i, x) that are not tree edges.
    """

    def __init__(self, perms: Sequence[Sequence[int]], degree: int, tree_generators: Sequence[int] | None = None):
        self.degree = degree
        self.perms = [check_permutation(p, degree) for p in perms]
        self.inverse_perms = [invert_permutation(p) for p in self.perms]
        allowed = range(len(self.perms)) if tree_generators is None else tree_generators
        self.transversal: list = [None] * degree
        self.transversal[0] = ()
        tree_edges = set()
        queue = deque([0])
        while queue:
            i = queue.popleft()
            for x in allowed:
                for e in (1, -1):
                    j = self.perms[x][i] if e == 1 else self.inverse_perms[x][i]
                    if self.transversal[j] is None:
                        self.transversal[j] = self.transversal[i] + ((x, e),)
                        # a tree edge traversed forwards from i, or backwards into j
                        tree_edges.add((i, x) if e == 1 else (j, x))
                        queue.append(j)
        if any(t is None for t in self.transversal):
            raise ValueError("action is not transitive")
        self.tree_edges = tree_edges
        self.generators: list[SchreierGenerator] = []
        self._index: dict[tuple[int, int], int] = {}
        for i in range(degree):
            for x in range(len(self.perms)):
                if (i, x) in tree_edges:
                    continue
                j = self.perms[x][i]
                w = self.transversal[i] + ((x, 1),) + _inverse(self.transversal[j])
                self._index[(i, x)] = len(self.generators)
                self.generators.append(SchreierGenerator(i, x, w))

    def rank(self) -> int:
        return len(self.generators)

    def rewrite(self, w: Sequence[Letter]) -> list[tuple[int, int]]:
        """Express a loop at sheet 0 as a word in Schreier generators (index, exponent)."""
        out = []
        i = 0
        for x, e in w:
            if e == 1:
                if (i, x) in self._index:
                    out.append((self._index[(i, x)], 1))
                i = self.perms[x][i]
            else:
                j = self.inverse_perms[x][i]
                if (j, x) in self._index:
                    out.append((self._index[(j, x)], -1))
                i = j
        if i != 0:
            raise ValueError("word does not lift to a closed loop at sheet 0")
        return out


def _inverse(w: Sequence[Letter]) -> tuple:
    return tuple((x, -e) for x, e in reversed(w))
