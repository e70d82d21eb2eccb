"""Slow reference deciders that share no code path with the DIFF reductions.

Tiling is checked by exact-cover backtracking over translates; spectrality by
trying every candidate set of characters, with vanishing decided by floating
point evaluation rather than cyclotomic division.
"""

from __future__ import annotations

import cmath
import itertools
from typing import Iterator, Optional

from .group import GroupSpec, PointSet

FLOAT_ZERO = 1e-9


def tiling_complements(g: GroupSpec, S: PointSet) -> Iterator[PointSet]:
    """Every T with ``S + T = G`` as a direct sum."""
    g.require_enumerable()
    n = g.order
    shifts = [g.index_of(s) for s in S]
    elems = [g.element_at(i) for i in range(n)]
    covered = [False] * n
    chosen: list[int] = []

    def cover_ids(t):
        return [g.index_of(g.add(elems[s], elems[t])) for s in shifts]

    def walk(start: int):
        x = next((i for i in range(start, n) if not covered[i]), None)
        if x is None:
            yield PointSet.from_indices(g, sorted(chosen))
            return
        for s in shifts:
            t = g.index_of(g.sub(elems[x], elems[s]))
            ids = cover_ids(t)
            if any(covered[i] for i in ids):
                continue
            for i in ids:
                covered[i] = True
            chosen.append(t)
            yield from walk(x + 1)
            chosen.pop()
            for i in ids:
                covered[i] = False

    if len(S) and n % len(S) == 0:
        yield from walk(0)


def brute_is_tile(g: GroupSpec, S: PointSet) -> Optional[PointSet]:
    return next(tiling_complements(g, S), None)


def float_transform(g: GroupSpec, S: PointSet, lam) -> complex:
    return sum(cmath.exp(2j * cmath.pi * float(g.pairing(lam, a))) for a in S)


def brute_spectrum(g: GroupSpec, S: PointSet) -> Optional[PointSet]:
    """Search all |S|-sets of characters containing 0 for an orthogonal one."""
    g.require_enumerable()
    k = len(S)
    n = g.order
    vanish = [abs(float_transform(g, S, g.element_at(i))) < FLOAT_ZERO for i in range(n)]
    elems = [g.element_at(i) for i in range(n)]
    diff = [[g.index_of(g.sub(elems[i], elems[j])) for j in range(n)] for i in range(n)]
    for rest in itertools.combinations(range(1, n), k - 1):
        if not all(vanish[i] for i in rest):
            continue
        if all(vanish[diff[i][j]] for i, j in itertools.combinations(rest, 2)):
            return PointSet.from_indices(g, (0,) + rest)
    return None
