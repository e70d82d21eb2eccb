"""Exact solver for DIFF: the largest A inside E with A - A inside D.

``A - A`` lies in ``D`` exactly when every pair of A is joined in the graph on
E whose edges are the pairs with both differences in D, so DIFF is a maximum
clique problem.  The clique search is a bitset branch-and-bound with greedy
colouring bounds; Python ints serve as the bitsets.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import FugledeError, InstanceTooLarge
from .group import GroupSpec, PointSet

DEFAULT_VERTEX_CAP = 4096
BRUTE_FORCE_CAP = 24

OPTIMAL = "optimal"
TARGET_REACHED = "target-reached"
BUDGET_EXHAUSTED = "budget-exhausted"


@dataclass(frozen=True)
class DiffInstance:
    group: GroupSpec
    E: PointSet
    D: PointSet
    target: Optional[int] = None

    def __post_init__(self):
        for name, s in (("E", self.E), ("D", self.D)):
            if s.group.moduli != self.group.moduli:
                raise FugledeError(f"{name} lives in Z{list(s.group.moduli)}, not Z{list(self.group.moduli)}")
        if self.target is not None and self.target < 0:
            raise FugledeError("target must be non-negative")


@dataclass
class ConflictGraph:
    """Compatibility graph on E; vertex i is ``E.points[i]``."""

    n: int
    adjacency: list[int]
    nonempty_feasible: bool = True

    def has_edge(self, i: int, j: int) -> bool:
        return bool(self.adjacency[i] >> j & 1)

    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.n) for j in range(i + 1, self.n) if self.has_edge(i, j)]

    def degree(self, i: int) -> int:
        return self.adjacency[i].bit_count()


@dataclass
class DiffSolution:
    k: int
    witness: PointSet
    status: str = OPTIMAL
    target: Optional[int] = None
    nodes: int = 0
    elapsed: float = 0.0
    stats: dict = field(default_factory=dict)

    @property
    def verdict(self) -> str:
        """``yes``/``no``/``unknown`` against the target; ``optimal`` without one."""
        if self.target is not None and self.k >= self.target:
            return "yes"
        if self.status == BUDGET_EXHAUSTED:
            return "unknown"
        return "no" if self.target is not None else OPTIMAL


def _mask(g: GroupSpec, S: PointSet) -> np.ndarray:
    m = np.zeros(g.order, dtype=bool)
    if len(S):
        m[S.indices()] = True
    return m


def _radix(g: GroupSpec) -> np.ndarray:
    w, out = 1, []
    for n in reversed(g.moduli):
        out.append(w)
        w *= n
    return np.array(out[::-1], dtype=np.int64)


def _bits(row: np.ndarray) -> int:
    return int.from_bytes(np.packbits(row, bitorder="little").tobytes(), "little")


def build_conflict_graph(inst: DiffInstance) -> ConflictGraph:
    g = inst.group
    g.require_enumerable()
    n = len(inst.E)
    dmask = _mask(g, inst.D)
    if not dmask[0]:
        return ConflictGraph(n, [0] * n, nonempty_feasible=False)
    if n == 0:
        return ConflictGraph(0, [])
    coords = np.array(inst.E.points, dtype=np.int64).reshape(n, g.dim)
    moduli = np.array(g.moduli, dtype=np.int64)
    radix = _radix(g)
    adj = []
    for i in range(n):
        diff = (coords - coords[i]) % moduli
        ok = dmask[diff @ radix] & dmask[((-diff) % moduli) @ radix]
        ok[i] = False
        adj.append(_bits(ok))
    return ConflictGraph(n, adj)


class _OutOfBudget(Exception):
    pass


class _Reached(Exception):
    pass


class _CliqueSearch:
    def __init__(self, adj: list[int], target: Optional[int], deadline: Optional[float]):
        self.adj = adj
        self.target = target
        self.deadline = deadline
        self.best: list[int] = []
        self.nodes = 0

    def run(self) -> None:
        n = len(self.adj)
        self.best = self._greedy()
        if self.target is not None and len(self.best) >= self.target:
            raise _Reached
        self._expand([], (1 << n) - 1)

    def _greedy(self) -> list[int]:
        best: list[int] = []
        for v in range(len(self.adj)):
            clique, P = [v], self.adj[v]
            while P:
                u = (P & -P).bit_length() - 1
                clique.append(u)
                P &= self.adj[u]
            if len(clique) > len(best):
                best = clique
        return best

    def _colour(self, P: int, kmin: int) -> tuple[list[int], list[int]]:
        adj = self.adj
        order, colours = [], []
        k = 0
        while P:
            k += 1
            Q = P
            while Q:
                b = Q & -Q
                v = b.bit_length() - 1
                Q &= ~adj[v] & ~b
                P &= ~b
                if k >= kmin:
                    order.append(v)
                    colours.append(k)
        return order, colours

    def _expand(self, C: list[int], P: int) -> None:
        self.nodes += 1
        if self.deadline is not None and self.nodes & 255 == 0 and time.monotonic() > self.deadline:
            raise _OutOfBudget
        order, colours = self._colour(P, len(self.best) - len(C) + 1)
        adj = self.adj
        for i in range(len(order) - 1, -1, -1):
            if len(C) + colours[i] <= len(self.best):
                return
            v = order[i]
            C.append(v)
            NP = P & adj[v]
            if NP:
                self._expand(C, NP)
            elif len(C) > len(self.best):
                self.best = C[:]
                if self.target is not None and len(self.best) >= self.target:
                    raise _Reached
            C.pop()
            P &= ~(1 << v)


def _relabel(adj: list[int], order: list[int]) -> list[int]:
    n = len(adj)
    if n == 0:
        return []
    nbytes = (n + 7) // 8
    raw = b"".join(a.to_bytes(nbytes, "little") for a in adj)
    mat = np.unpackbits(np.frombuffer(raw, dtype=np.uint8).reshape(n, nbytes), axis=1,
                        bitorder="little")[:, :n].astype(bool)
    perm = np.array(order)
    mat = mat[np.ix_(perm, perm)]
    return [_bits(row) for row in mat]


def max_clique(adj: list[int], target: Optional[int] = None, budget: Optional[float] = None):
    """Maximum clique of the graph with bitset rows ``adj``.

    Returns ``(clique, status, nodes)``.  Vertices are relabelled by
    descending degree (ties by label) before the search.
    """
    n = len(adj)
    order = sorted(range(n), key=lambda v: (-adj[v].bit_count(), v))
    radj = _relabel(adj, order)
    deadline = None if budget is None else time.monotonic() + budget
    search = _CliqueSearch(radj, target, deadline)
    status = OPTIMAL
    try:
        search.run()
    except _Reached:
        status = TARGET_REACHED
    except _OutOfBudget:
        status = BUDGET_EXHAUSTED
    clique = sorted(order[i] for i in search.best)
    return clique, status, search.nodes


def _anchorable(inst: DiffInstance) -> bool:
    # With 0 in D and D inside E, any solution A translates to A - a0, which
    # contains 0 and still lies in E; so 0 can be fixed in the clique.
    E = inst.E.index_set()
    D = inst.D.index_set()
    return 0 in D and D <= E


def check_witness(inst: DiffInstance, A: PointSet) -> bool:
    """Direct check that A lies in E and A - A lies in D."""
    E = set(inst.E.points)
    D = set(inst.D.points)
    return all(a in E for a in A) and A.differences() <= D if len(A) else True


def solve_diff(
    inst: DiffInstance,
    budget: Optional[float] = None,
    vertex_cap: int = DEFAULT_VERTEX_CAP,
    anchor: bool = True,
) -> DiffSolution:
    """Exact DIFF (or DIFF' when ``inst.target`` is set).

    In target mode the search stops at the first witness of size >= target.
    ``budget`` is wall-clock seconds; on exhaustion the best clique found is
    returned with status ``budget-exhausted``.
    """
    g = inst.group
    if len(inst.E) > vertex_cap:
        raise InstanceTooLarge(f"|E| = {len(inst.E)} exceeds vertex cap {vertex_cap}")
    t0 = time.monotonic()
    zero = g.zero()
    if len(inst.E) == 0 or zero not in set(inst.D.points):
        return DiffSolution(0, PointSet(g, ()), OPTIMAL, inst.target, 0, time.monotonic() - t0)

    anchored = anchor and _anchorable(inst)
    if anchored:
        D = set(inst.D.points)
        sub = [p for p in inst.E.points if p != zero and p in D and g.neg(p) in D]
        work = DiffInstance(g, PointSet(g, tuple(sub)), inst.D)
        target = None if inst.target is None else inst.target - 1
    else:
        work, target = inst, inst.target

    graph = build_conflict_graph(work)
    if target is not None and target <= 0:
        clique, status, nodes = [], TARGET_REACHED, 0
    else:
        clique, status, nodes = max_clique(graph.adjacency, target, budget)
    points = [work.E.points[i] for i in clique]
    if anchored:
        points = [zero] + points
    witness = PointSet(g, tuple(points)).sorted()
    if not check_witness(inst, witness):
        raise AssertionError("clique search returned an invalid witness")
    return DiffSolution(
        len(witness), witness, status, inst.target, nodes, time.monotonic() - t0,
        {"anchored": anchored, "vertices": graph.n},
    )


def brute_force_diff(inst: DiffInstance) -> DiffSolution:
    """Reference DIFF by enumerating every feasible subset of E.

    Feasibility is closed under taking subsets, so a depth-first walk that
    only extends feasible sets visits all of them.
    """
    g = inst.group
    pts = list(inst.E.points)
    n = len(pts)
    if n > BRUTE_FORCE_CAP:
        raise InstanceTooLarge(f"brute force limited to |E| <= {BRUTE_FORCE_CAP}, got {n}")
    t0 = time.monotonic()
    D = set(inst.D.points)
    if n == 0 or g.zero() not in D:
        return DiffSolution(0, PointSet(g, ()), OPTIMAL, inst.target)
    ok = [[g.sub(a, b) in D and g.sub(b, a) in D for b in pts] for a in pts]
    best: list[int] = []
    nodes = 0

    def walk(chosen: list[int], start: int) -> None:
        nonlocal best, nodes
        nodes += 1
        if len(chosen) > len(best):
            best = chosen[:]
        for j in range(start, n):
            if all(ok[i][j] for i in chosen):
                chosen.append(j)
                walk(chosen, j + 1)
                chosen.pop()

    walk([], 0)
    witness = PointSet(g, tuple(pts[i] for i in best)).sorted()
    return DiffSolution(len(best), witness, OPTIMAL, inst.target, nodes, time.monotonic() - t0)
