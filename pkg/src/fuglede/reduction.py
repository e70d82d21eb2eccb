"""Independent set through DIFF.

Vertices are placed in Z_m by a greedy Sidon embedding (all pairwise
differences distinct), so a difference of two images determines the pair it
came from.  With ``A_edges`` the differences along edges, a vertex set is
independent exactly when its image has all differences in ``Z_m - A_edges``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Optional

from .diff import DiffInstance, solve_diff
from .errors import FugledeError, InstanceTooLarge
from .group import GroupSpec, PointSet, cyclic

BRUTE_FORCE_CAP = 24


@dataclass(frozen=True)
class SimpleGraph:
    """Vertices ``1..n``; edges as sorted pairs."""

    n: int
    edges: frozenset[tuple[int, int]]

    def __init__(self, n: int, edges: Iterable[Iterable[int]] = ()):
        if n < 0:
            raise FugledeError("vertex count must be non-negative")
        norm = set()
        for e in edges:
            u, v = e
            if u == v:
                raise FugledeError(f"self-loop at vertex {u}")
            if not (1 <= u <= n and 1 <= v <= n):
                raise FugledeError(f"edge ({u}, {v}) has an endpoint outside 1..{n}")
            norm.add((min(u, v), max(u, v)))
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", frozenset(norm))

    def adjacent(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edges

    def is_independent(self, vertices: Iterable[int]) -> bool:
        return not any(self.adjacent(u, v) for u, v in itertools.combinations(vertices, 2))


@dataclass(frozen=True)
class Embedding:
    m: int
    phi: tuple[int, ...]  # phi[i] is the image of vertex i + 1

    def is_sidon(self) -> bool:
        diffs = [(a - b) % self.m for a, b in itertools.permutations(self.phi, 2)]
        return len(set(diffs)) == len(diffs)


def greedy_embedding_at(n: int, m: int) -> Optional[Embedding]:
    """Greedy placement in Z_m, or None if the candidates run out.

    Each new image is the least ``nu`` in ``1..m-1`` outside
    ``{phi(i) + phi(j) - phi(l)}`` over vertices already placed.
    """
    if n < 1:
        raise FugledeError("need at least one vertex")
    phi = [0]
    forbidden = bytearray(m)
    forbidden[0] = 1
    nu = 1
    while len(phi) < n:
        while nu < m and forbidden[nu]:
            nu += 1
        if nu >= m:
            return None
        new = nu
        # triples that involve the new point at least once
        for a in phi + [new]:
            for b in phi + [new]:
                forbidden[(a + b - new) % m] = 1
                forbidden[(a + new - b) % m] = 1
                forbidden[(new + b - a) % m] = 1
        phi.append(new)
    return Embedding(m, tuple(phi))


def greedy_embedding(n: int) -> Embedding:
    m = max(n ** 3, 2)
    while True:
        emb = greedy_embedding_at(n, m)
        if emb is not None:
            if not emb.is_sidon():
                raise AssertionError(f"greedy embedding for n={n}, m={m} is not Sidon")
            return emb
        m *= 2


def encode_graph(G: SimpleGraph) -> tuple[Embedding, PointSet]:
    emb = greedy_embedding(max(G.n, 1))
    g = cyclic(emb.m)
    phi = emb.phi
    A = sorted({(phi[u - 1] - phi[v - 1]) % emb.m for u, v in G.edges}
               | {(phi[v - 1] - phi[u - 1]) % emb.m for u, v in G.edges})
    edge_set = set(A)
    for u, v in itertools.permutations(range(1, G.n + 1), 2):
        if G.adjacent(u, v) != (((phi[u - 1] - phi[v - 1]) % emb.m) in edge_set):
            raise AssertionError(f"difference test disagrees with adjacency at ({u}, {v})")
    return emb, PointSet(g, tuple((a,) for a in A))


@dataclass
class IndependentSetResult:
    k: int
    witness: tuple[int, ...]
    verdict: str  # yes | no | unknown | optimal
    embedding: Embedding


def independent_set_via_diff(
    G: SimpleGraph, target: Optional[int] = None, budget: Optional[float] = None
) -> IndependentSetResult:
    emb, A_edges = encode_graph(G)
    g: GroupSpec = A_edges.group
    if G.n == 0:
        return IndependentSetResult(0, (), "yes" if not target else "no", emb)
    blocked = {p[0] for p in A_edges}
    if 0 in blocked:
        raise AssertionError("0 is an edge difference; graph is not simple")
    D = PointSet(g, tuple((x,) for x in range(emb.m) if x not in blocked))
    E = PointSet(g, tuple((p,) for p in emb.phi))
    sol = solve_diff(DiffInstance(g, E, D, target), budget=budget)
    back = {p: i + 1 for i, p in enumerate(emb.phi)}
    witness = tuple(sorted(back[p[0]] for p in sol.witness))
    if not G.is_independent(witness):
        raise AssertionError("reduction produced a dependent vertex set")
    return IndependentSetResult(sol.k, witness, sol.verdict, emb)


def brute_force_independent_set(G: SimpleGraph) -> tuple[int, tuple[int, ...]]:
    if G.n > BRUTE_FORCE_CAP:
        raise InstanceTooLarge(f"brute force limited to {BRUTE_FORCE_CAP} vertices")
    for size in range(G.n, 0, -1):
        for S in itertools.combinations(range(1, G.n + 1), size):
            if G.is_independent(S):
                return size, S
    return 0, ()
