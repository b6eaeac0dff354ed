"""Combinatorial substrate: permutation cycles, spanning structures, matching.

Everything here is deterministic, ties included: Kruskal breaks ties toward
the lexicographically smallest vertex pair, the arborescence toward the
smallest edge id (position in the input edge list), and the assignment
toward the lexicographically smallest assignment vector.  Callers rely on
that for byte-identical reruns.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.optimize import linear_sum_assignment

from .core import MalformedPermutation, RearrangeError


class Unreachable(RearrangeError):
    """The arborescence root cannot reach every vertex."""


@dataclass(frozen=True)
class CycleSet:
    """Cycles of a permutation: each cycle is the orbit of its minimum cell
    under i -> pi_i, listed starting from that minimum; cycles are ordered by
    minimum cell.  Length-1 orbits are reported separately as fixed points."""

    cycles: tuple[tuple[int, ...], ...]
    fixed_points: tuple[int, ...]

    @property
    def count(self) -> int:
        """Number of nontrivial cycles (length >= 2)."""
        return len(self.cycles)

    @property
    def count_with_fixed(self) -> int:
        return len(self.cycles) + len(self.fixed_points)


def permutation_cycles(pi: Sequence[int]) -> CycleSet:
    n = len(pi)
    if sorted(pi) != list(range(1, n + 1)):
        raise MalformedPermutation(f"not a permutation of 1..{n}: {tuple(pi)!r}")
    seen = [False] * (n + 1)
    cycles = []
    fixed = []
    for start in range(1, n + 1):
        if seen[start]:
            continue
        orbit = []
        g = start
        while not seen[g]:
            seen[g] = True
            orbit.append(g)
            g = pi[g - 1]
        if len(orbit) == 1:
            fixed.append(start)
        else:
            cycles.append(tuple(orbit))
    return CycleSet(tuple(cycles), tuple(fixed))


Edge = tuple[int, int, float]


@dataclass(frozen=True)
class WeightedGraph:
    """Vertices with weighted edges; directedness is up to the consumer."""

    vertices: tuple[int, ...]
    edges: tuple[Edge, ...]


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[rb] = ra
        return True


def mst_undirected(g: WeightedGraph) -> list[Edge]:
    """Kruskal minimum spanning forest.  Edges sorted by (weight, vertex
    pair); the returned list keeps that order."""
    ordered = sorted(((w, min(u, v), max(u, v)) for u, v, w in g.edges))
    uf = _UnionFind(g.vertices)
    forest: list[Edge] = []
    for w, u, v in ordered:
        if uf.union(u, v):
            forest.append((u, v, w))
    return forest


def min_arborescence(g: WeightedGraph, root: int) -> list[Edge]:
    """Minimum spanning arborescence rooted at `root` (Chu-Liu/Edmonds).

    Returns the chosen edges in input order.  Raises Unreachable if some
    vertex has no path from the root.
    """
    edges = [(u, v, float(w), eid) for eid, (u, v, w) in enumerate(g.edges)]
    by_id = {eid: (u, v, w) for u, v, w, eid in edges}
    chosen = _edmonds(list(g.vertices), edges, root)
    result = [by_id[eid] for eid in sorted(chosen)]
    return [(u, v, w) for u, v, w in result]


def _edmonds(vertices, edges, root):
    # best incoming edge per non-root vertex, ties toward the smallest id
    best = {}
    for u, v, w, eid in edges:
        if v == root or u == v:
            continue
        cur = best.get(v)
        if cur is None or (w, eid) < (cur[2], cur[3]):
            best[v] = (u, v, w, eid)
    for v in vertices:
        if v != root and v not in best:
            raise Unreachable(f"vertex {v} has no incoming path from root {root}")

    # look for a cycle among the best edges
    cycle = None
    color = {v: 0 for v in vertices}
    for start in vertices:
        if color[start] != 0 or start == root:
            continue
        path = []
        v = start
        while v != root and color[v] == 0:
            color[v] = 1
            path.append(v)
            v = best[v][0]
        if v != root and color[v] == 1 and v in path:
            cycle = path[path.index(v):]
            break
        for p in path:
            color[p] = 2
        if v != root:
            color[v] = 2
    if cycle is None:
        return {best[v][3] for v in vertices if v != root}

    # contract the cycle into a fresh supernode and recurse
    cyc = set(cycle)
    super_v = max(vertices) + 1
    contracted = []
    for u, v, w, eid in edges:
        if v in cyc and u not in cyc:
            contracted.append((u, super_v, w - best[v][2], eid))
        elif u in cyc and v not in cyc:
            contracted.append((super_v, v, w, eid))
        elif u not in cyc and v not in cyc:
            contracted.append((u, v, w, eid))
    new_vertices = [v for v in vertices if v not in cyc] + [super_v]
    sub = _edmonds(new_vertices, contracted, root)

    # the edge entering the supernode decides where the cycle is broken
    head_of = {eid: v for u, v, w, eid in edges}
    entering = None
    for eid in sub:
        if head_of[eid] in cyc:
            entering = head_of[eid]
            break
    chosen = set(sub)
    for v in cycle:
        if v != entering:
            chosen.add(best[v][3])
    return chosen


def min_cost_assignment(cost: Sequence[Sequence[float]]) -> tuple[tuple[int, ...], float]:
    """Minimum-cost square assignment; among optima, the lexicographically
    smallest assignment vector (row i -> column assignment[i]).

    scipy does the solving; the lexicographic refinement re-solves with a
    prefix of rows pinned, taking the smallest feasible column each time.
    """
    mat = np.asarray(cost, dtype=float)
    if mat.size == 0:
        return (), 0.0
    s, s2 = mat.shape
    if s != s2:
        raise ValueError(f"cost matrix must be square, got {s}x{s2}")
    rows, cols = linear_sum_assignment(mat)
    best_total = float(mat[rows, cols].sum())
    tol = 1e-9
    free_cols = list(range(s))
    assignment = []
    fixed = 0.0
    for i in range(s):
        for j in free_cols:
            rest_rows = list(range(i + 1, s))
            rest_cols = [c for c in free_cols if c != j]
            if rest_rows:
                sub = mat[np.ix_(rest_rows, rest_cols)]
                r, c = linear_sum_assignment(sub)
                rest = float(sub[r, c].sum())
            else:
                rest = 0.0
            if fixed + mat[i, j] + rest <= best_total + tol:
                assignment.append(j)
                fixed += float(mat[i, j])
                free_cols.remove(j)
                break
        else:  # pragma: no cover - cannot happen for a square matrix
            raise RearrangeError("assignment refinement failed")
    return tuple(assignment), best_total
