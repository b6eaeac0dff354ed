"""Planner for partially labeled (typed) 1D instances.

Items of the same type are interchangeable, so the planner first decides
which item goes to which goal cell and only then plans motion.  Four phases:

1. form_cycles: match each misplaced item to the leftmost free goal cell of
   its type.  In 1D this in-order pairing minimizes summed move distance per
   type, and the chosen moves close into displacement cycles.
2. merge_cycles: while two cycles contain same-type moves that can trade
   destinations without changing total distance, trade them.  Each trade
   fuses two cycles into one, saving one operation for free.
3. merge_cycles_mst: remaining fusions cost travel.  The cheapest fusion of
   two cycles trades the pair of same-type moves with the smallest span gap
   and costs twice that gap.  A minimum spanning forest over these gap
   weights gives the cheapest schedule that reaches the minimum possible
   cycle count.
4. group_sweep_cycles_por: walk the final cycles exactly like the labeled
   1D planner (nested entries, parking, group hand-off).

The resulting plan has the fewest operations achievable, and the least
travel among such plans.  A best-first greedy baseline is included for
benchmark comparisons.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import (
    Action,
    CostModel,
    DEFAULT_COST,
    Instance,
    Plan,
    PlanStep,
    TypedInstance,
    distance,
)
from .lor import follow_cycles

_INF = math.inf


@dataclass(frozen=True)
class TypeRange:
    """Where a type's goal cells live: span ends plus the explicit cells.

    For a sorted (aggregated) goal arrangement the cells are one contiguous
    run and [lo, hi] describes it completely; for arbitrary goals the
    explicit cell tuple is authoritative and [lo, hi] is just its hull.
    """

    t: int
    lo: int
    hi: int
    cells: tuple[int, ...]


def type_ranges(instance: TypedInstance) -> dict[int, TypeRange]:
    by_type: dict[int, list[int]] = {}
    for cell, t in enumerate(instance.goal_types, start=1):
        by_type.setdefault(t, []).append(cell)
    return {t: TypeRange(t, cells[0], cells[-1], tuple(cells))
            for t, cells in sorted(by_type.items())}


@dataclass(frozen=True)
class MoveCycle:
    """A closed chain of item moves: each move's destination is the next
    move's source.  edge_types[j] is the type carried by edges[j]."""

    edges: tuple[tuple[int, int], ...]
    edge_types: tuple[int, ...]

    @property
    def types(self) -> frozenset:
        return frozenset(self.edge_types)

    @property
    def min_cell(self) -> int:
        return self.edges[0][0]

    @property
    def span(self) -> tuple[int, int]:
        cells = [c for e in self.edges for c in e]
        return (min(cells), max(cells))

    def total_distance(self) -> int:
        return sum(abs(s - g) for s, g in self.edges)


def _require_1d(instance: TypedInstance) -> None:
    if instance.dims.m2 != 1:
        raise ValueError("this planner handles 1D instances only (m2 must be 1)")


def _cycles_from_assignment(assign: dict[int, int], types: dict[int, int]) -> list[MoveCycle]:
    """Decompose a destination assignment into min-first move cycles."""
    seen: set[int] = set()
    cycles = []
    for start in sorted(assign):
        if start in seen:
            continue
        orbit = [start]
        seen.add(start)
        cur = assign[start]
        while cur != start:
            orbit.append(cur)
            seen.add(cur)
            cur = assign[cur]
        edges = tuple((orbit[i], orbit[(i + 1) % len(orbit)]) for i in range(len(orbit)))
        cycles.append(MoveCycle(edges, tuple(types[s] for s, _ in edges)))
    return cycles


def form_cycles(instance: TypedInstance) -> list[MoveCycle]:
    """Phase 1: leftmost-available matching of misplaced items to goals.

    Per type, the i-th misplaced item from the left goes to the i-th open
    goal cell from the left.  In-order pairing never crosses, which makes
    the per-type total distance minimal in 1D.
    """
    _require_1d(instance)
    sources: dict[int, list[int]] = {}
    goals: dict[int, list[int]] = {}
    for cell, (have, want) in enumerate(zip(instance.start_types, instance.goal_types), start=1):
        if have != want:
            sources.setdefault(have, []).append(cell)
            goals.setdefault(want, []).append(cell)
    assign: dict[int, int] = {}
    types: dict[int, int] = {}
    for t, srcs in sources.items():
        for s, g in zip(srcs, goals[t]):
            assign[s] = g
            types[s] = t
    return _cycles_from_assignment(assign, types)


def _assignment_of(cycles) -> tuple[dict[int, int], dict[int, int]]:
    assign: dict[int, int] = {}
    types: dict[int, int] = {}
    for cyc in cycles:
        for (s, g), t in zip(cyc.edges, cyc.edge_types):
            assign[s] = g
            types[s] = t
    return assign, types


def _pair_gap(e1: tuple[int, int], e2: tuple[int, int]) -> float:
    """Half the distance added by trading the two edges' destinations."""
    (s1, g1), (s2, g2) = e1, e2
    delta = abs(s1 - g2) + abs(s2 - g1) - abs(s1 - g1) - abs(s2 - g2)
    return max(0.0, delta / 2.0)


def _swap_destinations(cycles, e1, e2) -> list[MoveCycle]:
    """Fuse two of the given cycles by trading the destinations of e1, e2."""
    assign, types = _assignment_of(cycles)
    assign[e1[0]], assign[e2[0]] = e2[1], e1[1]
    return _cycles_from_assignment(assign, types)


def merge_cycles(cycles) -> list[MoveCycle]:
    """Phase 2: perform every free fusion.

    Two same-type moves can trade destinations at zero distance cost when
    both sources sit on the same side of both destinations; the trade links
    their cycles.  Repeats to a fixed point, always taking the leftmost
    eligible pair so reruns produce identical output.
    """
    cycles = list(cycles)
    while True:
        found = None
        for i in range(len(cycles)):
            for j in range(i + 1, len(cycles)):
                shared = cycles[i].types & cycles[j].types
                if not shared:
                    continue
                for (s1, g1), t1 in zip(cycles[i].edges, cycles[i].edge_types):
                    if t1 not in shared:
                        continue
                    for (s2, g2), t2 in zip(cycles[j].edges, cycles[j].edge_types):
                        if t2 != t1:
                            continue
                        if _pair_gap((s1, g1), (s2, g2)) == 0.0:
                            key = (min(s1, s2), max(s1, s2))
                            if found is None or key < found[0]:
                                found = (key, (s1, g1), (s2, g2))
        if found is None:
            return cycles
        cycles = _swap_destinations(cycles, found[1], found[2])


def cycle_distance(c1: MoveCycle, c2: MoveCycle) -> float:
    """Closest approach of two cycles: the smallest destination-trade gap
    over their shared types.  Fusing them adds twice this in travel.
    Infinity when they share no type."""
    shared = c1.types & c2.types
    if not shared:
        return _INF
    best = _INF
    for (s1, g1), t1 in zip(c1.edges, c1.edge_types):
        if t1 not in shared:
            continue
        for (s2, g2), t2 in zip(c2.edges, c2.edge_types):
            if t2 == t1:
                best = min(best, _pair_gap((s1, g1), (s2, g2)))
    return best


def _argmin_pair(c1: MoveCycle, c2: MoveCycle):
    """The same-type edge pair realizing cycle_distance, ties leftward."""
    best = None
    for (s1, g1), t1 in zip(c1.edges, c1.edge_types):
        for (s2, g2), t2 in zip(c2.edges, c2.edge_types):
            if t2 != t1:
                continue
            key = (_pair_gap((s1, g1), (s2, g2)), min(s1, s2), max(s1, s2))
            if best is None or key < best[0]:
                best = (key, (s1, g1), (s2, g2))
    return best


def merge_cycles_mst(cycles, model: CostModel = DEFAULT_COST,
                     skip_costly_merges: bool = False) -> list[MoveCycle]:
    """Phase 3: fuse remaining cycles along a minimum spanning forest.

    Pair weights are cycle_distance values; fusions happen in ascending
    weight order, each trading the currently closest same-type edge pair of
    the two components.  Processing in that order makes every realized gap
    equal its forest edge weight, so total added travel is exactly twice
    the forest weight, the minimum over all fusion schedules.

    With skip_costly_merges on, a fusion whose travel cost 2*gap*c_t would
    reach the cost of the operation it saves (c_p) is left undone.
    """
    cycles = list(cycles)
    n = len(cycles)
    if n <= 1:
        return cycles
    pair_edges = []
    for i in range(n):
        for j in range(i + 1, n):
            d = cycle_distance(cycles[i], cycles[j])
            if d < _INF:
                pair_edges.append((d, cycles[i].min_cell, cycles[j].min_cell, i, j))
    pair_edges.sort()
    comp = list(range(n))

    def find(x: int) -> int:
        while comp[x] != x:
            comp[x] = comp[comp[x]]
            x = comp[x]
        return x

    current: dict[int, MoveCycle] = dict(enumerate(cycles))
    for d, _, _, i, j in pair_edges:
        ri, rj = find(i), find(j)
        if ri == rj:
            continue
        if skip_costly_merges and 2.0 * d * model.c_t >= model.c_p:
            continue
        a, b = current[ri], current[rj]
        _, e1, e2 = _argmin_pair(a, b)
        fused = _swap_destinations([a, b], e1, e2)
        comp[ri] = rj
        del current[ri]
        current[find(j)] = fused[0]
    return sorted(current.values(), key=lambda c: c.min_cell)


def group_sweep_cycles_por(cycles, model: CostModel = DEFAULT_COST) -> Plan:
    """Phase 4: emit the walk, reusing the labeled 1D sweep/switch engine."""
    cycles = sorted(cycles, key=lambda c: c.min_cell)
    dest: dict[int, int] = {}
    cell_cycles = []
    for cyc in cycles:
        for s, g in cyc.edges:
            dest[s] = g
        cell_cycles.append(tuple(s for s, _ in cyc.edges))
    return follow_cycles(tuple(cell_cycles), dest, switching=True)


def opt_plan_por(instance: TypedInstance, model: CostModel = DEFAULT_COST,
                 skip_costly_merges: bool = False) -> Plan:
    """Minimum-operation, minimum-travel plan for a typed 1D instance.

    Runs the four phases in order.  By default every cycle fusion the
    instance admits is performed, which is what makes the operation count
    minimal; skip_costly_merges trades that guarantee for lower combined
    cost when operations are cheap relative to travel.
    """
    _require_1d(instance)
    cycles = form_cycles(instance)
    cycles = merge_cycles(cycles)
    cycles = merge_cycles_mst(cycles, model, skip_costly_merges)
    return group_sweep_cycles_por(cycles, model)


# --- greedy baseline --------------------------------------------------------

def greedy_plan(instance: Instance, model: CostModel = DEFAULT_COST) -> Plan:
    """Best-first baseline, usable on any instance kind or dimension.

    Empty hand: pick the nearest misplaced item.  Holding an item: deposit
    it at the nearest goal cell of its type that is not already correct
    (Swap if occupied, Place if empty).  Distance ties break toward the
    smaller cell index.  Every deposit fixes a cell for good, so the loop
    ends after at most one pick and one deposit per cell.
    """
    dims = instance.dims
    goal = list(instance.goal_config())
    config: list = list(instance.start_config())
    pos = instance.rest
    held = None
    steps: list[PlanStep] = []

    def nearest(cells):
        return min(cells, key=lambda c: (distance(dims, pos, c, model), c))

    while True:
        if held is None:
            misplaced = [c for c in dims.cells()
                         if config[c - 1] is not None and config[c - 1] != goal[c - 1]]
            if not misplaced:
                break
            cell = nearest(misplaced)
            steps.append(PlanStep(cell, Action.PICK))
            held, config[cell - 1] = config[cell - 1], None
        else:
            targets = [c for c in dims.cells()
                       if goal[c - 1] == held and config[c - 1] != held]
            cell = nearest(targets)
            if config[cell - 1] is None:
                steps.append(PlanStep(cell, Action.PLACE))
                config[cell - 1], held = held, None
            else:
                steps.append(PlanStep(cell, Action.SWAP))
                held, config[cell - 1] = config[cell - 1], held
        pos = cell
    return Plan(tuple(steps))


def greedy_por(instance: TypedInstance, model: CostModel = DEFAULT_COST) -> Plan:
    """Greedy best-first baseline for typed 1D instances."""
    _require_1d(instance)
    return greedy_plan(instance, model)
