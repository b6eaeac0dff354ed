"""Planners for 2D lattices.

Exact travel optimization is out of reach here (it embeds the Euclidean
traveling-salesman problem), so these planners settle for the minimum
operation count plus travel that is near-optimal for typical instances.

Labeled instances get two planners.  The sweep planner resolves each
displacement cycle on its own, visiting cycles in index order.  The
switching planner instead asks, for every ordered pair of cycles, how
cheaply the walk along one cycle could detour to an entry cell of the
other; a minimum spanning arborescence over these detour costs (rooted at
the rest cell) decides which cycle is resolved inside which leg of which
other cycle.  Entering a cycle mid-leg parks the carried item at the entry
cell; the closing swap there takes it back.  Whenever the scheduled
detours happen to lose to the plain sweep, the sweep plan is returned, so
the switching planner never travels farther than the sweep.

Typed instances run a three-phase pipeline: per-type minimum-cost
assignment of misplaced items to free goal cells (cycle formation), a
single spanning-forest round of destination trades that fuses every pair
of fusable cycles (fewest operations), and an arborescence-guided walk
that resolves the surviving cycles with the same parking mechanism.

A goal-type layout helper and the normalized displacement statistic used
by the benchmarks live here too.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import (
    Action,
    CostModel,
    DEFAULT_COST,
    Instance,
    LabeledInstance,
    LatticeDims,
    Plan,
    PlanStep,
    TypedInstance,
    distance,
    plan_cost,
)
from .graphs import WeightedGraph, min_arborescence, min_cost_assignment, permutation_cycles
from .lor import follow_cycles
from .por import MoveCycle, _cycles_from_assignment, _swap_destinations, greedy_plan

_INF = math.inf

# cap on the number of matrix entries materialized at once while scanning
# cell-pair distances between two cycles
_SLAB_ENTRIES = 4_000_000


def _require_2d(instance: Instance) -> None:
    if instance.dims.m2 == 1:
        raise ValueError("this planner handles 2D instances only (use the 1D planners for m2 = 1)")


# --- geometry helpers -------------------------------------------------------

def _coords(dims: LatticeDims, cells) -> np.ndarray:
    arr = np.empty((len(cells), 2), dtype=float)
    for i, c in enumerate(cells):
        arr[i] = dims.rowcol(c)
    return arr


def _pair_dists(a: np.ndarray, b: np.ndarray, metric: str) -> np.ndarray:
    diff = a[:, None, :] - b[None, :, :]
    if metric == "manhattan":
        return np.abs(diff).sum(axis=2)
    return np.sqrt((diff * diff).sum(axis=2))


def _min_entry(a: np.ndarray, b: np.ndarray, metric: str) -> tuple[float, int, int]:
    """Closest cell pair between two coordinate sets: (distance, ia, ib).

    Ties resolve to the earliest pair in row-major scan order, which keeps
    reruns identical.  Large products are scanned in slabs to bound memory.
    """
    step = max(1, _SLAB_ENTRIES // max(1, len(b)))
    best = (_INF, -1, -1)
    for lo in range(0, len(a), step):
        block = _pair_dists(a[lo:lo + step], b, metric)
        flat = int(np.argmin(block))
        ia, ib = divmod(flat, block.shape[1])
        d = float(block[ia, ib])
        if d < best[0]:
            best = (d, lo + ia, ib)
    return best


def _min_detour(a: np.ndarray, a_next: np.ndarray, base: np.ndarray,
                b: np.ndarray, metric: str) -> tuple[float, int, int]:
    """Cheapest detour from a leg of cycle a into a cell of cycle b.

    Candidate (u, e) costs d(u,e) + d(e,next(u)) - d(u,next(u)): leave the
    leg at u, touch e, rejoin at next(u).  Returns (cost, ia, ib) with the
    same slab scan and earliest-pair tie rule as _min_entry.
    """
    step = max(1, _SLAB_ENTRIES // max(1, len(b)))
    best = (_INF, -1, -1)
    for lo in range(0, len(a), step):
        hi = lo + step
        block = (_pair_dists(a[lo:hi], b, metric)
                 + _pair_dists(a_next[lo:hi], b, metric)
                 - base[lo:hi, None])
        flat = int(np.argmin(block))
        ia, ib = divmod(flat, block.shape[1])
        d = float(block[ia, ib])
        if d < best[0]:
            best = (d, lo + ia, ib)
    return best


# --- displacement statistic -------------------------------------------------

def cycle_edge_length(instance: LabeledInstance, model: CostModel = DEFAULT_COST) -> float:
    """Summed length of every displacement edge (cell to its item's home).

    This is exactly the within-cycle travel that any cycle-following plan
    must spend; planners differ only in travel between cycles.
    """
    dims = instance.dims
    return sum(distance(dims, cell, item, model)
               for cell, item in enumerate(instance.pi, start=1) if item != cell)


def cycle_distance_statistic(instance: LabeledInstance, model: CostModel = DEFAULT_COST) -> float:
    """cycle_edge_length normalized by item count times the longer side.

    Dimensionless, so random instances of different sizes land on the same
    scale: uniform square instances concentrate near 0.5214 (the mean
    distance between two uniform points in a square), within-column
    shuffles near 1/3.
    """
    dims = instance.dims
    return cycle_edge_length(instance, model) / (dims.n * max(dims.m1, dims.m2))


# --- nested emission along an arborescence ----------------------------------

def _emit_nested(root_kids, kids, nxt) -> Plan:
    """Walk every cycle, entering nested cycles mid-leg with parking.

    root_kids: [(entry_cell, cycle_id), ...] resolved one after another,
    each opened with Pick and closed with Place.  kids[cid][cell] lists
    (entry_cell, child_id) detours to serve while traversing the leg that
    leaves `cell`.  nxt maps each cycle cell to the next cell along its
    orbit.  Iterative frames; nesting can exceed the recursion limit.
    """
    steps: list[PlanStep] = []
    for entry0, cid0 in root_kids:
        steps.append(PlanStep(entry0, Action.PICK))
        # frame: [cycle id, entry cell, target to resume after closing,
        #         detours pending on the current leg]
        stack = [[cid0, entry0, 0, list(kids.get(cid0, {}).get(entry0, ()))]]
        g = nxt[entry0]
        while stack:
            frame = stack[-1]
            if frame[3]:
                child_entry, child_cid = frame[3].pop(0)
                steps.append(PlanStep(child_entry, Action.SWAP))
                stack.append([child_cid, child_entry, g,
                              list(kids.get(child_cid, {}).get(child_entry, ()))])
                g = nxt[child_entry]
                continue
            if g == frame[1]:
                stack.pop()
                if stack:
                    # deposit this cycle's last item, take back the parked one
                    steps.append(PlanStep(g, Action.SWAP))
                    g = frame[2]
                else:
                    steps.append(PlanStep(g, Action.PLACE))
            else:
                steps.append(PlanStep(g, Action.SWAP))
                frame[3] = list(kids.get(frame[0], {}).get(g, ()))
                g = nxt[g]
    return Plan(tuple(steps))


def _schedule(dims: LatticeDims, cycle_cells, rest: int, model: CostModel, detour: bool):
    """Arborescence over {rest} u cycles; returns (root_kids, kids) for
    _emit_nested.  With detour=True arc weights are leg-detour costs (and
    rest arcs charge the way there and back); otherwise arcs weigh the
    nearest cell pair, the classic double-cover bound.
    """
    k = len(cycle_cells)
    coords = [_coords(dims, cells) for cells in cycle_cells]
    nxt_coords = [np.roll(c, -1, axis=0) for c in coords]
    metric = model.metric
    base = [np.array([distance(dims, cells[t], cells[(t + 1) % len(cells)], model)
                      for t in range(len(cells))])
            for cells in cycle_cells]
    rest_xy = _coords(dims, [rest])

    edges = []
    meta = {}
    for b in range(k):
        d, _, ib = _min_entry(rest_xy, coords[b], metric)
        w = 2.0 * d if detour else d
        edges.append((0, b + 1, w))
        meta[(0, b + 1)] = (rest, cycle_cells[b][ib])
    for a in range(k):
        for b in range(k):
            if a == b:
                continue
            if detour:
                w, ia, ib = _min_detour(coords[a], nxt_coords[a], base[a], coords[b], metric)
            else:
                w, ia, ib = _min_entry(coords[a], coords[b], metric)
            edges.append((a + 1, b + 1, w))
            meta[(a + 1, b + 1)] = (cycle_cells[a][ia], cycle_cells[b][ib])

    tree = min_arborescence(WeightedGraph(tuple(range(k + 1)), tuple(edges)), root=0)
    root_kids = []
    kids: dict[int, dict[int, list]] = {}
    for u, v, w in tree:
        exit_cell, entry_cell = meta[(u, v)]
        if u == 0:
            root_kids.append((distance(dims, rest, entry_cell, model), entry_cell, v - 1))
        else:
            kids.setdefault(u - 1, {}).setdefault(exit_cell, []).append(
                (distance(dims, exit_cell, entry_cell, model), entry_cell, v - 1))
    root_kids.sort()
    for per_exit in kids.values():
        for lst in per_exit.values():
            lst.sort()
    return ([(e, c) for _, e, c in root_kids],
            {cid: {cell: [(e, c) for _, e, c in lst] for cell, lst in per.items()}
             for cid, per in kids.items()})


# --- labeled planners -------------------------------------------------------

def sweep_cycles_ltr(instance: LabeledInstance, model: CostModel = DEFAULT_COST) -> Plan:
    """Resolve each displacement cycle separately, in cell-index order.

    Operation count is minimal (one per misplaced item plus one per
    cycle); travel between cycles is whatever the index order happens to
    cost.
    """
    _require_2d(instance)
    cycles = permutation_cycles(instance.pi).cycles
    dest = (0,) + tuple(instance.pi)
    return follow_cycles(cycles, dest, switching=False)


def switch_cycles_ltr(instance: LabeledInstance, model: CostModel = DEFAULT_COST) -> Plan:
    """Resolve cycles nested inside each other's legs where that is cheap.

    Same operation count as the sweep.  Travel never exceeds the sweep's:
    the arborescence schedule is kept only when it actually wins.
    """
    _require_2d(instance)
    cycles = permutation_cycles(instance.pi).cycles
    if not cycles:
        return Plan()
    dims = instance.dims
    dest = (0,) + tuple(instance.pi)
    root_kids, kids = _schedule(dims, cycles, instance.rest, model, detour=True)
    switched = _emit_nested(root_kids, kids, dest)
    sweep = follow_cycles(cycles, dest, switching=False)
    if plan_cost(instance, switched, model).travel <= plan_cost(instance, sweep, model).travel:
        return switched
    return sweep


# --- typed pipeline ---------------------------------------------------------

def edges_length(cycle: MoveCycle, dims: LatticeDims, model: CostModel = DEFAULT_COST) -> float:
    """Total metric length of one move cycle's edges."""
    return sum(distance(dims, s, g, model) for s, g in cycle.edges)


def form_cycles_ptr(instance: TypedInstance) -> list[MoveCycle]:
    """Phase 1: per-type minimum-cost assignment of items to goal cells.

    Misplaced cells holding type t are matched to free goal cells of type
    t so the summed straight-line distance is minimal; the chosen moves
    close into displacement cycles.
    """
    dims = instance.dims
    sources: dict[int, list[int]] = {}
    goals: dict[int, list[int]] = {}
    for cell, (have, want) in enumerate(zip(instance.start_types, instance.goal_types), start=1):
        if have != want:
            sources.setdefault(have, []).append(cell)
            goals.setdefault(want, []).append(cell)
    assign: dict[int, int] = {}
    types: dict[int, int] = {}
    for t, srcs in sorted(sources.items()):
        dsts = goals[t]
        cost = [[distance(dims, s, g) for g in dsts] for s in srcs]
        chosen, _ = min_cost_assignment(cost)
        for s, j in zip(srcs, chosen):
            assign[s] = dsts[j]
            types[s] = t
    return _cycles_from_assignment(assign, types)


def _trade_delta(dims: LatticeDims, e1, e2) -> float:
    """Travel added by trading the destinations of two moves."""
    (s1, g1), (s2, g2) = e1, e2
    return (distance(dims, s1, g2) + distance(dims, s2, g1)
            - distance(dims, s1, g1) - distance(dims, s2, g2))


def cycle_merge_cost(c1: MoveCycle, c2: MoveCycle, dims: LatticeDims) -> float:
    """Least travel added by fusing two cycles with one destination trade.

    The trade must involve a type both cycles carry; infinity when no such
    type exists.
    """
    shared = c1.types & c2.types
    if not shared:
        return _INF
    best = _INF
    for (s1, g1), t1 in zip(c1.edges, c1.edge_types):
        if t1 not in shared:
            continue
        for (s2, g2), t2 in zip(c2.edges, c2.edge_types):
            if t2 == t1:
                best = min(best, _trade_delta(dims, (s1, g1), (s2, g2)))
    return best


def _argmin_trade(c1: MoveCycle, c2: MoveCycle, dims: LatticeDims):
    best = None
    for (s1, g1), t1 in zip(c1.edges, c1.edge_types):
        for (s2, g2), t2 in zip(c2.edges, c2.edge_types):
            if t2 != t1:
                continue
            key = (_trade_delta(dims, (s1, g1), (s2, g2)), min(s1, s2), max(s1, s2))
            if best is None or key < best[0]:
                best = (key, t1, (s1, g1), (s2, g2))
    return best


def _merge_cycles_ptr_logged(cycles, dims: LatticeDims):
    """Spanning-forest fusion with a log of the goal trades performed.

    Each log entry is (type, goal_cell_1, goal_cell_2): the two goals that
    exchanged owners.  The log exists so tests can check how far trades
    reach; the public wrapper drops it.
    """
    cycles = list(cycles)
    n = len(cycles)
    log: list[tuple[int, int, int]] = []
    if n <= 1:
        return cycles, log
    pair_edges = []
    for i in range(n):
        for j in range(i + 1, n):
            w = cycle_merge_cost(cycles[i], cycles[j], dims)
            if w < _INF:
                pair_edges.append((w, cycles[i].min_cell, cycles[j].min_cell, i, j))
    pair_edges.sort()
    comp = list(range(n))

    def find(x: int) -> int:
        while comp[x] != x:
            comp[x] = comp[comp[x]]
            x = comp[x]
        return x

    current: dict[int, MoveCycle] = dict(enumerate(cycles))
    for _, _, _, i, j in pair_edges:
        ri, rj = find(i), find(j)
        if ri == rj:
            continue
        a, b = current[ri], current[rj]
        _, t, e1, e2 = _argmin_trade(a, b, dims)
        log.append((t, e1[1], e2[1]))
        fused = _swap_destinations([a, b], e1, e2)
        comp[ri] = rj
        del current[ri]
        current[find(j)] = fused[0]
    return sorted(current.values(), key=lambda c: c.min_cell), log


def merge_cycles_ptr(cycles, dims: LatticeDims) -> list[MoveCycle]:
    """Phase 2: fuse every pair of fusable cycles, cheapest trades first.

    Unlike the 1D pipeline there is no free-fusion phase: trades cost
    travel in general, so a single spanning-forest round (weights = least
    added travel per fusion) does all the merging.  Afterward no two
    remaining cycles share a type, which is what makes the operation count
    minimal.
    """
    merged, _ = _merge_cycles_ptr_logged(cycles, dims)
    return merged


def sweep_cycles_ptr(cycles, dims: LatticeDims, rest: int = 1,
                     model: CostModel = DEFAULT_COST) -> Plan:
    """Phase 3: walk the cycles along a nearest-entry arborescence.

    Arcs weigh the closest cell pair between cycles (and from the rest
    cell); the walk serves each cycle on first entry with parking, so
    travel between cycles stays within twice the arborescence weight.
    """
    cycles = sorted(cycles, key=lambda c: c.min_cell)
    if not cycles:
        return Plan()
    nxt: dict[int, int] = {}
    cell_lists = []
    for cyc in cycles:
        for s, g in cyc.edges:
            nxt[s] = g
        cell_lists.append(tuple(s for s, _ in cyc.edges))
    root_kids, kids = _schedule(dims, cell_lists, rest, model, detour=False)
    return _emit_nested(root_kids, kids, nxt)


def plan_ptr(instance: TypedInstance, model: CostModel = DEFAULT_COST) -> Plan:
    """Fewest-operation plan for a typed 2D instance.

    Travel is not exactly minimal (that is intractable) but stays close
    for common goal layouts: cycle formation is distance-minimal per type
    and the later phases add comparatively little.
    """
    _require_2d(instance)
    cycles = form_cycles_ptr(instance)
    cycles = merge_cycles_ptr(cycles, instance.dims)
    return sweep_cycles_ptr(cycles, instance.dims, instance.rest, model)


def greedy_2d(instance: Instance, model: CostModel = DEFAULT_COST) -> Plan:
    """Best-first baseline for labeled or typed 2D instances."""
    _require_2d(instance)
    return greedy_plan(instance, model)


# --- goal-type layouts ------------------------------------------------------

@dataclass(frozen=True)
class GoalPattern:
    """Recipe for a typed goal layout.

    kind "blocks": types tile the lattice in square blocks (side sqrt(k)),
    falling back to contiguous index runs when such blocks cannot tile.
    kind "columns": one type per column.  kind "explicit": goal_types is
    given verbatim.
    """

    kind: str
    goal_types: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.kind not in ("blocks", "columns", "explicit"):
            raise ValueError(f"unknown goal pattern kind {self.kind!r}")
        if (self.kind == "explicit") != (self.goal_types is not None):
            raise ValueError("explicit patterns carry goal_types; others must not")

    def resolve(self, dims: LatticeDims, k: int) -> tuple[tuple[int, ...], bool]:
        """Concrete goal types for a lattice; the flag reports whether the
        block layout fell back to index runs."""
        if self.kind == "explicit":
            return self.goal_types, False
        if self.kind == "columns":
            return pattern_columns_types(dims, k), False
        return pattern_blocks_types(dims, k)


def pattern_blocks_types(dims: LatticeDims, k: int) -> tuple[tuple[int, ...], bool]:
    """Goal types aggregated in both dimensions: square same-type blocks.

    Needs k to be a perfect square whose root divides both sides; when it
    is not, falls back to contiguous runs of n/k cells in index order and
    flags that with the second return value.
    """
    n = dims.n
    if n % k:
        raise ValueError(f"{k} types cannot evenly fill {n} cells")
    r = math.isqrt(k)
    if r * r == k and dims.m1 % r == 0 and dims.m2 % r == 0:
        bh, bw = dims.m1 // r, dims.m2 // r
        types = []
        for cell in dims.cells():
            row, col = dims.rowcol(cell)
            types.append(((col - 1) // bw) * r + ((row - 1) // bh) + 1)
        return tuple(types), False
    run = n // k
    return tuple((cell - 1) // run + 1 for cell in dims.cells()), True


def pattern_block_of(dims: LatticeDims, k: int, cell: int) -> tuple[int, int]:
    """Which square block a cell belongs to under the block layout."""
    r = math.isqrt(k)
    bh, bw = dims.m1 // r, dims.m2 // r
    row, col = dims.rowcol(cell)
    return ((row - 1) // bh, (col - 1) // bw)


def pattern_columns_types(dims: LatticeDims, k: int) -> tuple[int, ...]:
    """Goal types with one type per column; requires k = m2."""
    if k != dims.m2:
        raise ValueError(f"one type per column needs k = m2, got k={k} m2={dims.m2}")
    return tuple(col for col in range(1, dims.m2 + 1) for _ in range(dims.m1))
