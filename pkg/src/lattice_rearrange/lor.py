"""Planners for fully labeled 1D instances.

Both planners resolve displacement cycles of the arrangement.  The sweep
planner handles one cycle at a time, left to right: Pick at the cycle's
leftmost cell, Swap around the orbit, Place back at the leftmost cell.
That already minimizes operations (one per misplaced item plus one per
cycle) but travels more than necessary, because every cycle costs a
separate excursion.

The optimized planner keeps the same operations and reorders them so the
end-effector makes a single sweep.  Two devices do the work:

* Nested cycle entry.  While carrying an item toward cell g, if the next
  unresolved cycle starts at a cell left of g, the carried item is parked
  there by a Swap, the inner cycle is resolved, and the closing Swap at the
  same cell puts that cycle's last item home while taking the parked item
  back.  Parking cells lie on the way, so the carried item still moves
  exactly its displacement distance.

* Group hand-off.  Cycles whose spans overlap are grouped; groups occupy
  disjoint intervals.  When the walk swaps at the rightmost cell of its
  group, the item just acquired is carried on into the next group (parked
  at that group's first cycle entry) instead of waiting for a separate
  trip.  The walk therefore goes out to the far end once and resolves
  everything on the way back.

The result is provably best possible: fewest operations, and the least
travel among plans with fewest operations.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    Action,
    CostModel,
    DEFAULT_COST,
    LabeledInstance,
    Plan,
    PlanStep,
)
from .graphs import CycleSet, permutation_cycles


@dataclass(frozen=True)
class CycleGroup:
    """A maximal run of cycles whose [min, max] cell spans chain-overlap."""

    cycles: tuple[tuple[int, ...], ...]
    lo: int
    hi: int

    @property
    def range(self) -> tuple[int, int]:
        return (self.lo, self.hi)


def _require_1d(instance: LabeledInstance) -> None:
    if instance.dims.m2 != 1:
        raise ValueError("this planner handles 1D instances only (m2 must be 1)")


def group_cycles(cycles: CycleSet) -> list[CycleGroup]:
    """Partition cycles into groups with chain-overlapping spans.

    A single left-to-right pass suffices because the cycles arrive ordered
    by their minimum cell: a group ends exactly when the next cycle starts
    beyond everything seen so far.
    """
    groups: list[CycleGroup] = []
    items = cycles.cycles
    i = 0
    while i < len(items):
        lo = items[i][0]
        hi = max(items[i])
        j = i + 1
        while j < len(items) and items[j][0] <= hi:
            hi = max(hi, max(items[j]))
            j += 1
        groups.append(CycleGroup(items[i:j], lo, hi))
        i = j
    return groups


def _group_max_per_cycle(cycles: tuple[tuple[int, ...], ...]) -> list[int]:
    out = [0] * len(cycles)
    i = 0
    while i < len(cycles):
        hi = max(cycles[i])
        j = i + 1
        while j < len(cycles) and cycles[j][0] <= hi:
            hi = max(hi, max(cycles[j]))
            j += 1
        for t in range(i, j):
            out[t] = hi
        i = j
    return out


def follow_cycles(cycles, dest, switching: bool = True) -> Plan:
    """Emit the pick/swap/place walk that resolves destination cycles.

    `cycles` are tuples of cells, each beginning at its minimum cell and
    ordered by that minimum; `dest` maps a cell to where the item currently
    at that cell belongs (indexable by cell).  With switching off, each
    cycle is resolved independently.  With switching on, the walk parks and
    retrieves items to resolve inner cycles en route and hands items across
    group boundaries at each group's maximum cell.

    The loop is iterative with an explicit frame stack; nesting depth can
    reach the cycle count, far past the recursion limit on large inputs.
    """
    if not cycles:
        return Plan()
    steps: list[PlanStep] = []
    if not switching:
        for cyc in cycles:
            entry = cyc[0]
            steps.append(PlanStep(entry, Action.PICK))
            g = dest[entry]
            while g != entry:
                steps.append(PlanStep(g, Action.SWAP))
                g = dest[g]
            steps.append(PlanStep(entry, Action.PLACE))
        return Plan(tuple(steps))

    gmax = _group_max_per_cycle(cycles)
    entry0 = cycles[0][0]
    steps.append(PlanStep(entry0, Action.PICK))
    # frame: (entry cell, destination to resume after closing, group max)
    stack: list[tuple[int, int, int]] = [(entry0, 0, gmax[0])]
    g = dest[entry0]
    ptr = 1
    while stack:
        # enter every not-yet-started cycle whose entry lies short of the
        # current target, parking the carried item at its entry cell
        while ptr < len(cycles) and cycles[ptr][0] < g:
            entry = cycles[ptr][0]
            steps.append(PlanStep(entry, Action.SWAP))
            stack.append((entry, g, gmax[ptr]))
            g = dest[entry]
            ptr += 1
        entry, resume, gm = stack[-1]
        if g == entry:
            stack.pop()
            if not stack:
                steps.append(PlanStep(g, Action.PLACE))
            else:
                # closing swap: deposit the cycle's last item, take back
                # whatever was parked here on entry
                steps.append(PlanStep(g, Action.SWAP))
                g = resume
        else:
            steps.append(PlanStep(g, Action.SWAP))
            nxt = dest[g]
            if g == gm and ptr < len(cycles):
                # rightmost cell of this group: hand the acquired item to
                # the next group rather than coming back for it later
                entry = cycles[ptr][0]
                steps.append(PlanStep(entry, Action.SWAP))
                stack.append((entry, nxt, gmax[ptr]))
                g = dest[entry]
                ptr += 1
            else:
                g = nxt
    assert ptr == len(cycles)
    return Plan(tuple(steps))


def _dest_table(instance: LabeledInstance) -> list[int]:
    table = [0] * (instance.dims.n + 1)
    for cell, item in enumerate(instance.pi, start=1):
        table[cell] = item
    return table


def sweep_cycles_lor(instance: LabeledInstance, model: CostModel = DEFAULT_COST) -> Plan:
    """Resolve each cycle separately, left to right.

    Minimizes operations but not travel.  The cost model does not influence
    the emitted steps (1D travel is metric-independent); the parameter is
    accepted for interface symmetry with the other planners.
    """
    _require_1d(instance)
    cycles = permutation_cycles(instance.pi).cycles
    return follow_cycles(cycles, _dest_table(instance), switching=False)


def opt_plan_lor(instance: LabeledInstance, model: CostModel = DEFAULT_COST) -> Plan:
    """Minimum-operation, minimum-travel plan for a labeled 1D instance.

    Same operation count as the sweep, with cycle nesting and group
    hand-off arranged so the walk is a single out-and-back pass.
    """
    _require_1d(instance)
    cycles = permutation_cycles(instance.pi).cycles
    return follow_cycles(cycles, _dest_table(instance), switching=True)
