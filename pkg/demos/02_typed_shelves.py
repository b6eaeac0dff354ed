"""Typed rearrangement on a shelf row.

Items of the same type are interchangeable, so the planner first chooses
which item goes where (one assignment per type), then stitches the
resulting move cycles together when a shared type lets two cycles trade
destinations cheaply, and finally sweeps the fused cycles.
"""

from lattice_rearrange import (
    TypedInstance,
    LatticeDims,
    form_cycles,
    greedy_por,
    merge_cycles,
    merge_cycles_mst,
    opt_plan_por,
    plan_cost,
)


def main():
    # three types on nine cells, goal is aggregated runs: 111 222 333
    inst = TypedInstance(
        LatticeDims(9, 1), 3,
        start_types=(3, 1, 2, 1, 3, 2, 2, 1, 3),
        goal_types=(1, 1, 1, 2, 2, 2, 3, 3, 3))
    print("start:", inst.start_types)
    print("goal: ", inst.goal_types)
    print()

    cycles = form_cycles(inst)
    print(f"after per-type matching: {len(cycles)} move cycles")
    for c in cycles:
        print("   edges", c.edges, "types", c.edge_types)

    fused = merge_cycles(cycles)
    print(f"after free fusions: {len(fused)} cycles")
    fused = merge_cycles_mst(fused)
    print(f"after paid fusions: {len(fused)} cycles")
    print()

    for name, solver in (("opt", opt_plan_por), ("greedy", greedy_por)):
        cost = plan_cost(inst, solver(inst))
        print(f"{name:>6}: picks={cost.picks} travel={cost.travel:.1f}")


if __name__ == "__main__":
    main()
