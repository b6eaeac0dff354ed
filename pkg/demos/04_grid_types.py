"""Typed planning on a 16x16 grid with structured goals.

Pattern "blocks" tiles the grid into 4x4 squares, one type per tile;
pattern "columns" dedicates one column per type.  The three-phase typed
planner forms per-type assignments, merges cycles that share a type, and
sweeps the merged cycles along a spanning arborescence.
"""

from lattice_rearrange import (
    GoalPattern,
    form_cycles_ptr,
    gen_typed,
    merge_cycles_ptr,
    plan_cost,
    plan_ptr,
)


def solve(pattern, k):
    inst = gen_typed((16, 16), k, (256 // k,) * k, GoalPattern(pattern),
                     seed=77)
    cycles = form_cycles_ptr(inst)
    merged = merge_cycles_ptr(cycles, inst.dims)
    cost = plan_cost(inst, plan_ptr(inst))
    misplaced = sum(s != g for s, g in zip(inst.start_types, inst.goal_types))
    print(f"{pattern:>8}: {misplaced:3d} misplaced, "
          f"{len(cycles):3d} cycles -> {len(merged):3d} after merging, "
          f"picks={cost.picks}, travel={cost.travel:.1f}")


def main():
    print("16x16 grid, 16 types, 16 items per type, seed 77")
    solve("blocks", 16)
    solve("columns", 16)
    print()
    print("picks equal misplaced-count plus merged-cycle-count in both")
    print("cases, which is the smallest count any valid plan can reach.")


if __name__ == "__main__":
    main()
