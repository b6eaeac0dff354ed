"""Spot-check the planners against exhaustive search.

The oracle enumerates reachable states with a uniform-cost search, so it
is limited to small instances, but within that range it gives the true
optimum.  The 1D planners match it exactly; the 2D switching planner
matches its pick count and comes close on travel.
"""

import itertools
import random

from lattice_rearrange import (
    LabeledInstance,
    LatticeDims,
    opt_plan_lor,
    oracle_optimal,
    plan_cost,
    switch_cycles_ltr,
)


def main():
    rng = random.Random(5)

    print("1D, m=6, twenty random permutations:")
    for _ in range(20):
        pi = list(range(1, 7))
        rng.shuffle(pi)
        inst = LabeledInstance(LatticeDims(6, 1), tuple(pi))
        mine = plan_cost(inst, opt_plan_lor(inst))
        best = oracle_optimal(inst).cost
        tag = "ok" if (mine.picks, round(mine.travel, 9)) == \
            (best.picks, round(best.travel, 9)) else "MISMATCH"
        print(f"  {tuple(pi)}  planner {mine.picks}/{mine.travel:.1f}  "
              f"oracle {best.picks}/{best.travel:.1f}  {tag}")

    print()
    print("2D, 2x3, worst travel gap over all 720 permutations:")
    worst = 0.0
    for pi in itertools.permutations(range(1, 7)):
        inst = LabeledInstance(LatticeDims(2, 3), pi)
        mine = plan_cost(inst, switch_cycles_ltr(inst))
        best = oracle_optimal(inst).cost
        assert mine.picks == best.picks
        worst = max(worst, mine.travel - best.travel)
    print(f"  pick counts all optimal; travel within {worst:.3f} of optimal")


if __name__ == "__main__":
    main()
