"""Trace the variation operators on a fixed pair of parents.

Shows order crossover and partially-mapped crossover on an 8-gene pair with
pinned cut points, the breakpoint move on the count segment, and the two
mutation moves, printing every intermediate genome.
"""
import numpy as np

from fieldroute import genetic
from fieldroute._kernels import pmx_fill
from fieldroute.encoding import Chromosome


def show(label, arr):
    print(f"  {label:<18} {np.asarray(arr).tolist()}")


def main():
    dad = np.array([1, 2, 3, 4, 5, 6, 7, 8])
    mom = np.array([2, 4, 6, 8, 7, 5, 3, 1])
    print("parents:")
    show("dad order", dad)
    show("mom order", mom)

    print("\norder crossover, window positions 2..4 (kept from mom):")
    child = genetic._ox_fill(dad, mom, 1, 3)
    show("child", child)
    print("  the window [4, 6, 8] stays; gaps fill left to right in dad's order")

    print("\npartially mapped crossover, window positions 3..6:")
    child, _ = pmx_fill(dad, mom, 2, 5)
    show("child", child)
    print("  outside the window, conflicting genes follow the mapping chain")

    print("\ncount-segment breakpoint move on [3 1 4], split after slot 1:")
    counts = np.array([3, 1, 4])
    moved = np.concatenate((counts[:1][::-1], counts[1:][::-1]))
    show("counts", counts)
    show("after move", moved)

    print("\nexchange mutation (swap two order slots, flip a counts span):")
    ch = Chromosome(np.array([1, 2, 3, 4, 5]), np.array([1, 3, 1]))
    rng = np.random.default_rng(3)
    out = genetic.exchange_mutation(ch, rng)
    show("before", ch.order)
    show("after", out.order)

    print("\ninsert mutation (relocate one gene, same move on counts):")
    out = genetic.insert_mutation(ch, rng)
    show("before", ch.order)
    show("after", out.order)
    show("counts before", ch.counts)
    show("counts after", out.counts)


if __name__ == "__main__":
    main()
