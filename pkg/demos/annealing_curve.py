"""Watch simulated annealing improve a giant tour stage by stage.

Anneals a random visiting order over the eil76 points under the default
geometric cooling schedule and prints the best tour length at a sample of
temperature stages, ending with the total improvement.
"""
import numpy as np

from fieldroute import data
from fieldroute._kernels import tour_length
from fieldroute.anneal import AnnealParams, anneal_tour
from fieldroute.instance import parse_tsplib


def main():
    instance = parse_tsplib(data.read_text("eil76.tsp"))
    n = instance.task_count
    rng = np.random.default_rng(42)
    start = rng.permutation(n).astype(np.int64) + 1

    params = AnnealParams()  # 120 -> 1 at factor 0.98, chain length 100
    stages = params.stage_count()
    print(f"{instance.name}: {n} tasks, {stages} cooling stages, "
          f"chain length {params.chain_length}")

    d = instance.distance.entries
    before = tour_length(start, d)
    best, trace = anneal_tour(start, instance.distance, params, rng, return_trace=True)
    after = tour_length(best, d)

    print(f"\nstart tour length {before:.2f}")
    temps = params.t_initial * params.cooling_factor ** np.arange(stages)
    for s in np.linspace(0, stages - 1, 12, dtype=int):
        print(f"  stage {s + 1:3d}  T={temps[s]:8.3f}  best {trace[s]:10.2f}")
    print(f"\nfinal tour length {after:.2f} "
          f"({100.0 * (before - after) / before:.1f}% shorter)")


if __name__ == "__main__":
    main()
