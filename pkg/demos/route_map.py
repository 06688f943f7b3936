"""Solve an instance and render the routes to an SVG map.

Writes eil51-routes.svg into the current directory: one colored polyline per
machine, task dots, the depot square, and a legend with per-route lengths.
"""
from pathlib import Path

from fieldroute import data
from fieldroute.genetic import GAParams
from fieldroute.instance import parse_tsplib
from fieldroute.plot import render_svg
from fieldroute.solver import SolverConfig, evolve


def main():
    instance = parse_tsplib(data.read_text("eil51.tsp"))
    config = SolverConfig(
        machine_count=3,
        seed=2,
        ga=GAParams(population_size=120, max_generations=400),
    )
    result = evolve(instance, config)
    svg = render_svg(result.to_dict())

    out = Path("eil51-routes.svg")
    out.write_text(svg, encoding="utf-8")
    print(f"objective {result.best.objective:.3f}")
    for k, dist in enumerate(result.report.per_machine_distance, start=1):
        print(f"  machine {k}: {dist:.3f}")
    print(f"wrote {out.resolve()}")


if __name__ == "__main__":
    main()
