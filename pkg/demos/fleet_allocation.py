"""Allocate field tasks to a small machine fleet and cost the plan.

Loads the bundled three-machine, sixteen-task scenario, solves the routing
problem over task anchor points, then prices each machine's route in fuel
and working hours.
"""
from fieldroute import cost, data
from fieldroute.genetic import GAParams
from fieldroute.instance import load_scenario, scenario_to_instance
from fieldroute.solver import SolverConfig, evolve


def main():
    scenario = load_scenario(data.read_text("fleet16.json"))
    instance = scenario_to_instance(scenario, name="fleet16")
    print(f"{scenario.machine_count} machines, {scenario.task_count} tasks")
    for mc in scenario.machines:
        print(f"  machine {mc.id}: width {mc.working_width_m} m, "
              f"capacity {mc.capacity_m2_per_h:.0f} m2/h, "
              f"road speed {mc.road_speed_km_per_h:.0f} km/h")

    config = SolverConfig(
        machine_count=scenario.machine_count,
        seed=7,
        ga=GAParams(population_size=100, max_generations=300),
    )
    result = evolve(instance, config)
    report = cost.evaluate(result.best.chromosome, scenario)

    print(f"\ntotal distance {report.total_distance:10.1f} m")
    print(f"total fuel     {report.total_fuel:10.3f} L")
    print(f"total time     {report.total_time:10.3f} h")
    print("\nper machine:")
    task_ids = [t.id for t in scenario.tasks]
    for k, mc in enumerate(scenario.machines):
        stops = " -> ".join(task_ids[i - 1] for i in report.routes[k].tolist())
        print(f"  {mc.id}: {report.per_machine_distance[k]:9.1f} m, "
              f"{report.per_machine_fuel[k]:7.3f} L, "
              f"{report.per_machine_time[k]:6.3f} h   depot -> {stops} -> depot")


if __name__ == "__main__":
    main()
