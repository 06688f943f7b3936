"""Objective and reporting: route distance, fitness, fuel, time, U-turns.

Distances drive optimization; fuel and time are report-only outcomes derived
from machine parameters and task geometry. Fleet distances are meters and get
normalized to kilometers inside the fuel/time formulas.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .encoding import Chromosome, RouteSet, decode_routes, validate_chromosome
from .errors import (
    IndexOutOfRange,
    InvalidChromosome,
    UnitOverflow,
    ZeroObjective,
)
from .instance import FieldTask, FleetScenario, MachineSpec, ProblemInstance, scenario_to_instance


@dataclass
class CostReport:
    """Per-machine and total distance/fuel/time for one chromosome.

    Fuel and time are None when evaluated against a bare routing instance
    (no machine parameters available).
    """

    per_machine_distance: np.ndarray
    per_machine_fuel: np.ndarray | None
    per_machine_time: np.ndarray | None
    total_distance: float
    total_fuel: float | None
    total_time: float | None
    routes: RouteSet
    machine_ids: tuple[str, ...]

    def to_dict(self) -> dict:
        per_machine = []
        for k, route in enumerate(self.routes):
            per_machine.append({
                "machine": self.machine_ids[k],
                "distance_m": float(self.per_machine_distance[k]),
                "fuel_l": None if self.per_machine_fuel is None else float(self.per_machine_fuel[k]),
                "time_h": None if self.per_machine_time is None else float(self.per_machine_time[k]),
                "route": [int(t) for t in route],
            })
        return {
            "per_machine": per_machine,
            "total_distance_m": float(self.total_distance),
            "total_fuel_l": None if self.total_fuel is None else float(self.total_fuel),
            "total_time_h": None if self.total_time is None else float(self.total_time),
        }


def route_distance(route, instance: ProblemInstance) -> float:
    """Closed route length: depot -> tasks in order -> depot."""
    r = np.asarray(route, dtype=np.int64)
    if r.size == 0:
        return 0.0
    n = instance.task_count
    if r.min() < 1 or r.max() > n:
        raise IndexOutOfRange(f"route indices must lie in 1..{n}")
    d = instance.distance.entries
    inner = float(d[r[:-1], r[1:]].sum()) if r.size > 1 else 0.0
    return float(d[0, r[0]]) + inner + float(d[r[-1], 0])


def total_distance(ch: Chromosome, instance: ProblemInstance) -> float:
    """Sum of closed route lengths over the decoded routes."""
    violations = validate_chromosome(ch, instance.task_count, ch.m)
    if violations:
        raise InvalidChromosome("; ".join(violations))
    return float(sum(route_distance(r, instance) for r in decode_routes(ch)))


def fitness(f: float) -> float:
    """Reciprocal objective; larger is better."""
    if f <= 0:
        raise ZeroObjective(f"total distance must be > 0 to invert, got {f}")
    return 1.0 / f


def turn_count(task: FieldTask, machine: MachineSpec) -> int:
    """U-turns needed to cover the field: passes minus one.

    Passes = ceil(field width / working width); the small slack keeps an
    exact multiple from spilling into a phantom extra pass.
    """
    ratio = task.width_m / machine.working_width_m
    return max(math.ceil(ratio - 1e-9) - 1, 0)


def _route_tasks(route, tasks) -> list[FieldTask]:
    out = []
    n = len(tasks)
    for idx in np.asarray(route, dtype=np.int64).tolist():
        if not 1 <= idx <= n:
            raise IndexOutOfRange(f"route index {idx} outside 1..{n}")
        out.append(tasks[idx - 1])
    return out


def machine_fuel(machine: MachineSpec, route, tasks, s_i: float) -> float:
    """Fuel in liters: travel + turning + in-field operation.

    s_i is the route distance in meters (converted to km here); tasks is the
    scenario's full task list indexed by the route's 1-based task indices.
    """
    travel = (s_i / 1000.0) / machine.road_speed_km_per_h * machine.travel_fuel_l_per_h
    turning = 0.0
    operation = 0.0
    for task in _route_tasks(route, tasks):
        turning += turn_count(task, machine) * machine.turnaround_h * machine.travel_fuel_l_per_h
        operation += task.area_m2 / machine.capacity_m2_per_h * machine.operating_fuel_l_per_h
    total = travel + turning + operation
    if not math.isfinite(total):
        raise UnitOverflow(f"fuel came out non-finite ({total})")
    return total


def machine_time(machine: MachineSpec, route, tasks, s_i: float) -> float:
    """Working hours: travel + turning + in-field operation."""
    travel = (s_i / 1000.0) / machine.road_speed_km_per_h
    turning = 0.0
    operation = 0.0
    for task in _route_tasks(route, tasks):
        turning += turn_count(task, machine) * machine.turnaround_h
        operation += task.area_m2 / machine.capacity_m2_per_h
    total = travel + turning + operation
    if not math.isfinite(total):
        raise UnitOverflow(f"time came out non-finite ({total})")
    return total


def evaluate(ch: Chromosome, target) -> CostReport:
    """Build a full CostReport for a chromosome against a scenario or instance."""
    if isinstance(target, FleetScenario):
        scenario = target
        instance = scenario_to_instance(scenario)
    else:
        scenario = None
        instance = target

    violations = validate_chromosome(ch, instance.task_count, ch.m)
    if violations:
        raise InvalidChromosome("; ".join(violations))
    routes = decode_routes(ch)
    distances = np.array([route_distance(r, instance) for r in routes])

    if scenario is None:
        return CostReport(
            per_machine_distance=distances,
            per_machine_fuel=None,
            per_machine_time=None,
            total_distance=float(distances.sum()),
            total_fuel=None,
            total_time=None,
            routes=routes,
            machine_ids=tuple(str(k + 1) for k in range(len(routes))),
        )

    fuels = np.array([
        machine_fuel(mc, route, scenario.tasks, s)
        for mc, route, s in zip(scenario.machines, routes, distances)
    ])
    times = np.array([
        machine_time(mc, route, scenario.tasks, s)
        for mc, route, s in zip(scenario.machines, routes, distances)
    ])
    return CostReport(
        per_machine_distance=distances,
        per_machine_fuel=fuels,
        per_machine_time=times,
        total_distance=float(distances.sum()),
        total_fuel=float(fuels.sum()),
        total_time=float(times.sum()),
        routes=routes,
        machine_ids=tuple(mc.id for mc in scenario.machines),
    )
