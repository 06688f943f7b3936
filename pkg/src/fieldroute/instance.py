"""Problem inputs: TSPLIB benchmark files and fleet scenario documents.

Both input kinds normalize to a ProblemInstance: an ordered point list whose
index 0 is the depot, plus a precomputed symmetric distance matrix. Instances
are immutable after loading and safe to share across concurrent solver runs.
"""
from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    ConstraintViolation,
    MalformedRecord,
    NonFiniteCoordinate,
    SchemaViolation,
    UnsupportedEdgeWeightType,
)

# Distance rounding policies. "none" keeps exact Euclidean values; "nint" is
# TSPLIB nearest-integer rounding; "ceil" rounds up; "att" is the TSPLIB
# pseudo-Euclidean rule for ATT instances.
ROUNDING_POLICIES = ("none", "nint", "ceil", "att")

SUPPORTED_EDGE_WEIGHT_TYPES = ("EUC_2D", "ATT", "CEIL_2D")


@dataclass(frozen=True)
class Point2D:
    """A planar point. Meters for fleet scenarios, unitless for TSPLIB."""

    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise NonFiniteCoordinate(f"non-finite point ({self.x}, {self.y})")


@dataclass(frozen=True, eq=False)
class DistanceMatrix:
    """Symmetric matrix of pairwise distances with a zero diagonal."""

    entries: np.ndarray

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def __getitem__(self, ij):
        return self.entries[ij]


@dataclass(frozen=True, eq=False)
class ProblemInstance:
    """Abstract routing view of a job: depot at index 0, tasks at 1..n."""

    name: str
    points: tuple[Point2D, ...]
    distance: DistanceMatrix

    def __post_init__(self):
        if len(self.points) < 2:
            raise ConstraintViolation("an instance needs a depot and at least one task")
        if self.distance.dim != len(self.points):
            raise ConstraintViolation(
                f"matrix dimension {self.distance.dim} != point count {len(self.points)}")

    @property
    def task_count(self) -> int:
        return len(self.points) - 1


@dataclass(frozen=True)
class MachineSpec:
    """One machine's physical parameters.

    operation_speed_km_per_h is carried for completeness but feeds no cost
    equation; in-field work is charged through capacity instead.
    """

    id: str
    working_width_m: float
    capacity_m2_per_h: float
    road_speed_km_per_h: float
    operating_fuel_l_per_h: float
    travel_fuel_l_per_h: float
    turnaround_h: float
    operation_speed_km_per_h: float = 0.0

    def __post_init__(self):
        positives = {
            "working_width_m": self.working_width_m,
            "capacity_m2_per_h": self.capacity_m2_per_h,
            "road_speed_km_per_h": self.road_speed_km_per_h,
            "operating_fuel_l_per_h": self.operating_fuel_l_per_h,
            "travel_fuel_l_per_h": self.travel_fuel_l_per_h,
            "turnaround_h": self.turnaround_h,
        }
        for key, value in positives.items():
            if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
                raise ConstraintViolation(f"machine {self.id!r}: {key} must be > 0, got {value!r}")


@dataclass(frozen=True)
class FieldTask:
    """One rectangular field job: dimensions, area and an access point."""

    id: str
    length_m: float
    width_m: float
    area_m2: float
    anchor: Point2D

    def __post_init__(self):
        for key in ("length_m", "width_m", "area_m2"):
            value = getattr(self, key)
            if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
                raise ConstraintViolation(f"task {self.id!r}: {key} must be > 0, got {value!r}")
        # Stated area may differ from length*width (irregular plots); warn past 5%.
        mismatch = abs(self.area_m2 - self.length_m * self.width_m) / self.area_m2
        if mismatch > 0.05:
            warnings.warn(
                f"task {self.id!r}: area {self.area_m2} differs from length*width "
                f"{self.length_m * self.width_m:.1f} by {mismatch:.1%}",
                stacklevel=2,
            )


@dataclass(frozen=True)
class FleetScenario:
    """Machines, field tasks and the shared depot location."""

    depot: Point2D
    machines: tuple[MachineSpec, ...]
    tasks: tuple[FieldTask, ...]

    def __post_init__(self):
        m, n = len(self.machines), len(self.tasks)
        if m < 1:
            raise ConstraintViolation("scenario needs at least one machine")
        if n <= m:
            raise ConstraintViolation(f"task count {n} must exceed machine count {m}")
        machine_ids = [mc.id for mc in self.machines]
        if len(set(machine_ids)) != m:
            raise ConstraintViolation("duplicate machine ids")
        task_ids = [t.id for t in self.tasks]
        if len(set(task_ids)) != n:
            raise ConstraintViolation("duplicate task ids")

    @property
    def machine_count(self) -> int:
        return len(self.machines)

    @property
    def task_count(self) -> int:
        return len(self.tasks)


def build_distance_matrix(points, rounding: str = "none") -> DistanceMatrix:
    """Compute all pairwise Euclidean distances under the given rounding policy."""
    if rounding not in ROUNDING_POLICIES:
        raise ValueError(f"unknown rounding policy {rounding!r}")
    if len(points) < 1:
        raise ValueError("need at least one point")
    arr = np.array([(p.x, p.y) for p in points], dtype=np.float64)
    if not np.isfinite(arr).all():
        raise NonFiniteCoordinate("non-finite coordinate in point list")
    diff = arr[:, None, :] - arr[None, :, :]
    sq = (diff * diff).sum(axis=2)
    if rounding == "att":
        r = np.sqrt(sq / 10.0)
        t = np.floor(r + 0.5)
        d = np.where(t < r, t + 1.0, t)
    else:
        d = np.sqrt(sq)
        if rounding == "nint":
            d = np.floor(d + 0.5)
        elif rounding == "ceil":
            d = np.ceil(d)
    np.fill_diagonal(d, 0.0)
    d.setflags(write=False)
    return DistanceMatrix(d)


def _tsplib_fields(text: str):
    """Split a TSPLIB document into keyword fields and the coordinate rows."""
    fields: dict[str, str] = {}
    coord_rows: list[str] = []
    in_coords = False
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if in_coords:
            if line.upper() == "EOF":
                break
            coord_rows.append(line)
            continue
        if line.upper() == "NODE_COORD_SECTION":
            in_coords = True
            continue
        if line.upper() == "EOF":
            break
        if ":" in line:
            key, _, value = line.partition(":")
            fields[key.strip().upper()] = value.strip()
        else:
            fields[line.upper()] = ""
    return fields, coord_rows, in_coords


def parse_tsplib(text: str, *, rounding: str | None = None,
                 att_formula: bool = False, depot_node: int = 1) -> ProblemInstance:
    """Parse a TSPLIB95 NODE_COORD document into a ProblemInstance.

    Supports EUC_2D, ATT and CEIL_2D edge weight types. By default distances
    are exact (unrounded): the solver objective carries real-valued route
    lengths. Pass rounding="nint" for standard TSPLIB integer distances when
    comparing against published integer optima. ATT instances use plain
    Euclidean unless att_formula is set.

    depot_node selects which file node becomes index 0; remaining nodes keep
    file order as tasks 1..n.
    """
    fields, coord_rows, saw_section = _tsplib_fields(text)
    if not saw_section:
        raise MalformedRecord("missing NODE_COORD_SECTION")
    name = fields.get("NAME", "unnamed")
    try:
        dimension = int(fields["DIMENSION"])
    except KeyError:
        raise MalformedRecord("missing DIMENSION keyword") from None
    except ValueError:
        raise MalformedRecord(f"non-integer DIMENSION {fields['DIMENSION']!r}") from None
    ewt = fields.get("EDGE_WEIGHT_TYPE", "").upper()
    if ewt not in SUPPORTED_EDGE_WEIGHT_TYPES:
        raise UnsupportedEdgeWeightType(f"edge weight type {ewt or '(missing)'!r}")

    if len(coord_rows) != dimension:
        raise MalformedRecord(
            f"DIMENSION says {dimension} nodes but found {len(coord_rows)} coordinate rows")
    nodes: dict[int, Point2D] = {}
    order: list[int] = []
    for row in coord_rows:
        parts = row.split()
        if len(parts) != 3:
            raise MalformedRecord(f"bad coordinate row {row!r}")
        try:
            node_id = int(parts[0])
            x, y = float(parts[1]), float(parts[2])
        except ValueError:
            raise MalformedRecord(f"non-numeric coordinate row {row!r}") from None
        if node_id in nodes:
            raise MalformedRecord(f"duplicate node id {node_id}")
        nodes[node_id] = Point2D(x, y)
        order.append(node_id)

    if depot_node not in nodes:
        raise MalformedRecord(f"depot node {depot_node} not present in file")
    ordered = [nodes[depot_node]] + [nodes[i] for i in order if i != depot_node]

    if rounding is None:
        rounding = "none"
    if ewt == "ATT" and att_formula:
        rounding = "att"
    if ewt == "CEIL_2D" and rounding == "nint":
        rounding = "ceil"
    matrix = build_distance_matrix(ordered, rounding)
    return ProblemInstance(name=name, points=tuple(ordered), distance=matrix)


def _require(doc: dict, key: str, kind, where: str):
    if not isinstance(doc, dict) or key not in doc:
        raise SchemaViolation(f"{where}: missing key {key!r}")
    value = doc[key]
    # bool passes isinstance(int) checks; reject it for numeric fields
    if kind is float:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise SchemaViolation(f"{where}: {key!r} must be a number, got {type(value).__name__}")
        return float(value)
    if not isinstance(value, kind):
        raise SchemaViolation(f"{where}: {key!r} must be {kind.__name__}, got {type(value).__name__}")
    return value


def _point_from(doc, where: str) -> Point2D:
    x = _require(doc, "x", float, where)
    y = _require(doc, "y", float, where)
    return Point2D(x, y)


def load_scenario(text: str) -> FleetScenario:
    """Load a fleet scenario from its JSON document form."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaViolation(f"scenario is not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise SchemaViolation("scenario root must be an object")
    depot = _point_from(_require(doc, "depot", dict, "scenario"), "depot")
    machines_doc = _require(doc, "machines", list, "scenario")
    tasks_doc = _require(doc, "tasks", list, "scenario")

    machines = []
    for i, md in enumerate(machines_doc):
        where = f"machines[{i}]"
        machines.append(MachineSpec(
            id=str(_require(md, "id", (str, int), where)),
            working_width_m=_require(md, "working_width_m", float, where),
            capacity_m2_per_h=_require(md, "capacity_m2_per_h", float, where),
            road_speed_km_per_h=_require(md, "road_speed_km_per_h", float, where),
            operating_fuel_l_per_h=_require(md, "operating_fuel_l_per_h", float, where),
            travel_fuel_l_per_h=_require(md, "travel_fuel_l_per_h", float, where),
            turnaround_h=_require(md, "turnaround_h", float, where),
            operation_speed_km_per_h=(
                _require(md, "operation_speed_km_per_h", float, where)
                if isinstance(md, dict) and "operation_speed_km_per_h" in md else 0.0),
        ))
    tasks = []
    for i, td in enumerate(tasks_doc):
        where = f"tasks[{i}]"
        tasks.append(FieldTask(
            id=str(_require(td, "id", (str, int), where)),
            length_m=_require(td, "length_m", float, where),
            width_m=_require(td, "width_m", float, where),
            area_m2=_require(td, "area_m2", float, where),
            anchor=_point_from(_require(td, "anchor", dict, where), f"{where}.anchor"),
        ))
    return FleetScenario(depot=depot, machines=tuple(machines), tasks=tuple(tasks))


def scenario_to_json(scenario: FleetScenario) -> dict:
    """Serialize a scenario back to its JSON document structure."""
    return {
        "depot": {"x": scenario.depot.x, "y": scenario.depot.y},
        "machines": [
            {
                "id": mc.id,
                "working_width_m": mc.working_width_m,
                "capacity_m2_per_h": mc.capacity_m2_per_h,
                "road_speed_km_per_h": mc.road_speed_km_per_h,
                "operating_fuel_l_per_h": mc.operating_fuel_l_per_h,
                "travel_fuel_l_per_h": mc.travel_fuel_l_per_h,
                "turnaround_h": mc.turnaround_h,
                "operation_speed_km_per_h": mc.operation_speed_km_per_h,
            }
            for mc in scenario.machines
        ],
        "tasks": [
            {
                "id": t.id,
                "length_m": t.length_m,
                "width_m": t.width_m,
                "area_m2": t.area_m2,
                "anchor": {"x": t.anchor.x, "y": t.anchor.y},
            }
            for t in scenario.tasks
        ],
    }


def scenario_to_instance(scenario: FleetScenario, name: str = "scenario") -> ProblemInstance:
    """View a scenario as a routing instance: depot + task anchors, meters, unrounded."""
    points = [scenario.depot] + [t.anchor for t in scenario.tasks]
    return ProblemInstance(name=name, points=tuple(points),
                           distance=build_distance_matrix(points, "none"))
