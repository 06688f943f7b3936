import numpy as np
import pytest

from fieldroute import data
from fieldroute.instance import (
    Point2D,
    ProblemInstance,
    build_distance_matrix,
    load_scenario,
    parse_tsplib,
)


@pytest.fixture(scope="session")
def eil51():
    return parse_tsplib(data.read_text("eil51.tsp"))


@pytest.fixture(scope="session")
def eil76():
    return parse_tsplib(data.read_text("eil76.tsp"))


@pytest.fixture(scope="session")
def kroa100():
    return parse_tsplib(data.read_text("kroA100.tsp"))


@pytest.fixture(scope="session")
def fleet16():
    return load_scenario(data.read_text("fleet16.json"))


@pytest.fixture
def make_instance():
    """Factory for small random Euclidean instances, depot at index 0."""

    def _make(rng: np.random.Generator, count: int, scale: float = 100.0,
              name: str = "random") -> ProblemInstance:
        pts = rng.uniform(0.0, scale, size=(count, 2))
        points = tuple(Point2D(float(x), float(y)) for x, y in pts)
        return ProblemInstance(name=name, points=points,
                               distance=build_distance_matrix(points))

    return _make
