"""Exception types raised across the library.

Everything derives from FieldRouteError so callers can catch one base
class at the boundary (the CLI maps subfamilies to exit codes).
"""


class FieldRouteError(Exception):
    """Base class for all errors raised by this package."""


class MalformedRecord(FieldRouteError):
    """Input file is structurally broken: bad row, missing section, wrong count."""


class UnsupportedEdgeWeightType(FieldRouteError):
    """TSPLIB file declares an edge weight type this parser does not handle."""


class NonFiniteCoordinate(FieldRouteError):
    """A coordinate is NaN or infinite."""


class SchemaViolation(FieldRouteError):
    """JSON document does not match the expected schema (missing key, wrong type)."""


class ConstraintViolation(FieldRouteError):
    """Values are well-formed but violate a model constraint (e.g. too few tasks)."""


class InvalidDimensions(FieldRouteError):
    """Task/machine counts do not admit a valid assignment (requires n > m >= 1)."""


class InvalidChromosome(FieldRouteError):
    """Chromosome fails validation against its instance (bad permutation or counts)."""


class IndexOutOfRange(FieldRouteError):
    """A task index or cut position falls outside the legal range."""


class ZeroObjective(FieldRouteError):
    """Objective value is not strictly positive, so fitness 1/f is undefined."""


class ZeroMeanCost(FieldRouteError):
    """Mean per-machine cost is not strictly positive, so relative overshoot is undefined."""


class NonPositiveTemperature(FieldRouteError):
    """Metropolis acceptance queried at a temperature <= 0."""


class EmptyPopulation(FieldRouteError):
    """Selection asked to draw from an empty population."""


class PopulationTooSmall(FieldRouteError):
    """Diversity requires at least two individuals."""


class DimensionMismatch(FieldRouteError):
    """Two chromosomes (or arrays) that must agree in shape do not."""


class MappingCycleOverrun(FieldRouteError):
    """PMX mapping resolution failed to terminate; parents were not permutations."""


class UnitOverflow(FieldRouteError):
    """A physical quantity (fuel, time) came out non-finite."""
