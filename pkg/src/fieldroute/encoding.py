"""Two-segment chromosome genome and its decoding.

A genome is a permutation of task indices 1..n (visit order) plus a list of
m positive counts summing to n (tasks per machine, in machine order). Routes
are read off by slicing the order segment at the count boundaries.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidDimensions


@dataclass
class Chromosome:
    """order: permutation of 1..n; counts: m positive integers summing to n."""

    order: np.ndarray
    counts: np.ndarray

    def __post_init__(self):
        self.order = np.asarray(self.order, dtype=np.int64)
        self.counts = np.asarray(self.counts, dtype=np.int64)

    @property
    def n(self) -> int:
        return int(self.order.size)

    @property
    def m(self) -> int:
        return int(self.counts.size)

    def copy(self) -> "Chromosome":
        return Chromosome(self.order.copy(), self.counts.copy())

    def __eq__(self, other) -> bool:
        return (isinstance(other, Chromosome)
                and np.array_equal(self.order, other.order)
                and np.array_equal(self.counts, other.counts))

    def to_dict(self) -> dict:
        return {"order": self.order.tolist(), "counts": self.counts.tolist()}

    @classmethod
    def from_dict(cls, doc: dict) -> "Chromosome":
        return cls(np.asarray(doc["order"]), np.asarray(doc["counts"]))


@dataclass
class RouteSet:
    """Per-machine visit sequences; concatenation reproduces the order segment."""

    routes: tuple[np.ndarray, ...]

    def __iter__(self):
        return iter(self.routes)

    def __len__(self) -> int:
        return len(self.routes)

    def __getitem__(self, i) -> np.ndarray:
        return self.routes[i]


def random_chromosome(n: int, m: int, rng: np.random.Generator) -> Chromosome:
    """Uniform random permutation plus a uniform random composition of n into m parts."""
    if not (isinstance(n, (int, np.integer)) and isinstance(m, (int, np.integer)) and n > m >= 1):
        raise InvalidDimensions(f"need task count n > machine count m >= 1, got n={n}, m={m}")
    order = rng.permutation(n) + 1
    counts = random_counts(n, m, rng)
    return Chromosome(order, counts)


def random_counts(n: int, m: int, rng: np.random.Generator) -> np.ndarray:
    """Sample uniformly among compositions of n into m positive parts.

    Chooses m-1 distinct cut points among the n-1 gaps of a length-n row
    (stars and bars), so every composition is equally likely.
    """
    if m == 1:
        return np.array([n], dtype=np.int64)
    cuts = np.sort(rng.choice(n - 1, size=m - 1, replace=False)) + 1
    bounds = np.concatenate(([0], cuts, [n]))
    return np.diff(bounds).astype(np.int64)


def decode_routes(ch: Chromosome) -> RouteSet:
    """Slice the order segment into per-machine routes at the count boundaries."""
    ends = np.cumsum(ch.counts)
    starts = ends - ch.counts
    return RouteSet(tuple(ch.order[s:e] for s, e in zip(starts, ends)))


def validate_chromosome(ch: Chromosome, n: int, m: int) -> list[str]:
    """Return human-readable invariant violations; empty list means valid."""
    violations: list[str] = []
    if ch.order.size != n:
        violations.append(f"order length {ch.order.size} != task count {n}")
    if ch.counts.size != m:
        violations.append(f"counts length {ch.counts.size} != machine count {m}")
    seen = set()
    for gene in ch.order.tolist():
        if not 1 <= gene <= n:
            violations.append(f"gene {gene} outside 1..{n}")
        elif gene in seen:
            violations.append(f"duplicate gene {gene}")
        seen.add(gene)
    if ch.order.size == n and len(seen) != n and not any("outside" in v or "duplicate" in v
                                                         for v in violations):
        violations.append("order is not a permutation")
    for c in ch.counts.tolist():
        if c < 1:
            violations.append(f"count {c} < 1")
    if ch.counts.size and int(ch.counts.sum()) != n:
        violations.append(f"counts sum {int(ch.counts.sum())} != {n}")
    return violations
