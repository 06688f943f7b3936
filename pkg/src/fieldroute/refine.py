"""Local refinement of the best individual.

Random 2-opt proposals on both genome segments, then a pairwise-reversal
sweep of each machine's route to full 2-opt local optimality. Refinement
never worsens an individual: every acceptance requires a strict decrease.
"""
from __future__ import annotations

import numpy as np

from . import _kernels
from .encoding import Chromosome, decode_routes
from .errors import IndexOutOfRange
from .genetic import Individual
from .instance import DistanceMatrix, ProblemInstance


def _chain_objective(order: np.ndarray, counts: np.ndarray, d: np.ndarray) -> tuple[np.ndarray, float]:
    """Per-route closed-tour costs and their total for one genome."""
    ends = np.cumsum(counts)
    starts = ends - counts
    edges = d[order[:-1], order[1:]]
    prefix = np.concatenate(([0.0], np.cumsum(edges)))
    inner = prefix[ends - 1] - prefix[starts]
    depot_leg = d[0][order]
    costs = inner + depot_leg[starts] + depot_leg[ends - 1]
    return costs, float(costs.sum())


def two_opt_move(ch: Chromosome, i: int, j: int, segment: int) -> Chromosome:
    """Reverse the inclusive 1-based span [i..j] of one genome segment."""
    if segment not in (1, 2):
        raise ValueError(f"segment must be 1 or 2, got {segment}")
    length = ch.n if segment == 1 else ch.m
    if not (1 <= i < j <= length):
        raise IndexOutOfRange(f"need 1 <= i < j <= {length}, got i={i}, j={j}")
    order, counts = ch.order.copy(), ch.counts.copy()
    target = order if segment == 1 else counts
    target[i - 1:j] = target[i - 1:j][::-1]
    return Chromosome(order, counts)


def two_opt_improve(ind: Individual, instance: ProblemInstance,
                    rng: np.random.Generator, trials: int) -> Individual:
    """Greedy random 2-opt: keep each proposed reversal only if it strictly
    shortens the total. Proposals alternate between the order segment and the
    counts segment (order only when there is a single machine)."""
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    d = instance.distance.entries
    order = ind.chromosome.order.copy()
    counts = ind.chromosome.counts.copy()
    best = ind.objective
    m = counts.size
    changed = False
    for _ in range(trials):
        seg = 1 if m < 2 else (1 if float(rng.random()) < 0.5 else 2)
        length = order.size if seg == 1 else m
        x = int(rng.integers(length))
        z = int(rng.integers(length - 1))
        if z >= x:
            z += 1
        i, j = (x, z) if x < z else (z, x)
        target = order if seg == 1 else counts
        target[i:j + 1] = target[i:j + 1][::-1]
        _, total = _chain_objective(order, counts, d)
        if total < best:
            best = total
            changed = True
        else:
            target[i:j + 1] = target[i:j + 1][::-1]  # undo
    if not changed:
        return ind
    costs, total = _chain_objective(order, counts, d)
    return Individual(Chromosome(order, counts), costs, total, 1.0 / total)


def modified_circle(order, matrix, depot: int = 0) -> np.ndarray:
    """Drive one route to 2-opt local optimality by repeated reversal sweeps.

    Scans all position pairs, reversing any inclusive span that strictly
    shortens the closed tour through the depot, and repeats until a full
    sweep changes nothing.
    """
    d = matrix.entries if isinstance(matrix, DistanceMatrix) else np.asarray(matrix, dtype=np.float64)
    route = np.asarray(order, dtype=np.int64).copy()
    if route.size < 2:
        return route
    return _kernels.circle_pass(route, d, depot)


def refine_best(ind: Individual, instance: ProblemInstance, rng: np.random.Generator,
                trials: int | None = None) -> Individual:
    """Full refinement pass; returns the input unless it strictly improves.

    Random 2-opt proposals first (default budget: one per task), then each
    machine's route is swept to local optimality with counts held fixed.
    """
    if trials is None:
        trials = ind.chromosome.n
    d = instance.distance.entries
    stage = two_opt_improve(ind, instance, rng, trials)
    routes = [
        _kernels.circle_pass(r.copy(), d, 0) if r.size >= 2 else r
        for r in decode_routes(stage.chromosome)
    ]
    order = np.concatenate(routes)
    counts = stage.chromosome.counts
    costs, total = _chain_objective(order, counts, d)
    if total < ind.objective:
        return Individual(Chromosome(order, counts.copy()), costs, total, 1.0 / total)
    if stage.objective < ind.objective:
        return stage
    return ind
