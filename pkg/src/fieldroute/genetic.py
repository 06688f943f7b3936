"""Selection and adaptive variation operators.

The crossover stage picks OX or PMX per offspring by comparing the lead
parent's load imbalance against a generation-scheduled tolerance, and the
crossover probability itself is blended from both parents' imbalance. The
mutation stage rates each individual from its normalized fitness and its
average similarity to the rest of the population, so converged populations
feel more mutation pressure.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .encoding import Chromosome
from .errors import (
    DimensionMismatch,
    EmptyPopulation,
    MappingCycleOverrun,
    PopulationTooSmall,
    ZeroMeanCost,
)


@dataclass(frozen=True)
class GAParams:
    population_size: int = 200
    max_generations: int = 2000
    p_c_min: float = 0.4
    p_c_mid: float = 0.55
    p_c_max: float = 0.85
    p_m_initial: float = 0.1
    tol_min: float = 0.05
    tol_max: float = 0.8
    tournament_size: int = 3
    w1: float = 0.5
    w2: float = 0.5
    elitism_count: int = 1

    def __post_init__(self):
        if not (0 < self.p_c_min <= self.p_c_mid <= self.p_c_max <= 1):
            raise ValueError("need 0 < p_c_min <= p_c_mid <= p_c_max <= 1")
        if not (0 <= self.tol_min < self.tol_max):
            raise ValueError("need 0 <= tol_min < tol_max")
        if self.w1 < 0 or self.w2 < 0 or abs(self.w1 + self.w2 - 1.0) > 1e-9:
            raise ValueError("mix weights must be nonnegative and sum to 1")
        if not (0 <= self.p_m_initial <= 1):
            raise ValueError("p_m_initial must be in [0,1]")
        if self.population_size < 1 or self.max_generations < 1:
            raise ValueError("population_size and max_generations must be >= 1")
        if self.tournament_size < 1:
            raise ValueError("tournament_size must be >= 1")
        if self.elitism_count < 0:
            raise ValueError("elitism_count must be >= 0")


@dataclass
class Individual:
    """A chromosome with its evaluation: per-machine route costs and totals."""

    chromosome: Chromosome
    machine_costs: np.ndarray
    objective: float
    fitness: float


@dataclass
class GenerationContext:
    """Per-generation adaptive quantities shared by crossover and mutation."""

    gen: int
    step_scale: float       # schedule weight that rises then falls over the run
    tolerance: float        # imbalance threshold that picks OX vs PMX
    norm_fitness: np.ndarray | None = field(default=None)
    diversity: np.ndarray | None = field(default=None)


def tournament_select(population, k: int, rng: np.random.Generator):
    """Draw k with replacement, return the fittest (first drawn wins ties)."""
    if not population:
        raise EmptyPopulation("cannot select from an empty population")
    if k < 1:
        raise ValueError(f"tournament size must be >= 1, got {k}")
    draws = rng.integers(0, len(population), size=k)
    best = population[draws[0]]
    for idx in draws[1:]:
        if population[idx].fitness > best.fitness:
            best = population[idx]
    return best


def sigmoid(x: float) -> float:
    """Logistic squash 1/(1+e^-x)."""
    if x >= 0:
        return 1.0 / (1.0 + math.exp(-x))
    e = math.exp(x)
    return e / (1.0 + e)


def adaptive_step(pop_size: int, gen: int, max_gen: int) -> float:
    """Generation-scheduled step scale: rises, peaks, then decays to ~0."""
    r = 2.0 * math.log(pop_size) * gen / max_gen - math.log(pop_size)
    return sigmoid(r) * (max_gen - gen + 1) / max_gen


def overshoot(machine_costs) -> float:
    """Load imbalance of one chromosome: (max - mean) / mean of route costs."""
    costs = np.asarray(machine_costs, dtype=np.float64)
    if costs.size == 0:
        raise ZeroMeanCost("no machine costs")
    mean = float(costs.mean())
    if mean <= 0:
        raise ZeroMeanCost(f"mean machine cost must be > 0, got {mean}")
    return (float(costs.max()) - mean) / mean


def adaptive_tolerance(gen: int, step_scale: float, params: GAParams) -> float:
    """Imbalance threshold for operator choice, widening over the schedule."""
    return params.tol_min + step_scale * gen * (params.tol_max - params.tol_min) / params.max_generations


def parent_crossover_prob(machine_costs, params: GAParams) -> float:
    """Map one parent's cost imbalance onto [p_c_min, p_c_max].

    The spread position (y_max - y_mean)/(y_max - y_min) scales the range;
    perfectly balanced parents (y_max = y_min) fall back to p_c_mid.
    """
    costs = np.asarray(machine_costs, dtype=np.float64)
    y_max, y_min, y_mean = float(costs.max()), float(costs.min()), float(costs.mean())
    if y_max == y_min:
        return params.p_c_mid
    p = params.p_c_min + (params.p_c_max - params.p_c_min) * (y_max - y_mean) / (y_max - y_min)
    return min(max(p, params.p_c_min), params.p_c_max)


def combined_crossover_prob(p1: float, p2: float, w1: float, w2: float) -> float:
    """Convex blend of the two parents' crossover probabilities."""
    return w1 * p1 + w2 * p2


def _pool_stats(pool, params: GAParams) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized parent_crossover_prob and overshoot for a whole pool.

    Same arithmetic as the scalar ops, batched over the stacked machine-cost
    rows so the pairing loop does no per-parent numpy work.
    """
    costs = np.stack([ind.machine_costs for ind in pool])
    y_max = costs.max(axis=1)
    y_min = costs.min(axis=1)
    y_mean = costs.mean(axis=1)
    spread = y_max - y_min
    with np.errstate(divide="ignore", invalid="ignore"):
        probs = params.p_c_min + (params.p_c_max - params.p_c_min) * (y_max - y_mean) / spread
    probs = np.clip(probs, params.p_c_min, params.p_c_max)
    probs[spread == 0] = params.p_c_mid
    overshoots = (y_max - y_mean) / y_mean
    return probs, overshoots


def _cut_pair(length: int, rng: np.random.Generator) -> tuple[int, int]:
    """Two distinct 0-based positions, sorted."""
    x = int(rng.integers(length))
    z = int(rng.integers(length - 1))
    if z >= x:
        z += 1
    return (x, z) if x < z else (z, x)


def _counts_child(lead_counts: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """Second-segment crossover move: split at a random breakpoint and
    reverse each piece (multiset preserved, so the sum stays n)."""
    m = lead_counts.size
    if m == 1:
        return lead_counts.copy()
    b = int(rng.integers(1, m))
    return np.concatenate((lead_counts[:b][::-1], lead_counts[b:][::-1]))


def ox_crossover(dad: Chromosome, mom: Chromosome, rng: np.random.Generator) -> Chromosome:
    """Order crossover: keep mom's window, fill the rest in dad's order.

    The inclusive window [cp1..cp2] is copied from mom; remaining positions
    are filled left to right with the genes absent from the window, taken in
    dad's visiting order. Counts come from the lead (first) parent via the
    breakpoint-reversal move.
    """
    if dad.n != mom.n or dad.m != mom.m:
        raise DimensionMismatch("parents must share task and machine counts")
    cp1, cp2 = _cut_pair(dad.n, rng)
    child = _ox_fill(dad.order, mom.order, cp1, cp2)
    return Chromosome(child, _counts_child(dad.counts, rng))


def _ox_fill(dad_order: np.ndarray, mom_order: np.ndarray, cp1: int, cp2: int) -> np.ndarray:
    # inclusive window from mom, gaps filled left to right in dad's order
    n = dad_order.shape[0]
    window = mom_order[cp1:cp2 + 1]
    rest = dad_order[~np.isin(dad_order, window)]
    child = np.empty(n, dtype=np.int64)
    child[cp1:cp2 + 1] = window
    child[:cp1] = rest[:cp1]
    child[cp2 + 1:] = rest[cp1:]
    return child


def pmx_crossover(dad: Chromosome, mom: Chromosome, rng: np.random.Generator) -> Chromosome:
    """Partially mapped crossover: mom's window plus mapping-chased outsides.

    Outside the window each of dad's genes is kept unless it already appears
    in the window, in which case it is chased through the window's
    mom->dad pairing until an unconflicted gene emerges.
    """
    if dad.n != mom.n or dad.m != mom.m:
        raise DimensionMismatch("parents must share task and machine counts")
    cp1, cp2 = _cut_pair(dad.n, rng)
    child, ok = _kernels.pmx_fill(dad.order, mom.order, cp1, cp2)
    if not ok:
        raise MappingCycleOverrun("mapping chase did not terminate; bad parents")
    return Chromosome(child, _counts_child(dad.counts, rng))


def adaptive_crossover(selected_pool, context: GenerationContext, params: GAParams,
                       rng: np.random.Generator) -> list[Chromosome]:
    """Pair off the pool at random and recombine with adaptive control.

    Each pair crosses with probability blended from both parents' imbalance;
    when it does, each offspring's operator follows its lead parent: OX while
    the lead parent's overshoot stays under the generation tolerance, PMX
    once it exceeds it. Non-crossing pairs pass through unchanged. An odd
    pool is evened out by duplicating its best member; output size always
    equals input size.
    """
    pool = list(selected_pool)
    size = len(pool)
    if size < 2:
        return [ind.chromosome.copy() for ind in pool]
    work = list(pool)
    if len(work) % 2 == 1:
        work.append(max(work, key=lambda ind: ind.fitness))
    probs, overshoots = _pool_stats(work, params)
    slots = list(range(len(work)))
    offspring: list[Chromosome] = []
    while slots:
        di = slots.pop(int(rng.integers(len(slots))))
        mi = slots.pop(int(rng.integers(len(slots))))
        p_c = combined_crossover_prob(float(probs[di]), float(probs[mi]), params.w1, params.w2)
        if float(rng.random()) < p_c:
            for lead, other in ((di, mi), (mi, di)):
                op = ox_crossover if float(overshoots[lead]) < context.tolerance else pmx_crossover
                offspring.append(op(work[lead].chromosome, work[other].chromosome, rng))
        else:
            offspring.append(work[di].chromosome.copy())
            offspring.append(work[mi].chromosome.copy())
    return offspring[:size]


def plain_crossover(selected_pool, params: GAParams, rng: np.random.Generator) -> list[Chromosome]:
    """Baseline recombination: fixed probability p_c_mid, OX only."""
    pool = list(selected_pool)
    size = len(pool)
    if size < 2:
        return [ind.chromosome.copy() for ind in pool]
    work = list(pool)
    if len(work) % 2 == 1:
        work.append(max(work, key=lambda ind: ind.fitness))
    offspring: list[Chromosome] = []
    while work:
        dad = work.pop(int(rng.integers(len(work))))
        mom = work.pop(int(rng.integers(len(work))))
        if float(rng.random()) < params.p_c_mid:
            offspring.append(ox_crossover(dad.chromosome, mom.chromosome, rng))
            offspring.append(ox_crossover(mom.chromosome, dad.chromosome, rng))
        else:
            offspring.append(dad.chromosome.copy())
            offspring.append(mom.chromosome.copy())
    return offspring[:size]


def exchange_mutation(ch: Chromosome, rng: np.random.Generator) -> Chromosome:
    """Swap two order positions; reverse a random counts sub-sequence."""
    if ch.n < 2:
        raise ValueError("need at least 2 genes to mutate")
    order = ch.order.copy()
    i, j = _cut_pair(ch.n, rng)
    order[i], order[j] = order[j], order[i]
    counts = ch.counts.copy()
    if ch.m >= 2:
        a, b = _cut_pair(ch.m, rng)
        counts[a:b + 1] = counts[a:b + 1][::-1]
    return Chromosome(order, counts)


def _relocate(seq: np.ndarray, p1: int, p2: int) -> np.ndarray:
    """Remove the element at p2 and reinsert it before the element
    originally at p1 (0-based positions; p1 == p2 is the identity)."""
    out = seq.copy()
    if p1 == p2:
        return out
    g = seq[p2]
    if p2 > p1:
        out[p1 + 1:p2 + 1] = seq[p1:p2]
        out[p1] = g
    else:
        out[p2:p1 - 1] = seq[p2 + 1:p1]
        out[p1 - 1] = g
    return out


def insert_mutation(ch: Chromosome, rng: np.random.Generator) -> Chromosome:
    """Relocate one order gene before a random position; same move on counts."""
    if ch.n < 2:
        raise ValueError("need at least 2 genes to mutate")
    p1 = int(rng.integers(ch.n))
    p2 = int(rng.integers(ch.n))
    order = _relocate(ch.order, p1, p2)
    counts = ch.counts
    if ch.m >= 2:
        q1 = int(rng.integers(ch.m))
        q2 = int(rng.integers(ch.m))
        counts = _relocate(counts, q1, q2)
    else:
        counts = counts.copy()
    return Chromosome(order, counts)


def pairwise_similarity(a: Chromosome, b: Chromosome) -> float:
    """Fraction of equal positions across the concatenated order ++ counts."""
    if a.n != b.n or a.m != b.m:
        raise DimensionMismatch("chromosomes must share task and machine counts")
    matches = int((a.order == b.order).sum()) + int((a.counts == b.counts).sum())
    return matches / (a.n + a.m)


def individual_diversity(population, index: int) -> float:
    """Mean similarity of one individual to every other population member.

    Despite the name this averages SIMILARITY: 1 means the population has
    collapsed onto this genome, 0 means no positional agreement at all. It
    is used to raise mutation pressure on converged populations.
    """
    if len(population) < 2:
        raise PopulationTooSmall("diversity needs at least 2 individuals")
    me = population[index].chromosome
    total = 0.0
    for j, other in enumerate(population):
        if j != index:
            total += pairwise_similarity(me, other.chromosome)
    return total / (len(population) - 1)


def similarity_stack(population) -> np.ndarray:
    """All-pairs positional similarity over order ++ counts, shape (N, N)."""
    genomes = np.stack([
        np.concatenate((ind.chromosome.order, ind.chromosome.counts))
        for ind in population
    ])
    return (genomes[:, None, :] == genomes[None, :, :]).mean(axis=2)


def _diversity_profile(population) -> np.ndarray:
    """Mean similarity of each individual to the rest of the population.

    Equivalent to averaging pairwise_similarity over all other members, but
    computed by value counts per genome column: the number of individuals
    matching individual i at a column equals the count of i's value there.
    """
    size = len(population)
    genomes = np.stack([
        np.concatenate((ind.chromosome.order, ind.chromosome.counts))
        for ind in population
    ])
    length = genomes.shape[1]
    match_totals = np.zeros(size, dtype=np.int64)
    for col in range(length):
        values = genomes[:, col]
        counts = np.bincount(values)
        match_totals += counts[values]
    # subtract each individual's full match with itself
    return (match_totals - length) / ((size - 1) * length)


def adaptive_mutation_rate(fit: float, div: float, p_m: float) -> float:
    """Blend the base rate and the similarity pressure by fitness standing."""
    return (1.0 - fit) * p_m + div * fit


def _normalized_fitness(population) -> np.ndarray:
    fits = np.array([ind.fitness for ind in population], dtype=np.float64)
    lo, hi = float(fits.min()), float(fits.max())
    if hi == lo:
        return np.full(fits.size, 0.5)
    return (fits - lo) / (hi - lo)


def adaptive_mutate(population, context: GenerationContext, params: GAParams,
                    rng: np.random.Generator) -> list[Chromosome]:
    """Mutate each individual with its own rate from fitness and similarity.

    Fit individuals in converged populations mutate most; when an individual
    mutates, exchange and insert moves are chosen with equal probability.
    """
    fit = _normalized_fitness(population)
    size = len(population)
    div = _diversity_profile(population) if size >= 2 else np.zeros(size)
    context.norm_fitness = fit
    context.diversity = div
    out: list[Chromosome] = []
    for i, ind in enumerate(population):
        rate = adaptive_mutation_rate(float(fit[i]), float(div[i]), params.p_m_initial)
        if float(rng.random()) < rate:
            op = exchange_mutation if float(rng.random()) < 0.5 else insert_mutation
            out.append(op(ind.chromosome, rng))
        else:
            out.append(ind.chromosome.copy())
    return out


def plain_mutate(population, params: GAParams, rng: np.random.Generator) -> list[Chromosome]:
    """Baseline mutation: fixed rate, equal-probability exchange/insert."""
    out: list[Chromosome] = []
    for ind in population:
        if float(rng.random()) < params.p_m_initial:
            op = exchange_mutation if float(rng.random()) < 0.5 else insert_mutation
            out.append(op(ind.chromosome, rng))
        else:
            out.append(ind.chromosome.copy())
    return out
