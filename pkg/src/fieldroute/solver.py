"""Full solver pipeline: seeded initialization, generational loop, batches.

One run is deterministic given (instance, config): every stochastic phase
draws from a stream derived from the run seed and the generation number, so
results do not depend on scheduling or batch parallelism.
"""
from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from . import cost
from .anneal import AnnealParams, anneal_tour
from .encoding import Chromosome, random_counts
from .errors import InvalidDimensions
from .genetic import (
    GAParams,
    GenerationContext,
    Individual,
    adaptive_crossover,
    adaptive_mutate,
    adaptive_step,
    adaptive_tolerance,
    plain_crossover,
    plain_mutate,
)
from .instance import ProblemInstance
from .refine import refine_best
from .rng import stream


@dataclass(frozen=True)
class RefineParams:
    """Refinement budget; two_opt_trials None means one trial per task."""

    two_opt_trials: int | None = None

    def __post_init__(self):
        if self.two_opt_trials is not None and self.two_opt_trials < 1:
            raise ValueError("two_opt_trials must be >= 1 when set")


@dataclass(frozen=True)
class SolverConfig:
    """Everything one run needs besides the instance itself.

    The four enable flags ablate pipeline stages; all true is the full
    hybrid, all false (plus the fixed rates in plain_* operators) is the
    plain-GA baseline.
    """

    machine_count: int
    seed: int = 0
    sa: AnnealParams = field(default_factory=AnnealParams)
    ga: GAParams = field(default_factory=GAParams)
    refine: RefineParams = field(default_factory=RefineParams)
    enable_sa_seed: bool = True
    enable_adaptive_crossover: bool = True
    enable_adaptive_mutation: bool = True
    enable_refine: bool = True

    def __post_init__(self):
        if self.machine_count < 1:
            raise InvalidDimensions(f"machine_count must be >= 1, got {self.machine_count}")

    @classmethod
    def baseline_ga(cls, machine_count: int, seed: int = 0, **overrides) -> "SolverConfig":
        """Plain-GA reference: no seeding, fixed rates, OX only, no refinement."""
        return cls(machine_count=machine_count, seed=seed,
                   enable_sa_seed=False, enable_adaptive_crossover=False,
                   enable_adaptive_mutation=False, enable_refine=False, **overrides)

    def to_dict(self) -> dict:
        return {
            "machine_count": self.machine_count,
            "seed": self.seed,
            "sa": {
                "t_initial": self.sa.t_initial,
                "t_final": self.sa.t_final,
                "chain_length": self.sa.chain_length,
                "cooling_factor": self.sa.cooling_factor,
                "auto_scale": self.sa.auto_scale,
            },
            "ga": {
                "population_size": self.ga.population_size,
                "max_generations": self.ga.max_generations,
                "p_c_min": self.ga.p_c_min,
                "p_c_mid": self.ga.p_c_mid,
                "p_c_max": self.ga.p_c_max,
                "p_m_initial": self.ga.p_m_initial,
                "tol_min": self.ga.tol_min,
                "tol_max": self.ga.tol_max,
                "tournament_size": self.ga.tournament_size,
                "w1": self.ga.w1,
                "w2": self.ga.w2,
                "elitism_count": self.ga.elitism_count,
            },
            "refine": {"two_opt_trials": self.refine.two_opt_trials},
            "enable_sa_seed": self.enable_sa_seed,
            "enable_adaptive_crossover": self.enable_adaptive_crossover,
            "enable_adaptive_mutation": self.enable_adaptive_mutation,
            "enable_refine": self.enable_refine,
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "SolverConfig":
        sa = AnnealParams(**doc.get("sa", {}))
        ga = GAParams(**doc.get("ga", {}))
        refine = RefineParams(**doc.get("refine", {}))
        return cls(
            machine_count=doc["machine_count"],
            seed=doc.get("seed", 0),
            sa=sa, ga=ga, refine=refine,
            enable_sa_seed=doc.get("enable_sa_seed", True),
            enable_adaptive_crossover=doc.get("enable_adaptive_crossover", True),
            enable_adaptive_mutation=doc.get("enable_adaptive_mutation", True),
            enable_refine=doc.get("enable_refine", True),
        )


@dataclass
class SolveResult:
    best: Individual
    report: cost.CostReport
    history: list[float]
    wall_time: float
    config: SolverConfig
    seed: int
    instance_name: str = ""
    points: list[tuple[float, float]] | None = None

    def to_dict(self) -> dict:
        return {
            "instance": self.instance_name,
            "seed": self.seed,
            "objective": self.best.objective,
            "chromosome": self.best.chromosome.to_dict(),
            "report": self.report.to_dict(),
            "history": [float(h) for h in self.history],
            "wall_time_s": self.wall_time,
            "config": self.config.to_dict(),
            "points": [[float(x), float(y)] for x, y in (self.points or [])],
        }


@dataclass
class RunStats:
    seeds: list[int]
    objectives: np.ndarray
    wall_times: np.ndarray

    @property
    def mean(self) -> float:
        return float(self.objectives.mean())

    @property
    def min(self) -> float:
        return float(self.objectives.min())

    @property
    def max(self) -> float:
        return float(self.objectives.max())

    @property
    def std(self) -> float:
        return float(self.objectives.std())


def search_space_size(n: int, m: int) -> int:
    """Count of (visit order, positive split) assignments: n! * C(n-1, m-1)."""
    if not (isinstance(n, (int, np.integer)) and isinstance(m, (int, np.integer)) and n > m >= 1):
        raise InvalidDimensions(f"need n > m >= 1, got n={n}, m={m}")
    return math.factorial(int(n)) * math.comb(int(n) - 1, int(m) - 1)


def evaluate_population(chroms: list[Chromosome], instance: ProblemInstance) -> list[Individual]:
    """Vectorized evaluation of a same-shape chromosome batch."""
    d = instance.distance.entries
    orders = np.stack([c.order for c in chroms])
    counts = np.stack([c.counts for c in chroms])
    edges = d[orders[:, :-1], orders[:, 1:]]
    prefix = np.concatenate([np.zeros((len(chroms), 1)), np.cumsum(edges, axis=1)], axis=1)
    ends = np.cumsum(counts, axis=1)
    starts = ends - counts
    inner = np.take_along_axis(prefix, ends - 1, axis=1) - np.take_along_axis(prefix, starts, axis=1)
    depot_leg = d[0][orders]
    machine_costs = (inner
                     + np.take_along_axis(depot_leg, starts, axis=1)
                     + np.take_along_axis(depot_leg, ends - 1, axis=1))
    totals = machine_costs.sum(axis=1)
    return [
        Individual(c, machine_costs[i], float(totals[i]), 1.0 / float(totals[i]))
        for i, c in enumerate(chroms)
    ]


def initialize_population(instance: ProblemInstance, config: SolverConfig,
                          rng: np.random.Generator) -> list[Individual]:
    """Build and evaluate the starting population.

    With SA seeding each order segment is an annealed random giant tour;
    otherwise orders are uniform random permutations. Counts are always
    uniform random compositions.
    """
    n, m = instance.task_count, config.machine_count
    if not n > m:
        raise InvalidDimensions(f"need more tasks than machines, got n={n}, m={m}")
    chroms = []
    for _ in range(config.ga.population_size):
        order = rng.permutation(n) + 1
        if config.enable_sa_seed:
            order = anneal_tour(order, instance.distance, config.sa, rng)
        chroms.append(Chromosome(order, random_counts(n, m, rng)))
    return evaluate_population(chroms, instance)


def _tournament_pool(population: list[Individual], size: int, k: int,
                     rng: np.random.Generator) -> list[Individual]:
    """Vectorized batch of with-replacement tournaments (first drawn wins ties)."""
    draws = rng.integers(0, len(population), size=(size, k))
    fits = np.array([ind.fitness for ind in population])
    winners = draws[np.arange(size), np.argmax(fits[draws], axis=1)]
    return [population[int(w)] for w in winners]


def _replace_worst_with_elites(population: list[Individual], elites: list[Individual]) -> None:
    """Copy the elite archive over the worst individuals, in place."""
    if not elites:
        return
    objectives = np.array([ind.objective for ind in population])
    worst = np.argsort(objectives)[-len(elites):]
    for slot, elite in zip(worst, elites):
        population[int(slot)] = elite


def _merge_elites(elites: list[Individual], population: list[Individual], keep: int) -> list[Individual]:
    """Best `keep` individuals seen so far, ties resolved by earlier arrival."""
    if keep == 0:
        return []
    merged = sorted(elites + population, key=lambda ind: ind.objective)
    out: list[Individual] = []
    for ind in merged:
        if all(ind is not kept for kept in out):
            out.append(ind)
        if len(out) == keep:
            break
    return out


def evolve(instance: ProblemInstance, config: SolverConfig) -> SolveResult:
    """Run the full pipeline and return the best individual with its history.

    Per generation: tournament selection, (adaptive) crossover, (adaptive)
    mutation with re-evaluation after each, elite re-insertion over the worst,
    then local refinement of the generation best. History records the
    best-so-far objective per generation and is non-increasing.
    """
    started = time.perf_counter()
    n, m = instance.task_count, config.machine_count
    if not n > m:
        raise InvalidDimensions(f"need more tasks than machines, got n={n}, m={m}")
    ga = config.ga
    population = initialize_population(instance, config, stream(config.seed, 0))
    elites = _merge_elites([], population, max(ga.elitism_count, 1))
    best = elites[0]
    history: list[float] = []

    for gen in range(1, ga.max_generations + 1):
        rng = stream(config.seed, gen)
        step = adaptive_step(ga.population_size, gen, ga.max_generations)
        context = GenerationContext(
            gen=gen,
            step_scale=step,
            tolerance=adaptive_tolerance(gen, step, ga),
        )
        pool = _tournament_pool(population, ga.population_size, ga.tournament_size, rng)
        if config.enable_adaptive_crossover:
            chroms = adaptive_crossover(pool, context, ga, rng)
        else:
            chroms = plain_crossover(pool, ga, rng)
        population = evaluate_population(chroms, instance)
        if config.enable_adaptive_mutation:
            chroms = adaptive_mutate(population, context, ga, rng)
        else:
            chroms = plain_mutate(population, ga, rng)
        population = evaluate_population(chroms, instance)

        if ga.elitism_count > 0:
            _replace_worst_with_elites(population, elites[:ga.elitism_count])

        gen_best_idx = int(np.argmin([ind.objective for ind in population]))
        gen_best = population[gen_best_idx]
        if config.enable_refine:
            trials = config.refine.two_opt_trials or n
            refined = refine_best(gen_best, instance, rng, trials)
            if refined.objective < gen_best.objective:
                population[gen_best_idx] = refined
                gen_best = refined

        if gen_best.objective < best.objective:
            best = gen_best
        elites = _merge_elites(elites, population, max(ga.elitism_count, 1))
        history.append(best.objective)

    report = cost.evaluate(best.chromosome, instance)
    return SolveResult(
        best=best,
        report=report,
        history=history,
        wall_time=time.perf_counter() - started,
        config=config,
        seed=config.seed,
        instance_name=instance.name,
        points=[(p.x, p.y) for p in instance.points],
    )


def _batch_worker(args) -> tuple[float, float]:
    instance, config = args
    result = evolve(instance, config)
    return result.best.objective, result.wall_time


def run_batch(instance: ProblemInstance, config: SolverConfig, seeds,
              jobs: int = 1) -> RunStats:
    """Independent evolve runs, one per seed; identical results at any jobs."""
    seeds = [int(s) for s in seeds]
    if not seeds:
        raise ValueError("need at least one seed")
    configs = [replace(config, seed=s) for s in seeds]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(_batch_worker, [(instance, c) for c in configs]))
    else:
        outcomes = [_batch_worker((instance, c)) for c in configs]
    objectives = np.array([obj for obj, _ in outcomes])
    wall_times = np.array([wt for _, wt in outcomes])
    return RunStats(seeds=seeds, objectives=objectives, wall_times=wall_times)
