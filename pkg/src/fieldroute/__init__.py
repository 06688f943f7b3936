"""fieldroute: multi-machine task allocation by a hybrid SA + adaptive GA.

The library solves multi-salesman routing (shared depot, every task visited
exactly once, minimum total path length) with a two-segment permutation
genome, simulated-annealing seeding, adaptive crossover/mutation control and
2-opt refinement, and prices the resulting routes for agricultural fleets
(distance, fuel, working time).
"""
from .anneal import AnnealParams, anneal_tour, metropolis_accept, perturb_tour
from .cost import (
    CostReport,
    evaluate,
    fitness,
    machine_fuel,
    machine_time,
    route_distance,
    total_distance,
    turn_count,
)
from .encoding import (
    Chromosome,
    RouteSet,
    decode_routes,
    random_chromosome,
    validate_chromosome,
)
from .errors import FieldRouteError
from .genetic import (
    GAParams,
    GenerationContext,
    Individual,
    adaptive_crossover,
    adaptive_mutate,
    adaptive_mutation_rate,
    adaptive_step,
    adaptive_tolerance,
    combined_crossover_prob,
    exchange_mutation,
    individual_diversity,
    insert_mutation,
    overshoot,
    ox_crossover,
    pairwise_similarity,
    parent_crossover_prob,
    pmx_crossover,
    sigmoid,
    tournament_select,
)
from .instance import (
    DistanceMatrix,
    FieldTask,
    FleetScenario,
    MachineSpec,
    Point2D,
    ProblemInstance,
    build_distance_matrix,
    load_scenario,
    parse_tsplib,
    scenario_to_instance,
    scenario_to_json,
)
from .refine import modified_circle, refine_best, two_opt_improve, two_opt_move
from .solver import (
    RefineParams,
    RunStats,
    SolveResult,
    SolverConfig,
    evolve,
    initialize_population,
    run_batch,
    search_space_size,
)

__version__ = "0.1.0"

__all__ = [
    "AnnealParams", "anneal_tour", "metropolis_accept", "perturb_tour",
    "CostReport", "evaluate", "fitness", "machine_fuel", "machine_time",
    "route_distance", "total_distance", "turn_count",
    "Chromosome", "RouteSet", "decode_routes", "random_chromosome", "validate_chromosome",
    "FieldRouteError",
    "GAParams", "GenerationContext", "Individual",
    "adaptive_crossover", "adaptive_mutate", "adaptive_mutation_rate",
    "adaptive_step", "adaptive_tolerance", "combined_crossover_prob",
    "exchange_mutation", "individual_diversity", "insert_mutation", "overshoot",
    "ox_crossover", "pairwise_similarity", "parent_crossover_prob",
    "pmx_crossover", "sigmoid", "tournament_select",
    "DistanceMatrix", "FieldTask", "FleetScenario", "MachineSpec", "Point2D",
    "ProblemInstance", "build_distance_matrix", "load_scenario", "parse_tsplib",
    "scenario_to_instance", "scenario_to_json",
    "modified_circle", "refine_best", "two_opt_improve", "two_opt_move",
    "RefineParams", "RunStats", "SolveResult", "SolverConfig",
    "evolve", "initialize_population", "run_batch", "search_space_size",
]
