import numpy as np
import pytest

from fieldroute import genetic
from fieldroute.encoding import Chromosome, random_chromosome, validate_chromosome
from fieldroute.errors import (
    DimensionMismatch,
    EmptyPopulation,
    PopulationTooSmall,
    ZeroMeanCost,
)
from fieldroute.genetic import (
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
    plain_crossover,
    plain_mutate,
    pmx_crossover,
    sigmoid,
    similarity_stack,
    tournament_select,
)


class FixedRng:
    """Stands in for a Generator, feeding scripted integer draws."""

    def __init__(self, values, randoms=()):
        self.values = list(values)
        self.randoms = list(randoms)

    def integers(self, *args, **kwargs):
        return self.values.pop(0)

    def random(self, *args, **kwargs):
        return self.randoms.pop(0) if self.randoms else 0.0


def make_individual(ch: Chromosome, costs) -> Individual:
    costs = np.asarray(costs, dtype=np.float64)
    total = float(costs.sum())
    return Individual(chromosome=ch, machine_costs=costs, objective=total,
                      fitness=1.0 / total)


def random_pool(rng, size, n=10, m=3):
    pool = []
    for _ in range(size):
        ch = random_chromosome(n, m, rng)
        pool.append(make_individual(ch, rng.uniform(10.0, 60.0, size=m)))
    return pool


def test_params_validation():
    with pytest.raises(ValueError):
        GAParams(p_c_min=0.9, p_c_mid=0.5)
    with pytest.raises(ValueError):
        GAParams(tol_min=0.5, tol_max=0.2)
    with pytest.raises(ValueError):
        GAParams(w1=0.7, w2=0.7)
    with pytest.raises(ValueError):
        GAParams(p_m_initial=1.5)
    with pytest.raises(ValueError):
        GAParams(population_size=0)
    with pytest.raises(ValueError):
        GAParams(elitism_count=-1)


def test_tournament_prefers_strictly_fitter():
    rng = np.random.default_rng(40)
    pool = random_pool(rng, 12)
    for trial in range(100):
        seed = 1000 + trial
        draws = np.random.default_rng(seed).integers(0, 12, size=3)
        winner = tournament_select(pool, 3, np.random.default_rng(seed))
        best_by_hand = pool[draws[0]]
        for idx in draws[1:]:
            if pool[idx].fitness > best_by_hand.fitness:
                best_by_hand = pool[idx]
        assert winner is best_by_hand


def test_tournament_tie_keeps_first_drawn():
    ch = Chromosome(np.array([1, 2, 3]), np.array([2, 1]))
    pool = [make_individual(ch.copy(), [5.0, 5.0]) for _ in range(4)]
    seed = 7
    draws = np.random.default_rng(seed).integers(0, 4, size=3)
    winner = tournament_select(pool, 3, np.random.default_rng(seed))
    assert winner is pool[draws[0]]


def test_tournament_guards():
    rng = np.random.default_rng(41)
    with pytest.raises(EmptyPopulation):
        tournament_select([], 3, rng)
    with pytest.raises(ValueError):
        tournament_select(random_pool(rng, 3), 0, rng)


def test_sigmoid_shape():
    assert sigmoid(0.0) == 0.5
    assert sigmoid(50.0) > 0.999999
    assert sigmoid(-50.0) < 1e-6
    assert sigmoid(-1000.0) == pytest.approx(0.0)  # no overflow
    for x in (-3.0, -0.5, 0.2, 4.0):
        assert sigmoid(x) + sigmoid(-x) == pytest.approx(1.0, abs=1e-12)


def test_adaptive_step_spot_value_and_shape():
    assert adaptive_step(200, 1000, 2000) == pytest.approx(0.250250, abs=1e-6)
    curve = np.array([adaptive_step(200, g, 2000) for g in range(1, 2001)])
    d = np.diff(curve)
    peak = int(np.argmax(curve))
    assert 0 < peak < 1999  # rises, then falls
    assert np.all(d[:peak] > 0)
    assert np.all(d[peak:] < 0)
    assert curve.min() > 0 and curve.max() < 1


def test_adaptive_tolerance_spot_value_and_range():
    params = GAParams()
    assert adaptive_tolerance(1000, adaptive_step(200, 1000, 2000), params) \
        == pytest.approx(0.143844, abs=1e-6)
    for gen in range(1, 2001, 7):
        sp = adaptive_tolerance(gen, adaptive_step(200, gen, 2000), params)
        assert params.tol_min <= sp < params.tol_max


def test_overshoot():
    assert overshoot([12.0, 10.0, 8.0]) == pytest.approx(0.2)
    assert overshoot([7.0, 7.0, 7.0]) == 0.0
    with pytest.raises(ZeroMeanCost):
        overshoot([0.0, 0.0])
    with pytest.raises(ZeroMeanCost):
        overshoot([])


def test_parent_crossover_prob_mapping():
    params = GAParams()
    # balanced parent falls back to the middle rate
    assert parent_crossover_prob([5.0, 5.0, 5.0], params) == params.p_c_mid
    # one heavy route: (max-mean)/(max-min) = 2/3 of the way up the range
    p = parent_crossover_prob([9.0, 3.0, 3.0], params)
    assert p == pytest.approx(0.4 + 0.45 * (2.0 / 3.0))
    # results always clamp into [p_c_min, p_c_max]
    rng = np.random.default_rng(42)
    for _ in range(300):
        costs = rng.uniform(1.0, 100.0, size=int(rng.integers(2, 6)))
        assert params.p_c_min <= parent_crossover_prob(costs, params) <= params.p_c_max


def test_parent_crossover_prob_scale_invariant():
    params = GAParams()
    rng = np.random.default_rng(43)
    for _ in range(100):
        costs = rng.uniform(1.0, 50.0, size=3)
        scaled = costs * 3.7
        assert parent_crossover_prob(scaled, params) == pytest.approx(
            parent_crossover_prob(costs, params), abs=1e-12)


def test_combined_crossover_prob_blend():
    assert combined_crossover_prob(0.4, 0.8, 0.5, 0.5) == pytest.approx(0.6)
    assert combined_crossover_prob(0.4, 0.8, 1.0, 0.0) == 0.4


def test_pool_stats_match_scalar_ops():
    rng = np.random.default_rng(44)
    params = GAParams()
    pool = random_pool(rng, 30)
    pool.append(make_individual(pool[0].chromosome.copy(), [6.0, 6.0, 6.0]))
    probs, overshoots = genetic._pool_stats(pool, params)
    for i, ind in enumerate(pool):
        assert probs[i] == pytest.approx(parent_crossover_prob(ind.machine_costs, params), abs=1e-12)
        assert overshoots[i] == pytest.approx(overshoot(ind.machine_costs), abs=1e-12)


def test_cut_pair_distinct_sorted_covers_all():
    rng = np.random.default_rng(45)
    seen = set()
    for _ in range(2000):
        i, j = genetic._cut_pair(4, rng)
        assert 0 <= i < j <= 3
        seen.add((i, j))
    assert seen == {(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)}


def test_ox_fill_worked_example():
    dad = np.array([1, 2, 3, 4, 5, 6, 7, 8])
    mom = np.array([2, 4, 6, 8, 7, 5, 3, 1])
    child = genetic._ox_fill(dad, mom, 1, 3)
    assert child.tolist() == [1, 4, 6, 8, 2, 3, 5, 7]


def test_pmx_fill_worked_example():
    from fieldroute._kernels import pmx_fill
    dad = np.array([1, 2, 3, 4, 5, 6, 7, 8])
    mom = np.array([2, 4, 6, 8, 7, 5, 3, 1])
    child, ok = pmx_fill(dad, mom, 2, 5)
    assert ok
    assert child.tolist() == [1, 2, 6, 8, 7, 5, 3, 4]


def test_counts_child_reverses_both_pieces():
    child = genetic._counts_child(np.array([3, 1, 4]), FixedRng([1]))
    assert child.tolist() == [3, 4, 1]
    child = genetic._counts_child(np.array([2, 5, 1, 3]), FixedRng([2]))
    assert child.tolist() == [5, 2, 3, 1]
    # single machine: nothing to split
    assert genetic._counts_child(np.array([6]), FixedRng([])).tolist() == [6]


def test_ox_crossover_public_path_matches_helpers():
    rng = np.random.default_rng(46)
    dad = random_chromosome(8, 3, rng)
    mom = random_chromosome(8, 3, rng)
    for seed in range(20):
        child = ox_crossover(dad, mom, np.random.default_rng(seed))
        twin = np.random.default_rng(seed)
        cp1, cp2 = genetic._cut_pair(8, twin)
        want_order = genetic._ox_fill(dad.order, mom.order, cp1, cp2)
        want_counts = genetic._counts_child(dad.counts, twin)
        assert child.order.tolist() == want_order.tolist()
        assert child.counts.tolist() == want_counts.tolist()


def test_crossover_children_are_valid():
    rng = np.random.default_rng(47)
    for _ in range(300):
        n = int(rng.integers(4, 15))
        m = int(rng.integers(1, n))
        dad = random_chromosome(n, m, rng)
        mom = random_chromosome(n, m, rng)
        for op in (ox_crossover, pmx_crossover):
            child = op(dad, mom, rng)
            assert validate_chromosome(child, n, m) == []
            # counts multiset is inherited from the lead parent
            assert sorted(child.counts.tolist()) == sorted(dad.counts.tolist())


def test_crossover_dimension_mismatch():
    rng = np.random.default_rng(48)
    dad = random_chromosome(8, 3, rng)
    mom = random_chromosome(9, 3, rng)
    with pytest.raises(DimensionMismatch):
        ox_crossover(dad, mom, rng)
    with pytest.raises(DimensionMismatch):
        pmx_crossover(dad, random_chromosome(8, 2, rng), rng)


def test_exchange_mutation_scripted():
    ch = Chromosome(np.array([1, 2, 3, 4, 5]), np.array([1, 3, 1]))
    # order pair (1,4) via x=1,z=3->4; counts pair (0,2) via x=0,z=1->2
    out = exchange_mutation(ch, FixedRng([1, 3, 0, 1]))
    assert out.order.tolist() == [1, 5, 3, 4, 2]
    assert out.counts.tolist() == [1, 3, 1]  # palindrome reversal
    out = exchange_mutation(Chromosome(np.array([1, 2, 3, 4, 5]), np.array([2, 2, 1])),
                            FixedRng([0, 1, 0, 1]))
    assert out.counts.tolist() == [1, 2, 2]


def test_relocate_worked_examples():
    assert genetic._relocate(np.array([1, 2, 3, 4, 5]), 1, 3).tolist() == [1, 4, 2, 3, 5]
    assert genetic._relocate(np.array([1, 3, 4]), 0, 2).tolist() == [4, 1, 3]
    assert genetic._relocate(np.array([1, 2, 3]), 2, 2).tolist() == [1, 2, 3]
    # moving forward: gene lands before the original p1 slot
    assert genetic._relocate(np.array([1, 2, 3, 4, 5]), 3, 0).tolist() == [2, 3, 1, 4, 5]


def test_insert_mutation_scripted():
    ch = Chromosome(np.array([1, 2, 3, 4, 5]), np.array([1, 3, 1]))
    out = insert_mutation(ch, FixedRng([1, 3, 0, 2]))
    assert out.order.tolist() == [1, 4, 2, 3, 5]
    assert out.counts.tolist() == [1, 1, 3]


def test_mutations_preserve_validity():
    rng = np.random.default_rng(49)
    for _ in range(400):
        n = int(rng.integers(2, 14))
        m = int(rng.integers(1, n))
        ch = random_chromosome(n, m, rng)
        for op in (exchange_mutation, insert_mutation):
            out = op(ch, rng)
            assert validate_chromosome(out, n, m) == []
            assert sorted(out.counts.tolist()) == sorted(ch.counts.tolist())
    with pytest.raises(ValueError):
        exchange_mutation(Chromosome(np.array([1]), np.array([1])), rng)


def test_pairwise_similarity():
    a = Chromosome(np.array([1, 2, 3]), np.array([2, 1]))
    b = Chromosome(np.array([1, 3, 2]), np.array([2, 1]))
    assert pairwise_similarity(a, b) == pytest.approx(0.6)
    assert pairwise_similarity(a, a) == 1.0
    with pytest.raises(DimensionMismatch):
        pairwise_similarity(a, Chromosome(np.array([1, 2, 3, 4]), np.array([2, 2])))


def test_diversity_profile_matches_pairwise_loop():
    rng = np.random.default_rng(50)
    pool = random_pool(rng, 14, n=9, m=2)
    profile = genetic._diversity_profile(pool)
    stack = similarity_stack(pool)
    assert stack.shape == (14, 14)
    for i in range(14):
        assert profile[i] == pytest.approx(individual_diversity(pool, i), abs=1e-12)
        loop = np.mean([pairwise_similarity(pool[i].chromosome, pool[j].chromosome)
                        for j in range(14) if j != i])
        assert profile[i] == pytest.approx(loop, abs=1e-12)
        assert stack[i, i] == 1.0
    with pytest.raises(PopulationTooSmall):
        individual_diversity(pool[:1], 0)


def test_adaptive_mutation_rate():
    assert adaptive_mutation_rate(0.5, 0.4, 0.1) == pytest.approx(0.25)
    assert adaptive_mutation_rate(0.0, 0.9, 0.1) == pytest.approx(0.1)
    assert adaptive_mutation_rate(1.0, 0.9, 0.1) == pytest.approx(0.9)
    # more population agreement means more mutation pressure on the fit
    low = adaptive_mutation_rate(0.8, 0.2, 0.1)
    high = adaptive_mutation_rate(0.8, 0.9, 0.1)
    assert high > low


def test_normalized_fitness():
    rng = np.random.default_rng(51)
    pool = random_pool(rng, 8)
    norm = genetic._normalized_fitness(pool)
    assert norm.min() == 0.0 and norm.max() == 1.0
    flat = [make_individual(pool[0].chromosome.copy(), [4.0, 4.0, 4.0]) for _ in range(5)]
    assert np.all(genetic._normalized_fitness(flat) == 0.5)


def test_adaptive_crossover_output_contract():
    rng = np.random.default_rng(52)
    params = GAParams()
    context = GenerationContext(gen=10, step_scale=0.1, tolerance=0.2)
    for size in (2, 7, 20):
        pool = random_pool(np.random.default_rng(size), size)
        out = adaptive_crossover(pool, context, params, np.random.default_rng(99))
        again = adaptive_crossover(pool, context, params, np.random.default_rng(99))
        assert len(out) == size
        assert all(validate_chromosome(ch, 10, 3) == [] for ch in out)
        assert all(a == b for a, b in zip(out, again))
    single = random_pool(rng, 1)
    out = adaptive_crossover(single, context, params, rng)
    assert len(out) == 1 and out[0] == single[0].chromosome


def test_adaptive_crossover_tolerance_switches_operator():
    # force every pair to cross; a huge tolerance keeps every child on OX,
    # a negative-leaning one (impossible imbalance) pushes all to PMX
    params = GAParams(p_c_min=1.0, p_c_mid=1.0, p_c_max=1.0)
    pool = random_pool(np.random.default_rng(53), 16)
    ox_children = adaptive_crossover(
        pool, GenerationContext(1, 0.1, tolerance=1e9), params, np.random.default_rng(4))
    pmx_children = adaptive_crossover(
        pool, GenerationContext(1, 0.1, tolerance=-1.0), params, np.random.default_rng(4))
    assert any(a != b for a, b in zip(ox_children, pmx_children))


def test_adaptive_crossover_pass_through_when_rate_floor():
    params = GAParams(p_c_min=1e-9, p_c_mid=1e-9, p_c_max=1e-9)
    pool = random_pool(np.random.default_rng(54), 10)
    out = adaptive_crossover(pool, GenerationContext(1, 0.1, 0.2), params,
                             np.random.default_rng(5))
    want = sorted(str(ind.chromosome.to_dict()) for ind in pool)
    got = sorted(str(ch.to_dict()) for ch in out)
    assert got == want


def test_plain_crossover_contract():
    pool = random_pool(np.random.default_rng(55), 12)
    out = plain_crossover(pool, GAParams(), np.random.default_rng(6))
    assert len(out) == 12
    assert all(validate_chromosome(ch, 10, 3) == [] for ch in out)


def test_adaptive_mutate_fills_context_and_stays_valid():
    pool = random_pool(np.random.default_rng(56), 15)
    context = GenerationContext(gen=3, step_scale=0.1, tolerance=0.2)
    out = adaptive_mutate(pool, context, GAParams(), np.random.default_rng(7))
    assert len(out) == 15
    assert context.norm_fitness is not None and context.norm_fitness.shape == (15,)
    assert context.diversity is not None and context.diversity.shape == (15,)
    assert all(validate_chromosome(ch, 10, 3) == [] for ch in out)


def test_plain_mutate_rate_extremes():
    pool = random_pool(np.random.default_rng(57), 20)
    frozen = plain_mutate(pool, GAParams(p_m_initial=0.0), np.random.default_rng(8))
    assert all(ch == ind.chromosome for ch, ind in zip(frozen, pool))
    stirred = plain_mutate(pool, GAParams(p_m_initial=1.0), np.random.default_rng(8))
    assert any(ch != ind.chromosome for ch, ind in zip(stirred, pool))
    assert all(validate_chromosome(ch, 10, 3) == [] for ch in stirred)
