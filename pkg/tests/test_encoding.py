import numpy as np
import pytest

from fieldroute.encoding import (
    Chromosome,
    decode_routes,
    random_chromosome,
    random_counts,
    validate_chromosome,
)
from fieldroute.errors import InvalidDimensions


def test_random_chromosome_is_always_valid():
    rng = np.random.default_rng(10)
    for _ in range(500):
        n = int(rng.integers(2, 40))
        m = int(rng.integers(1, n))
        ch = random_chromosome(n, m, rng)
        assert validate_chromosome(ch, n, m) == []


def test_random_chromosome_dimension_guard():
    rng = np.random.default_rng(11)
    with pytest.raises(InvalidDimensions):
        random_chromosome(3, 3, rng)
    with pytest.raises(InvalidDimensions):
        random_chromosome(5, 0, rng)


def test_random_counts_covers_all_compositions():
    # n=8, m=3 has C(7,2)=21 compositions; a uniform draw should hit each
    rng = np.random.default_rng(12)
    seen = set()
    totals = np.zeros(3)
    draws = 20000
    for _ in range(draws):
        c = random_counts(8, 3, rng)
        assert c.sum() == 8 and c.min() >= 1
        seen.add(tuple(c.tolist()))
        totals += c
    assert len(seen) == 21
    assert totals[0] / draws == pytest.approx(8 / 3, rel=0.02)


def test_decode_routes_slices_by_counts():
    ch = Chromosome(np.array([4, 1, 5, 2, 3]), np.array([2, 1, 2]))
    routes = decode_routes(ch)
    assert len(routes) == 3
    assert routes[0].tolist() == [4, 1]
    assert routes[1].tolist() == [5]
    assert routes[2].tolist() == [2, 3]
    assert [r.tolist() for r in routes] == [[4, 1], [5], [2, 3]]


def test_validate_chromosome_reports_problems():
    ch = Chromosome(np.array([1, 2, 2, 4]), np.array([2, 2]))
    messages = " ".join(validate_chromosome(ch, 4, 2))
    assert "duplicate gene 2" in messages

    ch = Chromosome(np.array([1, 2, 3, 4]), np.array([4, 0]))
    messages = " ".join(validate_chromosome(ch, 4, 2))
    assert "count" in messages

    ch = Chromosome(np.array([1, 2, 3]), np.array([2, 1]))
    assert validate_chromosome(ch, 4, 2) != []

    ch = Chromosome(np.array([0, 1, 2, 3]), np.array([2, 2]))
    assert validate_chromosome(ch, 4, 2) != []


def test_copy_is_independent():
    rng = np.random.default_rng(13)
    ch = random_chromosome(9, 2, rng)
    dup = ch.copy()
    assert dup == ch
    dup.order[0], dup.order[1] = dup.order[1], dup.order[0]
    dup.counts[0] += 1
    assert not (dup == ch)
    assert validate_chromosome(ch, 9, 2) == []


def test_dict_roundtrip():
    rng = np.random.default_rng(14)
    ch = random_chromosome(7, 3, rng)
    doc = ch.to_dict()
    again = Chromosome.from_dict(doc)
    assert again == ch
    assert doc["order"] == ch.order.tolist()
    assert doc["counts"] == ch.counts.tolist()
