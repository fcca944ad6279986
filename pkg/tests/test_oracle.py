from __future__ import annotations

import random

import pytest

from platlab import curves, oracle, plat
from platlab.labyrinth import oracle_propagate


def random_curve(rng, n=None, length=None):
    n = n or rng.randint(4, 8)
    i = rng.randint(1, n - 2)
    j = rng.randint(i + 1, min(n - (i == 1), i + 3))
    c = oracle.around(n, i, j)
    for _ in range(rng.randint(0, 6) if length is None else length):
        c = oracle.oracle_twist(c, rng.randint(1, n - 1), rng.choice([-2, -1, 1, 2]))
    return c


def with_zigzags(rng, c, count):
    for _ in range(count):
        c = oracle.insert_zigzag(c, rng.choice(c.points))
    return c


def same_diagram(c, d):
    return c.line == d.line and c.upper == d.upper and c.lower == d.lower


# -- seed ----------------------------------------------------------------

def test_seed_b3():
    c = oracle.oracle_seed(3)
    c.check()
    assert c.component_count() == 1
    counts = oracle.line_intersections(c)
    assert counts[:4] == [0, 0, 0, 0]
    assert counts[curves.gamma(2).piece] == 1
    assert oracle.extract_coords(c) == curves.seed_curve(3).coords


def test_seed_rejects_small_b():
    with pytest.raises(ValueError):
        oracle.oracle_seed(2)


def test_around_rejects_peripheral():
    with pytest.raises(ValueError):
        oracle.around(6, 1, 6)


# -- reduction ------------------------------------------------------------

def test_reduced_curve_unchanged():
    c = oracle_propagate(plat.uniform_square(3, 2))
    assert oracle.is_reduced(c)
    assert same_diagram(oracle.reduce(c), c)


def test_single_zigzag_removed():
    c = oracle.oracle_seed(4)
    d = oracle.insert_zigzag(c, c.points[0])
    d.check()
    assert not oracle.is_reduced(d)
    assert d.crossing_count() == c.crossing_count() + 2
    r = oracle.reduce(d)
    assert r.crossing_count() == c.crossing_count()
    assert oracle.extract_coords(r) == oracle.extract_coords(c)


def test_reduce_idempotent_and_descending_500():
    rng = random.Random(31)
    for _ in range(500):
        c = random_curve(rng)
        d = with_zigzags(rng, c, rng.randint(0, 4))
        d.check()
        trace = []
        r = oracle.reduce(d, trace)
        r.check()
        steps = [d.crossing_count()] + trace
        assert all(x - y == 2 for x, y in zip(steps, steps[1:]))
        assert oracle.is_reduced(r)
        assert same_diagram(oracle.reduce(r), r)
        assert r.crossing_count() == c.crossing_count()


def test_reduce_confluent():
    """Different zigzag insertions on the same curve reduce to the same counts."""
    rng = random.Random(32)
    for _ in range(100):
        c = random_curve(rng)
        results = set()
        for _ in range(4):
            r = oracle.reduce(with_zigzags(rng, c, rng.randint(1, 5)))
            results.add((oracle.extract_coords(r), tuple(oracle.line_intersections(r)), r.component_count()))
        assert len(results) == 1


def test_random_twisted_b3_seeds_idempotent():
    rng = random.Random(33)
    for _ in range(50):
        spec = plat.PlatSpec(3, 4, tuple(
            tuple(rng.choice([-3, -2, 2, 3]) for _ in range(plat.row_width(3, r))) for r in range(1, 4)))
        c = oracle.oracle_seed(3)
        for r in range(1, 4):
            c = oracle.oracle_word(c, curves.row_word(spec, r))
        c.check()
        assert same_diagram(oracle.reduce(c), c)


def test_twist_then_inverse():
    rng = random.Random(34)
    for _ in range(100):
        c = random_curve(rng)
        k = rng.randint(1, c.n - 1)
        d = oracle.oracle_twist(oracle.oracle_twist(c, k, 1), k, -1)
        assert oracle.extract_coords(d) == oracle.extract_coords(c)


def test_budget_enforced(monkeypatch):
    monkeypatch.setenv("PLATLAB_ORACLE_BUDGET", "10")
    with pytest.raises(oracle.OracleBudgetError):
        oracle_propagate(plat.uniform_square(4, 3))


# -- dumps and census -------------------------------------------------------

def test_dump_lists_components():
    text = oracle.dumps(oracle_propagate(plat.uniform_square(3, 2)))
    lines = text.splitlines()
    assert lines[0] == "n=6"
    assert len(lines) == 2 and lines[1].startswith("component 1: ")


def test_census_seed():
    assert oracle.parallel_family_census(oracle.oracle_seed(3), 3, 1) == (1,)


@pytest.mark.parametrize("b", [3, 4])
def test_census_satisfies_first_inequality(b):
    spec = plat.uniform_square(b, 2)
    N = oracle.parallel_family_census(oracle_propagate(spec), b, spec.h)
    assert len(N) == spec.h
    assert N[0] > N[1]


def test_census_mismatch_is_structured():
    c = oracle.around(8, 2, 3)
    with pytest.raises(oracle.TemplateMismatch) as info:
        oracle.parallel_family_census(c, 4, 4)
    assert info.value.witness is not None


def test_empty_curve_one_region():
    report = oracle.region_census(oracle.empty(6), [], hole=(1, 2, 3))
    assert len(report.regions) == 1
