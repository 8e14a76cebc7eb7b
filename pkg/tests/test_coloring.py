import itertools
import random

import pytest
from hypothesis import given

import oracles
from conftest import graphs
from racg import builtin_group
from racg.coloring import (
    Coloring,
    chromatic_coloring,
    coloring_for,
    provide_coloring,
    validate_coloring,
)
from racg.errors import CapExceededError, ColoringError
from racg.group import CommutationGraph


@pytest.mark.parametrize("name,n", [("hexagon", 2), ("pentagon", 3), ("free-1", 1), ("free-4", 1),
                                    ("cube-1", 1), ("cube-3", 3), ("cube-6", 6)])
def test_builtin_chromatic_numbers(name, n):
    g = builtin_group(name)
    col = chromatic_coloring(g)
    assert col.n == n
    assert validate_coloring(g, col)


def test_hexagon_is_lexicographically_least(hexagon):
    col = chromatic_coloring(hexagon)
    assert col.by_index(hexagon) == (1, 2, 1, 2, 1, 2)
    assert col.colour_classes(hexagon) == {1: ["s1", "s3", "s5"], 2: ["s2", "s4", "s6"]}


def test_empty_group():
    assert chromatic_coloring(CommutationGraph((), frozenset())).n == 0


def _edge_indices(g):
    return [(g.index(s), g.index(t)) for s, t in g.edges()]


@given(graphs(max_gens=8))
def test_optimal_against_exhaustive_search(g):
    col = chromatic_coloring(g)
    assert validate_coloring(g, col)
    assert col.n == oracles.chromatic_number(g.rank, _edge_indices(g))


def test_lexicographically_least_among_minimum(hexagon):
    rng = random.Random(3)
    for _ in range(30):
        k = rng.randint(1, 7)
        gens = [f"g{i}" for i in range(k)]
        edges = [(gens[i], gens[j]) for i in range(k) for j in range(i) if rng.random() < 0.5]
        g = CommutationGraph.from_edges(gens, edges)
        col = chromatic_coloring(g)
        best = min(
            a for a in itertools.product(range(1, col.n + 1), repeat=k)
            if set(a) == set(range(1, col.n + 1)) and validate_coloring(g, Coloring(dict(zip(gens, a)), col.n))
        )
        assert col.by_index(g) == best


def test_cap():
    with pytest.raises(CapExceededError):
        chromatic_coloring(builtin_group("free-5"), cap=4)


def test_supplied_colouring(pentagon):
    good = {"s1": 1, "s2": 2, "s3": 1, "s4": 2, "s5": 3}
    assert provide_coloring(pentagon, good).n == 3
    assert coloring_for(pentagon, good).assignment == good
    assert coloring_for(pentagon, None).n == 3


@pytest.mark.parametrize("bad", [
    {"s1": 1, "s2": 1, "s3": 2, "s4": 1, "s5": 2},   # s1 s2 commute
    {"s1": 1, "s2": 2, "s3": 1, "s4": 2},            # s5 missing
    {"s1": 1, "s2": 2, "s3": 1, "s4": 2, "s5": 4},   # colour 3 unused
])
def test_supplied_colouring_rejected(pentagon, bad):
    with pytest.raises(ColoringError):
        provide_coloring(pentagon, bad)


def test_validate_examples(hexagon):
    parity = {s: 1 + i % 2 for i, s in enumerate(hexagon.generators)}
    assert validate_coloring(hexagon, Coloring(parity, 2))
    assert not validate_coloring(hexagon, Coloring({s: 1 for s in hexagon.generators}, 1))
    k5 = builtin_group("cube-5")
    assert validate_coloring(k5, Coloring({s: i + 1 for i, s in enumerate(k5.generators)}, 5))
