import os
import random
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import graphs
from racg import builtin_group, geometry as geo
from racg import kernels
from racg.group import CommutationGraph

needs_compiled = pytest.mark.skipif(not kernels.compiled_available(), reason="extension not built")


def twins(g):
    return kernels.make_kernel(g.masks, "python"), kernels.make_kernel(g.masks, "cython")


@needs_compiled
@given(graphs(), st.integers(0, 2**32))
def test_word_operations_agree(g, seed):
    py, cy = twins(g)
    rng = random.Random(seed)
    k = g.rank
    for _ in range(20):
        a, b, c = (bytes(rng.randrange(k) for _ in range(rng.randint(0, 12))) for _ in range(3))
        s = rng.randrange(k)
        assert py.reduce(a) == cy.reduce(a)
        assert py.normal_form(a) == cy.normal_form(a)
        assert py.lex_normalize(py.reduce(a)) == cy.lex_normalize(cy.reduce(a))
        assert py.append(py.reduce(a), s) == cy.append(cy.reduce(a), s)
        assert py.length(a) == cy.length(a)
        assert py.distance(a, b) == cy.distance(a, b)
        assert py.left_descent(s, py.reduce(a)) == cy.left_descent(s, cy.reduce(a))
        assert py.median(py.normal_form(a), py.normal_form(b), py.normal_form(c)) == \
            cy.median(cy.normal_form(a), cy.normal_form(b), cy.normal_form(c))


@needs_compiled
@pytest.mark.parametrize("name,radius", [("pentagon", 3), ("hexagon", 2), ("free-3", 2)])
def test_scans_agree(name, radius):
    g = builtin_group(name)
    py, cy = twins(g)
    B = geo.ball(g, radius)
    flat, offsets = B.packed
    n = len(B)
    assert (py.distance_rows(flat, offsets, 0, n) == cy.distance_rows(flat, offsets, 0, n)).all()
    assert py.median_scan(flat, offsets, 0, n) == cy.median_scan(flat, offsets, 0, n)
    assert py.rooted_median_scan(flat, offsets, 0, n) == cy.rooted_median_scan(flat, offsets, 0, n)
    members = np.arange(n, dtype=np.int64)
    for mode, mask in ((0, 0), (1, g.z0_mask(0))):
        assert py.convexity_scan(flat, offsets, members, 0, mode, mask) == \
            cy.convexity_scan(flat, offsets, members, 0, mode, mask)


def test_scans_report_failures():
    # a kernel whose median is wrong must be caught by the scan
    g = builtin_group("hexagon")
    py = kernels.make_kernel(g.masks, "python")
    py.median = lambda a, b, c: b""
    flat, offsets = geo.ball(g, 1).packed
    checked, bad = py.median_scan(flat, offsets, 0, 7)
    assert checked == 84 and bad


def test_distance_rows_shape():
    g = builtin_group("pentagon")
    B = geo.ball(g, 2)
    flat, offsets = B.packed
    rows = g.kernel.distance_rows(flat, offsets, 3, 7)
    assert rows.shape == (4, len(B))
    assert rows[0, 3] == 0


@needs_compiled
def test_product_distance_rows_agree():
    rng = random.Random(0)
    points = [[[rng.randrange(3) for _ in range(rng.randint(0, 4))] for _ in range(2)] for _ in range(40)]
    labels, offsets = kernels.pack_coordinates(points, 2)
    a = kernels.product_distance_rows(labels, offsets, 2, 0, 40, "python")
    b = kernels.product_distance_rows(labels, offsets, 2, 0, 40, "cython")
    assert (a == b).all()
    for i in range(40):
        for j in range(40):
            expect = 0
            for u, v in zip(points[i], points[j]):
                lcp = 0
                while lcp < min(len(u), len(v)) and u[lcp] == v[lcp]:
                    lcp += 1
                expect += len(u) + len(v) - 2 * lcp
            assert a[i, j] == expect


def test_pack_words():
    flat, offsets = kernels.pack_words([b"", b"\x01\x02", b"\x03"])
    assert flat.tolist() == [1, 2, 3] and offsets.tolist() == [0, 0, 2, 3]


def test_many_generators_fall_back_to_python():
    gens = [f"x{i}" for i in range(70)]
    g = CommutationGraph.from_edges(gens, [("x0", "x69")])
    assert type(g.kernel).__module__.endswith("_pykernels")
    assert g.kernel.normal_form(bytes([69, 0, 69])) == bytes([0])


def test_environment_forces_python():
    env = dict(os.environ, RACG_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "import racg; print(racg.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


def test_unbuilt_backend_request(monkeypatch):
    monkeypatch.setattr(kernels, "_compiled", None)
    with pytest.raises(RuntimeError):
        kernels.backend_module(3, "cython")
    assert kernels.backend_module(3) is kernels._pykernels
