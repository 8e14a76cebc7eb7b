import random

import numpy as np
import pytest
from hypothesis import given, strategies as st

import oracles
from conftest import comm_table, graphs
from racg import builtin_group, embed as E, geometry as geo
from racg.coloring import chromatic_coloring
from racg.errors import LevelMismatchError
from racg.group import CommutationGraph, distance, multiply, reduce


@pytest.fixture(scope="module")
def hex_col(hexagon):
    return chromatic_coloring(hexagon)


def el(g, text):
    return reduce(text, g)


class TestTrees:
    def test_tree_distance(self):
        assert E.tree_distance((), ()) == 0
        assert E.tree_distance((), ("p", "q")) == 2
        assert E.tree_distance(("a", "b", "c"), ("a", "b", "d")) == 2
        assert E.tree_distance(("a",), ("b", "c")) == 3

    def test_product_distance(self):
        p = E.ProductPoint(((), ("x",)))
        assert E.product_distance(p, p) == 0
        assert E.product_distance(p, E.ProductPoint(((), ()))) == 1
        with pytest.raises(ValueError):
            E.product_distance(p, E.ProductPoint(((),)))


class TestMu:
    def test_examples(self, hexagon, hex_col):
        assert E.mu(hexagon.identity, hex_col).coordinates == ((), ())
        p = E.mu(el(hexagon, "s1 s2"), hex_col)
        assert [[str(r) for r in c] for c in p.coordinates] == [["s1"], ["s2"]]
        assert E.product_distance(E.mu(hexagon.identity, hex_col), p) == 2
        assert [str(r) for r in E.phi_c(el(hexagon, "s1 s2 s3"), hex_col, 2)] == ["s2"]
        assert [str(r) for r in E.phi_c(el(hexagon, "s1 s3"), hex_col, 1)] == ["s1", "s1 s3 s1"]

    def test_other_reduced_word(self, hexagon, hex_col):
        a = el(hexagon, "s1 s2 s3")
        for c in (1, 2):
            assert E.phi_c(a, hex_col, c, word=hexagon.encode("s2 s1 s3")) == E.phi_c(a, hex_col, c)

    @pytest.mark.parametrize("name", ["hexagon", "pentagon", "cube-3", "free-2"])
    def test_isometry_small_ball(self, name):
        g = builtin_group(name)
        col = chromatic_coloring(g)
        B = geo.ball(g, 3).elements
        pts = [E.mu(a, col) for a in B]
        for a, p in zip(B, pts):
            for b, q in zip(B, pts):
                assert E.product_distance(p, q) == distance(a, b)

    def test_levels_along_coordinates(self, pentagon):
        col = chromatic_coloring(pentagon)
        for a in geo.ball(pentagon, 5).elements:
            for coord in E.mu(a, col).coordinates:
                assert [r.level for r in coord] == list(range(1, len(coord) + 1))


class TestMatrices:
    def test_one_generator(self):
        g = builtin_group("free-1")
        assert E.reflection_matrix("s1", g).tolist() == [[-1]]

    def test_columns(self):
        g = CommutationGraph.from_edges(["s", "t", "u"], [("s", "u")])
        h = E.reflection_matrix("s", g)
        assert h[:, 0].tolist() == [-1, 0, 0]      # v_s -> -v_s
        assert h[:, 1].tolist() == [2, 1, 0]       # v_t -> v_t + 2 v_s
        assert h[:, 2].tolist() == [0, 0, 1]       # commuting: v_u fixed

    @given(graphs())
    def test_involutions_and_commuting_pairs(self, g):
        eye = E.identity_matrix(g.rank)
        for s in g.generators:
            h = E.reflection_matrix(s, g)
            assert (h @ h == eye).all()
        for s, t in g.edges():
            hs, ht = E.reflection_matrix(s, g), E.reflection_matrix(t, g)
            assert (hs @ ht == ht @ hs).all()

    def test_literal_minus_two_rule_is_not_a_representation(self):
        # sending v_t to v_t - 2 v_s for commuting s, t breaks st = ts
        k = 2

        def literal(s):
            m = np.eye(k, dtype=int)
            m[s, s] = -1
            m[s, 1 - s] = -2
            return m

        hs, ht = literal(0), literal(1)
        assert not (hs @ ht == ht @ hs).all()
        assert (hs @ ht @ np.array([1, 0])).tolist() == [3, -2]
        assert (ht @ hs @ np.array([1, 0])).tolist() == [-1, 2]

    def test_element_matrix_matches_independent_product(self, hexagon):
        comm = comm_table(hexagon)
        for a in geo.ball(hexagon, 4).elements:
            assert tuple(map(tuple, E.element_matrix(a).tolist())) == oracles.tits_key(a.nf, comm)

    def test_homomorphism_and_bound(self, hexagon):
        rng = random.Random(5)
        B = geo.ball(hexagon, 6).elements
        for _ in range(200):
            a, b = rng.choice(B), rng.choice(B)
            assert (E.element_matrix(multiply(a, b)) == E.element_matrix(a) @ E.element_matrix(b)).all()
        for a in B:
            assert max(abs(int(x)) for x in E.element_matrix(a).flat) <= 3 ** len(a.nf)

    def test_exact_integers(self, hexagon):
        a = el(hexagon, " ".join(["s1 s3 s5"] * 20))
        m = E.element_matrix(a)
        assert max(abs(x) for x in m.flat) > 2**63
        assert (m @ E.element_matrix(a.__class__(hexagon, a.nf[::-1])) == E.identity_matrix(6)).all()

    def test_sigma(self, hexagon):
        assert E.modulus(1) == 82
        eye = E.identity_matrix(6)
        assert (E.sigma(hexagon.identity, 1) == eye).all()
        for s in hexagon.generators:
            assert not (E.sigma(hexagon.gen(s), 1) == eye).all()
        residues = E.sigma(el(hexagon, "s1 s3 s5 s1"), 3)
        assert all(0 <= int(x) < E.modulus(3) for x in residues.flat)


class TestFin:
    def test_params(self):
        p = E.SeparationParams.for_colours(2)
        assert (p.scale, p.floor) == (8, 8)
        assert [p.nu(i) for i in (1, 2, 3)] == [8, 16, 24]
        assert E.SeparationParams.for_colours(3).nu(1) == 12
        assert p.to_dict() == {"r_local": 3, "scale": 8, "floor": 8}
        with pytest.raises(ValueError):
            p.check(3)

    def test_labels(self, hexagon, hex_col):
        params = E.SeparationParams.for_colours(2)
        r1 = geo.make_reflection(el(hexagon, "s1"), hex_col)
        r3 = geo.make_reflection(el(hexagon, "s3"), hex_col)
        assert E.fin(r1, 1, hex_col, params) == E.fin(r1, 1, hex_col, params)
        assert E.fin(r1, 1, hex_col, params).generator != E.fin(r3, 1, hex_col, params).generator
        with pytest.raises(LevelMismatchError):
            E.fin(r1, 2, hex_col, params)

    def test_close_same_generator_walls_get_different_labels(self, hexagon, hex_col):
        params = E.SeparationParams.for_colours(2)
        r1 = geo.make_reflection(el(hexagon, "s1"), hex_col)
        r2 = geo.make_reflection(el(hexagon, "s4 s1 s4"), hex_col)
        assert r2.generator == "s1" and r1.level == r2.level == 1
        d = geo.mirror_distance(r1, r2, geo.ball(hexagon, 4))
        assert d < params.nu(1)
        assert E.fin(r1, 1, hex_col, params) != E.fin(r2, 1, hex_col, params)

    def test_psi(self, hexagon, hex_col):
        params = E.SeparationParams.for_colours(2)
        assert E.psi(hexagon.identity, hex_col, params).coordinates == ((), ())
        p = E.psi(el(hexagon, "s1 s2 s3"), hex_col, params)
        assert [[x.generator for x in c] for c in p.coordinates] == [["s1", "s3"], ["s2"]]
        assert len(p.coordinates[0][0].digest()) == 16
        rng = random.Random(2)
        B = geo.ball(hexagon, 4).elements
        for _ in range(300):
            a, b = rng.choice(B), rng.choice(B)
            d = E.product_distance(E.psi(a, hex_col, params), E.psi(b, hex_col, params))
            assert d <= distance(a, b) <= 16 * 2 * d
