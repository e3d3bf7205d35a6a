import json
import random
from fractions import Fraction
from math import prod

import pytest
from hypothesis import given, settings, strategies as st

from friezecount import fareygraph as fg
from friezecount.exceptions import (
    InvalidModulus,
    ModuliNotCoprime,
    ModulusMismatch,
    NoTransporter,
    NotADivisor,
)
from friezecount.fareygraph import DirectedEdge, Mat2, Vertex
from friezecount.modring import prime_divisors

import oracles


def V(text, n):
    return Vertex.parse(text, n)


def expected_vertex_count(n):
    value = Fraction(n * n) * prod(1 - Fraction(1, p * p) for p in prime_divisors(n))
    assert value.denominator == 1
    return value.numerator


@pytest.mark.parametrize("n", range(2, 31))
def test_vertex_count_and_degrees(n):
    G = fg.build(n)
    assert len(G) == expected_vertex_count(n)
    assert all(len(s) == n for s in G.out_adjacency)
    assert G.in_degrees() == [n] * len(G)
    assert G.edge_count == n * len(G)


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6, 8])
def test_build_matches_bruteforce(n):
    G = fg.build(n)
    verts = oracles.vertices(n)
    assert [(v.a, v.b) for v in G.vertices] == verts
    edges = {(u, v) for u in verts for v in verts if oracles.edge(u, v, n)}
    assert {((e.source.a, e.source.b), (e.target.a, e.target.b)) for e in G.edges()} == edges


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_edge_count_is_sl2_order(n):
    assert fg.build(n).edge_count == oracles.sl2_size(n)


def test_build_examples():
    G2 = fg.build(2)
    assert sorted(map(str, G2.vertices)) == ["0/1", "1/0", "1/1"]
    assert G2.edge_count == 6
    assert len(fg.build(4)) == 12
    assert (len(fg.build(5)), fg.build(5).edge_count) == (24, 120)


def test_build_rejects_small_modulus():
    with pytest.raises(InvalidModulus):
        fg.FareyGraph(1)


def test_vertex_validation():
    with pytest.raises(InvalidModulus):
        Vertex(2, 2, 4)
    assert V("-1/0", 5) == Vertex(4, 0, 5)


@pytest.mark.parametrize("n", range(2, 9))
def test_is_edge_examples(n):
    assert fg.is_edge(V("1/0", n), V("0/1", n))
    assert not fg.is_edge(V("1/0", n), V("1/0", n))


def test_is_edge_mod2_and_mismatch():
    assert fg.is_edge(V("0/1", 2), V("1/1", 2))
    with pytest.raises(ModulusMismatch):
        fg.is_edge(V("1/0", 2), V("0/1", 3))


def test_apply_matrix_examples():
    v = V("3/2", 7)
    assert fg.apply_matrix(Mat2.identity(7), v) == v
    assert fg.apply_matrix(Mat2.of(0, -1, 1, 0, 5), V("1/0", 5)) == V("0/1", 5)
    assert fg.apply_matrix(Mat2.of(1, 1, 0, 1, 4), V("0/1", 4)) == V("1/1", 4)


def test_mat2_requires_det_one():
    with pytest.raises(InvalidModulus):
        Mat2.of(2, 0, 0, 1, 5)


def _random_sl2(n, rng):
    while True:
        a, b, c, d = (rng.randrange(n) for _ in range(4))
        if (a * d - b * c) % n == 1 % n:
            return Mat2(a, b, c, d, n)


@pytest.mark.parametrize("n", range(2, 13))
def test_apply_matrix_preserves_edges(n):
    rng = random.Random(n)
    G = fg.build(n)
    edges = list(G.edges())
    for _ in range(200):
        A = _random_sl2(n, rng)
        e = rng.choice(edges)
        assert fg.is_edge(fg.apply_matrix(A, e.source), fg.apply_matrix(A, e.target))


def test_edge_transporter_identity():
    e = DirectedEdge(V("1/0", 5), V("0/1", 5))
    assert fg.edge_transporter(e, e) == Mat2.identity(5)


def test_edge_transporter_solved_example():
    e1 = DirectedEdge(V("1/0", 5), V("0/1", 5))
    e2 = DirectedEdge(V("0/1", 5), V("4/1", 5))
    A = fg.edge_transporter(e1, e2)
    # columns of A are the images of 1/0 and 0/1
    assert A == Mat2.of(0, -1, 1, 1, 5)
    assert fg.apply_matrix(A, e1.source) == e2.source
    assert fg.apply_matrix(A, e1.target) == e2.target


def test_simple_transitivity_mod3_exhaustive():
    group = list(fg.sl2_elements(3))
    assert len(group) == 24
    edges = list(fg.build(3).edges())
    for e1 in edges:
        images = {}
        for A in group:
            img = DirectedEdge(fg.apply_matrix(A, e1.source), fg.apply_matrix(A, e1.target))
            images.setdefault(img, []).append(A)
        assert len(images) == len(edges)
        for e2 in edges:
            assert images[e2] == [fg.edge_transporter(e1, e2)]


def test_edge_transporter_rejects_non_edge():
    bad = DirectedEdge(V("1/0", 5), V("1/0", 5))
    with pytest.raises(NoTransporter):
        fg.edge_transporter(bad, DirectedEdge(V("1/0", 5), V("0/1", 5)))


def test_reduce_examples():
    assert fg.reduce(V("3/4", 8), 2) == V("1/0", 2)
    assert fg.is_edge(fg.reduce(V("1/0", 8), 4), fg.reduce(V("0/1", 8), 4))
    with pytest.raises(NotADivisor):
        fg.reduce(V("1/0", 8), 3)


def test_reduce_fiber_in_E4():
    fiber = [v for v in fg.build(4).vertices if fg.reduce(v, 2) == V("1/0", 2)]
    assert sorted(map(str, fiber)) == ["1/0", "1/2", "3/0", "3/2"]


@pytest.mark.parametrize("p, r", [(2, 2), (2, 3), (3, 2), (5, 2)])
def test_reduce_is_homomorphism_and_p2_to_1(p, r):
    G, low = fg.build(p**r), p ** (r - 1)
    assert all(fg.is_edge(fg.reduce(e.source, low), fg.reduce(e.target, low)) for e in G.edges())
    counts = {}
    for v in G.vertices:
        counts[fg.reduce(v, low)] = counts.get(fg.reduce(v, low), 0) + 1
    assert set(counts.values()) == {p * p}


@pytest.mark.parametrize("q", [4, 8, 9])
def test_reduction_equivariance(q):
    rng = random.Random(q)
    G = fg.build(q)
    for low in {d for d in range(2, q) if q % d == 0}:
        for _ in range(100):
            A = _random_sl2(q, rng)
            v = rng.choice(G.vertices)
            assert fg.reduce(fg.apply_matrix(A, v), low) == fg.apply_matrix(
                A.reduce(low), fg.reduce(v, low)
            )


def test_vertex_lifts():
    assert sorted(map(str, fg.vertex_lifts(V("1/0", 2), 2, 2))) == ["1/0", "1/2", "3/0", "3/2"]
    lifts = fg.vertex_lifts(V("0/1", 3), 3, 2)
    assert len(lifts) == 9 and all(v.a % 3 == 0 and v.b % 3 == 1 for v in lifts)
    for p, r in [(2, 3), (3, 2), (5, 2)]:
        for v in fg.build(p ** (r - 1)).vertices:
            lifts = fg.vertex_lifts(v, p, r)
            assert len(lifts) == p * p
            assert lifts == sorted(w for w in fg.build(p**r).vertices if fg.reduce(w, p ** (r - 1)) == v)


def test_tensor_product_counts():
    G, H = fg.build(2), fg.build(3)
    T = fg.tensor_product(G, H)
    assert len(T.vertices) == 3 * 8
    assert T.edge_count == 6 * 24 == 144 == fg.build(6).edge_count
    assert sum(1 for _ in T.edges()) == 144
    for pair in T.vertices:
        assert len(T.successors(pair)) == 2 * 3


@pytest.mark.parametrize("m, n", [(2, 3), (2, 5), (3, 4), (3, 5), (4, 5)])
def test_crt_isomorphism(m, n):
    Gmn, T = fg.build(m * n), fg.tensor_product(fg.build(m), fg.build(n))
    images = [fg.crt_iso_alpha(v, m, n) for v in Gmn.vertices]
    assert sorted(images) == sorted(T.vertices)
    assert all(fg.crt_iso_beta(img, m, n) == v for v, img in zip(Gmn.vertices, images))
    edge_images = {(fg.crt_iso_alpha(e.source, m, n), fg.crt_iso_alpha(e.target, m, n))
                   for e in Gmn.edges()}
    assert edge_images == set(T.edges())


def test_crt_alpha_example_and_errors():
    assert fg.crt_iso_alpha(V("1/0", 6), 2, 3) == (V("1/0", 2), V("1/0", 3))
    with pytest.raises(ModuliNotCoprime):
        fg.crt_iso_alpha(V("1/0", 8), 2, 4)


def test_equivalent():
    v = V("2/3", 7)
    assert fg.equivalent(v, v)
    assert fg.equivalent(V("1/0", 5), V("4/0", 5))
    assert not fg.equivalent(V("1/0", 5), V("0/1", 5))


@settings(max_examples=50)
@given(st.integers(2, 20), st.data())
def test_negate_involution(n, data):
    v = data.draw(st.sampled_from(fg.build(n).vertices))
    assert fg.negate(fg.negate(v)) == v


def test_negate_examples():
    assert fg.negate(V("1/0", 5)) == V("4/0", 5)
    assert fg.negate(V("1/0", 2)) == V("1/0", 2)
    assert fg.negate(V("2/3", 7)) == V("5/4", 7)


def test_exports_are_stable():
    G = fg.build(2)
    dot = G.to_dot()
    assert dot.count("->") == 6 and dot == fg.FareyGraph(2).to_dot()
    data = json.loads(fg.build(5).to_json())
    assert len(data["vertices"]) == 24 and len(data["edges"]) == 120
    assert all("/" in label for label in data["vertices"])
