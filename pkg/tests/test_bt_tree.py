import random
from collections import deque
from fractions import Fraction

import pytest

from psl2lift import make_field
from psl2lift.bt_tree import (GREATER_THAN_DEPTH, SAME_NERVE, STANDARD,
                              TreeVertex, act, ball, ball_size, ball_to_dot,
                              distance, fixed_set, fixed_vertices, geodesic,
                              horoball_member, neighbors, nesting_check,
                              translation_length_bfs, verify_descriptor,
                              vertex_from_json)
from psl2lift.errors import CapExceeded, InputError, NotElliptic
from psl2lift.sl2 import Mat2, classify

Q2 = make_field(2, 16)
Q3 = make_field(3, 16)
Q5 = make_field(5, 16)
F3 = make_field(3, 16, char=3)


def graph_distances(src, verts, q):
    """Oracle: breadth-first distances inside the induced subgraph."""
    vs = set(verts)
    dist = {src: 0}
    todo = deque([src])
    while todo:
        v = todo.popleft()
        for w in neighbors(v, q):
            if w in vs and w not in dist:
                dist[w] = dist[v] + 1
                todo.append(w)
    return dist


def random_sl2(K, rng, vmin, vmax):
    while True:
        a = K.random_element(rng, vmin, vmax)
        b = K.random_element(rng, vmin, vmax)
        c = K.random_element(rng, vmin, vmax)
        d = (1 + b * c) / a
        return Mat2(K, a, b, c, d)


def test_ball_sizes():
    assert len(ball(STANDARD, 1, Q2)) == 4
    assert len(ball(STANDARD, 1, make_field(3, 8, r=2, char=3))) == 11
    for r in range(4):
        assert len(ball(STANDARD, r, Q3)) == ball_size(3, r)
    with pytest.raises(CapExceeded):
        ball(STANDARD, 6, Q5, cap=100)


def test_neighbors_are_parent_and_children():
    v = TreeVertex(1, ((0, 2),))
    ns = neighbors(v, 3)
    assert v.parent() in ns
    assert len(ns) == 4
    assert all(distance(v, w) == 1 for w in ns)


def test_distance_matches_graph_bfs():
    verts = ball(STANDARD, 4, Q3)
    rng = random.Random(0)
    for src in rng.sample(verts, 5):
        d = graph_distances(src, ball(STANDARD, 8, Q3), 3)
        for v in rng.sample(verts, 30):
            assert distance(src, v) == d[v]


def test_geodesic_is_a_path():
    a = TreeVertex(3, ((0, 1), (2, 2)))
    b = TreeVertex(2, ((0, 2),))
    path = geodesic(a, b)
    assert path[0] == a and path[-1] == b
    assert len(path) == distance(a, b) + 1
    assert all(distance(x, y) == 1 for x, y in zip(path, path[1:]))


def test_diagonal_action():
    u = Q5.uniformizer()
    g = Mat2.diag(Q5, u)
    w = act(g, STANDARD)
    assert w == TreeVertex(2, ())
    assert distance(STANDARD, w) == 2


def test_action_is_an_isometry_and_a_homomorphism():
    rng = random.Random(11)
    verts = ball(STANDARD, 2, Q3)
    for _ in range(10):
        g = random_sl2(Q3, rng, -1, 1)
        h = random_sl2(Q3, rng, -1, 1)
        for v, w in zip(rng.sample(verts, 6), rng.sample(verts, 6)):
            assert distance(act(g, v), act(g, w)) == distance(v, w)
            assert act(g * h, v) == act(g, act(h, v))


def test_vertex_json_round_trip():
    v = TreeVertex(3, ((-1, 2), (1, 1)))
    assert vertex_from_json(v.to_json(Q3), Q3) == v


def test_translation_length_modes_agree():
    u = Q5.uniformizer()
    g = Mat2.diag(Q5, u)
    assert translation_length_bfs(g, 4) == 2
    assert translation_length_bfs(g, 4, exhaustive=True) == 2
    assert translation_length_bfs(Mat2(F3, 1, 1, 0, 1), 3) == 0


def test_translation_length_far_axis():
    # axis far from the center: descent needs more than one step
    rng = random.Random(5)
    for _ in range(20):
        g = random_sl2(Q3, rng, -2, 2)
        if g.is_central():
            continue
        c = classify(g).translation_length
        got = translation_length_bfs(g, 8)
        assert got == GREATER_THAN_DEPTH or got == c
        ex = translation_length_bfs(g, 4, exhaustive=True)
        assert ex == GREATER_THAN_DEPTH or ex == c


def test_depth_must_be_positive():
    with pytest.raises(InputError):
        translation_length_bfs(Mat2.identity(Q5), 0)


def test_unipotent_horoball():
    g = Mat2(F3, 1, 1, 0, 1)
    desc = fixed_set(g, 6)
    assert desc.kind == "horoball"
    assert desc.apex == 0
    assert len(desc.fixed) == 53
    assert verify_descriptor(desc, ball(STANDARD, 6, F3))
    assert fixed_vertices(g * g, ball(STANDARD, 6, F3)) == desc.fixed
    assert horoball_member(desc, TreeVertex(-3, ()))
    assert not horoball_member(desc, TreeVertex(2, ()))


def test_split_torus_fixes_a_band_around_the_apartment():
    K = make_field(7, 16)
    g = Mat2.diag(K, K.teichmuller(2))
    desc = fixed_set(g, 4)
    assert (desc.kind, desc.nerve_kind, desc.radius) == ("band", "line", 0)
    assert desc.fixed == frozenset(TreeVertex(n, ()) for n in range(-4, 5))


def test_order_three_vertex_and_edge_nerves():
    g5 = Mat2(Q5, 0, -1, 1, -1)
    d5 = fixed_set(g5, 4)
    assert (d5.nerve_kind, d5.nerve, d5.radius) == ("vertex", (STANDARD,), 0)
    g3 = Mat2(Q3, 0, -1, 1, -1)
    d3 = fixed_set(g3, 4)
    assert d3.nerve_kind == "edge"
    assert d3.radius == Fraction(1, 2)
    assert len(d3.fixed) == 2
    assert verify_descriptor(d3, ball(STANDARD, 4, Q3))


def test_hyperbolic_has_no_fixed_set():
    with pytest.raises(NotElliptic):
        fixed_set(Mat2.diag(Q5, Q5.uniformizer()), 3)


def test_nesting_of_powers():
    g = Mat2(Q3, 0, -1, 1, -1)
    res = nesting_check(g, g * g, 4)
    assert res.verdict == SAME_NERVE
    u = F3.uniformizer()
    a = Mat2(F3, 1, 1, 0, 1)
    b = Mat2(F3, 1, u, 0, 1)
    res = nesting_check(a, b, 4)
    assert res.pointwise in ("GSubsetH", "HSubsetG")


def test_dot_output():
    verts = ball(STANDARD, 1, Q2)
    text = ball_to_dot(verts, Q2, frozenset([STANDARD]))
    assert text.startswith("graph ball {")
    assert text.count("--") == 3
    assert "filled" in text
