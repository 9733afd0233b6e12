from __future__ import annotations

import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from arrcurve import families
from arrcurve.arrangement import Arrangement, direct_sum, intersection_poset
from arrcurve.errors import ArrangementError, CapExceededError
from arrcurve.exactlin import dot, sign
from arrcurve.zonotope import Zonotope, sign_string, zonotope
from oracles import FlatOracle

A2, A3 = families.braid(3), families.braid(4)

ARRANGEMENTS = {
    "A2": A2, "A3": A3, "B3": families.type_b(3), "H3": families.h3(), "I2(7)": families.dihedral(7),
    "Boolean(3)": families.boolean(3), "A2+A1": direct_sum(A2, families.boolean(1)),
    "generic4": Arrangement.from_normals([(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)]),
}


def hexagon_cycle(z):
    """Chambers of a rank-two zonotope in cyclic order starting at c0."""
    order = [0]
    while len(order) < z.num_chambers:
        nbrs = [z.neighbor(order[-1], j) for j in z.wall_list(order[-1])]
        order.append(min(c for c in nbrs if c not in order))
    return order


@pytest.mark.parametrize("name", sorted(ARRANGEMENTS))
def test_counts_match_moebius_oracle(name):
    a = ARRANGEMENTS[name]
    z = zonotope(a)
    oracle = FlatOracle(a.normals)
    assert z.num_chambers == oracle.chambers()
    counts = oracle.face_counts()
    assert z.f_vector() == tuple(counts[k] for k in range(a.ambient_dim + 1))


def test_known_counts():
    assert zonotope(A2).num_chambers == 6
    for m in range(2, 9):
        z = zonotope(families.dihedral(m))
        assert z.f_vector() == (2 * m, 2 * m, 1)
    z = zonotope(A3)
    assert z.f_vector() == (24, 36, 14, 1)
    two_faces = [len(f.vertices) for f in z.faces_of_dim(2)]
    assert sorted(two_faces) == [4] * 6 + [6] * 8
    assert zonotope(families.h3()).num_chambers == 120


@pytest.mark.parametrize("name", sorted(ARRANGEMENTS))
def test_face_vertices_and_witnesses(name):
    z = zonotope(ARRANGEMENTS[name])
    for f in z.faces:
        point = z.witness(f)
        assert tuple(sign(dot(n, point)) for n in z.arrangement.normals) == f.covector
        assert len(f.vertices) >= 1
        assert all(z.has_vertex(f, c) for c in f.vertices)
    for c in range(z.num_chambers):
        assert z.vertex_face(c).vertices == (c,)


def test_chambers_sorted_by_sign_string():
    z = zonotope(A3)
    strings = [sign_string(s) for s in z.chamber_signs]
    assert strings == sorted(strings)
    assert all(z.parse_chamber(s) == i for i, s in enumerate(strings))


@pytest.mark.parametrize("name", ["A2", "A3", "B3", "I2(7)"])
def test_gate_is_the_nearest_vertex(name):
    z = zonotope(ARRANGEMENTS[name])
    for f in z.faces:
        for x in range(z.num_chambers):
            dists = {c: z.distance(x, c) for c in f.vertices}
            best = min(dists.values())
            nearest = [c for c, d in dists.items() if d == best]
            assert nearest == [z.gate(x, f)]


def test_gate_hexagon_example():
    z = zonotope(A2)
    cyc = hexagon_cycle(z)
    edge = next(f for f in z.faces_of_dim(1) if set(f.vertices) == {cyc[0], cyc[1]})
    x = cyc[3]
    assert z.distance(x, cyc[0]) == 3 and z.distance(x, cyc[1]) == 2
    assert z.gate(x, edge) == cyc[1]
    assert z.gate(x, z.top) == x
    assert z.gate(cyc[0], edge) == cyc[0]


def test_separation_and_antipodes():
    z = zonotope(A3)
    for x, y in itertools.product(range(z.num_chambers), repeat=2):
        assert z.distance(x, y) == len(z.separation(x, y))
    for x in range(z.num_chambers):
        assert z.separation(x, x) == frozenset()
        assert z.separation(x, z.antipodes[x]) == frozenset(range(6))
        assert z.antipode(x, z.top) == z.antipodes[x]
        for e in z.edges_at(x):
            assert len(z.separation(x, z.antipode(x, e))) == 1


def test_parallel_translation_is_a_bijection():
    z = zonotope(A3)
    for f in z.faces:
        if f.dim == 0:
            continue
        for g in z.parallel_faces(f):
            image = [z.parallel_translate(f, g, x) for x in f.vertices]
            assert sorted(image) == sorted(g.vertices)
            # translated vertices lie on the same side of every hyperplane dual to f
            for x, y in zip(f.vertices, image):
                assert all(z.chamber_signs[x][j] == z.chamber_signs[y][j] for j in f.key)
    with pytest.raises(ArrangementError):
        e1, e2 = z.edges_at(0)[:2]
        z.parallel_translate(e1, e2, 0)


def test_antipode_in_a_hexagon_face():
    z = zonotope(A3)
    for f in z.faces_of_dim(2):
        for x in f.vertices:
            far = z.antipode(x, f)
            assert z.distance(x, far) == max(z.distance(x, c) for c in f.vertices) == len(f.key)


def test_span_face_and_orthogonality():
    z = zonotope(A3)
    x = 0
    edges = z.edges_at(x)
    assert z.span_face(x, edges) == z.top
    assert z.span_face(x, edges[:1]) == edges[0]
    squares = hexagons = 0
    for e1, e2 in itertools.combinations(edges, 2):
        face = z.span_face(x, [e1, e2])
        assert face.dim == 2
        if len(face.vertices) == 4:
            squares += 1
            assert z.orthogonal(e1, e2)
        else:
            hexagons += 1
            assert not z.orthogonal(e1, e2)
    assert (squares, hexagons) == (1, 2)
    assert not z.orthogonal(edges[0], edges[0])


def test_coxeter_graphs():
    z = zonotope(A2)
    assert all(len(z.coxeter_components(x)) == 1 for x in range(6))
    z = zonotope(families.boolean(2))
    assert all(len(z.coxeter_components(x)) == 2 for x in range(4))
    z = zonotope(A3)
    for x in range(24):
        graph = z.coxeter_graph(x)
        assert sorted(len(v) for v in graph.values()) == [1, 1, 2]


def test_cap_and_non_essential():
    with pytest.raises(CapExceededError):
        Zonotope(A3, cap=10)
    with pytest.raises(ArrangementError):
        Zonotope(Arrangement.from_normals([(1, 0, 0)]))


@given(st.lists(st.tuples(st.integers(-2, 2), st.integers(-2, 2), st.integers(-2, 2)).filter(any),
                min_size=3, max_size=6))
def test_random_arrangements_count_like_moebius(rows):
    try:
        a = Arrangement.from_normals(rows, 3)
    except ArrangementError:
        return
    if not a.is_essential:
        return
    z = zonotope(a)
    oracle = FlatOracle(a.normals)
    assert z.num_chambers == oracle.chambers()
    # Euler relation of the 3-dimensional zonotope boundary
    f = z.f_vector()
    assert f[0] - f[1] + f[2] == 2
    assert len(intersection_poset(a).flats) == len(oracle.flats)
