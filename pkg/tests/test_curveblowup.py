from __future__ import annotations

import itertools

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from arrcurve import families
from arrcurve.arrangement import Arrangement, complex_of_irreducibles, direct_sum, intersection_poset, \
    matroid_components, normal_arrangement, restriction
from arrcurve.curveblowup import blowup_faces, homology, order_complex_q0, quotient_curve_complex, \
    simplicial_homology, verify_wedge
from arrcurve.errors import ArrangementError
from oracles import FlatOracle

A2, A3 = families.braid(3), families.braid(4)
H12, H34 = 0, 5
L123 = (0, 1, 3)

# six-vertex triangulation of the real projective plane
RP2 = [(0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 5, 1),
       (1, 2, 4), (2, 3, 5), (3, 4, 1), (4, 5, 2), (5, 1, 3)]


# ---------------------------------------------------------------------- faces


def test_blowup_face_examples():
    p = blowup_faces(A2)
    assert p.counts() == {0: 1, 1: 3} and p.dim == 3
    p = blowup_faces(A3)
    assert p.counts() == {0: 1, 1: 10, 2: 15} and p.dim == 5
    p = blowup_faces(families.boolean(2))
    assert p.counts() == {0: 1} and p.dim == 2


@pytest.mark.parametrize("a", [A2, A3, families.type_b(3), families.dihedral(5), families.boolean(3),
                               direct_sum(A2, families.boolean(1)), direct_sum(A2, A2)],
                         ids=["A2", "A3", "B3", "I2(5)", "Boolean(3)", "A2+A1", "A2+A2"])
def test_faces_match_nested_set_oracle(a):
    p = blowup_faces(a)
    oracle = FlatOracle(a.normals)
    got = [frozenset(frozenset(f.key) for f in face.alpha) for face in p.faces]
    assert len(got) == len(set(got))
    assert set(got) == oracle.i0_simplices() | {frozenset()}
    n, l = a.ambient_dim, len(matroid_components(a))
    for face in p.faces:
        assert face.dim == 2 * n - l - face.codim
        assert len(face.pairs) == face.codim


def test_face_product_data():
    p = blowup_faces(A3)
    face = next(f for f in p.faces if sorted(g.key for g in f.alpha) == [(H12,), L123])
    assert face.e_alpha.key == L123
    pairs = {e.key: h.key for e, h in face.pairs}
    assert pairs[L123] == (H12,) and pairs[(H12,)] == ()
    data = p.to_json()
    assert data["counts"] == {"0": 1, "1": 10, "2": 15}


def test_blowup_needs_essential():
    with pytest.raises(ArrangementError):
        blowup_faces(Arrangement.from_normals([(1, 0, 0)]))


# ---------------------------------------------------------------------- homology


def test_homology_examples():
    h = simplicial_homology([(0,), (1,), (2,)])
    assert h.nonzero_degrees() == [0] and h.rank(0) == 2
    _, i0 = complex_of_irreducibles(A3)
    h = homology(i0)
    assert h.nonzero_degrees() == [1] and h.rank(1) == 6 and h.torsion_free
    h = simplicial_homology([])
    assert h.empty and h.rank(-1) == 1 and h.nonzero_degrees() == [-1]


def test_torsion_is_detected():
    h = simplicial_homology(RP2)
    assert h.groups[1] == (0, (2,)) and h.rank(2) == 0
    assert not h.torsion_free


def test_sphere_and_contractible():
    tetra = list(itertools.combinations(range(4), 3))
    assert simplicial_homology(tetra).nonzero_degrees() == [2]
    assert simplicial_homology([(0, 1, 2, 3)]).nonzero_degrees() == []


graphs = st.lists(st.tuples(st.integers(0, 7), st.integers(0, 7)).filter(lambda e: e[0] != e[1]),
                  min_size=1, max_size=14)


@given(graphs)
def test_graph_homology_matches_networkx(edges):
    g = nx.Graph(edges)
    h = simplicial_homology(edges)
    c = nx.number_connected_components(g)
    assert h.rank(0) == c - 1
    assert h.rank(1) == g.number_of_edges() - g.number_of_nodes() + c


complexes = st.lists(st.sets(st.integers(0, 6), min_size=1, max_size=4), min_size=1, max_size=8)


@given(complexes)
def test_euler_characteristic(simplices):
    closed = set()
    for s in simplices:
        s = sorted(s)
        for k in range(1, len(s) + 1):
            closed.update(itertools.combinations(s, k))
    chi = sum((-1) ** (len(s) - 1) for s in closed)
    h = simplicial_homology(simplices)
    assert sum((-1) ** d * r for d, (r, _) in h.groups.items() if d >= 0) == chi - 1


# ---------------------------------------------------------------------- wedge check


def test_verify_wedge_examples():
    r = verify_wedge(A2)
    assert (r["degree"], r["rank"], r["pass"]) == (0, 2, True)
    r = verify_wedge(A3)
    assert (r["degree"], r["rank"], r["pass"]) == (1, 6, True)
    r = verify_wedge(direct_sum(A2, families.boolean(1)))
    assert (r["degree"], r["rank"], r["pass"]) == (0, 2, True)
    r = verify_wedge(families.boolean(2))
    assert r["pass"] and r["empty_complex"] and r["degree"] == -1


def test_order_complex_of_a3():
    chains = order_complex_q0(A3)
    vertices = [s for s in chains if len(s) == 1]
    edges = [s for s in chains if len(s) == 2]
    assert (len(vertices), len(edges)) == (13, 18)
    assert not [s for s in chains if len(s) > 2]


@pytest.mark.parametrize("m", range(3, 9))
def test_dihedral_wedge_rank(m):
    # m points: a wedge of m - 1 zero-spheres
    r = verify_wedge(families.dihedral(m))
    assert r["pass"] and r["degree"] == 0 and r["rank"] == m - 1


# ---------------------------------------------------------------------- quotient complex


def test_quotient_curve_complex_examples():
    q = quotient_curve_complex(A2)
    assert len(q["vertices"]) == 3 and all(v["codim"] == 1 for v in q["vertices"])
    q = quotient_curve_complex(A3)
    by_simplex = {tuple(sorted(tuple(q["vertices"][i]["type"]) for i in s["simplex"])): s
                  for s in q["simplices"]}
    poset = intersection_poset(A3)
    s = by_simplex[tuple(sorted([(H12,), L123]))]
    assert tuple(s["E1"]) == L123
    line = poset.flat(L123)
    expected = direct_sum(normal_arrangement(A3, line), restriction(A3, line))
    assert s["reduction_hyperplanes"] == len(expected) == 4
    s = by_simplex[tuple(sorted([(H12,), (H34,)]))]
    assert tuple(s["E1"]) == (H12,)
    assert s["reduction_hyperplanes"] == 1 + len(restriction(A3, poset.flat([H12])))
    assert all(s["simplicial"] for s in q["simplices"])
