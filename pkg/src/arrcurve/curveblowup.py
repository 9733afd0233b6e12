"""Faces of the compact core, homology of I0 and reduction arrangements.

The compact core is handled purely combinatorially: its faces are the
simplices of I0 (plus the interior), and each face records the flats that
describe it as a product of smaller blowups.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .arrangement import Arrangement, Flat, complex_of_irreducibles, direct_sum, intersection_poset, \
    matroid_components, nested_forest, normal_arrangement, restriction
from .errors import ArrangementError, InvariantViolation
from .exactlin import smith_normal_form
from .zonotope import zonotope

__all__ = [
    "BlowupFace",
    "BlowupPoset",
    "HomologyReport",
    "blowup_faces",
    "homology",
    "order_complex_q0",
    "quotient_curve_complex",
    "simplicial_homology",
    "verify_wedge",
]


@dataclass(frozen=True)
class BlowupFace:
    """The face of X indexed by a nested set ``alpha``.

    ``e_alpha`` is the intersection of the level-0 flats and ``pairs`` lists
    ``(E, E_hat)`` for each node of the nested forest.  ``dim`` is the real
    dimension of the face.
    """

    alpha: tuple
    codim: int
    e_alpha: Flat
    pairs: tuple
    dim: int

    def to_json(self) -> dict:
        return {"alpha": [list(f.key) for f in self.alpha], "codim": self.codim,
                "factors": {"E_alpha": list(self.e_alpha.key),
                            "nodes": [{"E": list(e.key), "E_hat": list(h.key)} for e, h in self.pairs]}}


@dataclass(frozen=True)
class BlowupPoset:
    dim: int
    n: int
    l: int
    faces: tuple

    def counts(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for f in self.faces:
            out[f.codim] = out.get(f.codim, 0) + 1
        return dict(sorted(out.items()))

    def to_json(self) -> dict:
        return {"dim": self.dim, "n": self.n, "l": self.l,
                "counts": {str(k): v for k, v in self.counts().items()},
                "faces": [f.to_json() for f in self.faces]}


def _component_dims(a: Arrangement, flat: Flat, comps: Sequence[tuple]) -> list[int]:
    """Dimension of ``flat`` inside each irreducible factor of ``a``."""
    poset = intersection_poset(a)
    key = set(flat.key)
    return [poset.flat(comp).codim - poset.flat(sorted(key & set(comp))).codim for comp in comps]


def blowup_faces(a: Arrangement) -> BlowupPoset:
    """One face per simplex of I0 plus the interior, with product data."""
    if not a.is_essential:
        raise ArrangementError("blowup_faces needs an essential arrangement")
    poset = intersection_poset(a)
    comps = matroid_components(a)
    n, l = a.ambient_dim, len(comps)
    _, i0 = complex_of_irreducibles(a)
    top = poset.top
    alphas = [()] + sorted(i0.simplices, key=lambda s: (len(s), s))
    faces = []
    for s in alphas:
        flats = i0.flats_of(s)
        if flats:
            forest = nested_forest(a, flats)
            roots = [forest.nodes[i] for i, lv in enumerate(forest.level) if lv == 0]
            e_alpha = poset.intersection(roots)
            pairs = tuple(zip(forest.nodes, forest.hat))
        else:
            e_alpha, pairs = top, ()
        # spheres: one per factor for E_alpha, one per node for E_hat / E
        dim = sum(2 * d - 1 for d in _component_dims(a, e_alpha, comps))
        dim += sum(2 * (h.dim - e.dim) - 1 for e, h in pairs)
        if dim != 2 * n - l - len(flats):
            raise InvariantViolation(f"face {s} has dimension {dim}, expected {2 * n - l - len(flats)}")
        faces.append(BlowupFace(tuple(flats), len(flats), e_alpha, pairs, dim))
    return BlowupPoset(2 * n - l, n, l, tuple(faces))


# ---------------------------------------------------------------------- homology


@dataclass(frozen=True)
class HomologyReport:
    """Reduced integral homology.  ``groups[d] = (rank, torsion)``; the empty
    complex has ``H_{-1} = Z`` and ``empty`` set."""

    groups: dict = field(default_factory=dict)
    empty: bool = False

    def nonzero_degrees(self) -> list[int]:
        return [d for d, (r, t) in sorted(self.groups.items()) if r or t]

    @property
    def torsion_free(self) -> bool:
        return all(not t for _, t in self.groups.values())

    def rank(self, d: int) -> int:
        return self.groups.get(d, (0, ()))[0]

    def to_json(self) -> dict:
        return {"groups": {str(d): [r, list(t)] for d, (r, t) in sorted(self.groups.items())},
                "empty": self.empty}


def simplicial_homology(simplices: Iterable[tuple]) -> HomologyReport:
    """Reduced homology of the complex generated by ``simplices`` (closed under faces)."""
    closed: set[tuple] = set()
    for s in simplices:
        s = tuple(sorted(s))
        for k in range(1, len(s) + 1):
            closed.update(itertools.combinations(s, k))
    if not closed:
        return HomologyReport({-1: (1, ())}, empty=True)
    top = max(map(len, closed)) - 1
    by_dim = {d: sorted(s for s in closed if len(s) == d + 1) for d in range(top + 1)}
    by_dim[-1] = [()]
    index = {d: {s: i for i, s in enumerate(by_dim[d])} for d in by_dim}

    def boundary(d: int) -> list[list[int]]:
        # rows: (d-1)-simplices, columns: d-simplices
        rows = [[0] * len(by_dim[d]) for _ in by_dim[d - 1]]
        for j, s in enumerate(by_dim[d]):
            for k in range(len(s)):
                rows[index[d - 1][s[:k] + s[k + 1:]]][j] += (-1) ** k
        return rows

    snf = {d: smith_normal_form(boundary(d)) for d in range(0, top + 1)}
    groups = {}
    for d in range(-1, top + 1):
        r_out = snf[d][1] if d >= 0 else 0
        r_in = snf[d + 1][1] if d + 1 <= top else 0
        rank = len(by_dim[d]) - r_out - r_in
        torsion = tuple(x for x in (snf[d + 1][0] if d + 1 <= top else ()) if abs(x) > 1)
        groups[d] = (rank, torsion)
    return HomologyReport(groups)


def homology(c) -> HomologyReport:
    """Reduced homology of a :class:`NestedComplex`."""
    return simplicial_homology(c.simplices)


def _order_complex(flats: Sequence[Flat]) -> set[tuple]:
    flats = sorted(flats, key=lambda f: (f.codim, f.key))
    n = len(flats)
    up = [[j for j in range(n) if flats[j] < flats[i]] for i in range(n)]
    chains: set[tuple] = set()

    def grow(chain):
        chains.add(chain)
        for j in up[chain[-1]]:
            grow(chain + (j,))

    for i in range(n):
        grow((i,))
    return chains


def order_complex_q0(a: Arrangement) -> set[tuple]:
    """Join over irreducible factors of the order complexes of proper nonzero flats."""
    poset = intersection_poset(a)
    factors = []
    offset = 0
    for comp in matroid_components(a):
        sub = normal_arrangement(a, poset.flat(comp))
        sp = intersection_poset(sub)
        q0 = [f for f in sp.flats if f.key and f.dim > 0]
        chains = _order_complex(q0)
        factors.append([()] + [tuple(i + offset for i in c) for c in chains])
        offset += len(q0)
    out = set()
    for combo in itertools.product(*factors):
        s = tuple(sorted(itertools.chain.from_iterable(combo)))
        if s:
            out.add(s)
    return out


def _nonzero(h: HomologyReport) -> dict:
    return {d: g for d, g in h.groups.items() if g != (0, ())}


def verify_wedge(a: Arrangement) -> dict:
    """Check that I0 has the reduced homology of a wedge of ``(n-l-1)``-spheres
    and agrees with the order complex of the proper nonzero flats."""
    if not a.is_essential:
        raise ArrangementError("verify_wedge needs an essential arrangement")
    l = len(matroid_components(a))
    degree = a.ambient_dim - l - 1
    _, i0 = complex_of_irreducibles(a)
    h = homology(i0)
    h_order = simplicial_homology(order_complex_q0(a))
    concentrated = all(d == degree for d in h.nonzero_degrees())
    agree = _nonzero(h) == _nonzero(h_order)
    ok = concentrated and h.torsion_free and agree
    return {"degree": degree, "rank": h.rank(degree), "pass": ok, "torsion_free": h.torsion_free,
            "empty_complex": h.empty, "order_complex_agrees": agree, "homology": h.to_json()}


# ---------------------------------------------------------------------- quotient curve complex


def quotient_curve_complex(a: Arrangement) -> dict:
    """I0 with vertices typed by their flats, and for each simplex the
    reduction arrangement ``A_{V/E1} + A^{E1}`` at a minimal vertex ``E1``."""
    zonotope(a).require_simplicial()
    _, i0 = complex_of_irreducibles(a)
    poset = intersection_poset(a)
    simplices = []
    for s in sorted(i0.simplices, key=lambda s: (len(s), s)):
        flats = i0.flats_of(s)
        minimal = sorted((f for f in flats if not any(g < f for g in flats)),
                         key=lambda f: (f.dim, f.key))
        e1 = minimal[0]
        reduced = direct_sum(normal_arrangement(a, e1), restriction(a, poset.check(e1)))
        simplicial = zonotope(reduced).is_simplicial
        if not simplicial:
            raise InvariantViolation(f"reduction arrangement at {e1.key} is not simplicial")
        simplices.append({"simplex": list(s), "E1": list(e1.key), "reduction": reduced.to_json(),
                          "reduction_hyperplanes": len(reduced), "simplicial": simplicial})
    return {"vertices": [{"index": i, "type": list(v.key), "codim": v.codim}
                         for i, v in enumerate(i0.vertices)],
            "simplices": simplices}
