"""Salvetti complexes, their barycentric subdivisions and embedding checks.

A cell of the Salvetti complex is a pair ``(F, v)`` with ``F`` a face of the
zonotope and ``v`` one of its vertices.  A simplex of the barycentric
subdivision is a chain of faces ``F0 < F1 < ... < Fk`` together with a
vertex of the largest face.  The embedding into the complexified complement
sends barycentric coordinates ``lam`` on such a simplex to

    psi  = sum lam_i b_i + i * sum lam_i (w(gate(v, F_i)) - b_i)
    psi' = sum lam_i b_i + i * sum lam_i  w(gate(v, F_i))

where ``b_i`` is the witness point of the cone dual to ``F_i`` and ``w`` the
witness point of a chamber.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from .arrangement import Arrangement, intersection_poset, normal_arrangement, restriction, \
    restriction_origins
from .errors import ArrangementError, InvariantViolation
from .exactlin import dot
from .zonotope import ZFace, Zonotope, sign_string, zonotope

__all__ = [
    "Arrow",
    "BSimplex",
    "EmbeddedPoint",
    "OrthogonalComplement",
    "SalvettiCell",
    "SalvettiComplex",
    "avoids_hyperplanes",
    "bs_simplices",
    "embed_point",
    "embedding_check",
    "one_skeleton",
    "orthogonal_complement_complex",
    "salvetti_complex",
    "standard_subcomplex",
]


@dataclass(frozen=True)
class SalvettiCell:
    face: ZFace
    base: int

    @property
    def dim(self) -> int:
        return self.face.dim

    def key(self) -> tuple[str, int]:
        return sign_string(self.face.covector), self.base


@dataclass(frozen=True)
class Arrow:
    source: int
    target: int
    hyperplane: int


class SalvettiComplex:
    """The regular cell complex ``(Z x vert Z) / ~`` on canonical representatives."""

    def __init__(self, z: Zonotope, cells: Iterable[SalvettiCell] | None = None):
        self.zonotope = z
        if cells is None:
            cells = (SalvettiCell(f, v) for f in z.faces for v in f.vertices)
        self.cells: tuple[SalvettiCell, ...] = tuple(sorted(cells, key=lambda c: (c.dim, c.key())))

    def __len__(self):
        return len(self.cells)

    def f_vector(self) -> tuple[int, ...]:
        top = max((c.dim for c in self.cells), default=-1)
        return tuple(sum(1 for c in self.cells if c.dim == k) for k in range(top + 1))

    def leq(self, c1: SalvettiCell, c2: SalvettiCell) -> bool:
        z = self.zonotope
        return z.contains(c2.face, c1.face) and z.gate(c2.base, c1.face) == c1.base

    def boundary(self, cell: SalvettiCell) -> list[SalvettiCell]:
        """Cells of one dimension less on the boundary of ``cell``."""
        z = self.zonotope
        out = []
        for g in z.faces:
            if g.dim == cell.dim - 1 and z.contains(cell.face, g):
                out.append(SalvettiCell(g, z.gate(cell.base, g)))
        return out

    def euler_characteristic(self) -> int:
        return sum((-1) ** c.dim for c in self.cells)

    def to_json(self) -> dict:
        index = {c.key(): i for i, c in enumerate(self.cells)}
        return {
            "f_vector": list(self.f_vector()),
            "cells": [{"face": sign_string(c.face.covector), "base": c.base, "dim": c.dim,
                       "boundary": [index[b.key()] for b in self.boundary(c)]}
                      for c in self.cells],
        }


@lru_cache(maxsize=64)
def salvetti_complex(a: Arrangement) -> SalvettiComplex:
    return SalvettiComplex(zonotope(a))


def one_skeleton(a: Arrangement) -> list[Arrow]:
    """Two opposite arrows per pair of adjacent chambers."""
    z = zonotope(a)
    arrows = []
    for c, d, j in z.adjacency():
        arrows.append(Arrow(c, d, j))
        arrows.append(Arrow(d, c, j))
    return sorted(arrows, key=lambda e: (e.source, e.target))


def standard_subcomplex(a: Arrangement, f: ZFace) -> SalvettiComplex:
    """Cells ``(F', v)`` with ``F'`` a face of ``f``.

    The f-vector is checked against the Salvetti complex of the normal
    arrangement of the flat dual to ``f``.
    """
    z = zonotope(a)
    sub = SalvettiComplex(z, (c for c in salvetti_complex(a).cells if z.contains(f, c.face)))
    flat = intersection_poset(a).flat(f.key)
    model = salvetti_complex(normal_arrangement(a, flat))
    if sub.f_vector() != model.f_vector():
        raise InvariantViolation("standard subcomplex does not match its normal arrangement")
    return sub


# ---------------------------------------------------------------------- subdivision


@dataclass(frozen=True)
class BSimplex:
    """A simplex of the subdivided Salvetti complex.

    ``chain`` holds face indices of the zonotope in increasing order of
    inclusion; ``vertex`` is a vertex of the largest face.
    """

    chain: tuple
    vertex: int


def _face_chains(z: Zonotope, faces: Sequence[int] | None = None) -> list[tuple]:
    allowed = set(range(len(z.faces)) if faces is None else faces)
    below: dict[int, list[int]] = {
        i: [j for j in allowed if j != i and z.contains(z.faces[i], z.faces[j])] for i in allowed}
    chains: list[tuple] = []

    def grow(chain):
        chains.append(chain)
        for j in below[chain[0]]:
            grow((j,) + chain)

    for i in sorted(allowed):
        grow((i,))
    return chains


def bs_simplices(z: Zonotope, faces: Sequence[int] | None = None) -> Iterator[BSimplex]:
    """All simplices of the subdivision supported on the given faces."""
    for chain in _face_chains(z, faces):
        for v in z.faces[chain[-1]].vertices:
            yield BSimplex(chain, v)


@dataclass(frozen=True)
class EmbeddedPoint:
    real: tuple
    imag: tuple


def avoids_hyperplanes(a: Arrangement, p: EmbeddedPoint) -> bool:
    """True when no complexified hyperplane contains ``p``."""
    return all(dot(nrm, p.real) != 0 or dot(nrm, p.imag) != 0 for nrm in a.normals)


def _point(z: Zonotope, simplex: BSimplex, coords: Sequence, shift) -> EmbeddedPoint:
    real = [0] * z.n
    imag = [0] * z.n
    for lam, fi in zip(coords, simplex.chain):
        f = z.faces[fi]
        b = z.witness(f)
        w = z.witness(z.vertex_face(z.gate(simplex.vertex, f)))
        real = [r + lam * x for r, x in zip(real, b)]
        imag = [s + lam * (y - shift * x) for s, x, y in zip(imag, b, w)]
    return EmbeddedPoint(tuple(real), tuple(imag))


def embed_point(a: Arrangement, simplex: BSimplex, coords: Sequence, variant: str = "psi",
                t=None) -> EmbeddedPoint:
    """Evaluate the Salvetti embedding at barycentric ``coords`` of ``simplex``.

    ``variant`` is ``"psi"`` or ``"psi-prime"``; passing ``t`` instead gives
    the straight-line interpolant ``(1 - t) psi + t psi'``.  Raises when the
    image lands on a complexified hyperplane.
    """
    z = zonotope(a)
    coords = [Fraction(c) for c in coords]
    if len(coords) != len(simplex.chain) or any(c < 0 for c in coords) or sum(coords) != 1:
        raise ArrangementError("barycentric coordinates must be nonnegative and sum to 1")
    if not z.has_vertex(z.faces[simplex.chain[-1]], simplex.vertex):
        raise ArrangementError("simplex vertex must lie on its largest face")
    if t is None:
        if variant not in ("psi", "psi-prime"):
            raise ArrangementError(f"unknown variant {variant!r}")
        shift = 1 if variant == "psi" else 0
    else:
        shift = 1 - Fraction(t)
    p = _point(z, simplex, coords, shift)
    if not avoids_hyperplanes(a, p):
        raise InvariantViolation("embedded point lies on a complexified hyperplane")
    return p


def _samples(z: Zonotope) -> Iterator[tuple[BSimplex, tuple]]:
    top_len = z.n + 1
    for s in bs_simplices(z):
        k = len(s.chain)
        if k == 1:
            yield s, (Fraction(1),)
        elif k == 2:
            yield s, (Fraction(1, 2), Fraction(1, 2))
        elif k == top_len:
            yield s, tuple(Fraction(1, k) for _ in range(k))


def embedding_check(a: Arrangement, times: Sequence = (Fraction(1, 4), Fraction(1, 2),
                                                       Fraction(3, 4))) -> dict:
    """Evaluate both embeddings and their interpolants on the sample set.

    The samples are every subdivision vertex, every edge midpoint and every
    barycenter of a maximal simplex.  Reports whether every image avoids the
    complexified hyperplanes and whether images are pairwise distinct within
    each variant.
    """
    z = zonotope(a)
    variants = {"psi": 1, "psi-prime": 0}
    variants.update({f"t={t}": 1 - Fraction(t) for t in times})
    seen: dict[str, set] = {name: set() for name in variants}
    report = {name: {"points": 0, "avoid": True, "distinct": True} for name in variants}
    for simplex, coords in _samples(z):
        for name, shift in variants.items():
            p = _point(z, simplex, coords, shift)
            r = report[name]
            r["points"] += 1
            if not avoids_hyperplanes(a, p):
                r["avoid"] = False
            key = (p.real, p.imag)
            if key in seen[name]:
                r["distinct"] = False
            seen[name].add(key)
    ok = all(r["avoid"] and r["distinct"] for r in report.values())
    return {"variants": report, "pass": ok}


# ---------------------------------------------------------------------- orthogonal complements


@dataclass(frozen=True)
class OrthogonalComplement:
    """The image of the subdivided Salvetti complex of a restriction.

    ``simplices`` are simplices of the subdivision of the ambient complex;
    ``intersection`` those shared with the standard subcomplex.
    """

    flat_key: tuple
    base: int
    simplices: frozenset
    intersection: frozenset
    vertex_map: dict


def _lift_face(z: Zonotope, a: Arrangement, origins, key: Sequence[int], cov: Sequence[int]) -> ZFace:
    signs = [0] * len(a)
    for j, group in enumerate(origins):
        for i, s in group:
            signs[i] = s * cov[j]
    for i in key:
        signs[i] = 0
    return z.face(tuple(signs))


def orthogonal_complement_complex(a: Arrangement, f: ZFace, base: int) -> OrthogonalComplement:
    """Copy of the subdivided Salvetti complex of the restriction to the flat
    dual to ``f``, attached at ``(f, base)``."""
    z = zonotope(a)
    z.require_simplicial()
    if f.dim == 0:
        raise ArrangementError("orthogonal complement needs a positive-dimensional face")
    if not z.has_vertex(f, base):
        raise ArrangementError("base chamber must be a vertex of the face")
    fi = z.face_index(f)
    if f.dim == z.n:
        s = BSimplex((fi,), base)
        return OrthogonalComplement(f.key, base, frozenset([s]), frozenset([s]), {})
    flat = intersection_poset(a).flat(f.key)
    sub = restriction(a, flat)
    origins = restriction_origins(a, flat)
    zs = zonotope(sub)
    lift = {i: z.face_index(_lift_face(z, a, origins, f.key, g.covector)) for i, g in enumerate(zs.faces)}

    def u(v: int) -> int:
        lifted = z.faces[lift[zs.face_index(zs.vertex_face(v))]]
        return z.gate(base, lifted)

    vertex_map = {v: u(v) for v in range(zs.num_chambers)}
    simplices = set()
    for s in bs_simplices(zs):
        chain = tuple(lift[i] for i in s.chain)
        simplices.add(BSimplex(chain, vertex_map[s.vertex]))
    inside = {i for i, g in enumerate(z.faces) if z.contains(f, g)}
    meet = frozenset(s for s in simplices if all(i in inside for i in s.chain))
    return OrthogonalComplement(f.key, base, frozenset(simplices), meet, vertex_map)
