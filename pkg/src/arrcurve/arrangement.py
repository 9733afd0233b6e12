"""Central hyperplane arrangements and their intersection combinatorics.

An arrangement is a tuple of canonical normal vectors.  Flats are keyed by
the closed set of hyperplane indices that contain them, which makes flat
equality a set comparison.  On top of the intersection poset this module
builds normal and restricted arrangements, the irreducible decomposition,
nested sets, the complexes ``I`` and ``I0`` of irreducible flats, nested
forests and the building-set test.
"""

from __future__ import annotations

import hashlib
import itertools
import json
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

from .errors import ArrangementError, InvariantViolation
from .exactlin import (
    EchelonSpan,
    QSqrt5,
    SubspaceBasis,
    as_scalar,
    coordinates,
    dot,
    nullspace,
    primitive,
    rank,
    rref,
    sign,
)

__all__ = [
    "Arrangement",
    "Flat",
    "IntersectionPoset",
    "NestedComplex",
    "NestedForest",
    "complex_of_irreducibles",
    "decompose",
    "direct_sum",
    "essentialize",
    "intersection_poset",
    "irreducible_flats",
    "is_building_set",
    "is_irreducible_flat",
    "is_nested",
    "is_simplicial",
    "matroid_components",
    "nested_forest",
    "normal_arrangement",
    "restriction",
    "restriction_origins",
    "subnormal",
]


def _scalar_json(x):
    if isinstance(x, int):
        return x
    if isinstance(x, QSqrt5) and x.b == 0:
        x = x.a
    if not isinstance(x, QSqrt5) and x.denominator == 1:
        return int(x.numerator)
    return str(x)


@dataclass(frozen=True)
class Arrangement:
    """A central arrangement given by one canonical normal per hyperplane.

    Build instances with :meth:`from_normals`, which rescales every normal
    to its canonical positive multiple and rejects repeated hyperplanes.
    """

    ambient_dim: int
    normals: tuple
    labels: tuple = field(default=(), compare=False, hash=False)

    def __post_init__(self):
        for v in self.normals:
            if len(v) != self.ambient_dim:
                raise ArrangementError("normal length does not match ambient dimension")
            if tuple(primitive(v)) != tuple(v):
                raise ArrangementError(f"normal {v} is not in canonical form")
        if len(set(self.normals)) != len(self.normals):
            raise ArrangementError("repeated hyperplane")
        if self.labels and len(self.labels) != len(self.normals):
            raise ArrangementError("one label per hyperplane expected")

    @classmethod
    def from_normals(cls, normals: Iterable[Sequence], ambient_dim: int | None = None,
                     labels: Sequence[str] | None = None) -> Arrangement:
        rows = [tuple(as_scalar(x) for x in v) for v in normals]
        if ambient_dim is None:
            if not rows:
                raise ArrangementError("ambient dimension needed for an empty arrangement")
            ambient_dim = len(rows[0])
        canon = []
        for v in rows:
            if not any(x != 0 for x in v):
                raise ArrangementError("zero normal does not define a hyperplane")
            canon.append(primitive(v))
        return cls(ambient_dim, tuple(canon), tuple(labels) if labels else ())

    def __len__(self):
        return len(self.normals)

    def label(self, i: int) -> str:
        return self.labels[i] if self.labels else f"H{i}"

    @cached_property
    def rank(self) -> int:
        return rank(self.normals)

    @property
    def is_essential(self) -> bool:
        return self.rank == self.ambient_dim

    def to_json(self) -> dict:
        return {"dim": self.ambient_dim,
                "normals": [[_scalar_json(x) for x in v] for v in self.normals]}

    @classmethod
    def from_json(cls, data: dict) -> Arrangement:
        try:
            dim = int(data["dim"])
            normals = [[int(x) for x in v] for v in data["normals"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise ArrangementError(f"malformed arrangement JSON: {exc}") from exc
        return cls.from_normals(normals, dim)

    @cached_property
    def content_hash(self) -> str:
        blob = json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()[:16]


def direct_sum(*arrangements: Arrangement) -> Arrangement:
    """Block-diagonal sum of arrangements."""
    n = sum(a.ambient_dim for a in arrangements)
    normals, labels = [], []
    offset = 0
    for k, a in enumerate(arrangements):
        for i, v in enumerate(a.normals):
            row = [0] * n
            row[offset:offset + a.ambient_dim] = v
            normals.append(row)
            labels.append(f"{a.label(i)}" if len(arrangements) == 1 else f"{k}:{a.label(i)}")
        offset += a.ambient_dim
    return Arrangement.from_normals(normals, n, labels)


def essentialize(a: Arrangement) -> tuple[Arrangement, tuple]:
    """Quotient by the common intersection of all hyperplanes.

    Returns the essential arrangement together with the rows of the linear
    map ``x -> (b . x)_b`` from the old space to the new one.
    """
    row_space = SubspaceBasis.span(a.normals, a.ambient_dim)
    normals = [coordinates(row_space, v) for v in a.normals]
    ess = Arrangement.from_normals(normals, row_space.dim, a.labels or None)
    return ess, row_space.basis


@dataclass(frozen=True)
class Flat:
    """An element of the intersection poset.

    ``key`` is the sorted closed set of hyperplanes containing the subspace,
    ``basis`` the subspace itself and ``codim`` its codimension.
    """

    key: tuple
    codim: int
    basis: SubspaceBasis

    @property
    def dim(self) -> int:
        return self.basis.dim

    def __le__(self, other: Flat) -> bool:
        # inclusion of subspaces is reverse inclusion of keys
        return set(other.key) <= set(self.key)

    def __lt__(self, other: Flat) -> bool:
        return self <= other and self.key != other.key

    def to_json(self) -> dict:
        return {"key": list(self.key), "codim": self.codim,
                "basis": [[_scalar_json(x) for x in v] for v in self.basis.basis]}


class IntersectionPoset:
    """All flats of an arrangement, ordered by codimension then key."""

    def __init__(self, a: Arrangement):
        self.arrangement = a
        self._masks: list[int] | None = None
        top = Flat((), 0, SubspaceBasis.full(a.ambient_dim))
        found = {(): top}
        frontier = [top]
        while frontier:
            nxt = []
            for f in frontier:
                base = EchelonSpan(a.ambient_dim, (a.normals[i] for i in f.key))
                covered = set(f.key)
                for i in range(len(a)):
                    if i in covered:
                        continue
                    span = base.copy()
                    span.add(a.normals[i])
                    key = tuple(j for j in range(len(a)) if span.contains(a.normals[j]))
                    covered.update(key)
                    if key not in found:
                        g = self._make(key)
                        found[key] = g
                        nxt.append(g)
            frontier = nxt
        self.flats: tuple[Flat, ...] = tuple(sorted(found.values(), key=lambda f: (f.codim, f.key)))
        self._index = {f.key: i for i, f in enumerate(self.flats)}
        self._masks = [sum(1 << i for i in f.key) for f in self.flats]

    def _make(self, key: tuple) -> Flat:
        a = self.arrangement
        rows = [a.normals[i] for i in key]
        basis = SubspaceBasis.span(nullspace(rows, a.ambient_dim), a.ambient_dim)
        return Flat(key, a.ambient_dim - basis.dim, basis)

    def closure(self, indices: Iterable[int]) -> tuple:
        """Key of the intersection of the given hyperplanes."""
        mask = 0
        for i in indices:
            mask |= 1 << i
        # flats are sorted by codimension, so the first key containing mask is the closure
        for f, m in zip(self.flats, self._masks):
            if m & mask == mask:
                return f.key
        raise InvariantViolation("closure not found among flats")

    def __len__(self):
        return len(self.flats)

    def __iter__(self):
        return iter(self.flats)

    def __getitem__(self, i: int) -> Flat:
        return self.flats[i]

    def flat(self, indices: Iterable[int]) -> Flat:
        return self.flats[self._index[self.closure(indices)]]

    def index(self, e: Flat) -> int:
        i = self._index.get(tuple(e.key))
        if i is None or self.flats[i] != e:
            raise ArrangementError("flat does not belong to this arrangement")
        return i

    def check(self, e: Flat) -> Flat:
        self.index(e)
        return e

    @property
    def top(self) -> Flat:
        return self.flats[0]

    @property
    def zero(self) -> Flat | None:
        f = self.flats[-1]
        return f if f.dim == 0 else None

    def intersection(self, flats: Iterable[Flat]) -> Flat:
        return self.flat(itertools.chain.from_iterable(f.key for f in flats))

    def proper(self) -> list[Flat]:
        """Flats other than the whole space and the zero subspace."""
        return [f for f in self.flats if f.codim and f.dim]


@lru_cache(maxsize=256)
def intersection_poset(a: Arrangement) -> IntersectionPoset:
    return IntersectionPoset(a)


def normal_arrangement(a: Arrangement, e: Flat) -> Arrangement:
    """The arrangement of hyperplanes containing ``e``, seen in ``V/e``.

    Coordinates on ``V/e`` are taken dual to the canonical basis of the span
    of the normals in ``key(e)``; hyperplanes keep the order of ``key(e)``.
    """
    intersection_poset(a).check(e)
    if not e.key:
        return Arrangement.from_normals([], 0)
    normal_space = SubspaceBasis.span([a.normals[i] for i in e.key], a.ambient_dim)
    normals = [coordinates(normal_space, a.normals[i]) for i in e.key]
    return Arrangement.from_normals(normals, normal_space.dim, [a.label(i) for i in e.key])


def _restricted(a: Arrangement, e: Flat):
    rows: list[tuple] = []
    origins: list[list[tuple[int, int]]] = []
    seen: dict[tuple, int] = {}
    for i, v in enumerate(a.normals):
        if i in e.key:
            continue
        func = tuple(dot(v, b) for b in e.basis.basis)
        canon = primitive(func)
        # sign relating the original functional to the canonical one
        lead = next(x for x in func if x != 0)
        s = sign(lead)
        if canon in seen:
            origins[seen[canon]].append((i, s))
        else:
            seen[canon] = len(rows)
            rows.append(canon)
            origins.append([(i, s)])
    return rows, origins


def restriction(a: Arrangement, e: Flat) -> Arrangement:
    """The traces ``H ∩ e`` of hyperplanes not containing ``e``, merged when equal.

    Coordinates on ``e`` are those of its canonical basis.
    """
    intersection_poset(a).check(e)
    if e.dim == 0:
        raise ArrangementError("cannot restrict to the zero flat")
    rows, origins = _restricted(a, e)
    labels = ["|".join(a.label(i) for i, _ in group) for group in origins]
    return Arrangement.from_normals(rows, e.dim, labels)


def restriction_origins(a: Arrangement, e: Flat) -> tuple[tuple[tuple[int, int], ...], ...]:
    """For each hyperplane of ``restriction(a, e)``, the original hyperplanes
    it comes from, each with the sign relating the two normals on ``e``."""
    intersection_poset(a).check(e)
    if e.dim == 0:
        raise ArrangementError("cannot restrict to the zero flat")
    _, origins = _restricted(a, e)
    return tuple(tuple(g) for g in origins)


def subnormal(a: Arrangement, e_big: Flat, e_small: Flat) -> Arrangement:
    """Normal arrangement of ``e_small`` inside the restriction to ``e_big``."""
    poset = intersection_poset(a)
    poset.check(e_big)
    poset.check(e_small)
    if not e_small < e_big:
        raise ArrangementError("subnormal needs e_small strictly inside e_big")
    if not e_big.key:
        return normal_arrangement(a, e_small)
    restricted = restriction(a, e_big)
    origins = restriction_origins(a, e_big)
    small_key = set(e_small.key)
    inner = [j for j, group in enumerate(origins) if all(i in small_key for i, _ in group)]
    sub = intersection_poset(restricted).flat(inner)
    return normal_arrangement(restricted, sub)


def matroid_components(a: Arrangement, indices: Iterable[int] | None = None) -> list[tuple]:
    """Connected components of the linear matroid on the chosen normals.

    Two elements are connected when some circuit contains both; it suffices
    to merge the fundamental circuits with respect to one greedy basis.
    """
    idx = sorted(set(range(len(a)) if indices is None else indices))
    parent = {i: i for i in idx}

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    basis: list[int] = []
    for i in idx:
        if rank([a.normals[j] for j in basis + [i]]) > len(basis):
            basis.append(i)
            continue
        # fundamental circuit of i: basis elements with nonzero coefficient
        span = SubspaceBasis.span([a.normals[j] for j in basis], a.ambient_dim)
        coeffs = _express(a, basis, i, span)
        for j, c in zip(basis, coeffs):
            if c != 0:
                parent[find(j)] = find(i)
    groups: dict[int, list[int]] = {}
    for i in idx:
        groups.setdefault(find(i), []).append(i)
    return sorted(tuple(g) for g in groups.values())


def _express(a: Arrangement, basis: list[int], i: int, span: SubspaceBasis) -> list:
    # coefficients of normal i in terms of the normals listed in basis
    target = coordinates(span, a.normals[i])
    cols = [coordinates(span, a.normals[j]) for j in basis]
    # cols form an invertible square matrix (columns); solve cols^T c = target
    k = len(basis)
    rows = [[cols[j][r] for j in range(k)] + [target[r]] for r in range(k)]
    red, pivots = rref(rows, k + 1)
    if tuple(pivots) != tuple(range(k)):
        raise InvariantViolation("basis normals are dependent")
    return [red[r][k] for r in range(k)]


def _is_simplicial_safe(a: Arrangement) -> bool:
    from .zonotope import zonotope
    return zonotope(a).is_simplicial


def decompose(a: Arrangement) -> list[tuple[Arrangement, SubspaceBasis]]:
    """Irreducible factors with the subspaces of the direct-sum decomposition.

    Factors come from matroid components.  For simplicial input the count is
    cross-checked against the Coxeter graph at the first chamber.
    """
    if not a.is_essential:
        raise ArrangementError("decompose needs an essential arrangement")
    poset = intersection_poset(a)
    comps = matroid_components(a)
    out = []
    for comp in comps:
        others = [i for i in range(len(a)) if i not in comp]
        factor = normal_arrangement(a, poset.flat(comp))
        out.append((factor, poset.flat(others).basis if others else SubspaceBasis.full(a.ambient_dim)))
    if len(a) and _is_simplicial_safe(a):
        from .zonotope import zonotope
        z = zonotope(a)
        n_graph = len(z.coxeter_components(0))
        if n_graph != len(comps):
            raise InvariantViolation(
                f"Coxeter graph has {n_graph} components but the matroid has {len(comps)}")
    return out


def is_irreducible_flat(a: Arrangement, e: Flat) -> bool:
    """Whether the normal arrangement of ``e`` is irreducible."""
    intersection_poset(a).check(e)
    if not e.key:
        raise ArrangementError("the whole space is not an admissible flat here")
    return len(matroid_components(a, e.key)) == 1


@lru_cache(maxsize=256)
def irreducible_flats(a: Arrangement) -> tuple[Flat, ...]:
    poset = intersection_poset(a)
    return tuple(f for f in poset.flats[1:] if len(matroid_components(a, f.key)) == 1)


def _nested_keys(poset: IntersectionPoset, flats: Sequence[Flat]) -> bool:
    for size in range(2, len(flats) + 1):
        for group in itertools.combinations(flats, size):
            if any(x <= y or y <= x for x, y in itertools.combinations(group, 2)):
                continue
            keys = [set(f.key) for f in group]
            union = set().union(*keys)
            if sum(map(len, keys)) != len(union):
                return False
            meet = poset.flat(union)
            if set(meet.key) != union or meet.codim != sum(f.codim for f in group):
                return False
    return True


def is_nested(a: Arrangement, flats: Iterable[Flat]) -> bool:
    """Nested-set test: every antichain meets with a direct-sum normal arrangement."""
    flats = list(flats)
    poset = intersection_poset(a)
    irr = set(f.key for f in irreducible_flats(a))
    for f in flats:
        poset.check(f)
        if f.key not in irr:
            raise ArrangementError(f"flat {f.key} is not irreducible")
    return _nested_keys(poset, flats)


@dataclass(frozen=True)
class NestedComplex:
    """Simplicial complex on flats; simplices are sorted tuples of vertex indices."""

    vertices: tuple
    simplices: frozenset

    @property
    def dim(self) -> int:
        return max((len(s) for s in self.simplices), default=0) - 1

    def f_vector(self) -> tuple[int, ...]:
        counts = [0] * (self.dim + 1)
        for s in self.simplices:
            counts[len(s) - 1] += 1
        return tuple(counts)

    def of_size(self, k: int) -> list[tuple]:
        return sorted(s for s in self.simplices if len(s) == k)

    def flats_of(self, simplex: Iterable[int]) -> tuple[Flat, ...]:
        return tuple(self.vertices[i] for i in simplex)

    def index_of(self, flats: Iterable[Flat]) -> tuple:
        pos = {v.key: i for i, v in enumerate(self.vertices)}
        return tuple(sorted(pos[f.key] for f in flats))

    def is_closed(self) -> bool:
        return all(sub in self.simplices
                   for s in self.simplices for k in range(1, len(s))
                   for sub in itertools.combinations(s, k))

    def to_json(self) -> dict:
        return {"vertices": [list(v.key) for v in self.vertices],
                "simplices": [list(s) for s in sorted(self.simplices, key=lambda s: (len(s), s))]}

    def to_dot(self, name: str = "I0") -> str:
        lines = [f"graph {name} {{"]
        for i, v in enumerate(self.vertices):
            lines.append(f'  v{i} [label="{",".join(map(str, v.key))}"];')
        for s in self.of_size(2):
            lines.append(f"  v{s[0]} -- v{s[1]};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def _nested_simplices(poset: IntersectionPoset, vertices: Sequence[Flat]) -> frozenset:
    simplices: set[tuple] = set()
    frontier = [(i,) for i in range(len(vertices))]
    while frontier:
        simplices.update(frontier)
        nxt = []
        for s in frontier:
            for j in range(s[-1] + 1, len(vertices)):
                cand = s + (j,)
                facets = (cand[:k] + cand[k + 1:] for k in range(len(cand)))
                if all(f in simplices for f in facets) \
                        and _nested_keys(poset, [vertices[i] for i in cand]):
                    nxt.append(cand)
        frontier = nxt
    return frozenset(simplices)


@lru_cache(maxsize=64)
def complex_of_irreducibles(a: Arrangement) -> tuple[NestedComplex, NestedComplex]:
    """The complex ``I`` of nested sets and its subcomplex ``I0``.

    ``I0`` is assembled as the join of the per-factor complexes; it is then
    checked to coincide with ``I`` minus its cone points.
    """
    if not a.is_essential:
        raise ArrangementError("complex_of_irreducibles needs an essential arrangement")
    poset = intersection_poset(a)
    verts = irreducible_flats(a)
    full = NestedComplex(verts, _nested_simplices(poset, verts))

    comps = matroid_components(a)
    cone_keys = {tuple(c) for c in comps}
    pos = {v.key: i for i, v in enumerate(verts)}
    # per-factor I0: irreducible flats supported inside one component, minus its zero
    factor_simplices = []
    for comp in comps:
        cset = set(comp)
        fverts = [v for v in verts if set(v.key) <= cset and v.key != tuple(comp)]
        local = _nested_simplices(poset, fverts)
        factor_simplices.append([()] + [tuple(pos[fverts[i].key] for i in s) for s in local])
    joined = set()
    for combo in itertools.product(*factor_simplices):
        s = tuple(sorted(itertools.chain.from_iterable(combo)))
        if s:
            joined.add(s)
    keep = [i for i, v in enumerate(verts) if v.key not in cone_keys]
    remap = {old: new for new, old in enumerate(keep)}
    i0 = NestedComplex(tuple(verts[i] for i in keep),
                       frozenset(tuple(remap[i] for i in s) for s in joined))
    restricted = frozenset(tuple(remap[i] for i in s) for s in full.simplices
                           if all(i in remap for i in s))
    if restricted != i0.simplices:
        raise InvariantViolation("join of factor complexes differs from I minus cone points")
    return full, i0


@dataclass(frozen=True)
class NestedForest:
    """Forest structure of a nested set.

    ``parent[i]`` is the largest node strictly contained in node ``i`` (or
    ``None``), ``level[i]`` the number of nodes below it, and ``hat[i]`` the
    intersection of its children (the whole space if it has none).
    """

    nodes: tuple
    parent: tuple
    level: tuple
    children: tuple
    hat: tuple

    def roots(self) -> list[int]:
        return [i for i, p in enumerate(self.parent) if p is None]


def nested_forest(a: Arrangement, alpha: Iterable[Flat]) -> NestedForest:
    nodes = tuple(sorted(alpha, key=lambda f: (-f.codim, f.key)))
    if not is_nested(a, nodes):
        raise ArrangementError("alpha is not nested")
    poset = intersection_poset(a)
    parent, level = [], []
    for e in nodes:
        below = [j for j, f in enumerate(nodes) if f < e]
        chain = sorted(below, key=lambda j: nodes[j].dim)
        for x, y in zip(chain, chain[1:]):
            if not nodes[x] < nodes[y]:
                raise InvariantViolation("elements below a nested flat must form a chain")
        parent.append(chain[-1] if chain else None)
        level.append(len(chain))
    children = tuple(tuple(j for j, p in enumerate(parent) if p == i) for i in range(len(nodes)))
    hat = tuple(poset.intersection(nodes[j] for j in ch) if ch else poset.top for ch in children)
    return NestedForest(nodes, tuple(parent), tuple(level), children, hat)


def is_building_set(a: Arrangement, s: Iterable[Flat]) -> bool:
    """Building-set test: below every flat the minimal members of ``s`` above
    it decompose its normal arrangement as a direct sum."""
    poset = intersection_poset(a)
    s = [poset.check(f) for f in s]
    keys = {f.key for f in s}
    for i in range(len(a)):
        if poset.flat([i]).key not in keys:
            raise ArrangementError(f"hyperplane {i} is missing from the candidate set")
    for e in poset.flats[1:]:
        above = [f for f in s if e <= f]
        minimal = [f for f in above if not any(g < f for g in above)]
        # maximal keys inside key(e); they must partition it
        union = set().union(*(set(f.key) for f in minimal))
        if union != set(e.key) or sum(len(f.key) for f in minimal) != len(union):
            return False
        if sum(f.codim for f in minimal) != e.codim:
            return False
    return True


def is_simplicial(a: Arrangement) -> bool:
    """Whether every chamber has exactly ``ambient_dim`` walls."""
    if not a.is_essential:
        raise ArrangementError("is_simplicial needs an essential arrangement")
    return _is_simplicial_safe(a)
