"""The dual zonotope of an essential central arrangement.

Faces of the zonotope are the covectors of the arrangement: sign vectors
over ``{+1, 0, -1}`` recording on which side of each hyperplane a cone of
the fan lies.  Every covector is a composition of cocircuits (the signs of
the rays spanned by rank-one flats), so the whole face lattice comes out of
a closure computation on sign vectors; the only linear algebra involved is
evaluating normals on ray directions.

Chambers (zero-free covectors) are numbered by sorting their sign strings,
with ``+`` before ``-``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .arrangement import Arrangement, intersection_poset
from .errors import ArrangementError, CapExceededError, NotSimplicialError
from .exactlin import dot, sign

__all__ = ["Chamber", "ZFace", "Zonotope", "chambers", "faces", "sign_string", "zonotope"]

DEFAULT_CHAMBER_CAP = 100000


def sign_string(covector: Sequence[int]) -> str:
    return "".join("+" if s > 0 else "-" if s < 0 else "0" for s in covector)


def parse_signs(text: str) -> tuple[int, ...]:
    table = {"+": 1, "-": -1, "0": 0}
    try:
        return tuple(table[ch] for ch in text)
    except KeyError as exc:
        raise ArrangementError(f"bad sign string {text!r}") from exc


@dataclass(frozen=True)
class ZFace:
    """A face of the zonotope.

    ``covector`` is the sign vector of the dual cone, ``key`` its zero set
    (the key of the dual flat), ``dim`` the face dimension (the codimension
    of the dual flat) and ``vertices`` the chambers whose signs extend the
    covector.
    """

    covector: tuple
    key: tuple
    dim: int
    vertices: tuple

    def __str__(self):
        return sign_string(self.covector)


@dataclass(frozen=True)
class Chamber:
    index: int
    signs: tuple
    walls: tuple


def _compose(x: tuple[int, int], y: tuple[int, int]) -> tuple[int, int]:
    supp = x[0] | x[1]
    return x[0] | (y[0] & ~supp), x[1] | (y[1] & ~supp)


class Zonotope:
    """Face lattice, chamber graph and metric data of ``Z(a)``."""

    def __init__(self, a: Arrangement, cap: int = DEFAULT_CHAMBER_CAP):
        if not a.is_essential:
            raise ArrangementError("the zonotope is built for essential arrangements")
        self.arrangement = a
        self.m = m = len(a)
        self.n = a.ambient_dim
        self.poset = intersection_poset(a)
        full = (1 << m) - 1

        # cocircuits: both directions of every rank-one flat
        self._ray_dirs: list[tuple] = []
        rays: list[tuple[int, int]] = []
        for f in self.poset.flats:
            if f.dim != 1:
                continue
            (v,) = f.basis.basis
            for s in (1, -1):
                w = tuple(s * x for x in v)
                pos = neg = 0
                for i, nrm in enumerate(a.normals):
                    t = sign(dot(nrm, w))
                    if t > 0:
                        pos |= 1 << i
                    elif t < 0:
                        neg |= 1 << i
                rays.append((pos, neg))
                self._ray_dirs.append(w)
        self._rays = rays

        seen = {(0, 0)}
        queue = [(0, 0)]
        n_chambers = 0
        while queue:
            nxt = []
            for x in queue:
                for r in rays:
                    z = _compose(x, r)
                    if z not in seen:
                        seen.add(z)
                        nxt.append(z)
                        if z[0] | z[1] == full:
                            n_chambers += 1
                            if n_chambers > cap:
                                raise CapExceededError(f"more than {cap} chambers")
            queue = nxt

        def to_tuple(pm):
            return tuple(1 if pm[0] >> i & 1 else -1 if pm[1] >> i & 1 else 0 for i in range(m))

        chamber_pms = sorted((pm for pm in seen if pm[0] | pm[1] == full),
                             key=lambda pm: sign_string(to_tuple(pm)))
        self.neg_masks: tuple[int, ...] = tuple(pm[1] for pm in chamber_pms)
        self.chamber_signs: tuple[tuple, ...] = tuple(to_tuple(pm) for pm in chamber_pms)
        self._chamber_by_mask = {mk: i for i, mk in enumerate(self.neg_masks)}
        self.antipodes = tuple(self._chamber_by_mask[full ^ mk] for mk in self.neg_masks)

        # faces
        built = []
        for pm in seen:
            cov = to_tuple(pm)
            key = tuple(i for i in range(m) if cov[i] == 0)
            supp = pm[0] | pm[1]
            verts = tuple(i for i, mk in enumerate(self.neg_masks) if mk & supp == pm[1])
            dim = self.poset.flat(key).codim if key else 0
            built.append(ZFace(cov, key, dim, verts))
        built.sort(key=lambda f: (f.dim, sign_string(f.covector)))
        self.faces: tuple[ZFace, ...] = tuple(built)
        self._face_index = {f.covector: i for i, f in enumerate(self.faces)}
        self._pm = {f.covector: pm for f, pm in
                    zip(self.faces, (self._to_pm(f.covector) for f in self.faces))}

        walls = []
        for c, mk in enumerate(self.neg_masks):
            w = 0
            for j in range(m):
                pm = ((full ^ mk) & ~(1 << j), mk & ~(1 << j))
                if pm in seen:
                    w |= 1 << j
            walls.append(w)
        self.walls: tuple[int, ...] = tuple(walls)
        self._witness: dict[tuple, tuple] = {}

    # ------------------------------------------------------------------ basics

    @staticmethod
    def _to_pm(cov: Sequence[int]) -> tuple[int, int]:
        pos = neg = 0
        for i, s in enumerate(cov):
            if s > 0:
                pos |= 1 << i
            elif s < 0:
                neg |= 1 << i
        return pos, neg

    @property
    def num_chambers(self) -> int:
        return len(self.neg_masks)

    @property
    def is_simplicial(self) -> bool:
        return all(bin(w).count("1") == self.n for w in self.walls)

    def require_simplicial(self):
        if not self.is_simplicial:
            raise NotSimplicialError("operation needs a simplicial arrangement")

    def chambers(self) -> list[Chamber]:
        return [Chamber(i, s, self.wall_list(i)) for i, s in enumerate(self.chamber_signs)]

    def chamber_label(self, c: int) -> str:
        return f"c{c}"

    def parse_chamber(self, token: str) -> int:
        """Accept ``cN`` (chamber index) or a full sign string."""
        token = token.strip()
        if token.startswith("c") and token[1:].isdigit():
            c = int(token[1:])
            if not 0 <= c < self.num_chambers:
                raise ArrangementError(f"no chamber {token}")
            return c
        signs = parse_signs(token)
        return self.chamber_of(signs)

    def chamber_of(self, signs: Sequence[int]) -> int:
        if len(signs) != self.m or 0 in signs:
            raise ArrangementError("a chamber needs a full nonzero sign vector")
        mask = sum(1 << i for i, s in enumerate(signs) if s < 0)
        c = self._chamber_by_mask.get(mask)
        if c is None:
            raise ArrangementError(f"sign vector {sign_string(signs)} is not a chamber")
        return c

    def wall_list(self, c: int) -> tuple[int, ...]:
        w = self.walls[c]
        return tuple(j for j in range(self.m) if w >> j & 1)

    def neighbor(self, c: int, j: int) -> int:
        if not self.walls[c] >> j & 1:
            raise ArrangementError(f"hyperplane {j} is not a wall of chamber {c}")
        return self._chamber_by_mask[self.neg_masks[c] ^ (1 << j)]

    def adjacency(self) -> list[tuple[int, int, int]]:
        """Adjacent chamber pairs ``(c, d, hyperplane)`` with ``c < d``."""
        out = []
        for c in range(self.num_chambers):
            for j in self.wall_list(c):
                d = self.neighbor(c, j)
                if c < d:
                    out.append((c, d, j))
        return out

    def face(self, covector: Sequence[int] | str) -> ZFace:
        if isinstance(covector, str):
            covector = parse_signs(covector)
        i = self._face_index.get(tuple(covector))
        if i is None:
            raise ArrangementError(f"{sign_string(covector)} is not a covector")
        return self.faces[i]

    def is_covector(self, covector: Sequence[int]) -> bool:
        return tuple(covector) in self._face_index

    def face_index(self, f: ZFace) -> int:
        return self._face_index[f.covector]

    def vertex_face(self, c: int) -> ZFace:
        return self.face(self.chamber_signs[c])

    @property
    def top(self) -> ZFace:
        return self.face((0,) * self.m)

    def faces_of_dim(self, k: int) -> list[ZFace]:
        return [f for f in self.faces if f.dim == k]

    def f_vector(self) -> tuple[int, ...]:
        return tuple(len(self.faces_of_dim(k)) for k in range(self.n + 1))

    def contains(self, big: ZFace, small: ZFace) -> bool:
        """Whether ``small`` is a face of ``big``."""
        return all(b == 0 or b == s for b, s in zip(big.covector, small.covector))

    def has_vertex(self, f: ZFace, c: int) -> bool:
        return all(s == 0 or s == t for s, t in zip(f.covector, self.chamber_signs[c]))

    def faces_at(self, c: int) -> list[ZFace]:
        return [f for f in self.faces if self.has_vertex(f, c)]

    def edges_at(self, c: int) -> list[ZFace]:
        signs = self.chamber_signs[c]
        return [self.face(signs[:j] + (0,) + signs[j + 1:]) for j in self.wall_list(c)]

    # ------------------------------------------------------------------ metric

    def separation(self, x: int, y: int) -> frozenset:
        mk = self.neg_masks[x] ^ self.neg_masks[y]
        return frozenset(j for j in range(self.m) if mk >> j & 1)

    def sep_mask(self, x: int, y: int) -> int:
        return self.neg_masks[x] ^ self.neg_masks[y]

    def distance(self, x: int, y: int) -> int:
        return bin(self.neg_masks[x] ^ self.neg_masks[y]).count("1")

    def gate(self, x: int, f: ZFace) -> int:
        """The vertex of ``f`` nearest to ``x``: the composition ``f . x``."""
        signs = tuple(s if s else t for s, t in zip(f.covector, self.chamber_signs[x]))
        return self.chamber_of(signs)

    def parallel_translate(self, f1: ZFace, f2: ZFace, x: int) -> int:
        if f1.key != f2.key:
            raise ArrangementError("faces are not parallel")
        if not self.has_vertex(f1, x):
            raise ArrangementError("chamber is not a vertex of the first face")
        return self.gate(x, f2)

    def antipode(self, x: int, f: ZFace) -> int:
        """The vertex of ``f`` opposite to ``x``: flip the signs on ``key(f)``."""
        if not self.has_vertex(f, x):
            raise ArrangementError("chamber is not a vertex of the face")
        mask = sum(1 << j for j in f.key)
        return self._chamber_by_mask[self.neg_masks[x] ^ mask]

    def parallel_faces(self, f: ZFace) -> list[ZFace]:
        return [g for g in self.faces if g.key == f.key]

    def span_face(self, x: int, edges: Iterable[ZFace]) -> ZFace:
        """Smallest face containing ``x`` and the given edges at ``x``."""
        self.require_simplicial()
        edges = list(edges)
        idx = []
        for e in edges:
            if e.dim != 1 or not self.has_vertex(e, x):
                raise ArrangementError("span_face expects edges through the chamber")
            idx.extend(e.key)
        key = set(self.poset.closure(idx))
        signs = self.chamber_signs[x]
        return self.face(tuple(0 if j in key else s for j, s in enumerate(signs)))

    def orthogonal(self, f1: ZFace, f2: ZFace) -> bool:
        """Whether the normal arrangement of the meet of the dual flats splits
        as the direct sum of the two normal arrangements."""
        if f1 == f2:
            return False
        k1, k2 = set(f1.key), set(f2.key)
        if k1 & k2:
            return False
        meet = self.poset.flat(k1 | k2)
        return set(meet.key) == k1 | k2 and meet.codim == f1.dim + f2.dim

    def coxeter_graph(self, x: int) -> dict[int, set[int]]:
        """Walls of ``x``, joined when the rank-two flat they span carries at
        least three hyperplanes."""
        self.require_simplicial()
        walls = self.wall_list(x)
        graph = {j: set() for j in walls}
        for i in walls:
            for j in walls:
                if i < j and len(self.poset.closure([i, j])) >= 3:
                    graph[i].add(j)
                    graph[j].add(i)
        return graph

    def coxeter_components(self, x: int) -> list[tuple[int, ...]]:
        graph = self.coxeter_graph(x)
        seen: set[int] = set()
        comps = []
        for v in graph:
            if v in seen:
                continue
            stack, comp = [v], []
            seen.add(v)
            while stack:
                u = stack.pop()
                comp.append(u)
                for w in graph[u]:
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
            comps.append(tuple(sorted(comp)))
        return comps

    # ------------------------------------------------------------------ witnesses

    def witness(self, f: ZFace | Sequence[int]) -> tuple:
        """A point in the relative interior of the cone dual to ``f``.

        It is the sum of the directions of the extreme rays of the cone; the
        origin for the zero covector.
        """
        cov = f.covector if isinstance(f, ZFace) else tuple(f)
        hit = self._witness.get(cov)
        if hit is not None:
            return hit
        pos, neg = self._to_pm(cov)
        supp = pos | neg
        point = [0] * self.n
        for (rp, rn), d in zip(self._rays, self._ray_dirs):
            if (rp | rn) & ~supp == 0 and rp & neg == 0 and rn & pos == 0:
                point = [p + x for p, x in zip(point, d)]
        point = tuple(point)
        got = tuple(sign(dot(nrm, point)) for nrm in self.arrangement.normals)
        if got != cov:
            raise ArrangementError("witness point does not realize the covector")
        self._witness[cov] = point
        return point

    # ------------------------------------------------------------------ export

    def to_json(self) -> dict:
        return {
            "chambers": [sign_string(s) for s in self.chamber_signs],
            "faces": [{"covector": sign_string(f.covector), "dim": f.dim, "dual_flat": list(f.key),
                       "vertices": list(f.vertices)} for f in self.faces],
            "f_vector": list(self.f_vector()),
            "simplicial": self.is_simplicial,
        }

    def to_dot(self) -> str:
        lines = ["graph chambers {"]
        for c, s in enumerate(self.chamber_signs):
            lines.append(f'  c{c} [label="c{c} {sign_string(s)}"];')
        for c, d, j in self.adjacency():
            lines.append(f'  c{c} -- c{d} [label="{j}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


@lru_cache(maxsize=64)
def zonotope(a: Arrangement, cap: int = DEFAULT_CHAMBER_CAP) -> Zonotope:
    return Zonotope(a, cap)


def chambers(a: Arrangement, cap: int = DEFAULT_CHAMBER_CAP) -> list[Chamber]:
    return zonotope(a, cap).chambers()


def faces(a: Arrangement, cap: int = DEFAULT_CHAMBER_CAP) -> tuple[ZFace, ...]:
    return zonotope(a, cap).faces
