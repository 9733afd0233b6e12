"""Garside computations in the Deligne groupoid of a simplicial arrangement.

Chambers are the objects.  A positive morphism is stored in left-greedy
normal form: a sequence of simples, where a simple is the class of all
minimal positive paths between two chambers and is therefore just a chamber
pair.  An arbitrary morphism ``x -> y`` is stored as ``(k, p)`` meaning
``Delta_x^{-2k} . p`` with ``p`` positive and ``k`` as small as possible,
which makes equality of morphisms plain equality of the stored data.

Everything reduces to bitmask arithmetic on the chamber sign vectors of the
zonotope: the crossing set of a simple ``(x, y)`` is ``sep(x, y)``, and the
product of two simples is simple exactly when their crossing sets are
disjoint.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .arrangement import Arrangement, Flat, intersection_poset, is_irreducible_flat, restriction, \
    restriction_origins
from .errors import ArrangementError, InvariantViolation
from .zonotope import ZFace, Zonotope, zonotope

__all__ = [
    "DeligneGroupoid",
    "Letter",
    "Morphism",
    "NormalForm",
    "Simple",
    "garside_selftest",
    "groupoid",
    "parse_path",
    "random_path",
]


@dataclass(frozen=True)
class Simple:
    source: int
    target: int

    def reverse(self) -> Simple:
        return Simple(self.target, self.source)


@dataclass(frozen=True)
class Letter:
    """One step of a path, travelled from ``source`` to ``target``.

    ``sign = +1`` uses the arrow ``source -> target``; ``sign = -1`` uses the
    arrow ``target -> source`` backwards.
    """

    source: int
    target: int
    sign: int = 1

    def __str__(self):
        body = f"c{self.source}>c{self.target}"
        return body if self.sign > 0 else f"-{body}"


@dataclass(frozen=True)
class NormalForm:
    source: int
    target: int
    factors: tuple = ()

    def __len__(self):
        return len(self.factors)

    def to_json(self) -> list:
        return [[s.source, s.target] for s in self.factors]


@dataclass(frozen=True)
class Morphism:
    """``Delta_source^{-2k} . positive`` in canonical form."""

    source: int
    target: int
    k: int
    positive: NormalForm

    @property
    def is_positive(self) -> bool:
        return self.k == 0

    def to_json(self) -> dict:
        return {"source": self.source, "target": self.target, "k": self.k,
                "positive": self.positive.to_json()}


_LETTER = re.compile(r"^\s*([+-]?)\s*\(?\s*(\S+?)\s*>\s*(\S+?)\s*\)?\s*$")


def parse_path(z: Zonotope, text: str) -> list[Letter]:
    """Parse ``"c0>c1,-c2>c1,..."``; a leading ``-`` marks the arrow written
    in the token travelled backwards.  Chambers are ``cN`` or sign strings."""
    letters = []
    for token in filter(None, (t.strip() for t in text.split(","))):
        m = _LETTER.match(token)
        if not m:
            raise ArrangementError(f"cannot parse path letter {token!r}")
        a, b = z.parse_chamber(m.group(2)), z.parse_chamber(m.group(3))
        if z.distance(a, b) != 1:
            raise ArrangementError(f"{token!r} does not join adjacent chambers")
        letters.append(Letter(b, a, -1) if m.group(1) == "-" else Letter(a, b, 1))
    for x, y in zip(letters, letters[1:]):
        if x.target != y.source:
            raise ArrangementError("path letters are not composable")
    return letters


class DeligneGroupoid:
    """Word problem, lattice operations and twist calculus for one arrangement."""

    def __init__(self, a: Arrangement):
        self.arrangement = a
        self.z = z = zonotope(a)
        self.simplicial = z.is_simplicial
        self._masks = z.neg_masks
        self._by_mask = {mk: i for i, mk in enumerate(z.neg_masks)}
        self._full = (1 << z.m) - 1
        self._vmaps: dict = {}

    # ------------------------------------------------------------------ simples

    def _require(self):
        self.z.require_simplicial()

    def sep(self, x: int, y: int) -> int:
        return self._masks[x] ^ self._masks[y]

    def _step(self, c: int, j: int) -> int:
        return self._by_mask[self._masks[c] ^ (1 << j)]

    def simple(self, c: int, d: int) -> Simple:
        n = self.z.num_chambers
        if not (0 <= c < n and 0 <= d < n):
            raise ArrangementError("chamber index out of range")
        return Simple(c, d)

    def length(self, s: Simple) -> int:
        return bin(self.sep(s.source, s.target)).count("1")

    def delta(self, x: int, f: ZFace | None = None) -> Simple:
        """``Delta_x(F)``: from ``x`` to its antipode in ``f`` (default: all of Z)."""
        if f is None:
            return Simple(x, self.z.antipodes[x])
        return Simple(x, self.z.antipode(x, f))

    def word(self, s: Simple) -> list[int]:
        """A representative minimal gallery, crossing the lowest-index wall first."""
        path = [s.source]
        c = s.source
        while c != s.target:
            todo = self.walls(c) & self.sep(c, s.target)
            j = (todo & -todo).bit_length() - 1
            c = self._step(c, j)
            path.append(c)
        return path

    def walls(self, c: int) -> int:
        return self.z.walls[c]

    def divides_prefix(self, s1: Simple, s2: Simple) -> bool:
        if s1.source != s2.source:
            raise ArrangementError("prefix comparison needs a common source")
        x = s1.source
        return self.sep(x, s1.target) & ~self.sep(x, s2.target) == 0

    def divides_suffix(self, s1: Simple, s2: Simple) -> bool:
        if s1.target != s2.target:
            raise ArrangementError("suffix comparison needs a common target")
        y = s1.target
        return self.sep(s1.source, y) & ~self.sep(s2.source, y) == 0

    def _ascend(self, start: int, allowed: int) -> int:
        """Greedy walk away from ``start`` crossing only hyperplanes in ``allowed``."""
        c, crossed = start, 0
        while True:
            todo = self.walls(c) & allowed & ~crossed
            if not todo:
                return c
            j = (todo & -todo).bit_length() - 1
            crossed |= 1 << j
            c = self._step(c, j)

    def _descend(self, start: int, top: int, keep: int) -> int:
        """Greedy walk from ``top`` back towards ``start`` never uncrossing ``keep``."""
        c = top
        while True:
            todo = self.walls(c) & self.sep(start, c) & ~keep
            if not todo:
                return c
            j = (todo & -todo).bit_length() - 1
            c = self._step(c, j)

    def join_prefix(self, simples: Iterable[Simple]) -> Simple:
        simples = list(simples)
        self._require()
        x = self._common(simples, "source")
        union = 0
        for s in simples:
            union |= self.sep(x, s.target)
        return Simple(x, self._descend(x, self.z.antipodes[x], union))

    def meet_prefix(self, simples: Iterable[Simple]) -> Simple:
        simples = list(simples)
        self._require()
        x = self._common(simples, "source")
        inter = self._full
        for s in simples:
            inter &= self.sep(x, s.target)
        return Simple(x, self._ascend(x, inter))

    def join_suffix(self, simples: Iterable[Simple]) -> Simple:
        return self.join_prefix(s.reverse() for s in simples).reverse()

    def meet_suffix(self, simples: Iterable[Simple]) -> Simple:
        return self.meet_prefix(s.reverse() for s in simples).reverse()

    @staticmethod
    def _common(simples: Sequence[Simple], end: str) -> int:
        if not simples:
            raise ArrangementError("need at least one simple")
        ends = {getattr(s, end) for s in simples}
        if len(ends) != 1:
            raise ArrangementError(f"simples do not share a {end}")
        return ends.pop()

    # ------------------------------------------------------------------ normal forms

    def _weighted(self, s: Simple, t: Simple) -> bool:
        x, m, y = s.source, s.target, t.target
        return self.walls(m) & self.sep(m, y) & ~self.sep(x, m) == 0

    def _normalize_pair(self, s: Simple, t: Simple) -> tuple[Simple, Simple]:
        x, m, y = s.source, s.target, t.target
        u = self._ascend(m, self.sep(m, y) & ~self.sep(x, m))
        return Simple(x, u), Simple(u, y)

    def _normalize(self, source: int, factors: list[Simple]) -> NormalForm:
        self._require()
        f = [s for s in factors if s.source != s.target]
        changed = True
        while changed:
            changed = False
            for i in range(len(f) - 2, -1, -1):
                if not self._weighted(f[i], f[i + 1]):
                    f[i], f[i + 1] = self._normalize_pair(f[i], f[i + 1])
                    changed = True
            if changed:
                f = [s for s in f if s.source != s.target]
        target = f[-1].target if f else source
        return NormalForm(source, target, tuple(f))

    def identity(self, x: int) -> NormalForm:
        return NormalForm(x, x, ())

    def nf_from_simples(self, simples: Sequence[Simple], source: int | None = None) -> NormalForm:
        simples = list(simples)
        if source is None:
            if not simples:
                raise ArrangementError("empty product needs an explicit source")
            source = simples[0].source
        c = source
        for s in simples:
            if s.source != c:
                raise ArrangementError("simples are not composable")
            c = s.target
        return self._normalize(source, simples)

    def normal_form(self, path: Sequence[int] | Sequence[Letter]) -> NormalForm:
        """Normal form of a positive path given as a chamber sequence or letters."""
        if path and isinstance(path[0], Letter):
            if any(l.sign < 0 for l in path):
                raise ArrangementError("normal_form expects a positive path")
            chambers = [path[0].source] + [l.target for l in path]
        else:
            chambers = list(path)
        if not chambers:
            raise ArrangementError("empty path")
        for c, d in zip(chambers, chambers[1:]):
            if self.z.distance(c, d) != 1:
                raise ArrangementError(f"c{c} and c{d} are not adjacent")
        return self.nf_from_simples([Simple(c, d) for c, d in zip(chambers, chambers[1:])],
                                    chambers[0])

    def multiply(self, p: NormalForm, q: NormalForm) -> NormalForm:
        if p.target != q.source:
            raise ArrangementError("normal forms are not composable")
        return self._normalize(p.source, list(p.factors) + list(q.factors))

    def reverse(self, p: NormalForm) -> NormalForm:
        """Image under the anti-automorphism reversing every arrow."""
        return self._normalize(p.target, [s.reverse() for s in reversed(p.factors)])

    def nf_length(self, p: NormalForm) -> int:
        return sum(self.length(s) for s in p.factors)

    def prefix_divides(self, d: NormalForm, p: NormalForm) -> bool:
        try:
            self.left_divide(p, d)
        except ArrangementError:
            return False
        return True

    def suffix_divides(self, d: NormalForm, p: NormalForm) -> bool:
        return self.prefix_divides(self.reverse(d), self.reverse(p))

    def left_divide(self, p: NormalForm, d: NormalForm) -> NormalForm:
        """``d^{-1} p`` for ``d`` a prefix of ``p``."""
        if d.source != p.source:
            raise ArrangementError("left division needs a common source")
        for m in d.factors:
            if not p.factors:
                raise ArrangementError("not a prefix")
            head = p.factors[0]
            x = head.source
            if self.sep(x, m.target) & ~self.sep(x, head.target):
                raise ArrangementError("not a prefix")
            p = self._normalize(m.target, [Simple(m.target, head.target)] + list(p.factors[1:]))
        return p

    def right_divide(self, p: NormalForm, d: NormalForm) -> NormalForm:
        """``p d^{-1}`` for ``d`` a suffix of ``p``."""
        return self.reverse(self.left_divide(self.reverse(p), self.reverse(d)))

    def prefix_gcd(self, p: NormalForm, q: NormalForm) -> NormalForm:
        if p.source != q.source:
            raise ArrangementError("prefix gcd needs a common source")
        x = p.source
        out: list[Simple] = []
        while p.factors and q.factors:
            m = self.meet_prefix([p.factors[0], q.factors[0]])
            if m.source == m.target:
                break
            out.append(m)
            one = NormalForm(m.source, m.target, (m,))
            p, q = self.left_divide(p, one), self.left_divide(q, one)
        return self._normalize(x, out)

    def suffix_gcd(self, p: NormalForm, q: NormalForm) -> NormalForm:
        return self.reverse(self.prefix_gcd(self.reverse(p), self.reverse(q)))

    # ------------------------------------------------------------------ morphisms

    def _delta_sq(self, x: int, f: ZFace | None = None) -> list[Simple]:
        d1 = self.delta(x, f)
        return [d1, Simple(d1.target, x)]

    def _canonical(self, source: int, k: int, p: NormalForm) -> Morphism:
        if k < 0:
            p = self._normalize(source, self._delta_sq(source) * (-k) + list(p.factors))
            k = 0
        full = self.z.antipodes[source]
        lead = (Simple(source, full), Simple(full, source))
        while k > 0 and p.factors[:2] == lead:
            p = NormalForm(source, p.target, p.factors[2:])
            k -= 1
        return Morphism(source, p.target, k, p)

    def positive(self, p: NormalForm) -> Morphism:
        return self._canonical(p.source, 0, p)

    def morphism(self, path: Sequence[Letter] | Sequence[int], source: int | None = None) -> Morphism:
        """Morphism of a signed path (letters) or a positive chamber sequence."""
        if path and not isinstance(path[0], Letter):
            return self.positive(self.normal_form(path))
        if not path:
            if source is None:
                raise ArrangementError("empty path needs an explicit source")
            return self.unit(source)
        x = path[0].source
        k, factors, c = 0, [], x
        for l in path:
            if l.source != c:
                raise ArrangementError("path letters are not composable")
            if self.z.distance(l.source, l.target) != 1:
                raise ArrangementError("letters must join adjacent chambers")
            if l.sign > 0:
                factors.append(Simple(l.source, l.target))
            else:
                # e^{-1} = Delta_b^{-2} . Delta_b . Simple(-b, a) for e: a -> b
                b, a = l.source, l.target
                k += 1
                factors += [self.delta(b), Simple(self.z.antipodes[b], a)]
            c = l.target
        return self._canonical(x, k, self._normalize(x, factors))

    def unit(self, x: int) -> Morphism:
        return Morphism(x, x, 0, self.identity(x))

    def from_simple(self, s: Simple) -> Morphism:
        return self.positive(self._normalize(s.source, [s]))

    def compose(self, *fs: Morphism) -> Morphism:
        if not fs:
            raise ArrangementError("nothing to compose")
        k, factors, c = 0, [], fs[0].source
        for f in fs:
            if f.source != c:
                raise ArrangementError("morphisms are not composable")
            k += f.k
            factors += list(f.positive.factors)
            c = f.target
        return self._canonical(fs[0].source, k, self._normalize(fs[0].source, factors))

    def inverse(self, f: Morphism) -> Morphism:
        # (Delta^{-2k} s_1...s_r)^{-1} = s_r^{-1} ... s_1^{-1} Delta_x^{2k}
        y = f.target
        k, factors = 0, []
        for s in reversed(f.positive.factors):
            a, b = s.source, s.target
            k += 1
            factors += [self.delta(b), Simple(self.z.antipodes[b], a)]
        factors += self._delta_sq(f.source) * f.k
        return self._canonical(y, k, self._normalize(y, factors))

    def conjugate(self, g: Morphism, f: Morphism) -> Morphism:
        """``g f g^{-1}``."""
        return self.compose(g, f, self.inverse(g))

    def power(self, f: Morphism, n: int) -> Morphism:
        if f.source != f.target and n not in (0, 1, -1):
            raise ArrangementError("only loops have arbitrary powers")
        if n == 0:
            return self.unit(f.source)
        base = f if n > 0 else self.inverse(f)
        return self.compose(*([base] * abs(n)))

    def equal(self, f: Morphism, g: Morphism) -> bool:
        if f.source != g.source:
            raise ArrangementError("equality needs a common source")
        return f == g

    def delta_power(self, x: int, f: ZFace | None, k: int) -> Morphism:
        """``(Delta_x(F))^k``, alternating between ``x`` and its antipode in ``F``."""
        if k < 0:
            return self.inverse(self.delta_power(x, f, -k))
        simples, c = [], x
        for _ in range(k):
            s = self.delta(c, f)
            simples.append(s)
            c = s.target
        return self.positive(self._normalize(x, simples))

    def signed_intersection(self, f: Morphism | Sequence[Letter], h: int) -> int:
        if isinstance(f, Morphism):
            bit = 1 << h
            return -2 * f.k + sum(1 for s in f.positive.factors if self.sep(s.source, s.target) & bit)
        total = 0
        for l in f:
            if self.sep(l.source, l.target) == 1 << h:
                total += l.sign
        return total

    def pn_normal_form(self, f: Morphism) -> tuple[NormalForm, NormalForm]:
        """Positive ``a, b`` with ``f = a b^{-1}`` and no common nontrivial suffix."""
        y = f.target
        a1 = f.positive
        b1 = self._normalize(y, self._delta_sq(y) * f.k)
        g = self.suffix_gcd(a1, b1)
        return self.right_divide(a1, g), self.right_divide(b1, g)

    def from_pn(self, a: NormalForm, b: NormalForm) -> Morphism:
        return self.compose(self.positive(a), self.inverse(self.positive(b)))

    # ------------------------------------------------------------------ faces and twists

    def _check_vertex(self, x: int, f: ZFace):
        if not self.z.has_vertex(f, x):
            raise ArrangementError(f"c{x} is not a vertex of the face")

    def garside_delta(self, x: int, f: ZFace) -> Simple:
        self._check_vertex(x, f)
        return self.delta(x, f)

    def delta_sq(self, x: int, f: ZFace | None = None) -> Morphism:
        if f is not None:
            self._check_vertex(x, f)
        return self.positive(self._normalize(x, self._delta_sq(x, f)))

    def is_irreducible_face(self, f: ZFace) -> bool:
        if not f.key:
            return False
        return is_irreducible_flat(self.arrangement, intersection_poset(self.arrangement).flat(f.key))

    def dehn_twist(self, base: int, f: ZFace) -> Morphism:
        """Standard twist ``h (Delta_{x_F}(F))^2 h^{-1}`` with ``x_F`` the gate of ``base``."""
        self._require()
        if f.dim == self.z.n or not self.is_irreducible_face(f):
            raise ArrangementError("Dehn twists need an irreducible proper face")
        x = self.z.gate(base, f)
        h = self.from_simple(Simple(base, x))
        return self.conjugate(h, self.delta_sq(x, f))

    def commute(self, f: Morphism, g: Morphism) -> bool:
        if not (f.source == f.target == g.source == g.target):
            raise ArrangementError("commute needs two loops at the same chamber")
        return self.compose(f, g) == self.compose(g, f)

    def commute_standard_predicate(self, f1: ZFace, f2: ZFace) -> bool:
        if not (self.is_irreducible_face(f1) and self.is_irreducible_face(f2)):
            raise ArrangementError("faces must be irreducible")
        z = self.z
        return z.orthogonal(f1, f2) or z.contains(f1, f2) or z.contains(f2, f1)

    def adjacent_parallel(self, f: ZFace, g: ZFace) -> ZFace | None:
        """The face one dimension up containing both, when ``f`` and ``g`` are
        distinct adjacent parallel faces."""
        if f.key != g.key or f == g:
            return None
        cov = tuple(s if s == t else 0 for s, t in zip(f.covector, g.covector))
        if not self.z.is_covector(cov):
            return None
        f0 = self.z.face(cov)
        return f0 if f0.dim == f.dim + 1 else None

    def elementary_segment(self, f: ZFace, f_adj: ZFace, x: int) -> Simple:
        self._check_vertex(x, f)
        if self.adjacent_parallel(f, f_adj) is None:
            raise ArrangementError("faces are not adjacent and parallel")
        return Simple(x, self.z.gate(x, f_adj))

    def _face_through(self, c: int, key: Sequence[int]) -> ZFace:
        keys = set(key)
        return self.z.face(tuple(0 if j in keys else s for j, s in enumerate(self.z.chamber_signs[c])))

    def _peel_face_suffix(self, g: NormalForm, key: Sequence[int]) -> tuple[NormalForm, list[Simple]]:
        """Split ``g = h v`` with ``v`` the largest positive path inside the face
        through ``t(g)`` dual to ``key``; returns ``h`` and ``v`` as arrows."""
        kmask = sum(1 << j for j in key)
        rev = self.reverse(g)
        arrows: list[Simple] = []
        while rev.factors:
            c = rev.source
            head = rev.factors[0]
            todo = self.walls(c) & kmask & self.sep(c, head.target)
            if not todo:
                break
            j = (todo & -todo).bit_length() - 1
            d = self._step(c, j)
            arrows.append(Simple(d, c))
            rev = self.left_divide(rev, NormalForm(c, d, (Simple(c, d),)))
        return self.reverse(rev), arrows[::-1]

    def centralizer_decompose(self, f: Morphism, face: ZFace) -> tuple[int, list[Simple], NormalForm]:
        """Write a loop ``f`` at ``x`` centralising ``Delta_x(face)^2`` as
        ``Delta_x^{-2k} u_1 ... u_r v`` with elementary segments ``u_i`` and a
        positive loop ``v`` inside ``face``.  Raises ``ArrangementError`` when
        no such decomposition exists (``f`` is not in the centraliser)."""
        self._require()
        x = f.source
        if f.target != x:
            raise ArrangementError("centralizer_decompose needs a loop")
        self._check_vertex(x, face)
        h, v_arrows = self._peel_face_suffix(f.positive, face.key)
        segments: list[Simple] = []
        while h.factors:
            c = h.target
            current = self._face_through(c, face.key)
            rev = self.reverse(h)
            head = rev.factors[0]
            todo = self.walls(c) & self.sep(c, head.target)
            j = (todo & -todo).bit_length() - 1
            if j in face.key:
                raise ArrangementError("a face arrow divides the remainder: not in the centraliser")
            bigger = self._face_through(c, sorted(self.z.poset.closure(list(face.key) + [j])))
            if bigger.dim != current.dim + 1:
                raise ArrangementError("the next arrow does not span an adjacent face")
            others = [g for g in self.z.parallel_faces(current) if g != current and self.z.contains(bigger, g)]
            if len(others) != 1:
                raise InvariantViolation("expected exactly one adjacent parallel face")
            src = self.z.gate(c, others[0])
            u = NormalForm(src, c, (Simple(src, c),))
            if not self.suffix_divides(u, h):
                raise ArrangementError("elementary segment does not divide: not in the centraliser")
            h = self.right_divide(h, u)
            segments.append(Simple(src, c))
        if h.target != x:
            raise ArrangementError("segments do not return to the base chamber")
        segments.reverse()
        v = self._normalize(x, v_arrows)
        if v.target != x:
            raise ArrangementError("face part is not a loop")
        recomposed = self.compose(self._canonical(x, f.k, self._normalize(x, segments)), self.positive(v))
        if recomposed != f:
            raise ArrangementError("decomposition does not recompose: not in the centraliser")
        return f.k, segments, v

    def standardize(self, f: Morphism, face: ZFace) -> tuple[NormalForm, ZFace]:
        """For ``f`` conjugate to ``Delta(face)^2``, return ``b`` from the
        pn-form ``f = a b^{-1}`` and the face ``F'`` parallel to ``face`` with
        ``b^{-1} f b = Delta_{t(b)}(F')^2``."""
        self._require()
        if f.source != f.target:
            raise ArrangementError("standardize needs a loop")
        _, b = self.pn_normal_form(f)
        y = b.target
        g = self.positive(b)
        conj = self.compose(self.inverse(g), f, g)
        out = self._face_through(y, face.key)
        if conj != self.delta_sq(y, out):
            raise InvariantViolation("pn-form conjugator does not standardize the twist")
        return b, out

    def simultaneous_standardize(self, twists: Sequence[Morphism], faces: Sequence[ZFace]
                                 ) -> tuple[Morphism, list[ZFace]]:
        """Conjugate pairwise commuting twists ``t_i`` (each conjugate to a
        squared Garside element of a face parallel to ``faces[i]``) into
        standard twists at faces sharing a vertex.  Returns ``g`` and the faces
        ``F'_i`` with ``g t_i g^{-1} = dehn_twist(x0, F'_i)``."""
        self._require()
        if not twists or len(twists) != len(faces):
            raise ArrangementError("need one face per twist")
        x0 = twists[0].source
        for t in twists:
            if t.source != x0 or t.target != x0:
                raise ArrangementError("twists must be loops at a common chamber")
        for i in range(len(twists)):
            for j in range(i + 1, len(twists)):
                if not self.commute(twists[i], twists[j]):
                    raise ArrangementError("twists do not pairwise commute")
        c = self.unit(x0)
        current: list[ZFace] = []
        for t, face in zip(twists, faces):
            s = self.compose(self.inverse(c), t, c)
            b, new_face = self.standardize(s, face)
            y = b.target
            bm = self.positive(b)
            moved = []
            for old in current:
                loop = self.compose(self.inverse(bm), self.delta_sq(s.source, old), bm)
                f2 = self._face_through(y, old.key)
                if loop != self.delta_sq(y, f2):
                    raise InvariantViolation("conjugator moved an earlier twist off the standard set")
                moved.append(f2)
            current = moved + [new_face]
            c = self.compose(c, bm)
        y = c.target
        g = self.compose(self.from_simple(Simple(x0, y)), self.inverse(c))
        for t, face in zip(twists, current):
            if self.conjugate(g, t) != self.dehn_twist(x0, face):
                raise InvariantViolation("simultaneous standardization failed to verify")
        return g, current

    # ------------------------------------------------------------------ restriction and retraction

    def restriction_embed(self, flat: Flat, path: Sequence[Letter], base: int = 0,
                          source: int | None = None) -> Morphism:
        """Image of a path in the chamber graph of the restriction to ``flat``.

        A chamber ``v`` of the restriction corresponds to a face of Z dual to
        ``flat``; it is sent to the gate of ``base`` in that face, and each
        arrow to the elementary segment between the images.
        """
        self._require()
        a = self.arrangement
        sub = restriction(a, flat)
        vmap = self.restriction_vertex_map(flat, base)
        zs = zonotope(sub)
        if not path:
            if source is None:
                raise ArrangementError("empty path needs an explicit source")
            return self.unit(vmap[source])
        out = None
        for l in path:
            if zs.distance(l.source, l.target) != 1:
                raise ArrangementError("letters must join adjacent chambers of the restriction")
            seg = self.from_simple(Simple(vmap[l.source], vmap[l.target])) if l.sign > 0 else \
                self.inverse(self.from_simple(Simple(vmap[l.target], vmap[l.source])))
            out = seg if out is None else self.compose(out, seg)
        return out

    def restriction_vertex_map(self, flat: Flat, base: int = 0) -> dict:
        hit = self._vmaps.get((flat.key, base))
        if hit is not None:
            return dict(hit)
        a = self.arrangement
        poset = intersection_poset(a)
        flat = poset.check(flat)
        if not flat.key or flat.dim == 0:
            raise ArrangementError("restriction needs a proper nonzero flat")
        sub = restriction(a, flat)
        origins = restriction_origins(a, flat)
        zs = zonotope(sub)
        key = set(flat.key)
        out = {}
        for v, signs in enumerate(zs.chamber_signs):
            cov = [0] * len(a)
            for j, group in enumerate(origins):
                for i, s in group:
                    cov[i] = s * signs[j]
            for i in key:
                cov[i] = 0
            out[v] = self.z.gate(base, self.z.face(tuple(cov)))
        self._vmaps[(flat.key, base)] = out
        return dict(out)

    def retract_path(self, f: ZFace, path: Sequence[Letter]) -> list[Letter]:
        """Push a path into ``f`` along gates; arrows across hyperplanes not
        dual to an edge of ``f`` collapse."""
        out = []
        for l in path:
            a, b = self.z.gate(l.source, f), self.z.gate(l.target, f)
            if a != b:
                out.append(Letter(a, b, l.sign))
        return out


@lru_cache(maxsize=32)
def groupoid(a: Arrangement) -> DeligneGroupoid:
    return DeligneGroupoid(a)


def random_path(z: Zonotope, rng, start: int, length: int, signed: bool = True) -> list[Letter]:
    """A random walk of ``length`` letters from ``start``."""
    c, out = start, []
    for _ in range(length):
        d = z.neighbor(c, rng.choice(z.wall_list(c)))
        out.append(Letter(c, d, rng.choice((1, -1)) if signed else 1))
        c = d
    return out


def _brute_join(g: DeligneGroupoid, x: int, union: int) -> int:
    best = [c for c in range(g.z.num_chambers) if g.sep(x, c) & union == union]
    low = min(g.z.distance(x, c) for c in best)
    best = [c for c in best if g.z.distance(x, c) == low]
    if len(best) != 1:
        raise InvariantViolation("prefix join is not unique")
    return best[0]


def garside_selftest(a: Arrangement, word_length: int = 8, samples: int = 200, seed: int = 0) -> dict:
    """Run the groupoid invariants on random and exhaustive inputs.

    Returns ``{"checks": {name: bool}, "pass": bool}``.
    """
    import random

    g = groupoid(a)
    g._require()
    z = g.z
    rng = random.Random(seed)
    checks: dict[str, bool] = {}

    ok = True
    for x in range(z.num_chambers):
        arrows = [Simple(x, z.neighbor(x, j)) for j in z.wall_list(x)]
        ok &= g.join_prefix(arrows) == g.delta(x)
        for y in range(z.num_chambers):
            for w in range(y, z.num_chambers):
                s = g.join_prefix([Simple(x, y), Simple(x, w)])
                ok &= s.target == _brute_join(g, x, g.sep(x, y) | g.sep(x, w))
    checks["joins"] = bool(ok)

    ok_center = ok_pn = ok_int = ok_inv = True
    for _ in range(samples):
        x = rng.randrange(z.num_chambers)
        word = random_path(z, rng, x, rng.randint(0, word_length))
        f = g.morphism(word, source=x)
        y = f.target
        ok_center &= g.compose(g.delta_sq(x), f) == g.compose(f, g.delta_sq(y))
        p, q = g.pn_normal_form(f)
        ok_pn &= g.from_pn(p, q) == f and not g.suffix_gcd(p, q).factors
        ok_int &= all(g.signed_intersection(f, h) == g.signed_intersection(word, h) for h in range(z.m))
        ok_inv &= g.compose(f, g.inverse(f)) == g.unit(x)
    checks["delta_square_quasi_central"] = bool(ok_center)
    checks["pn_normal_form"] = bool(ok_pn)
    checks["signed_intersection"] = bool(ok_int)
    checks["inverse"] = bool(ok_inv)

    ok = True
    for _ in range(samples):
        x = rng.randrange(z.num_chambers)
        u = random_path(z, rng, x, rng.randint(0, word_length // 2), signed=False)
        y = u[-1].target if u else x
        v = random_path(z, rng, y, rng.randint(1, word_length // 2), signed=False)
        w = random_path(z, rng, y, len(v), signed=False)
        uv = g.normal_form([x] + [l.target for l in u + v])
        uw = g.normal_form([x] + [l.target for l in u + w])
        nv = g.normal_form([y] + [l.target for l in v])
        nw = g.normal_form([y] + [l.target for l in w])
        ok &= (uv == uw) == (nv == nw)
    checks["left_cancellation"] = bool(ok)

    ok = True
    faces = [f for f in z.faces if 0 < f.dim < z.n and g.is_irreducible_face(f)]
    for i, f1 in enumerate(faces):
        for f2 in faces[i:]:
            common = sorted(set(f1.vertices) & set(f2.vertices))
            if common:
                x = common[0]
                brute = g.commute(g.dehn_twist(x, f1), g.dehn_twist(x, f2))
                ok &= brute == g.commute_standard_predicate(f1, f2)
    checks["commutation_criterion"] = bool(ok)
    return {"checks": checks, "pass": all(checks.values())}
