"""Exact linear algebra over the rationals (and the quadratic field Q(sqrt 5)).

Every routine here works on plain tuples of exact scalars.  Rational data is
held as ``int`` or :class:`fractions.Fraction`; the only irrational data that
ever appears is the golden ratio needed by the icosahedral arrangement, which
is carried by :class:`QSqrt5`.  Nothing in the package touches floats.

Subspaces are stored in a canonical reduced row echelon form, so two
:class:`SubspaceBasis` objects describe the same subspace exactly when they
compare equal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence

__all__ = [
    "EchelonSpan",
    "QSqrt5",
    "SubspaceBasis",
    "as_scalar",
    "coordinates",
    "dot",
    "intersect",
    "is_rational",
    "nullspace",
    "orthogonal_complement",
    "primitive",
    "rank",
    "rref",
    "sign",
    "smith_normal_form",
]


class QSqrt5:
    """An element ``(p + q*sqrt(5)) / d`` of the ordered field Q(sqrt 5).

    Stored with integer ``p, q`` and a positive common denominator ``d`` in
    lowest terms, which keeps arithmetic fast.
    """

    __slots__ = ("p", "q", "d")

    def __init__(self, a=0, b=0):
        a, b = Fraction(a), Fraction(b)
        d = math.lcm(a.denominator, b.denominator)
        self._set(a.numerator * (d // a.denominator), b.numerator * (d // b.denominator), d)

    def _set(self, p: int, q: int, d: int):
        g = math.gcd(math.gcd(p, q), d)
        if d < 0:
            g = -g
        self.p, self.q, self.d = p // g, q // g, d // g

    @classmethod
    def _raw(cls, p: int, q: int, d: int) -> QSqrt5:
        obj = cls.__new__(cls)
        obj._set(p, q, d)
        return obj

    @classmethod
    def golden(cls) -> QSqrt5:
        return cls._raw(1, 1, 2)

    @property
    def a(self) -> Fraction:
        return Fraction(self.p, self.d)

    @property
    def b(self) -> Fraction:
        return Fraction(self.q, self.d)

    @staticmethod
    def _lift(other):
        if isinstance(other, QSqrt5):
            return other
        if isinstance(other, int):
            return QSqrt5._raw(other, 0, 1)
        if isinstance(other, Fraction):
            return QSqrt5._raw(other.numerator, 0, other.denominator)
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return QSqrt5._raw(self.p * o.d + o.p * self.d, self.q * o.d + o.q * self.d, self.d * o.d)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return QSqrt5._raw(self.p * o.d - o.p * self.d, self.q * o.d - o.q * self.d, self.d * o.d)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return QSqrt5._raw(self.p * o.p + 5 * self.q * o.q, self.p * o.q + self.q * o.p, self.d * o.d)

    __rmul__ = __mul__

    def __neg__(self):
        return QSqrt5._raw(-self.p, -self.q, self.d)

    def __pos__(self):
        return self

    def inverse(self) -> QSqrt5:
        norm = self.p * self.p - 5 * self.q * self.q
        if norm == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt 5)")
        # d / (p + q r) = d (p - q r) / norm
        return QSqrt5._raw(self.d * self.p, -self.d * self.q, norm)

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self._lift(other) * self.inverse()

    def sign(self) -> int:
        sa = (self.p > 0) - (self.p < 0)
        sb = (self.q > 0) - (self.q < 0)
        if sa == sb or sb == 0:
            return sa
        if sa == 0:
            return sb
        # opposite signs: compare p^2 with 5 q^2
        return sa if self.p * self.p > 5 * self.q * self.q else sb

    def __bool__(self):
        return bool(self.p) or bool(self.q)

    def __eq__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self.p == o.p and self.q == o.q and self.d == o.d

    def __hash__(self):
        if self.q == 0:
            return hash(Fraction(self.p, self.d))
        return hash((self.p, self.q, self.d))

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def __repr__(self):
        return f"QSqrt5({self.a}, {self.b})"

    def __str__(self):
        if self.q == 0:
            return str(self.a)
        if self.p == 0:
            return f"{self.b}*sqrt5"
        op = "+" if self.q > 0 else "-"
        return f"{self.a}{op}{abs(self.b)}*sqrt5"


def as_scalar(x):
    """Coerce ``x`` to an exact scalar, refusing floats."""
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, (int, Fraction, QSqrt5)):
        return x
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"inexact or unsupported scalar {x!r}")


def is_rational(x) -> bool:
    return not isinstance(x, QSqrt5) or x.q == 0


def _rational(x) -> Fraction:
    return x.a if isinstance(x, QSqrt5) else Fraction(x)


def sign(x) -> int:
    if isinstance(x, QSqrt5):
        return x.sign()
    return (x > 0) - (x < 0)


def _div(x, y):
    if isinstance(x, int) and isinstance(y, int):
        return Fraction(x, y)
    return x / y


def dot(u: Sequence, v: Sequence):
    return sum((a * b for a, b in zip(u, v)), 0)


def rref(rows: Iterable[Sequence], ncols: int | None = None):
    """Reduced row echelon form with unit pivots.

    Returns ``(rows, pivots)`` where ``rows`` holds only the nonzero rows.
    """
    mat = [[as_scalar(x) for x in row] for row in rows]
    if ncols is None:
        ncols = len(mat[0]) if mat else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == len(mat):
            break
        p = next((i for i in range(r, len(mat)) if mat[i][c] != 0), None)
        if p is None:
            continue
        mat[r], mat[p] = mat[p], mat[r]
        piv = mat[r][c]
        mat[r] = [_div(x, piv) for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
    return tuple(tuple(row) for row in mat[:r]), tuple(pivots)


def rank(rows: Iterable[Sequence]) -> int:
    """Rank of a matrix given as a sequence of rows."""
    rows = list(rows)
    if not rows:
        return 0
    return len(rref(rows)[1])


class EchelonSpan:
    """A row space kept in echelon form for repeated membership tests."""

    __slots__ = ("ncols", "rows", "pivots")

    def __init__(self, ncols: int, vectors: Iterable[Sequence] = ()):
        self.ncols = ncols
        self.rows: list[list] = []
        self.pivots: list[int] = []
        for v in vectors:
            self.add(v)

    def residual(self, v: Sequence) -> list:
        v = list(v)
        for row, p in zip(self.rows, self.pivots):
            if v[p] != 0:
                f = v[p]
                v = [x - f * y for x, y in zip(v, row)]
        return v

    def contains(self, v: Sequence) -> bool:
        return not any(x != 0 for x in self.residual(v))

    def add(self, v: Sequence) -> bool:
        """Add ``v``; returns whether the span grew."""
        r = self.residual(v)
        p = next((i for i, x in enumerate(r) if x != 0), None)
        if p is None:
            return False
        piv = r[p]
        self.rows.append([_div(x, piv) for x in r])
        self.pivots.append(p)
        return True

    def copy(self) -> EchelonSpan:
        other = EchelonSpan(self.ncols)
        other.rows = list(self.rows)
        other.pivots = list(self.pivots)
        return other

    @property
    def dim(self) -> int:
        return len(self.rows)


def primitive(vec: Sequence) -> tuple:
    """Canonical positive multiple of a nonzero vector.

    Rational vectors become primitive integer vectors; other vectors are
    scaled so that the first nonzero entry is 1.  In both cases the first
    nonzero entry is positive.
    """
    vec = [as_scalar(x) for x in vec]
    lead = next((x for x in vec if x != 0), None)
    if lead is None:
        raise ValueError("zero vector has no primitive form")
    if all(is_rational(x) for x in vec):
        fr = [_rational(x) for x in vec]
        den = reduce(math.lcm, (x.denominator for x in fr), 1)
        ints = [int(x * den) for x in fr]
        g = reduce(math.gcd, ints, 0)
        s = 1 if sign(lead) > 0 else -1
        return tuple(s * x // g for x in ints)
    return tuple(x / lead for x in vec)


def _canonical(rows: Iterable[Sequence], ncols: int) -> tuple:
    red, _ = rref(rows, ncols)
    return tuple(primitive(row) for row in red)


def nullspace(rows: Sequence[Sequence], ncols: int) -> tuple:
    """Basis of ``{x : row . x = 0 for every row}``."""
    red, pivots = rref(rows, ncols) if rows else ((), ())
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(tuple(v))
    return tuple(basis)


@dataclass(frozen=True)
class SubspaceBasis:
    """A linear subspace of an ``ambient_dim``-dimensional coordinate space.

    ``basis`` is the canonical echelon basis, so equality is exact subspace
    equality.
    """

    ambient_dim: int
    basis: tuple

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient_dim: int) -> SubspaceBasis:
        vectors = [tuple(v) for v in vectors]
        for v in vectors:
            if len(v) != ambient_dim:
                raise ValueError("vector length does not match ambient dimension")
        return cls(ambient_dim, _canonical(vectors, ambient_dim) if vectors else ())

    @classmethod
    def full(cls, ambient_dim: int) -> SubspaceBasis:
        eye = [[int(i == j) for j in range(ambient_dim)] for i in range(ambient_dim)]
        return cls.span(eye, ambient_dim)

    @classmethod
    def zero(cls, ambient_dim: int) -> SubspaceBasis:
        return cls(ambient_dim, ())

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, v: Sequence) -> bool:
        return rank(list(self.basis) + [tuple(v)]) == self.dim

    def __le__(self, other: SubspaceBasis) -> bool:
        return all(other.contains(v) for v in self.basis)


def orthogonal_complement(s: SubspaceBasis) -> SubspaceBasis:
    """Complement with respect to the standard inner product."""
    return SubspaceBasis.span(nullspace(s.basis, s.ambient_dim), s.ambient_dim)


def intersect(subspaces: Sequence[SubspaceBasis], ambient_dim: int | None = None) -> SubspaceBasis:
    """Intersection of subspaces; the empty intersection is the whole space."""
    subspaces = list(subspaces)
    dims = {s.ambient_dim for s in subspaces}
    if ambient_dim is not None:
        dims.add(ambient_dim)
    if len(dims) != 1:
        raise ValueError("subspaces live in different ambient dimensions")
    (n,) = dims
    equations = [row for s in subspaces for row in orthogonal_complement(s).basis]
    return SubspaceBasis.span(nullspace(equations, n), n)


def coordinates(s: SubspaceBasis, v: Sequence) -> tuple:
    """Coefficients of ``v`` in the canonical basis of ``s``."""
    _, pivots = rref(s.basis, s.ambient_dim)
    coeffs = tuple(_div(v[p], b[p]) for b, p in zip(s.basis, pivots))
    recon = [sum((c * b[i] for c, b in zip(coeffs, s.basis)), 0) for i in range(s.ambient_dim)]
    if any(x != y for x, y in zip(recon, v)):
        raise ValueError("vector does not lie in the subspace")
    return coeffs


def smith_normal_form(matrix: Sequence[Sequence[int]]):
    """Invariant factors of an integer matrix.

    Returns ``(diagonal, rank)`` where ``diagonal`` lists the nonzero
    invariant factors ``d1 | d2 | ...``.  Pivots are chosen by least absolute
    value to keep entries small.
    """
    m = [[int(x) for x in row] for row in matrix]
    if any(len(row) != len(m[0]) for row in m):
        raise ValueError("ragged matrix")
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    diag: list[int] = []
    t = 0
    while t < min(nrows, ncols):
        best = None
        for i in range(t, nrows):
            for j in range(t, ncols):
                x = m[i][j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
        if best is None:
            break
        _, i, j = best
        m[t], m[i] = m[i], m[t]
        for row in m:
            row[t], row[j] = row[j], row[t]
        while True:
            piv = m[t][t]
            dirty = False
            for i in range(t + 1, nrows):
                if m[i][t]:
                    q = m[i][t] // piv
                    if q:
                        m[i] = [a - q * b for a, b in zip(m[i], m[t])]
                    if m[i][t]:
                        dirty = True
            for j in range(t + 1, ncols):
                if m[t][j]:
                    q = m[t][j] // piv
                    if q:
                        for row in m:
                            row[j] -= q * row[t]
                    if m[t][j]:
                        dirty = True
            if not dirty:
                bad = next(((i, j) for i in range(t + 1, nrows) for j in range(t + 1, ncols)
                            if m[i][j] % piv), None)
                if bad is None:
                    break
                m[t] = [a + b for a, b in zip(m[t], m[bad[0]])]
                dirty = True
            # move the smallest nonzero entry of row/column t to the pivot
            cands = [(abs(m[i][t]), i, t) for i in range(t, nrows) if m[i][t]]
            cands += [(abs(m[t][j]), t, j) for j in range(t, ncols) if m[t][j]]
            _, i, j = min(cands)
            m[t], m[i] = m[i], m[t]
            for row in m:
                row[t], row[j] = row[j], row[t]
        diag.append(abs(m[t][t]))
        t += 1
    return tuple(diag), len(diag)
