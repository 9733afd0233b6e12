"""Built-in arrangement families (reflection arrangements and friends)."""

from __future__ import annotations

import itertools

from .arrangement import Arrangement, direct_sum, essentialize
from .errors import ArrangementError
from .exactlin import QSqrt5

__all__ = ["boolean", "braid", "dihedral", "direct_sum", "h3", "type_b"]


def braid(n: int) -> Arrangement:
    """Type A_{n-1}: hyperplanes x_i = x_j in R^n, essentialized to rank n-1."""
    if n < 2:
        raise ArrangementError("braid arrangement needs n >= 2")
    pairs = list(itertools.combinations(range(n), 2))
    normals = []
    for i, j in pairs:
        v = [0] * n
        v[i], v[j] = 1, -1
        normals.append(v)
    labels = [f"x{i + 1}=x{j + 1}" for i, j in pairs]
    ess, _ = essentialize(Arrangement.from_normals(normals, n, labels))
    return ess


def type_b(n: int) -> Arrangement:
    """Type B_n: x_i = 0 and x_i = ±x_j."""
    if n < 1:
        raise ArrangementError("type B needs n >= 1")
    normals, labels = [], []
    for i in range(n):
        v = [0] * n
        v[i] = 1
        normals.append(v)
        labels.append(f"x{i + 1}=0")
    for i, j in itertools.combinations(range(n), 2):
        for s in (-1, 1):
            v = [0] * n
            v[i], v[j] = 1, s
            normals.append(v)
            labels.append(f"x{i + 1}={'' if s < 0 else '-'}x{j + 1}")
    return Arrangement.from_normals(normals, n, labels)


def dihedral(m: int) -> Arrangement:
    """``m`` distinct lines through the origin of the plane (type I2(m)).

    Only the combinatorics matters here, so rational directions
    (1,0), (1,1), ..., (1,m-2), (0,1) are used.
    """
    if m < 2:
        raise ArrangementError("dihedral arrangement needs m >= 2")
    normals = [(1, k) for k in range(m - 1)] + [(0, 1)]
    return Arrangement.from_normals(normals, 2)


def boolean(n: int) -> Arrangement:
    """The coordinate hyperplanes of R^n."""
    if n < 1:
        raise ArrangementError("boolean arrangement needs n >= 1")
    return Arrangement.from_normals([[int(i == j) for j in range(n)] for i in range(n)], n,
                                    [f"x{i + 1}=0" for i in range(n)])


def h3() -> Arrangement:
    """The 15 reflection planes of the icosahedral group, over Q(sqrt 5)."""
    tau = QSqrt5.golden()
    normals = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    base = (QSqrt5(1), tau, tau - 1)
    for shift in range(3):
        for s1, s2 in itertools.product((1, -1), repeat=2):
            v = [base[0], s1 * base[1], s2 * base[2]]
            normals.append(tuple(v[(k - shift) % 3] for k in range(3)))
    return Arrangement.from_normals(normals, 3)
