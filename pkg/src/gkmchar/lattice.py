"""Integer lattice utilities: primitive vectors, unimodular basis completion,
coordinate changes and circle-subgroup orders.

Vectors and weights are plain tuples of Python ints, so all arithmetic is
arbitrary precision.  A weight pairs with a lattice vector through the usual
dot product.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction


class ZeroVector(ValueError):
    """The zero vector has no primitive part."""


class NotPrimitive(ValueError):
    """Operation requires a primitive lattice vector."""


IntVec = tuple[int, ...]


def dot(a, b) -> int:
    if len(a) != len(b):
        raise ValueError(f"dimension mismatch: {len(a)} vs {len(b)}")
    return sum(x * y for x, y in zip(a, b))


def vadd(a, b):
    return tuple(x + y for x, y in zip(a, b))


def vsub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def vneg(a):
    return tuple(-x for x in a)


def vscale(a, c):
    return tuple(c * x for x in a)


def vector_gcd(v) -> int:
    return math.gcd(*(abs(x) for x in v)) if v else 0


def primitive_part(v) -> tuple[IntVec, int]:
    """Split a nonzero integer vector into (primitive vector, multiplicity).

    The multiplicity is the gcd of the absolute values of the coordinates,
    so multiplicity * primitive == v and the primitive part keeps the
    direction of v.
    """
    v = tuple(v)
    g = vector_gcd(v)
    if g == 0:
        raise ZeroVector("zero vector has no primitive part")
    return tuple(x // g for x in v), g


def is_primitive(v) -> bool:
    return vector_gcd(tuple(v)) == 1


@dataclass(frozen=True)
class BasisChange:
    """A unimodular change of basis whose last basis vector is a chosen xi.

    matrix holds the basis vectors as *columns* (row-major storage);
    inverse is its exact integer inverse.
    """

    matrix: tuple[tuple[int, ...], ...]
    inverse: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return len(self.matrix)

    def column(self, j) -> IntVec:
        return tuple(row[j] for row in self.matrix)

    @property
    def xi(self) -> IntVec:
        return self.column(self.n - 1)


def _mat_mul_vec(m, v):
    return tuple(dot(row, v) for row in m)


def _invert_unimodular(m):
    """Exact inverse of an integer matrix with determinant +-1."""
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(m)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise ValueError("matrix is singular")
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    out = []
    for i in range(n):
        row = a[i][n:]
        if any(x.denominator != 1 for x in row):
            raise ValueError("matrix is not unimodular")
        out.append(tuple(int(x) for x in row))
    return tuple(out)


def det(m) -> int:
    """Exact determinant via fraction-free-ish Gaussian elimination."""
    n = len(m)
    a = [[Fraction(x) for x in row] for row in m]
    sign = 1
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return 0
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            sign = -sign
        for r in range(col + 1, n):
            if a[r][col] != 0:
                f = a[r][col] / a[col][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    d = Fraction(sign)
    for i in range(n):
        d *= a[i][i]
    assert d.denominator == 1
    return int(d)


def complete_to_basis(xi) -> BasisChange:
    """Complete a primitive vector xi to a lattice basis, xi last.

    Returns a BasisChange whose matrix has determinant +-1 and whose last
    column is xi.  The completion is found by reducing xi to the last
    standard basis vector with integer row operations.
    """
    xi = tuple(xi)
    if not is_primitive(xi):
        raise NotPrimitive(f"{xi} is not primitive")
    n = len(xi)
    # v: accumulated row operations with v @ xi == e_n
    v = [[int(i == j) for j in range(n)] for i in range(n)]
    x = list(xi)
    for i in range(n - 1):
        a, b = x[i], x[n - 1]
        if a == 0:
            continue
        g = math.gcd(a, b)
        s, t = _xgcd(a, b)
        # 2x2 unimodular block sending (a, b) to (0, g)
        p, q = -(b // g), a // g
        row_i = [p * v[i][j] + q * v[n - 1][j] for j in range(n)]
        row_n = [s * v[i][j] + t * v[n - 1][j] for j in range(n)]
        v[i], v[n - 1] = row_i, row_n
        x[i], x[n - 1] = p * a + q * b, g
    if x[n - 1] == -1:
        v[n - 1] = [-c for c in v[n - 1]]
        x[n - 1] = 1
    assert x == [0] * (n - 1) + [1]
    vt = tuple(tuple(row) for row in v)
    u = _invert_unimodular(vt)
    return BasisChange(matrix=u, inverse=vt)


def _xgcd(a: int, b: int) -> tuple[int, int]:
    """Bezout coefficients (s, t) with s*a + t*b == gcd(a, b) >= 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_s, old_t = -old_s, -old_t
    return old_s, old_t


def weight_in_basis(alpha, basis: BasisChange) -> tuple[IntVec, int]:
    """Express a weight in the coordinates dual to the basis columns.

    Returns (beta, k) where k = alpha(xi) and beta collects the pairings
    with the first n-1 basis vectors.  Inverted by weight_from_basis.
    """
    alpha = tuple(alpha)
    n = basis.n
    full = tuple(dot(alpha, basis.column(j)) for j in range(n))
    return full[:-1], full[-1]


def weight_from_basis(beta, k: int, basis: BasisChange) -> IntVec:
    """Inverse of weight_in_basis: rebuild the weight from (beta, k)."""
    full = tuple(beta) + (k,)
    n = basis.n
    return tuple(sum(full[j] * basis.inverse[j][i] for j in range(n))
                 for i in range(n))


def cyclic_fiber_order(alpha, xi) -> int:
    """Order |alpha(xi)| of the finite cyclic intersection subgroup.

    Returns 0 exactly when the pairing vanishes, i.e. when the circle
    generated by xi sits inside the kernel of the character of alpha.
    """
    return abs(dot(alpha, xi))
