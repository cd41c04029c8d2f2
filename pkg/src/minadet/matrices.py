"""Exact linear algebra over a coefficient ring.

Three determinant algorithms with distinct failure modes are kept side by
side and cross-validated: fraction-free elimination (Bareiss), a
division-free characteristic-polynomial method (Berkowitz), and the
definitional permutation sum as a brute-force oracle.  Exact verification
is the whole point of this package, so a single determinant code path
would be an untrusted oracle.
"""

from __future__ import annotations

import math
from itertools import permutations
from typing import NamedTuple

from .rings import QQ, Ring
from .series import BiSeries, SeriesRing, UniSeries

LEIBNIZ_MAX_DIM = 7  # 8! products of big scalars is past desk scale


class RingMatrix:
    """Dense square matrix over a coefficient ring, row-major, immutable."""

    __slots__ = ("ring", "dim", "entries")

    def __init__(self, ring: Ring, dim: int, entries):
        if dim < 1:
            raise ValueError("matrix dimension must be at least 1")
        entries = tuple(ring.coerce(e) for e in entries)
        if len(entries) != dim * dim:
            raise ValueError(
                f"dimension {dim} needs {dim * dim} entries, got {len(entries)}"
            )
        self.ring = ring
        self.dim = dim
        self.entries = entries

    @classmethod
    def from_rows(cls, ring: Ring, rows) -> "RingMatrix":
        rows = [list(r) for r in rows]
        if any(len(r) != len(rows) for r in rows):
            raise ValueError("matrix rows must form a square")
        return cls(ring, len(rows), [e for r in rows for e in r])

    @classmethod
    def identity(cls, ring: Ring, dim: int) -> "RingMatrix":
        return cls(
            ring,
            dim,
            [ring.one if i == j else ring.zero for i in range(dim) for j in range(dim)],
        )

    def entry(self, i: int, j: int):
        if not (0 <= i < self.dim and 0 <= j < self.dim):
            raise ValueError(f"entry ({i},{j}) outside dimension {self.dim}")
        return self.entries[i * self.dim + j]

    def row(self, i: int):
        return self.entries[i * self.dim : (i + 1) * self.dim]

    def rows(self):
        return [list(self.row(i)) for i in range(self.dim)]

    def __mul__(self, other):
        if not isinstance(other, RingMatrix):
            return NotImplemented
        if other.dim != self.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")
        if other.ring != self.ring:
            raise ValueError("matrix product needs a common coefficient ring")
        zero = self.ring.zero
        out = []
        for i in range(self.dim):
            left = self.row(i)
            for j in range(self.dim):
                acc = zero
                for k in range(self.dim):
                    acc = acc + left[k] * other.entry(k, j)
                out.append(acc)
        return RingMatrix(self.ring, self.dim, out)

    def __eq__(self, other):
        if not isinstance(other, RingMatrix):
            return NotImplemented
        return (
            self.dim == other.dim
            and self.ring == other.ring
            and all(self.ring.eq(a, b) for a, b in zip(self.entries, other.entries))
        )

    __hash__ = None

    def dump(self) -> str:
        """Rows of tab-separated exact scalar text, one row per line."""
        return "\n".join(
            "\t".join(self.ring.format(e) for e in self.row(i))
            for i in range(self.dim)
        )

    def __repr__(self):
        return f"RingMatrix(dim={self.dim}, ring={self.ring.name})"


# ---------------------------------------------------------------------------
# theorem-matrix builders
# ---------------------------------------------------------------------------

def power_matrix(f: UniSeries, n: int) -> RingMatrix:
    """(n+1)x(n+1) matrix whose entry (i, j) is the x^j coefficient of f^i.

    f must have constant term 1; row 0 is then (1, 0, ..., 0) because
    f^0 = 1.  The running power is kept across rows (one series product
    per row instead of a fresh exponentiation).
    """
    if n < 0:
        raise ValueError("matrix size must be nonnegative")
    ring = f.ring
    if not ring.eq(f.coefficient(0), ring.one):
        raise ValueError("power matrix needs a series with constant term 1")
    if f.order < n:
        raise ValueError(f"series order {f.order} too small for n = {n}")
    f = f.truncate(n)
    rows = []
    current = UniSeries.constant(ring, ring.one, n)
    for i in range(n + 1):
        if i > 0:
            current = current * f
        rows.append([current.coefficient(j) for j in range(n + 1)])
    return RingMatrix.from_rows(ring, rows)


def iteration_matrix(f: UniSeries, n: int) -> RingMatrix:
    """Entry (i, j) is the x^(j+1) coefficient of the i-th compositional iterate.

    f must look like x + b1 x^2 + ...; the 0-th iterate is x itself, so
    row 0 is (1, 0, ..., 0).
    """
    if n < 0:
        raise ValueError("matrix size must be nonnegative")
    ring = f.ring
    if f.order < n + 1:
        raise ValueError(f"series order {f.order} too small for n = {n}")
    if not ring.is_zero(f.coefficient(0)) or not ring.eq(f.coefficient(1), ring.one):
        raise ValueError(
            "iteration matrix needs a series of the shape x + b1*x^2 + ..."
        )
    f = f.truncate(n + 1)
    rows = []
    current = UniSeries.identity(ring, n + 1)
    for i in range(n + 1):
        if i > 0:
            current = f.compose(current)
        rows.append([current.coefficient(j + 1) for j in range(n + 1)])
    return RingMatrix.from_rows(ring, rows)


def bivariate_iteration_matrix(F: BiSeries, n: int) -> RingMatrix:
    """Entry (i, j) is the x^(j+1) coefficient of the i-th bivariate iterate.

    F must have b[1,0] = 1.  The running iterate is maintained across rows;
    iterating from scratch for every row would be quadratic in n.
    """
    if n < 0:
        raise ValueError("matrix size must be nonnegative")
    ring = F.ring
    if F.order < n + 1:
        raise ValueError(f"series order {F.order} too small for n = {n}")
    if not ring.eq(F.coefficient(1, 0), ring.one):
        raise ValueError("bivariate iteration needs leading coefficient b[1,0] = 1")
    F = F.truncate(n + 1)
    rows = []
    current = UniSeries.identity(ring, n + 1)
    for i in range(n + 1):
        if i > 0:
            current = F.substitute(current)
        rows.append([current.coefficient(j + 1) for j in range(n + 1)])
    return RingMatrix.from_rows(ring, rows)


def derivative_power_matrix(f: UniSeries, n: int) -> RingMatrix:
    """Matrix of j-th derivatives of f^i, over the series ring.

    The j-th derivative of an order-M truncation is only trustworthy to
    order M - j, so every entry is aligned to the shortest row order M - n
    and the matrix lives over SeriesRing(f.ring, M - n).
    """
    if n < 0:
        raise ValueError("matrix size must be nonnegative")
    if f.order < n:
        raise ValueError(f"series order {f.order} too small for n = {n}")
    window = f.order - n
    ring = SeriesRing(f.ring, window)
    rows = []
    current = UniSeries.constant(f.ring, f.ring.one, f.order)
    for i in range(n + 1):
        if i > 0:
            current = current * f
        row = []
        entry = current
        for j in range(n + 1):
            if j > 0:
                entry = entry.derivative()
            row.append(entry.truncate(window))
        rows.append(row)
    return RingMatrix.from_rows(ring, rows)


def binomial_transform(n: int, ring: Ring = QQ) -> RingMatrix:
    """Lower-triangular matrix with entries (-1)^(i+j) C(i, j), unit diagonal."""
    if n < 0:
        raise ValueError("matrix size must be nonnegative")
    entries = []
    for i in range(n + 1):
        for j in range(n + 1):
            if j > i:
                entries.append(ring.zero)
            else:
                value = math.comb(i, j)
                entries.append(ring.from_int(-value if (i + j) % 2 else value))
    return RingMatrix(ring, n + 1, entries)


# ---------------------------------------------------------------------------
# determinants
# ---------------------------------------------------------------------------

def det_bareiss(matrix: RingMatrix):
    """Exact determinant by fraction-free Gaussian elimination.

    Every internal division is routed through the ring's exact_div, which
    raises rather than truncate: over an integral domain the Bareiss
    quotients are exact, so a failure here means a ring-contract violation
    and must abort loudly.  Pivoting takes the first nonzero entry in the
    column (exact arithmetic needs no magnitude pivoting, and determinism
    keeps test output reproducible); an all-zero pivot column means the
    determinant is zero.
    """
    ring = matrix.ring
    if not ring.has_exact_div:
        raise TypeError(
            f"ring {ring.name!r} has no exact division; use det_division_free"
        )
    n = matrix.dim
    a = matrix.rows()
    sign = 1
    previous_pivot = ring.one
    for k in range(n - 1):
        pivot_row = next(
            (i for i in range(k, n) if not ring.is_zero(a[i][k])), None
        )
        if pivot_row is None:
            return ring.zero
        if pivot_row != k:
            a[k], a[pivot_row] = a[pivot_row], a[k]
            sign = -sign
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = ring.exact_div(
                    pivot * a[i][j] - a[i][k] * a[k][j], previous_pivot
                )
            a[i][k] = ring.zero
        previous_pivot = pivot
    result = a[n - 1][n - 1]
    return result if sign == 1 else ring.neg(result)


def det_division_free(matrix: RingMatrix):
    """Exact determinant using ring operations only (Berkowitz).

    Builds the characteristic polynomial of each leading principal block
    from the previous one through a Toeplitz product, so it works over any
    commutative ring: polynomial entries, series entries, anything without
    division.  The determinant is (-1)^n times the constant coefficient.
    """
    ring = matrix.ring
    n = matrix.dim
    a = matrix.rows()
    zero = ring.zero
    # coefficient vector of det(lambda*I - block), leading block of size 1
    char = [ring.one, ring.neg(a[0][0])]
    for k in range(1, n):
        row = a[k][:k]
        column = [a[i][k] for i in range(k)]
        # Toeplitz column: 1, -a[k][k], -row.column, -row.block.column, ...
        toeplitz = [ring.one, ring.neg(a[k][k])]
        vec = column
        for step in range(k):
            dot = zero
            for r, v in zip(row, vec):
                dot = dot + r * v
            toeplitz.append(ring.neg(dot))
            if step < k - 1:
                vec = [
                    _dot(ring, a[i][:k], vec) for i in range(k)
                ]
        new_char = []
        for i in range(k + 2):
            acc = zero
            for j in range(max(0, i - k - 1), min(i, k) + 1):
                acc = acc + toeplitz[i - j] * char[j]
            new_char.append(acc)
        char = new_char
    constant = char[n]
    return constant if n % 2 == 0 else ring.neg(constant)


def _dot(ring, xs, ys):
    acc = ring.zero
    for x, y in zip(xs, ys):
        acc = acc + x * y
    return acc


def det_leibniz(matrix: RingMatrix):
    """The definitional signed permutation sum; the brute-force oracle."""
    n = matrix.dim
    if n > LEIBNIZ_MAX_DIM:
        raise ValueError(
            f"permutation-sum determinant capped at dimension {LEIBNIZ_MAX_DIM}"
        )
    ring = matrix.ring
    a = matrix.rows()
    total = ring.zero
    for perm in permutations(range(n)):
        inversions = sum(
            1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j]
        )
        term = ring.one
        for i in range(n):
            term = term * a[i][perm[i]]
        total = total + (ring.neg(term) if inversions % 2 else term)
    return total


class TriangularizationResult(NamedTuple):
    is_upper: bool
    diag_product: object


def triangularization_check(b: RingMatrix, c: RingMatrix) -> TriangularizationResult:
    """Multiply b*c, test strict upper triangularity, take the diagonal product.

    With b the unit-determinant binomial transform, an upper-triangular
    b*c recovers det(c) as the product of the diagonal of b*c; this is the
    executable core of the proof of all three determinant identities.
    """
    if b.dim != c.dim:
        raise ValueError(f"dimension mismatch: {b.dim} vs {c.dim}")
    product = b * c
    ring = product.ring
    is_upper = all(
        ring.is_zero(product.entry(i, j))
        for i in range(product.dim)
        for j in range(i)
    )
    diag = ring.one
    for i in range(product.dim):
        diag = diag * product.entry(i, i)
    return TriangularizationResult(is_upper, diag)
