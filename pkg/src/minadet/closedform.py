"""Closed forms the determinants are checked against.

Stirling numbers of the second kind come from the additive recurrence
S(k+1, m+1) = (m+1) S(k, m+1) + S(k, m) in a cached triangular table: no
divisions, no sign cancellation, exact by construction.  The right-hand
side evaluators are generic over the coefficient ring (they only use *,
+ and integer multiples), so one code path serves both numeric values and
symbolic polynomials.
"""

from __future__ import annotations

import math

from .series import UniSeries


class StirlingTable:
    """Triangular table of Stirling numbers of the second kind S(k, m)."""

    def __init__(self, max_k: int):
        if max_k < 0:
            raise ValueError("table size must be nonnegative")
        rows = [[1]]
        for k in range(max_k):
            prev = rows[k]
            row = [0] * (k + 2)
            for m in range(1, k + 2):
                above = prev[m] if m <= k else 0
                row[m] = m * above + prev[m - 1]
            rows.append(row)
        self.max_k = max_k
        self.rows = rows

    def value(self, k: int, m: int) -> int:
        if k < 0 or m < 0:
            raise ValueError("Stirling indices must be nonnegative")
        if k > self.max_k:
            raise ValueError(f"table only holds k <= {self.max_k}")
        return self.rows[k][m] if m <= k else 0


_table = StirlingTable(32)


def stirling2(k: int, m: int) -> int:
    """S(k, m): partitions of k labeled objects into m nonempty blocks."""
    global _table
    if k > _table.max_k:
        # replace, never mutate: concurrent readers keep a consistent table
        _table = StirlingTable(max(k, 2 * _table.max_k))
    return _table.value(k, m)


def superfactorial(n: int) -> int:
    """1! 2! ... n!; the empty product for n = 0."""
    if n < 0:
        raise ValueError("superfactorial of a negative number")
    out = 1
    for k in range(2, n + 1):
        out *= math.factorial(k)
    return out


def power_det_closed_form(a1, n: int):
    """Determinant of the multiplicative-power matrix: a1^(n(n+1)/2)."""
    if n < 0:
        raise ValueError("matrix size must be nonnegative")
    return a1 ** (n * (n + 1) // 2)


def iteration_det_closed_form(b1, n: int):
    """Determinant of the compositional-iterate matrix: 1!2!...n! b1^(n(n+1)/2)."""
    if n < 0:
        raise ValueError("matrix size must be nonnegative")
    return superfactorial(n) * b1 ** (n * (n + 1) // 2)


def bivariate_det_closed_form(b20, b11, n: int):
    """Determinant of the bivariate-iteration matrix.

    The product over k = 1..n of sum_{m=0}^{k} m! S(k+1, m+1) b20^m b11^(k-m);
    only the two coefficients b[2,0] and b[1,1] enter.  Works for rational
    and for polynomial arguments alike.
    """
    if n < 0:
        raise ValueError("matrix size must be nonnegative")
    result = b20 ** 0 * b11 ** 0
    for k in range(1, n + 1):
        inner = None
        for m in range(k + 1):
            weight = math.factorial(m) * stirling2(k + 1, m + 1)
            term = weight * b20 ** m * b11 ** (k - m)
            inner = term if inner is None else inner + term
        result = result * inner
    return result


def derivative_det_closed_form(f: UniSeries, n: int) -> UniSeries:
    """Determinant of the derivative-power matrix, as a truncated series.

    Equals 1!2!...n! f'(x)^(n(n+1)/2), trustworthy to order f.order - n
    (each j-th derivative of an order-M truncation is only known to M - j).
    """
    if n < 0:
        raise ValueError("matrix size must be nonnegative")
    if f.order < n:
        raise ValueError(f"series order {f.order} too small for n = {n}")
    window = f.order - n
    exponent = n * (n + 1) // 2
    if exponent == 0:
        return UniSeries.constant(f.ring, f.ring.one, window)
    base = f.derivative().truncate(window)
    return base ** exponent * f.ring.from_int(superfactorial(n))
