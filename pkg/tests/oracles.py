"""Brute-force reference implementations used only by the test suite.

Everything here is written for obviousness, not speed, and deliberately
avoids the algorithms used by the package (Horner composition, Bareiss,
Berkowitz, the Stirling recurrence) so that agreement is meaningful.
"""

from fractions import Fraction
from itertools import permutations


def convolve(a, b, order):
    """Cauchy product of two coefficient lists, truncated to `order`."""
    out = [Fraction(0)] * (order + 1)
    for i, ai in enumerate(a):
        for j, bj in enumerate(b):
            if i + j <= order:
                out[i + j] += Fraction(ai) * Fraction(bj)
    return out


def power(coeffs, exponent, order):
    """coeffs**exponent by repeated convolution."""
    out = [Fraction(1)] + [Fraction(0)] * order
    for _ in range(exponent):
        out = convolve(out, coeffs, order)
    return out


def compose(outer, inner, order):
    """outer(inner) via an explicit power table: sum_k outer[k] * inner**k."""
    assert Fraction(inner[0]) == 0
    out = [Fraction(0)] * (order + 1)
    for k, ck in enumerate(outer):
        for j, pj in enumerate(power(inner, k, order)):
            out[j] += Fraction(ck) * pj
    return out


def iterate(coeffs, times, order):
    """times-fold self-composition of a zero-constant-term series."""
    out = [Fraction(0), Fraction(1)] + [Fraction(0)] * (order - 1)
    for _ in range(times):
        out = compose(coeffs, out, order)
    return out


def det_permanent_style(rows):
    """Determinant as the signed permutation sum, parity by inversion count."""
    n = len(rows)
    total = Fraction(0)
    for perm in permutations(range(n)):
        inversions = sum(
            1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j]
        )
        term = Fraction(1)
        for i in range(n):
            term *= Fraction(rows[i][perm[i]])
        total += -term if inversions % 2 else term
    return total


def set_partitions(items):
    """Yield every partition of `items` as a list of blocks."""
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for partial in set_partitions(rest):
        for i in range(len(partial)):
            yield partial[:i] + [[first] + partial[i]] + partial[i + 1:]
        yield [[first]] + partial


def stirling2_by_enumeration(k, m):
    """Number of partitions of k labeled objects into m nonempty blocks."""
    return sum(1 for p in set_partitions(range(k)) if len(p) == m)


def eval_poly_terms(terms, assignment):
    """Evaluate {monomial: coeff} term by term; monomial = ((var, exp), ...)."""
    total = Fraction(0)
    for monomial, coeff in terms.items():
        value = Fraction(coeff)
        for var, exp in monomial:
            value *= Fraction(assignment[var]) ** exp
        total += value
    return total


def vandermonde_det(points):
    """Product of pairwise differences, the closed form for det (p_i ** j)."""
    out = Fraction(1)
    for i in range(len(points)):
        for j in range(i + 1, len(points)):
            out *= Fraction(points[j]) - Fraction(points[i])
    return out
