"""Exact coefficient arithmetic: integers, rationals, multivariate polynomials.

Scalars are plain Python values (``int``, ``fractions.Fraction``,
:class:`MultiPoly`) combined with the usual operators.  A :class:`Ring`
instance bundles the distinguished elements and optional capabilities
(exact division, integer embedding) that the generic series and matrix
code needs without caring which scalar type it is working over.

All scalar values are immutable; every operation returns a fresh value.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction


class InexactDivisionError(ArithmeticError):
    """A quotient that had to be exact was not (ring contract violation)."""


_RATIONAL_RE = re.compile(r"-?\d+(/\d+)?\Z")


def parse_rational(text: str) -> Fraction:
    """Parse the exact text form ``p`` or ``p/q`` (q > 0) into a Fraction.

    Unnormalized input such as ``"2/4"`` is accepted and normalized.
    Anything outside the grammar (decimals, signs on q, ``p/0``) is an error.
    """
    if not isinstance(text, str) or not _RATIONAL_RE.match(text.strip()):
        raise ValueError(f"not a rational literal: {text!r}")
    text = text.strip()
    if "/" in text and int(text.split("/", 1)[1]) == 0:
        raise ValueError(f"zero denominator in rational literal: {text!r}")
    return Fraction(text)


def format_rational(value) -> str:
    """Exact text form: ``p/q`` or bare ``p`` for integral values."""
    return str(value)


# ---------------------------------------------------------------------------
# multivariate polynomials in the indexed coefficients b[m,n]
# ---------------------------------------------------------------------------

def _variable_name(var) -> str:
    m, n = var
    return f"b[{m},{n}]"


class MultiPoly:
    """Sparse polynomial over the rationals in the variables ``b[m,n]``.

    The variable family is the doubly indexed ``b[m,n]`` with m >= 1 and
    n >= 0 (the coefficients of a bivariate series transformation).  Terms
    are stored canonically: a map from monomial to nonzero Fraction, where
    a monomial is a tuple of ((m, n), exponent) pairs sorted by (m, n).
    Two polynomials are equal iff their term maps are equal.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        canonical = {}
        for monomial, coeff in (terms or {}).items():
            coeff = Fraction(coeff)
            if coeff != 0:
                canonical[monomial] = coeff
        self.terms = canonical

    @classmethod
    def constant(cls, value) -> "MultiPoly":
        value = Fraction(value)
        return cls({(): value}) if value else cls()

    @classmethod
    def variable(cls, m: int, n: int) -> "MultiPoly":
        """The polynomial consisting of the single variable b[m,n]."""
        if m < 1 or n < 0:
            raise ValueError(f"no such coefficient variable: b[{m},{n}]")
        return cls({(((m, n), 1),): Fraction(1)})

    def is_zero(self) -> bool:
        return not self.terms

    def variables(self):
        """The set of (m, n) indices occurring in this polynomial."""
        return {var for monomial in self.terms for var, _ in monomial}

    @staticmethod
    def _coerce(value):
        if isinstance(value, MultiPoly):
            return value
        if isinstance(value, (int, Fraction)):
            return MultiPoly.constant(value)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = dict(self.terms)
        for monomial, coeff in other.terms.items():
            terms[monomial] = terms.get(monomial, Fraction(0)) + coeff
        return MultiPoly(terms)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = {}
        for mono_a, ca in self.terms.items():
            expo_a = dict(mono_a)
            for mono_b, cb in other.terms.items():
                expo = dict(expo_a)
                for var, exp in mono_b:
                    expo[var] = expo.get(var, 0) + exp
                monomial = tuple(sorted(expo.items()))
                terms[monomial] = terms.get(monomial, Fraction(0)) + ca * cb
        return MultiPoly(terms)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("polynomial exponent must be a nonnegative integer")
        result = MultiPoly.constant(1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.terms == other.terms

    __hash__ = None

    def evaluate(self, assignment) -> Fraction:
        """Exact value at ``assignment``, a map from (m, n) to Fraction.

        Every variable occurring in the polynomial must be assigned;
        a missing one raises an error naming it.
        """
        total = Fraction(0)
        for monomial, coeff in self.terms.items():
            value = coeff
            for var, exp in monomial:
                if var not in assignment:
                    raise ValueError(
                        f"no value assigned to variable {_variable_name(var)}"
                    )
                value *= Fraction(assignment[var]) ** exp
            total += value
        return total

    def __str__(self):
        if not self.terms:
            return "0"
        def render(monomial, coeff):
            factors = []
            if coeff != 1 or not monomial:
                factors.append(format_rational(coeff))
            for var, exp in monomial:
                name = _variable_name(var)
                factors.append(name if exp == 1 else f"{name}^{exp}")
            return "*".join(factors)

        ordered = sorted(
            self.terms.items(),
            key=lambda item: (-sum(e for _, e in item[0]), item[0]),
        )
        return " + ".join(render(m, c) for m, c in ordered)

    def __repr__(self):
        return f"MultiPoly({self})"


# ---------------------------------------------------------------------------
# ring contract
# ---------------------------------------------------------------------------

class Ring:
    """Commutative-ring capability bundle.

    Subclasses provide ``zero``, ``one`` and ``coerce``; arithmetic defaults
    to the elements' own operators.  ``exact_div`` is an optional capability
    (integers and rationals have it, polynomials and series do not) and is
    the hook the fraction-free determinant relies on: it must either return
    an exact quotient or raise, never truncate.
    """

    name = "ring"
    has_exact_div = False

    zero = None
    one = None

    def coerce(self, value):
        raise NotImplementedError

    def from_int(self, k: int):
        return self.coerce(k)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def eq(self, a, b) -> bool:
        return a == b

    def is_zero(self, a) -> bool:
        return self.eq(a, self.zero)

    def exact_div(self, a, b):
        raise TypeError(
            f"ring {self.name!r} has no exact division; "
            "use a division-free algorithm instead"
        )

    def format(self, a) -> str:
        return str(a)

    def parse(self, text: str):
        raise ValueError(f"ring {self.name!r} has no text form")

    def __repr__(self):
        return f"<ring {self.name}>"


class IntegerRing(Ring):
    """Arbitrary-precision integers (Python int)."""

    name = "integers"
    has_exact_div = True
    zero = 0
    one = 1

    def coerce(self, value):
        if isinstance(value, bool):
            raise ValueError(f"not an integer: {value!r}")
        if isinstance(value, int):
            return value
        if isinstance(value, Fraction) and value.denominator == 1:
            return value.numerator
        raise ValueError(f"not an integer: {value!r}")

    def exact_div(self, a, b):
        if b == 0:
            raise ZeroDivisionError("exact division by zero")
        q, r = divmod(a, b)
        if r != 0:
            raise InexactDivisionError(f"{a} is not divisible by {b}")
        return q

    def parse(self, text):
        return self.coerce(parse_rational(text))


class RationalRing(Ring):
    """Normalized arbitrary-precision fractions (fractions.Fraction).

    The stdlib Fraction already maintains the invariants we need: gcd-1
    storage, positive denominator, unique zero.
    """

    name = "rationals"
    has_exact_div = True
    zero = Fraction(0)
    one = Fraction(1)

    def coerce(self, value):
        if isinstance(value, bool):
            raise ValueError(f"not a rational: {value!r}")
        if isinstance(value, (int, Fraction)):
            return Fraction(value)
        if isinstance(value, str):
            return parse_rational(value)
        raise ValueError(f"not a rational: {value!r}")

    def exact_div(self, a, b):
        if b == 0:
            raise ZeroDivisionError("exact division by zero")
        return a / b

    def format(self, a):
        return format_rational(a)

    def parse(self, text):
        return parse_rational(text)


class PolynomialRing(Ring):
    """Polynomials over the rationals in the coefficient variables b[m,n]."""

    name = "polynomials"
    zero = MultiPoly()
    one = MultiPoly.constant(1)

    def coerce(self, value):
        poly = MultiPoly._coerce(value)
        if poly is None:
            raise ValueError(f"not a polynomial: {value!r}")
        return poly


ZZ = IntegerRing()
QQ = RationalRing()
BPOLY = PolynomialRing()


def gcd_is_one(value: Fraction) -> bool:
    """Normalization check used by the invariant tests."""
    return math.gcd(abs(value.numerator), value.denominator) == 1
