"""Truncated formal power series, univariate and bivariate.

A :class:`UniSeries` of order N is a series known modulo x^(N+1): asking
for a coefficient past the truncation order is an error, never a silent
zero (silent zeros are how determinant entries go quietly wrong).  A
:class:`BiSeries` holds a transformation sum_{m>=1, m+n<=N} b[m,n] t^m x^n
with no t^0 part; substituting a valuation->=1 series for t is exact up to
the stated order because a term of t-degree m only feeds x-degrees >= m.

Series values are immutable; every operation returns a fresh series.
"""

from __future__ import annotations

from .rings import QQ, Ring

__all__ = ["UniSeries", "BiSeries", "SeriesRing", "series_to_json", "series_from_json"]


class UniSeries:
    """Univariate truncated power series over a coefficient ring."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: Ring, coeffs):
        coeffs = tuple(ring.coerce(c) for c in coeffs)
        if not coeffs:
            raise ValueError("a series needs at least the x^0 coefficient")
        self.ring = ring
        self.coeffs = coeffs

    @classmethod
    def constant(cls, ring: Ring, value, order: int) -> "UniSeries":
        return cls(ring, (value,) + (ring.zero,) * order)

    @classmethod
    def identity(cls, ring: Ring, order: int) -> "UniSeries":
        """The series x, the identity under composition."""
        if order < 1:
            raise ValueError("the series x needs order >= 1")
        return cls(ring, (ring.zero, ring.one) + (ring.zero,) * (order - 1))

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def coefficient(self, j: int):
        """The coefficient of x^j; past the truncation order it is unknown."""
        if not 0 <= j <= self.order:
            raise ValueError(
                f"coefficient of x^{j} unknown at truncation order {self.order}"
            )
        return self.coeffs[j]

    def truncate(self, order: int) -> "UniSeries":
        if not 0 <= order <= self.order:
            raise ValueError(
                f"cannot truncate an order-{self.order} series to order {order}"
            )
        return UniSeries(self.ring, self.coeffs[: order + 1])

    def _match(self, other):
        if isinstance(other, UniSeries):
            if other.order != self.order:
                raise ValueError(
                    f"series orders differ: {self.order} vs {other.order}"
                )
            return other
        # scalars act coefficientwise, i.e. as the constant series
        return UniSeries.constant(self.ring, other, self.order)

    def __add__(self, other):
        other = self._match(other)
        return UniSeries(
            self.ring, (a + b for a, b in zip(self.coeffs, other.coeffs))
        )

    __radd__ = __add__

    def __neg__(self):
        return UniSeries(self.ring, (-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-self._match(other))

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        """Cauchy product truncated to the common order."""
        if not isinstance(other, UniSeries):
            scalar = self.ring.coerce(other)
            return UniSeries(self.ring, (scalar * c for c in self.coeffs))
        other = self._match(other)
        zero = self.ring.zero
        out = [zero] * (self.order + 1)
        for i, a in enumerate(self.coeffs):
            if self.ring.is_zero(a):
                continue
            for j in range(self.order + 1 - i):
                out[i + j] = out[i + j] + a * other.coeffs[j]
        return UniSeries(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "UniSeries":
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("series exponent must be a nonnegative integer")
        result = UniSeries.constant(self.ring, self.ring.one, self.order)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def compose(self, inner: "UniSeries") -> "UniSeries":
        """self(inner), by Horner accumulation over self's coefficients.

        Requires inner to have zero constant term; otherwise the result is
        not determined order by order at a finite truncation.
        """
        inner = self._match(inner)
        if not self.ring.is_zero(inner.coeffs[0]):
            raise ValueError("inner series of a composition must have valuation >= 1")
        result = UniSeries.constant(self.ring, self.coeffs[self.order], self.order)
        for k in range(self.order - 1, -1, -1):
            result = result * inner + self.coeffs[k]
        return result

    def derivative(self) -> "UniSeries":
        """Termwise d/dx; the result is trustworthy to one order less."""
        if self.order < 1:
            raise ValueError("cannot differentiate an order-0 truncation")
        return UniSeries(
            self.ring,
            (self.ring.from_int(k) * self.coeffs[k] for k in range(1, self.order + 1)),
        )

    def shift(self, places: int) -> "UniSeries":
        """Multiply by x^places, keeping the truncation order."""
        if places < 0:
            raise ValueError("shift must be nonnegative")
        if places == 0:
            return self
        if places > self.order:
            return UniSeries.constant(self.ring, self.ring.zero, self.order)
        kept = self.coeffs[: self.order + 1 - places]
        return UniSeries(self.ring, (self.ring.zero,) * places + kept)

    def __eq__(self, other):
        if not isinstance(other, UniSeries):
            return NotImplemented
        return self.order == other.order and all(
            self.ring.eq(a, b) for a, b in zip(self.coeffs, other.coeffs)
        )

    __hash__ = None

    def __str__(self):
        parts = []
        for j, c in enumerate(self.coeffs):
            if self.ring.is_zero(c):
                continue
            text = self.ring.format(c)
            if " " in text:
                text = f"({text})"
            if j == 0:
                parts.append(text)
            else:
                power = "x" if j == 1 else f"x^{j}"
                parts.append(power if text == "1" else f"{text}*{power}")
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"UniSeries(order={self.order}, {self})"


class BiSeries:
    """Bivariate truncated series sum b[m,n] t^m x^n with m >= 1, m+n <= order."""

    __slots__ = ("ring", "order", "terms")

    def __init__(self, ring: Ring, order: int, terms):
        if order < 0:
            raise ValueError("order must be nonnegative")
        stored = {}
        for (m, n), value in dict(terms).items():
            if m < 1 or n < 0:
                raise ValueError(f"invalid bivariate key t^{m} x^{n}: need m >= 1, n >= 0")
            if m + n > order:
                raise ValueError(
                    f"term t^{m} x^{n} exceeds total-degree truncation {order}"
                )
            value = ring.coerce(value)
            if not ring.is_zero(value):
                stored[(m, n)] = value
        self.ring = ring
        self.order = order
        self.terms = stored

    def coefficient(self, m: int, n: int):
        """The coefficient of t^m x^n (zero when absent, within the truncation)."""
        if m < 1 or n < 0 or m + n > self.order:
            raise ValueError(
                f"coefficient of t^{m} x^{n} unknown at truncation order {self.order}"
            )
        return self.terms.get((m, n), self.ring.zero)

    def truncate(self, order: int) -> "BiSeries":
        if not 0 <= order <= self.order:
            raise ValueError(
                f"cannot truncate an order-{self.order} series to order {order}"
            )
        kept = {key: c for key, c in self.terms.items() if key[0] + key[1] <= order}
        return BiSeries(self.ring, order, kept)

    def substitute(self, g: UniSeries) -> UniSeries:
        """Replace t by g(x): sum b[m,n] g(x)^m x^n, truncated to self.order.

        g must have valuation >= 1 and be known at least to self.order.
        """
        if g.ring is not self.ring:
            raise ValueError("substituted series must share the coefficient ring")
        if g.order < self.order:
            raise ValueError(
                f"substituted series order {g.order} is below truncation {self.order}"
            )
        g = g.truncate(self.order)
        if not self.ring.is_zero(g.coeffs[0]):
            raise ValueError("substituted series must have valuation >= 1")
        result = UniSeries.constant(self.ring, self.ring.zero, self.order)
        if not self.terms:
            return result
        g_power = g
        for m in range(1, max(key[0] for key in self.terms) + 1):
            if m > 1:
                g_power = g_power * g
            for n in range(self.order - m + 1):
                coeff = self.terms.get((m, n))
                if coeff is not None:
                    result = result + g_power.shift(n) * coeff
        return result

    def iterate(self, times: int, order: int) -> UniSeries:
        """The `times`-fold self-composition applied to t = x, at `order`.

        Requires b[1,0] = 1 (the unit-multiplier hypothesis that makes the
        iteration order-stable) and the series known to at least `order`.
        """
        if times < 0:
            raise ValueError("iteration count must be nonnegative")
        if order < 1:
            raise ValueError("iteration needs order >= 1")
        if order > self.order:
            raise ValueError(
                f"cannot iterate at order {order}: series only known to {self.order}"
            )
        if not self.ring.eq(self.coefficient(1, 0), self.ring.one):
            raise ValueError("iteration requires leading coefficient b[1,0] = 1")
        truncated = self.truncate(order)
        g = UniSeries.identity(self.ring, order)
        for _ in range(times):
            g = truncated.substitute(g)
        return g

    def __eq__(self, other):
        if not isinstance(other, BiSeries):
            return NotImplemented
        return self.order == other.order and self.terms == other.terms

    __hash__ = None

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (m, n), c in sorted(self.terms.items()):
            text = self.ring.format(c)
            if " " in text:
                text = f"({text})"
            factors = [] if text == "1" else [text]
            factors.append("t" if m == 1 else f"t^{m}")
            if n:
                factors.append("x" if n == 1 else f"x^{n}")
            parts.append("*".join(factors))
        return " + ".join(parts)

    def __repr__(self):
        return f"BiSeries(order={self.order}, {self})"


class SeriesRing(Ring):
    """Univariate series of one fixed order as a coefficient ring.

    This is what lets a matrix have series entries (the derivative-matrix
    identity compares determinants of such matrices).  There is no exact
    division: determinants over this ring go through the division-free path.
    """

    def __init__(self, base: Ring, order: int):
        if order < 0:
            raise ValueError("order must be nonnegative")
        self.base = base
        self.order = order
        self.name = f"series(order={order}) over {base.name}"
        self.zero = UniSeries.constant(base, base.zero, order)
        self.one = UniSeries.constant(base, base.one, order)

    def coerce(self, value):
        if isinstance(value, UniSeries):
            if value.ring is not self.base:
                raise ValueError("series over a different coefficient ring")
            if value.order < self.order:
                raise ValueError(
                    f"series of order {value.order} unknown at ring order {self.order}"
                )
            return value.truncate(self.order)
        return UniSeries.constant(self.base, self.base.coerce(value), self.order)

    def eq(self, a, b) -> bool:
        return a == b

    def __eq__(self, other):
        return (
            isinstance(other, SeriesRing)
            and other.base is self.base
            and other.order == self.order
        )

    __hash__ = None


# ---------------------------------------------------------------------------
# JSON forms (the CLI's input format)
# ---------------------------------------------------------------------------

def series_to_json(series) -> dict:
    """JSON-ready dict form of a univariate or bivariate series over QQ."""
    ring = series.ring
    if isinstance(series, UniSeries):
        return {
            "kind": "uni",
            "order": series.order,
            "coeffs": [ring.format(c) for c in series.coeffs],
        }
    if isinstance(series, BiSeries):
        return {
            "kind": "bi",
            "order": series.order,
            "terms": [
                {"m": m, "n": n, "c": ring.format(c)}
                for (m, n), c in sorted(series.terms.items())
            ],
        }
    raise ValueError(f"not a series: {series!r}")


def series_from_json(obj, ring: Ring = QQ):
    """Parse the JSON dict form back into a UniSeries or BiSeries.

    Scalars use the exact rational text form.  Duplicate bivariate keys are
    a parse error; absent terms are zero.
    """
    if not isinstance(obj, dict):
        raise ValueError("series JSON must be an object")
    kind = obj.get("kind")
    order = obj.get("order")
    if not isinstance(order, int) or order < 0:
        raise ValueError(f"bad series order: {order!r}")
    if kind == "uni":
        coeffs = obj.get("coeffs")
        if not isinstance(coeffs, list):
            raise ValueError("uni series needs a 'coeffs' array")
        if len(coeffs) != order + 1:
            raise ValueError(
                f"order {order} needs exactly {order + 1} coefficients, "
                f"got {len(coeffs)}"
            )
        return UniSeries(ring, [ring.parse(c) for c in coeffs])
    if kind == "bi":
        raw = obj.get("terms")
        if not isinstance(raw, list):
            raise ValueError("bi series needs a 'terms' array")
        terms = {}
        for entry in raw:
            try:
                m, n, c = entry["m"], entry["n"], entry["c"]
            except (TypeError, KeyError):
                raise ValueError(f"bad bivariate term: {entry!r}") from None
            if not isinstance(m, int) or not isinstance(n, int):
                raise ValueError(f"bad bivariate exponents: {entry!r}")
            if (m, n) in terms:
                raise ValueError(f"duplicate bivariate term t^{m} x^{n}")
            terms[(m, n)] = ring.parse(c)
        return BiSeries(ring, order, terms)
    raise ValueError(f"unknown series kind: {kind!r}")
