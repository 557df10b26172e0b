"""Truncated formal power series with MotiveClass coefficients.

A :class:`MotiveSeries` keeps the coefficients of t^0 .. t^N for a fixed
truncation order N; arithmetic between series of different orders truncates to
the smaller one.  :class:`BigradedSeries` adds a second grading variable T
(the curve-class marker) with its own truncation order, of which only the
T-linear slice is ever extracted downstream.
"""

from __future__ import annotations

import json

from .motives import MotiveClass, NotInvertibleError, ONE, ZERO


def _as_class(c) -> MotiveClass:
    if isinstance(c, MotiveClass):
        return c
    if isinstance(c, int):
        return MotiveClass({0: c})
    raise TypeError(f"not a motive class: {c!r}")


class MotiveSeries:
    __slots__ = ("order", "coeffs")

    def __init__(self, coeffs, order: int | None = None):
        coeffs = [_as_class(c) for c in coeffs]
        if order is None:
            order = len(coeffs) - 1
        if order < 0:
            raise ValueError("truncation order must be >= 0")
        coeffs = coeffs[: order + 1]
        coeffs += [ZERO] * (order + 1 - len(coeffs))
        self.order = order
        self.coeffs = tuple(coeffs)

    @classmethod
    def zero(cls, order: int) -> "MotiveSeries":
        return cls([], order)

    @classmethod
    def one(cls, order: int) -> "MotiveSeries":
        return cls([ONE], order)

    @classmethod
    def term(cls, c, n: int, order: int) -> "MotiveSeries":
        """The single-term series c * t^n."""
        coeffs = [ZERO] * (order + 1)
        if n <= order:
            coeffs[n] = _as_class(c)
        return cls(coeffs, order)

    def coefficient(self, n: int) -> MotiveClass:
        return self.coeffs[n] if 0 <= n <= self.order else ZERO

    # -- arithmetic ----------------------------------------------------------

    def _promote(self, other):
        if isinstance(other, MotiveSeries):
            return other
        if isinstance(other, (MotiveClass, int)):
            return MotiveSeries([_as_class(other)], self.order)
        return NotImplemented

    def __add__(self, other):
        other = self._promote(other)
        if other is NotImplemented:
            return NotImplemented
        n = min(self.order, other.order)
        return MotiveSeries(
            [self.coeffs[i] + other.coeffs[i] for i in range(n + 1)], n
        )

    __radd__ = __add__

    def __neg__(self):
        return MotiveSeries([-c for c in self.coeffs], self.order)

    def __sub__(self, other):
        other = self._promote(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (MotiveClass, int)):
            c = _as_class(other)
            return MotiveSeries([a * c for a in self.coeffs], self.order)
        if not isinstance(other, MotiveSeries):
            return NotImplemented
        n = min(self.order, other.order)
        out = [ZERO] * (n + 1)
        for i in range(n + 1):
            a = self.coeffs[i]
            if a.is_zero():
                continue
            for j in range(n + 1 - i):
                b = other.coeffs[j]
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return MotiveSeries(out, n)

    __rmul__ = __mul__

    def invert(self) -> "MotiveSeries":
        """Multiplicative inverse; the constant term must be a unit monomial."""
        try:
            c0_inv = self.coeffs[0] ** -1
        except NotInvertibleError:
            raise NotInvertibleError(
                f"constant term {self.coeffs[0]} is not invertible"
            ) from None
        out = [ZERO] * (self.order + 1)
        out[0] = c0_inv
        for n in range(1, self.order + 1):
            acc = ZERO
            for i in range(1, n + 1):
                if not self.coeffs[i].is_zero():
                    acc = acc + self.coeffs[i] * out[n - i]
            out[n] = -c0_inv * acc
        return MotiveSeries(out, self.order)

    def pow_int(self, k: int) -> "MotiveSeries":
        base = self if k >= 0 else self.invert()
        k = abs(k)
        result = MotiveSeries.one(self.order)
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def substitute(self, c: MotiveClass, k: int = 1) -> "MotiveSeries":
        """Substitute t -> c * t^k for a monomial c with unit coefficient."""
        c = _as_class(c)
        coeff, _ = c.as_monomial()  # raises NotInvertibleError if not monomial
        if coeff not in (1, -1):
            raise NotInvertibleError(f"substitution scalar {c} must be a unit monomial")
        if k < 1:
            raise ValueError("substitution exponent must be positive")
        out = [ZERO] * (self.order + 1)
        ci = ONE
        for i in range(self.order + 1):
            if i * k > self.order:
                break
            out[i * k] = ci * self.coeffs[i]
            ci = ci * c
        return MotiveSeries(out, self.order)

    def truncate(self, order: int) -> "MotiveSeries":
        return MotiveSeries(list(self.coeffs[: order + 1]), min(order, self.order))

    def shift_down(self, k: int = 1) -> "MotiveSeries":
        """Divide by t^k; the dropped low coefficients must vanish."""
        for i in range(k):
            if not self.coeffs[i].is_zero():
                raise ValueError(f"coefficient of t^{i} is nonzero, cannot divide by t^{k}")
        return MotiveSeries(list(self.coeffs[k:]), self.order - k)

    # -- comparison / display --------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, MotiveSeries):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def agrees_with(self, other: "MotiveSeries", through: int | None = None) -> bool:
        return first_discrepancy(self, other, through) is None

    def __str__(self):
        parts = []
        for n, c in enumerate(self.coeffs):
            if c.is_zero() and n > 0:
                continue
            body = str(c) if c.is_monomial() or n == 0 else f"({c})"
            if n == 0:
                parts.append(body)
            elif n == 1:
                parts.append(f"{body}*t")
            else:
                parts.append(f"{body}*t^{n}")
        return " + ".join(parts)

    def __repr__(self):
        return f"MotiveSeries(order={self.order}, {self})"

    def to_strings(self) -> list[str]:
        return [str(c) for c in self.coeffs]

    def to_json(self) -> str:
        return json.dumps(self.to_strings())


def first_discrepancy(lhs: MotiveSeries, rhs: MotiveSeries, through: int | None = None):
    """First power where two series disagree, or None; compares to min order."""
    n = min(lhs.order, rhs.order)
    if through is not None:
        n = min(n, through)
    for i in range(n + 1):
        if lhs.coefficient(i) != rhs.coefficient(i):
            return i
    return None


def product_expand(factors, order: int) -> MotiveSeries:
    """Expand a product of power-structure factors prod_i base_i^mult_i.

    Each base must have constant term 1.  Factors whose t-valuation exceeds
    the truncation order contribute nothing and may be omitted by the caller.
    The result does not depend on the order of the factor list.
    """
    from . import lambda_ops  # deferred: lambda_ops builds on this module

    result = MotiveSeries.one(order)
    for base, mult in factors:
        if base.coefficient(0) != ONE:
            raise ValueError("product factors must have constant term 1")
        result = result * lambda_ops.power(base.truncate(order), _as_class(mult))
    return result


class BigradedSeries:
    """Series in t and a curve-class marker T, truncated in both directions."""

    __slots__ = ("order_t", "order_T", "coeffs")

    def __init__(self, coeffs: dict, order_t: int, order_T: int):
        clean = {}
        for (i, j), c in coeffs.items():
            c = _as_class(c)
            if i <= order_t and j <= order_T and not c.is_zero():
                clean[(i, j)] = c
        self.order_t = order_t
        self.order_T = order_T
        self.coeffs = clean

    @classmethod
    def one(cls, order_t: int, order_T: int) -> "BigradedSeries":
        return cls({(0, 0): ONE}, order_t, order_T)

    def coefficient(self, i: int, j: int) -> MotiveClass:
        return self.coeffs.get((i, j), ZERO)

    def __mul__(self, other):
        if isinstance(other, MotiveSeries):
            other = BigradedSeries(
                {(i, 0): c for i, c in enumerate(other.coeffs)},
                other.order, self.order_T,
            )
        if not isinstance(other, BigradedSeries):
            return NotImplemented
        nt = min(self.order_t, other.order_t)
        nT = min(self.order_T, other.order_T)
        out = {}
        for (i1, j1), c1 in self.coeffs.items():
            for (i2, j2), c2 in other.coeffs.items():
                i, j = i1 + i2, j1 + j2
                if i > nt or j > nT:
                    continue
                key = (i, j)
                s = out.get(key, ZERO) + c1 * c2
                out[key] = s
        return BigradedSeries(out, nt, nT)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, BigradedSeries):
            return NotImplemented
        return (
            self.order_t == other.order_t
            and self.order_T == other.order_T
            and self.coeffs == other.coeffs
        )

    def T_slice(self, j: int) -> MotiveSeries:
        """The coefficient of T^j as a series in t."""
        return MotiveSeries(
            [self.coefficient(i, j) for i in range(self.order_t + 1)], self.order_t
        )

    def __repr__(self):
        terms = ", ".join(
            f"t^{i}*T^{j}: {c}" for (i, j), c in sorted(self.coeffs.items())
        )
        return f"BigradedSeries({terms})"


def extract_T_linear(series: BigradedSeries) -> MotiveSeries:
    """The T^1 slice; zero for a series independent of T."""
    return series.T_slice(1)
