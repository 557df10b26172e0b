"""Exact arithmetic in the ring of motivic weights Z[L^(1/2), L^(-1/2)].

L is the Lefschetz class (the class of the affine line) and L^(1/2) a formal
square root adjoined to it.  Elements are Laurent polynomials in L^(1/2) with
arbitrary-precision integer coefficients; exponents are stored doubled so that
half-integer powers stay exact.  The module also provides the effectiveness
rewrite in the line-element basis {(-L^(1/2))^k} and the two specialisations
used everywhere else in the package: the weight polynomial (L^(1/2) -> -q^(1/2))
and the Euler characteristic (L^(1/2) -> -1).
"""

from __future__ import annotations

import re
from dataclasses import dataclass


class NotInvertibleError(ArithmeticError):
    """Raised when inverting a class that is not a unit monomial."""


class _HalfLaurent:
    """Laurent polynomial in a formal half power of a single variable.

    ``coeffs`` maps doubled exponents to nonzero integers, so the key ``k``
    stands for var^(k/2).  The zero polynomial is the empty mapping; no zero
    coefficient is ever stored (canonical form).
    """

    var = "X"
    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        clean = {}
        if coeffs:
            for k, c in coeffs.items():
                if c:
                    clean[int(k)] = int(c)
        self.coeffs = clean

    # -- ring structure ----------------------------------------------------

    def _promote(self, other):
        if isinstance(other, _HalfLaurent):
            if other.var != self.var:
                raise TypeError(f"cannot mix {self.var}- and {other.var}-polynomials")
            return other
        if isinstance(other, int):
            return type(self)({0: other})
        return NotImplemented

    def __add__(self, other):
        other = self._promote(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            s = out.get(k, 0) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return type(self)(out)

    __radd__ = __add__

    def __neg__(self):
        return type(self)({k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other):
        other = self._promote(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._promote(other)
        if other is NotImplemented:
            return NotImplemented
        out = {}
        for k1, c1 in self.coeffs.items():
            for k2, c2 in other.coeffs.items():
                k = k1 + k2
                s = out.get(k, 0) + c1 * c2
                if s:
                    out[k] = s
                else:
                    del out[k]
        return type(self)(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            c, k = self.as_monomial()
            if c not in (1, -1):
                raise NotInvertibleError(f"{self} is not invertible")
            return type(self)({k * n: c if n % 2 else 1})
        result = type(self)({0: 1})
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = type(self)({0: other})
        if not isinstance(other, _HalfLaurent) or other.var != self.var:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.var, tuple(sorted(self.coeffs.items()))))

    def __bool__(self):
        return bool(self.coeffs)

    # -- inspection ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monomial(self) -> bool:
        return len(self.coeffs) == 1

    def as_monomial(self) -> tuple[int, int]:
        """Return (coefficient, doubled exponent); raises if not a monomial."""
        if len(self.coeffs) != 1:
            raise NotInvertibleError(f"{self} is not a monomial")
        ((k, c),) = self.coeffs.items()
        return c, k

    def coefficient(self, doubled_exp: int) -> int:
        return self.coeffs.get(doubled_exp, 0)

    def support(self) -> list[int]:
        return sorted(self.coeffs)

    # -- text form -----------------------------------------------------------

    def _render_power(self, k: int) -> str:
        if k == 2:
            return self.var
        if k % 2 == 0:
            return f"{self.var}^{k // 2}"
        return f"{self.var}^({k}/2)"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k in sorted(self.coeffs, reverse=True):
            c = self.coeffs[k]
            if k == 0:
                body = str(abs(c))
            elif abs(c) == 1:
                body = self._render_power(k)
            else:
                body = f"{abs(c)}*{self._render_power(k)}"
            if not parts:
                parts.append(body if c > 0 else "-" + body)
            else:
                parts.append((" + " if c > 0 else " - ") + body)
        return "".join(parts)

    def __repr__(self):
        return f"{type(self).__name__}({self})"

    _TERM_RE = None  # built lazily per class

    @classmethod
    def parse(cls, text: str):
        """Parse the rendering produced by ``__str__`` (bit-exact round trip)."""
        if cls._TERM_RE is None:
            v = re.escape(cls.var)
            cls._TERM_RE = re.compile(
                rf"^(?:(\d+)\*?)?(?:({v})(?:\^(?:(-?\d+)|\((-?\d+)/2\)))?)?$"
            )
        s = text.replace("−", "-").strip()
        if s == "0":
            return cls()
        out = {}
        pos, sign = 0, 1
        if s.startswith("-"):
            sign, pos = -1, 1
        elif s.startswith("+"):
            pos = 1
        while pos < len(s):
            nxt_p = s.find(" + ", pos)
            nxt_m = s.find(" - ", pos)
            nxt = min(x for x in (nxt_p, nxt_m, len(s)) if x != -1)
            chunk = s[pos:nxt].strip()
            m = cls._TERM_RE.match(chunk)
            if not m or not chunk:
                raise ValueError(f"cannot parse term {chunk!r} in {text!r}")
            coeff_s, var_s, int_exp, half_exp = m.groups()
            if coeff_s is None and var_s is None:
                raise ValueError(f"cannot parse term {chunk!r} in {text!r}")
            c = sign * (int(coeff_s) if coeff_s else 1)
            if var_s is None:
                k = 0
            elif int_exp is not None:
                k = 2 * int(int_exp)
            elif half_exp is not None:
                k = int(half_exp)
            else:
                k = 2
            out[k] = out.get(k, 0) + c
            if nxt == len(s):
                break
            sign = 1 if nxt == nxt_p else -1
            pos = nxt + 3
        return cls(out)


class WeightPolynomial(_HalfLaurent):
    """Laurent polynomial in q^(1/2), the weight realisation target."""

    var = "q"

    def at_one(self) -> int:
        """Specialise q^(1/2) -> 1."""
        return sum(self.coeffs.values())


class MotiveClass(_HalfLaurent):
    """An element of the motivic weight ring, exact in L^(1/2)."""

    var = "L"

    def effective_decompose(self) -> "EffectiveDecomposition":
        """Rewrite in the line-element basis (-L^(1/2))^k.

        The rewrite is a bijection: a*L^(k/2) = a*(-1)^k * (-L^(1/2))^k, so
        reassembly recovers the class exactly.  The class is effective when
        all basis coefficients are nonnegative.
        """
        basis = {k: c * (1 if k % 2 == 0 else -1) for k, c in self.coeffs.items()}
        return EffectiveDecomposition(
            coeffs_in_neg_half_basis=basis,
            is_effective=all(c >= 0 for c in basis.values()),
        )

    def is_effective(self) -> bool:
        return self.effective_decompose().is_effective

    def euler(self) -> int:
        """Euler-characteristic specialisation L^(1/2) -> -1."""
        return sum(c * (1 if k % 2 == 0 else -1) for k, c in self.coeffs.items())

    def weight(self) -> WeightPolynomial:
        """Weight-polynomial specialisation L^(1/2) -> -q^(1/2)."""
        return WeightPolynomial(
            {k: c * (1 if k % 2 == 0 else -1) for k, c in self.coeffs.items()}
        )


@dataclass(frozen=True)
class EffectiveDecomposition:
    """A class written as sum_k c_k * (-L^(1/2))^k, plus the effectivity verdict."""

    coeffs_in_neg_half_basis: dict[int, int]
    is_effective: bool

    def reassemble(self) -> MotiveClass:
        return MotiveClass(
            {k: c * (1 if k % 2 == 0 else -1)
             for k, c in self.coeffs_in_neg_half_basis.items()}
        )


def half_power(j: int) -> MotiveClass:
    """The monomial L^(j/2)."""
    return MotiveClass({j: 1})


def from_int(n: int) -> MotiveClass:
    return MotiveClass({0: n})


ZERO = MotiveClass()
ONE = from_int(1)
L = half_power(2)
L_HALF = half_power(1)
L_INV = half_power(-2)

#: classes of the geometries appearing in the local theory
AFFINE3 = half_power(6)               # [A^3] = L^3
AFFINE_LINE = L                       # [A^1] = L
PROJ_LINE = L + 1                     # [P^1] = L + 1
GM = L - 1                            # [G_m] = L - 1
CONIFOLD = half_power(6) + half_power(4)   # resolved conifold, L^3 + L^2


def curve_class(g: int) -> MotiveClass:
    """Weight-level stand-in for a smooth projective curve of genus g.

    1 + 2g*L^(1/2) + L; exact for g = 0 where it is the class of P^1, a
    weight-polynomial proxy otherwise (its weight realisation is
    1 - 2g*q^(1/2) + q and its Euler number 2 - 2g).
    """
    if g < 0:
        raise ValueError("genus must be nonnegative")
    return MotiveClass({0: 1, 1: 2 * g, 2: 1})


def smooth_virtual(cls: MotiveClass, dim: int) -> MotiveClass:
    """Virtual class L^(-dim/2) * cls of a smooth scheme of the given dimension.

    The dimension is always supplied by the caller; it is never inferred.
    """
    return half_power(-dim) * cls
