"""Plethystic exponential, logarithm, power structure and zeta functions.

The motivic exponential is the group isomorphism from series with zero
constant term to series with constant term 1 determined by the line-element
expansion

    Exp( sum_{n,k} c_{n,k} (-L^(1/2))^k t^n )
        = prod_{n,k} (1 - (-L^(1/2))^k t^n)^(-c_{n,k}),

where the c_{n,k} come from the effectiveness rewrite of each coefficient.
Negative c_{n,k} are handled by inverse factors, which is exactly the unique
lambda-ring extension off the effective cone.  The power structure A^x is
Exp(x * Log A); by the uniqueness theorem for power structures over the
Grothendieck ring of varieties this agrees with the geometric definition on
effective exponents, and it is the only definition available at realisation
level.  Sign discipline: the line elements are the (-L^(1/2))^k, not the
L^(k/2); getting this wrong corrupts every half-odd-power identity.
"""

from __future__ import annotations

from math import comb

from .motives import MotiveClass, ONE, half_power
from .series import MotiveSeries


def _check_zero_constant(series: MotiveSeries):
    if not series.coefficient(0).is_zero():
        raise ValueError("Exp requires a series with zero constant term")


def _one_minus_power(k: int, n: int, e: int, order: int) -> MotiveSeries:
    """(1 - (-L^(1/2))^k * t^n)^e for an integer e, expanded binomially."""
    line = MotiveClass({k: 1 if k % 2 == 0 else -1})  # (-L^(1/2))^k
    coeffs = [MotiveClass() for _ in range(order + 1)]
    coeffs[0] = ONE
    if e >= 0:
        for i in range(1, min(e, order // n if n else 0) + 1):
            coeffs[n * i] = MotiveClass({0: (-1) ** i * comb(e, i)}) * line ** i
    else:
        d = -e
        i = 1
        while n * i <= order:
            coeffs[n * i] = MotiveClass({0: comb(d + i - 1, i)}) * line ** i
            i += 1
    return MotiveSeries(coeffs, order)


def exp(series: MotiveSeries) -> MotiveSeries:
    """Motivic exponential of a series with zero constant term."""
    _check_zero_constant(series)
    order = series.order
    result = MotiveSeries.one(order)
    for n in range(1, order + 1):
        basis = series.coefficient(n).effective_decompose().coeffs_in_neg_half_basis
        for k in sorted(basis):
            result = result * _one_minus_power(k, n, -basis[k], order)
    return result


def log(series: MotiveSeries) -> MotiveSeries:
    """Inverse of :func:`exp`; the constant term must be 1."""
    if series.coefficient(0) != ONE:
        raise ValueError("Log requires constant term 1")
    order = series.order
    arg = [MotiveClass() for _ in range(order + 1)]
    partial = MotiveSeries.one(order)  # Exp of the argument found so far
    for n in range(1, order + 1):
        # Exp(B + b_n t^n + ...) = Exp(B) + b_n t^n + (higher order)
        b = series.coefficient(n) - partial.coefficient(n)
        arg[n] = b
        if not b.is_zero():
            basis = b.effective_decompose().coeffs_in_neg_half_basis
            for k in sorted(basis):
                partial = partial * _one_minus_power(k, n, -basis[k], order)
    return MotiveSeries(arg, order)


def power(series: MotiveSeries, x: MotiveClass | int) -> MotiveSeries:
    """Power structure A(t)^x = Exp(x * Log A(t)) for a constant-term-1 series."""
    if isinstance(x, int):
        x = MotiveClass({0: x})
    return exp(log(series) * x)


def sigma_n(x: MotiveClass, n: int) -> MotiveClass:
    """n-th symmetric power operation: the t^n coefficient of (1-t)^(-x)."""
    if n < 0:
        raise ValueError("sigma is indexed by nonnegative integers")
    if n == 0:
        return ONE
    return zeta(x, n).coefficient(n)


def zeta(x: MotiveClass, order: int) -> MotiveSeries:
    """Kapranov zeta function (1-t)^(-x) = sum_n sigma^n(x) t^n."""
    return exp(MotiveSeries.term(x, 1, order))


def macdonald_curve_zeta(g: int, order: int) -> MotiveSeries:
    """Closed-form zeta of a genus-g curve class, expanded directly.

    (1 + L^(1/2) t)^(2g) / ((1 - t)(1 - L t)); an independent oracle for
    ``zeta(curve_class(g))`` that never touches Exp/Log.
    """
    numerator = [
        MotiveClass({i: comb(2 * g, i)}) for i in range(min(2 * g, order) + 1)
    ]
    geom_one = MotiveSeries([ONE] * (order + 1), order)
    geom_L = MotiveSeries([half_power(2 * i) for i in range(order + 1)], order)
    return MotiveSeries(numerator, order) * geom_one * geom_L
