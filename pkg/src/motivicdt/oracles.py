"""Independent combinatorial ground truth.

Everything here is deliberately decoupled from the motive/series machinery:
plane partitions are counted by brute-force enumeration, the Euler-level
wall-crossing series is built with plain integer power series arithmetic, and
configuration-space classes come from the standard fibration product.  These
are the oracles the symbolic identities are checked against.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb, factorial, prod

from .motives import MotiveClass, half_power

PLANE_PARTITION_CAP = 12  # brute force stays under a second up to here


@dataclass(frozen=True)
class Partition:
    """A partition stored by part multiplicities: {part size i: alpha_i > 0}."""

    multiplicities: tuple[tuple[int, int], ...]  # sorted (part, multiplicity)

    @classmethod
    def from_parts(cls, parts) -> "Partition":
        mult: dict[int, int] = {}
        for p in parts:
            if p <= 0:
                raise ValueError("parts must be positive")
            mult[p] = mult.get(p, 0) + 1
        return cls(tuple(sorted(mult.items())))

    @property
    def size(self) -> int:
        return sum(i * a for i, a in self.multiplicities)

    @property
    def length(self) -> int:
        return sum(a for _, a in self.multiplicities)

    @property
    def automorphisms(self) -> int:
        """|G_alpha| = prod_i alpha_i!"""
        return prod(factorial(a) for _, a in self.multiplicities)

    def parts(self) -> list[int]:
        out = []
        for i, a in self.multiplicities:
            out.extend([i] * a)
        return sorted(out, reverse=True)


def partitions(n: int) -> list[Partition]:
    """All partitions of n, each exactly once."""
    if n < 0:
        raise ValueError("n must be nonnegative")

    def gen(remaining, largest):
        if remaining == 0:
            yield []
            return
        for part in range(min(remaining, largest), 0, -1):
            for rest in gen(remaining - part, part):
                yield [part] + rest

    return [Partition.from_parts(p) for p in gen(n, n)]


def partition_count(n: int) -> int:
    return len(partitions(n))


@lru_cache(maxsize=None)
def _plane_partitions_bounded(n: int, bound: tuple[int, ...]) -> int:
    """Count plane partitions of n whose first row is dominated by ``bound``."""
    if n == 0:
        return 1
    total = 0
    for row in _rows_under(bound, n):
        total += _plane_partitions_bounded(n - sum(row), row)
    return total


def _rows_under(bound: tuple[int, ...], budget: int):
    """Nonempty weakly decreasing rows under an entrywise bound, sum <= budget."""

    def gen(i, prev, left):
        if i == len(bound) or left == 0:
            yield ()
            return
        yield ()
        for v in range(min(bound[i], prev, left), 0, -1):
            for rest in gen(i + 1, v, left - v):
                yield (v,) + rest

    for row in gen(0, budget, budget):
        if row:
            yield row


def plane_partitions_count(n: int) -> int:
    """Number of plane partitions of n, by direct enumeration."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n > PLANE_PARTITION_CAP:
        raise ValueError(f"brute force is capped at n <= {PLANE_PARTITION_CAP}")
    return _plane_partitions_bounded(n, (n,) * n) if n else 1


# -- integer power series helpers -------------------------------------------


def _int_mul(a: list[int], b: list[int], order: int) -> list[int]:
    out = [0] * (order + 1)
    for i, ai in enumerate(a):
        if ai:
            for j in range(min(len(b), order + 1 - i)):
                out[i + j] += ai * b[j]
    return out


def _int_invert(a: list[int], order: int) -> list[int]:
    if a[0] not in (1, -1):
        raise ValueError("integer series inversion needs unit constant term")
    out = [0] * (order + 1)
    out[0] = a[0]
    for n in range(1, order + 1):
        acc = sum(a[i] * out[n - i] for i in range(1, n + 1) if i < len(a))
        out[n] = -a[0] * acc
    return out


def _int_pow(a: list[int], e: int, order: int) -> list[int]:
    base = a if e >= 0 else _int_invert(a, order)
    e = abs(e)
    result = [1] + [0] * order
    while e:
        if e & 1:
            result = _int_mul(result, base, order)
        base = _int_mul(base, base, order)
        e >>= 1
    return result


def macmahon_signed(order: int) -> list[int]:
    """Coefficients of M(-t) = prod_m (1 - (-t)^m)^(-m)."""
    result = [1] + [0] * order
    for m in range(1, order + 1):
        factor = [0] * (order + 1)
        factor[0] = 1
        factor[m] = -((-1) ** m)
        result = _int_mul(result, _int_pow(factor, -m, order), order)
    return result


def euler_wallcross_series(chi_Y: int, chi_C: int, order: int) -> list[int]:
    """Coefficients of M(-t)^chi_Y * (1 + t)^(-chi_C)."""
    points = _int_pow(macmahon_signed(order), chi_Y, order)
    one_plus_t = [1, 1] + [0] * (order - 1) if order >= 1 else [1]
    curve = _int_pow(one_plus_t, -chi_C, order)
    return _int_mul(points, curve, order)


def config_space_class(d: int, k: int) -> MotiveClass:
    """Class of the ordered configuration space of k points in affine d-space.

    prod_{i<k} (L^d - i), from the fibration deleting one point at a time.
    """
    if d not in (1, 2, 3):
        raise ValueError("dimension must be 1, 2 or 3")
    if k < 0:
        raise ValueError("k must be nonnegative")
    out = MotiveClass({0: 1})
    for i in range(k):
        out = out * (half_power(2 * d) - i)
    return out


def virtual_chi_smooth(dim: int, chi: int) -> int:
    """Behrend-weighted Euler number of a smooth scheme: (-1)^dim * chi."""
    return (-1) ** dim * chi


def binomial_series(exponent: int, order: int) -> list[int]:
    """Coefficients of (1 + t)^exponent for any integer exponent."""
    return [comb(exponent, i) if exponent >= 0 else (-1) ** i * comb(-exponent + i - 1, i)
            for i in range(order + 1)]
