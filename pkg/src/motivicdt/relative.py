"""Finite model of diagonal-supported relative motives over a symmetric power.

A relative series is a list of "atoms"; each atom is a support class together
with a weight series, read as: exponentiate the weights along the small
diagonals of the support, then convolve the atoms with the union product.
The two derived quantities are the direct image to an absolute series (each
atom contributes the exponential of its weights raised to its support class)
and the restriction to a point fibre (each atom through the point contributes
the bare exponential of its weights).

Only series of this shape are representable: that is exactly the image in
which the local curve-and-points theorems land, and it is what makes the
model finite.  Supports are assumed globally split; a nontrivially twisted
family has no representation here.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from . import partition_functions as pf
from .motives import AFFINE3, AFFINE_LINE, CONIFOLD, MotiveClass, PROJ_LINE, ZERO, half_power
from .series import MotiveSeries
from .lambda_ops import exp, power


class SupportLabel(enum.Enum):
    AMBIENT = "ambient"
    ON_CURVE = "on-curve"
    OFF_CURVE = "off-curve"


@dataclass(frozen=True)
class DiagonalAtom:
    support_class: MotiveClass
    label: SupportLabel
    weights: MotiveSeries

    def __post_init__(self):
        if not self.weights.coefficient(0).is_zero():
            raise ValueError("atom weights must have zero constant term")


@dataclass(frozen=True)
class DiagonalRelativeSeries:
    atoms: tuple[DiagonalAtom, ...] = field(default_factory=tuple)

    def __init__(self, atoms=()):
        object.__setattr__(self, "atoms", tuple(atoms))


def boxtimes_cup(
    first: DiagonalRelativeSeries, second: DiagonalRelativeSeries
) -> DiagonalRelativeSeries:
    """Union-convolution of two relative series: concatenate the atom lists."""
    return DiagonalRelativeSeries(first.atoms + second.atoms)


def pushforward_absolute(series: DiagonalRelativeSeries, order: int) -> MotiveSeries:
    """Direct image to an absolute series: prod_atoms exp(weights)^support."""
    result = MotiveSeries.one(order)
    for atom in series.atoms:
        result = result * power(
            exp(atom.weights.truncate(order)), atom.support_class
        )
    return result


def fiber_at_point(
    series: DiagonalRelativeSeries, inside, order: int
) -> MotiveSeries:
    """Restriction to the fibre over a point.

    ``inside`` lists, atom by atom, whether the point lies in that atom's
    support; only atoms containing the point contribute exp(weights).
    """
    inside = list(inside)
    if len(inside) != len(series.atoms):
        raise ValueError("membership list must match the atom list")
    result = MotiveSeries.one(order)
    for atom, member in zip(series.atoms, inside):
        if member:
            result = result * exp(atom.weights.truncate(order))
    return result


def _weight_series(weight_fn, order: int) -> MotiveSeries:
    return MotiveSeries([ZERO] + [weight_fn(n) for n in range(1, order + 1)], order)


def line_model_atoms(order: int) -> DiagonalRelativeSeries:
    """Ambient-plus-curve decomposition of the line-in-3-space Quot series.

    One atom with the full ambient class and the punctual point weights, one
    curve atom carrying the single extra embedded-point weight -L^(-1/2) t.
    Pushes forward to the closed exponential form of the local Quot series.
    """
    return DiagonalRelativeSeries(
        [
            DiagonalAtom(AFFINE3, SupportLabel.AMBIENT, _weight_series(pf.omega_bbs, order)),
            DiagonalAtom(
                AFFINE_LINE,
                SupportLabel.ON_CURVE,
                MotiveSeries.term(-half_power(-1), 1, order),
            ),
        ]
    )


def split_line_model_atoms(order: int) -> DiagonalRelativeSeries:
    """Punctual decomposition of the same series with the curve split off.

    Off-curve atom with class L^3 - L and point weights, on-curve atom with
    class L and the curve-punctual weights; same pushforward as
    :func:`line_model_atoms` via support splitting.
    """
    return DiagonalRelativeSeries(
        [
            DiagonalAtom(
                AFFINE3 - AFFINE_LINE,
                SupportLabel.OFF_CURVE,
                _weight_series(pf.omega_bbs, order),
            ),
            DiagonalAtom(
                AFFINE_LINE, SupportLabel.ON_CURVE, _weight_series(pf.omega_curv, order)
            ),
        ]
    )


def conifold_model_atoms(order: int) -> DiagonalRelativeSeries:
    """Punctual decomposition for the exceptional curve in the resolved conifold."""
    return DiagonalRelativeSeries(
        [
            DiagonalAtom(
                CONIFOLD - PROJ_LINE,
                SupportLabel.OFF_CURVE,
                _weight_series(pf.omega_bbs, order),
            ),
            DiagonalAtom(
                PROJ_LINE, SupportLabel.ON_CURVE, _weight_series(pf.omega_curv, order)
            ),
        ]
    )
