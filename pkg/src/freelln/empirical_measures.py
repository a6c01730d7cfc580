"""Empirical root distributions, their statistics and KS distances."""

from __future__ import annotations

import bisect
import csv
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple

import mpmath

from .errors import InputValidationError
from .free_limit_oracle import MeasureSpec
from .symmetric_core import DEFAULT_PREC, RootMultiset, is_exact, to_mpf, to_scalar

__all__ = [
    "EmpiricalMeasure",
    "MeanHarmonic",
    "ks_distance",
    "log_moment",
    "mean_and_harmonic",
    "discretize_measure",
]


@dataclass(frozen=True)
class EmpiricalMeasure:
    """Uniform weights on ``atoms`` plus an optional extra mass at zero.

    Each atom carries ``(1 - zero_mass) / len(atoms)``.
    """

    atoms: tuple
    zero_mass: float = 0.0

    def __post_init__(self):
        values = getattr(self.atoms, "roots", None) or getattr(self.atoms, "values", None) \
            or self.atoms
        values = tuple(sorted(to_scalar(v) for v in values))
        if not values:
            raise InputValidationError("an empirical measure needs at least one atom")
        if values[0] < 0:
            raise InputValidationError("atoms must be non-negative")
        if not 0 <= self.zero_mass < 1:
            raise InputValidationError("zero_mass must lie in [0, 1)")
        object.__setattr__(self, "atoms", values)
        floats = [float(v) for v in values]
        object.__setattr__(self, "_floats", floats)

    @property
    def size(self) -> int:
        return len(self.atoms)

    @property
    def weight(self) -> float:
        return (1.0 - self.zero_mass) / len(self.atoms)

    def cdf(self, x: float) -> float:
        base = self.zero_mass if x >= 0 else 0.0
        return base + self.weight * bisect.bisect_right(self._floats, float(x))

    def cdf_left(self, x: float) -> float:
        base = self.zero_mass if x > 0 else 0.0
        return base + self.weight * bisect.bisect_left(self._floats, float(x))

    def to_csv(self, path) -> None:
        """One atom per row: ``index, location`` (30 significant digits)."""
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["index", "location"])
            for i, a in enumerate(self.atoms, start=1):
                writer.writerow([i, mpmath.nstr(to_mpf(a), 30)])


class MeanHarmonic(NamedTuple):
    mean: object
    harmonic_inverse: object
    has_zero: bool


def ks_distance(emp: EmpiricalMeasure, target) -> float:
    """Sup-distance between the empirical CDF and ``target``'s CDF.

    ``target`` needs ``cdf`` and ``cdf_left`` (a :class:`PhiQuantileFn` or a
    :class:`MeasureSpec`).  Between consecutive jump points the empirical CDF
    is constant and the target monotone, so checking both one-sided limits at
    every atom and at zero gives the exact supremum.
    """
    points = sorted(set(emp._floats) | {0.0})
    worst = 0.0
    for x in points:
        worst = max(worst,
                    abs(emp.cdf(x) - target.cdf(x)),
                    abs(emp.cdf_left(x) - target.cdf_left(x)))
    return worst


def log_moment(emp: EmpiricalMeasure, prec: int = DEFAULT_PREC):
    """``(1/d) sum log lambda_i`` as a big-float; zero atoms are rejected."""
    if emp.zero_mass > 0 or emp.atoms[0] == 0:
        raise InputValidationError("log-moment is -inf when zero atoms are present")
    with mpmath.workprec(prec):
        return mpmath.fsum(mpmath.log(to_mpf(a, prec)) for a in emp.atoms) / len(emp.atoms)


def mean_and_harmonic(emp: EmpiricalMeasure) -> MeanHarmonic:
    """Arithmetic mean and ``(mean of 1/lambda)^-1`` (0 with a flag if zeros)."""
    atoms = emp.atoms
    exact = all(is_exact(a) for a in atoms) and emp.zero_mass == 0
    d = len(atoms)
    if exact:
        mean = sum(atoms, Fraction(0)) / d
    else:
        with mpmath.workprec(DEFAULT_PREC):
            mean = mpmath.fsum(to_mpf(a) for a in atoms) * (1 - mpmath.mpf(emp.zero_mass)) / d
    if emp.zero_mass > 0 or atoms[0] == 0:
        return MeanHarmonic(mean, Fraction(0) if exact else mpmath.mpf(0), True)
    if exact:
        harm = d / sum(1 / a for a in atoms)
    else:
        with mpmath.workprec(DEFAULT_PREC):
            harm = d / mpmath.fsum(1 / to_mpf(a) for a in atoms)
    return MeanHarmonic(mean, harm, False)


def discretize_measure(mu: MeasureSpec, d: int) -> RootMultiset:
    """Midpoint-quantile sample ``Q_mu((i - 1/2) / d)``, ``i = 1..d``."""
    if d < 1:
        raise InputValidationError("d must be >= 1")
    values = [mu.quantile(Fraction(2 * i - 1, 2 * d)) for i in range(1, d + 1)]
    return RootMultiset(tuple(values))
