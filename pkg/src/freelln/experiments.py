"""Deterministic numeric studies: convergence of powers, the degree-two rate
example, and the empirical-root-distribution harness.

Each study returns a list of row dicts ordered by its schedule.  Nothing
here is random.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

import mpmath

from .empirical_measures import (
    EmpiricalMeasure,
    discretize_measure,
    ks_distance,
    log_moment,
)
from .errors import InputValidationError, PrecisionBudgetExceeded
from .finite_free_ops import laguerre_profile, lln_limit_roots, two_root_profile
from .free_limit_oracle import (
    BernoulliHalf,
    MarchenkoPastur,
    MeasureSpec,
    PhiQuantileFn,
    phi_log_moment,
    s_transform,
)
from .real_rooted_solver import DEFAULT_REL_TOL, power_roots, theorem_brackets
from .symmetric_core import DEFAULT_PREC, SymmetricProfile, profile_from_roots, to_mpf

DEFAULT_N_SCHEDULE = tuple(2**j for j in range(1, 11))
DEFAULT_D_SCHEDULE = (10, 20, 50, 100, 200)

__all__ = [
    "DEFAULT_N_SCHEDULE",
    "DEFAULT_D_SCHEDULE",
    "ExperimentConfig",
    "converge_study",
    "rate_d2_study",
    "conjecture_study",
    "phi_table",
]


@dataclass(frozen=True)
class ExperimentConfig:
    name: str
    seed: object = None
    n_schedule: tuple = DEFAULT_N_SCHEDULE
    d_schedule: tuple = DEFAULT_D_SCHEDULE
    rel_tol: Fraction = DEFAULT_REL_TOL
    prec: int = DEFAULT_PREC
    out: str | None = None
    workers: int = 1
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        for name in ("n_schedule", "d_schedule"):
            sched = tuple(int(v) for v in getattr(self, name))
            if not sched or sched[0] < 1 or any(b <= a for a, b in zip(sched, sched[1:])):
                raise InputValidationError(f"{name} must be strictly increasing positive integers")
            object.__setattr__(self, name, sched)
        if not self.rel_tol > 0 or not self.prec > 0:
            raise InputValidationError("tolerances and precision must be positive")


# ---------------------------------------------------------------------------
# convergence of (lambda_i^(n))^(1/n)
# ---------------------------------------------------------------------------

def _converge_rows(P: SymmetricProfile, n: int, rel_tol) -> list:
    R = lln_limit_roots(P)
    d, k = P.degree, P.zero_count
    try:
        res = power_roots(P, n, rel_tol)
    except PrecisionBudgetExceeded as exc:
        return [{"n": n, "i": i, "status": "precision_budget_exceeded",
                 "achieved_tol": exc.achieved} for i in range(1, d + 1)]
    brackets = theorem_brackets(P, n)
    # expand certified roots to one entry per index, largest first
    per_index = [c for c in res.certified for _ in range(c.multiplicity)]
    rows = []
    with mpmath.workprec(res.prec):
        for i in range(1, d + 1):
            row = {"n": n, "i": i, "R": R.values[i - 1]}
            if i > d - k:
                row.update(lam=0, root_nth=0, log_error=None, n_log_error=None,
                           in_bracket=None, status="zero")
                rows.append(row)
                continue
            c = per_index[i - 1]
            lam = c.value
            log_root = mpmath.log(lam) / n
            err = log_root - R.log_values[i - 1]
            br = brackets[i - 1]
            row.update(lam=lam, root_nth=mpmath.exp(log_root), log_error=err,
                       n_log_error=n * err, in_bracket=c.within(br.lower, br.upper),
                       status="ok")
            rows.append(row)
    return rows


def converge_study(P: SymmetricProfile, n_schedule=DEFAULT_N_SCHEDULE,
                   rel_tol=DEFAULT_REL_TOL, workers: int = 1) -> list:
    """Rows ``(n, i, lambda, root_nth, R, log_error, n_log_error, in_bracket)``.

    ``in_bracket`` is the exact check that ``lambda_i^(n)`` lies in
    ``[R_i**n / C(d, i-1), C(d, i) R_i**n]``.
    """
    if not P.exact:
        raise InputValidationError("convergence studies need an exact seed profile")
    schedule = list(n_schedule)
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            chunks = list(pool.map(_converge_rows, [P] * len(schedule), schedule,
                                   [rel_tol] * len(schedule)))
    else:
        chunks = [_converge_rows(P, n, rel_tol) for n in schedule]
    return [row for chunk in chunks for row in chunk]


# ---------------------------------------------------------------------------
# degree two: p^(n) = x^2 - 2x + 2^-n
# ---------------------------------------------------------------------------

def rate_d2_study(n_max: int | None = None, rel_tol=DEFAULT_REL_TOL,
                  schedule=None) -> list:
    """Exact coefficients, closed-form and solver roots, and scaled log errors.

    Runs every ``n`` in ``1..n_max`` (or the explicit ``schedule``).
    """
    if schedule is None:
        if n_max is None or n_max < 1:
            raise InputValidationError("n_max must be a positive integer")
        schedule = range(1, n_max + 1)
    P = laguerre_profile(2)
    rows = []
    for n in schedule:
        res = power_roots(P, n, rel_tol)
        coeffs = res.polynomial.coeffs
        exact_ok = coeffs == (1, -2, Fraction(1, 2**n))
        with mpmath.workprec(res.prec):
            s = mpmath.sqrt(1 - mpmath.mpf(2) ** -n)
            closed = (1 + s, 1 - s)
            solver = tuple(res.roots.roots)
            rel = [abs(a / b - 1) for a, b in zip(solver, closed)]
            tol = to_mpf(rel_tol, res.prec)
            rows.append({
                "n": n,
                "constant": coeffs[2],
                "exact_ok": exact_ok,
                "closed_1": closed[0], "closed_2": closed[1],
                "solver_1": solver[0], "solver_2": solver[1],
                "rel_diff_1": rel[0], "rel_diff_2": rel[1],
                "agree": max(rel) <= tol,
                "n_log_error_1": mpmath.log(solver[0]),
                "n_log_error_2": mpmath.log(solver[1]) + n * mpmath.ln2,
                "root_nth_1": mpmath.exp(mpmath.log(solver[0]) / n),
                "root_nth_2": mpmath.exp(mpmath.log(solver[1]) / n),
            })
    return rows


# ---------------------------------------------------------------------------
# conjecture harness
# ---------------------------------------------------------------------------

FAMILIES = {
    # family -> (profile builder, limiting measure of the input roots)
    "laguerre": (laguerre_profile, MarchenkoPastur),
    "two_root": (two_root_profile, BernoulliHalf),
}


def _family_profile(source, d: int, prec: int) -> tuple:
    if isinstance(source, str):
        try:
            build, measure = FAMILIES[source]
        except KeyError as exc:
            raise InputValidationError(f"unknown family {source!r}") from exc
        return build(d), measure()
    if isinstance(source, MeasureSpec):
        return profile_from_roots(discretize_measure(source, d), prec), source
    raise InputValidationError("source must be a measure or a family name")


def conjecture_study(source, d_schedule=DEFAULT_D_SCHEDULE, prec: int = DEFAULT_PREC,
                     method: str = "auto") -> list:
    """Compare ``nu_d`` (limit-root distribution) with ``Phi(mu)`` across ``d``.

    ``source`` is a :class:`MeasureSpec` (discretized at midpoint quantiles)
    or one of the families ``"laguerre"`` / ``"two_root"``.  Columns report the
    KS distance, the first and last limit roots against the support
    endpoints, and log-moments.  Decay in ``d`` is reported, never asserted.
    """
    rows = []
    log_phi = None
    for d in d_schedule:
        P, mu = _family_profile(source, d, prec)
        if log_phi is None:
            log_phi = phi_log_moment(mu, method) if mu.zero_mass == 0 else None
        R = lln_limit_roots(P)
        nu = EmpiricalMeasure(R.values)
        target = PhiQuantileFn(mu, method)
        mean, lower = mu.mean(), mu.inverse_harmonic()
        with mpmath.workprec(prec):
            r1 = to_mpf(R.values[0], prec)
            rd = to_mpf(R.values[P.degree - P.zero_count - 1], prec)
            row = {
                "d": d,
                "degree": P.degree,
                "ks": ks_distance(nu, target),
                "r1": r1,
                "r1_error": abs(r1 - mean),
                "r_last": rd,
                "r_last_error": abs(rd - lower) if P.zero_count == 0 else None,
                "log_nu": None,
                "log_phi": log_phi,
                "log_error": None,
            }
            if P.zero_count == 0:
                row["log_nu"] = log_moment(nu, prec)
                if log_phi is not None:
                    row["log_error"] = abs(row["log_nu"] - log_phi)
        rows.append(row)
    return rows


def phi_table(mu: MeasureSpec, points: int = 99, method: str = "auto") -> list:
    """Quantile table of ``Phi(mu)`` on an interior midpoint grid of ``(m, 1)``."""
    m = mu.zero_mass
    rows = []
    for j in range(points):
        t = m + (1 - m) * (j + 0.5) / points
        S = s_transform(mu, t - 1, method)
        rows.append({"t": t, "quantile": 1.0 / S, "s_transform": S})
    return rows
