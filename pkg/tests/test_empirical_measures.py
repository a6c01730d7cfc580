import csv
import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import integrate, optimize

from conftest import root_lists
from freelln.errors import InputValidationError
from freelln.empirical_measures import (
    EmpiricalMeasure,
    discretize_measure,
    ks_distance,
    log_moment,
    mean_and_harmonic,
)
from freelln.finite_free_ops import lln_limit_roots
from freelln.free_limit_oracle import (
    BernoulliHalf,
    Discrete,
    MarchenkoPastur,
    PhiQuantileFn,
    Uniform,
)
from freelln.symmetric_core import RootMultiset, profile_from_roots


def brute_ks(emp, cdf, extra=()):
    """Sup over a dense grid plus both sides of every atom."""
    atoms = [float(a) for a in emp.atoms]
    xs = set(np.linspace(-0.5, max(atoms) + 1, 4001)) | set(extra)
    for a in atoms + [0.0]:
        xs |= {a, a - 1e-12, a + 1e-12}
    return max(abs(emp.cdf(x) - cdf(x)) for x in xs)


def unif_cdf(x):
    return min(max(x, 0.0), 1.0)


# -- EmpiricalMeasure --------------------------------------------------------

def test_cdf_is_right_continuous_step():
    e = EmpiricalMeasure((1, 2, 2, 3))
    assert e.cdf(2) == 0.75 and e.cdf_left(2) == 0.25 and e.cdf(-1) == 0
    assert e.cdf(3) == 1.0 and e.size == 4


def test_extra_zero_mass():
    e = EmpiricalMeasure((1, 2), zero_mass=0.5)
    assert e.cdf(0) == 0.5 and e.cdf_left(0) == 0 and e.cdf(1) == 0.75


def test_accepts_roots_and_limit_roots():
    R = lln_limit_roots(profile_from_roots(RootMultiset.of(1, 2, 3)))
    assert EmpiricalMeasure(R).atoms == tuple(sorted(R.values))
    assert EmpiricalMeasure(RootMultiset.of(3, 1)).atoms == (1, 3)


@pytest.mark.parametrize("bad", [(), (-1, 2)])
def test_rejects_invalid(bad):
    with pytest.raises(InputValidationError):
        EmpiricalMeasure(bad)


def test_csv_export(tmp_path):
    path = tmp_path / "atoms.csv"
    EmpiricalMeasure((Fraction(1, 3), 2)).to_csv(path)
    rows = list(csv.reader(open(path)))
    assert rows[0] == ["index", "location"]
    assert rows[1][0] == "1" and rows[1][1].startswith("0.33333333333333333333333333")
    assert len(rows) == 3


# -- KS distance -------------------------------------------------------------

def test_ks_lattice_d4():
    e = EmpiricalMeasure(tuple(Fraction(k, 4) for k in range(1, 5)))
    ks = ks_distance(e, Uniform())
    assert ks == pytest.approx(0.25, abs=1e-15)
    assert ks == pytest.approx(brute_ks(e, unif_cdf), abs=1e-9)


def test_ks_midpoint_uniform_d10():
    e = EmpiricalMeasure(tuple(Fraction(2 * i - 1, 20) for i in range(1, 11)))
    assert ks_distance(e, Uniform()) == pytest.approx(0.05, abs=1e-15)


def test_ks_dirac_zero():
    mu = Discrete(((Fraction(3, 2), 1),))
    assert ks_distance(EmpiricalMeasure((Fraction(3, 2),)), PhiQuantileFn(mu)) == 0


@pytest.mark.parametrize("d", [1, 7, 50])
def test_ks_laguerre_lattice_is_one_over_d(d):
    e = EmpiricalMeasure(tuple(Fraction(k, d) for k in range(1, d + 1)))
    assert ks_distance(e, PhiQuantileFn(MarchenkoPastur())) == pytest.approx(1 / d, abs=1e-14)


@settings(max_examples=30)
@given(root_lists(1, 6))
def test_ks_matches_brute_force(atoms):
    e = EmpiricalMeasure(tuple(atoms))
    target = Uniform(0, 2)
    assert ks_distance(e, target) == pytest.approx(brute_ks(e, target.cdf), abs=1e-3)
    assert ks_distance(e, target) >= brute_ks(e, target.cdf) - 1e-12


@pytest.mark.parametrize("mu", [Uniform(), Uniform(1, 3), BernoulliHalf(), MarchenkoPastur(),
                                Discrete(((1, "1/3"), (2, "2/3")))])
@pytest.mark.parametrize("d", [1, 3, 10, 37])
def test_midpoint_discretization_bound(mu, d):
    e = EmpiricalMeasure(discretize_measure(mu, d))
    assert ks_distance(e, mu) <= 1 / d + 1e-12


# -- log moment / mean and harmonic ------------------------------------------

def test_log_moment_examples():
    assert log_moment(EmpiricalMeasure((1, 1, 1))) == 0
    with mpmath.workprec(128):
        e = +mpmath.e
        assert abs(log_moment(EmpiricalMeasure((e, 1 / e)))) < 1e-35
        lhs = log_moment(EmpiricalMeasure((1, 2, 3)))
        rhs = log_moment(EmpiricalMeasure((2, Fraction(11, 6), Fraction(18, 11))))
        assert abs(lhs - rhs) < 1e-35 and abs(lhs - mpmath.log(6) / 3) < 1e-35


def test_log_moment_rejects_zero():
    with pytest.raises(InputValidationError):
        log_moment(EmpiricalMeasure((0, 1)))


def test_mean_and_harmonic_examples():
    assert mean_and_harmonic(EmpiricalMeasure((1, 1, 1))) == (1, 1, False)
    assert mean_and_harmonic(EmpiricalMeasure((1, 2, 3))) == (2, Fraction(18, 11), False)
    assert mean_and_harmonic(EmpiricalMeasure((1, 0))) == (Fraction(1, 2), 0, True)


@given(root_lists(1, 9, allow_zero=False))
def test_limit_root_endpoints_are_mean_and_harmonic(roots):
    mh = mean_and_harmonic(EmpiricalMeasure(tuple(roots)))
    R = lln_limit_roots(profile_from_roots(RootMultiset(tuple(roots)))).values
    assert R[0] == mh.mean and R[-1] == mh.harmonic_inverse


# -- discretization ----------------------------------------------------------

def test_discretize_uniform():
    assert discretize_measure(Uniform(), 4).roots == tuple(Fraction(k, 8) for k in (7, 5, 3, 1))


def test_discretize_bernoulli():
    assert discretize_measure(BernoulliHalf(), 4).roots == (1, 1, 0, 0)


def test_discretize_mp_against_density_inversion():
    def cdf(x):
        return integrate.quad(lambda t: math.sqrt(t * (4 - t)) / (2 * math.pi * t), 0, x,
                              epsabs=1e-14, limit=200)[0]
    got = discretize_measure(MarchenkoPastur(), 3).roots
    for g, u in zip(got, (5 / 6, 1 / 2, 1 / 6)):
        ref = optimize.brentq(lambda x: cdf(x) - u, 1e-12, 4 - 1e-12, xtol=1e-14)
        assert abs(float(g) - ref) < 1e-9


@pytest.mark.parametrize("d", [2, 4, 10, 11])
def test_discretize_zero_mass_floor(d):
    roots = discretize_measure(BernoulliHalf(), d)
    assert roots.zero_count >= math.floor(0.5 * d)


def test_discretize_rejects_bad_d():
    with pytest.raises(InputValidationError):
        discretize_measure(Uniform(), 0)
