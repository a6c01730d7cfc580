import math
from fractions import Fraction

import mpmath
import pytest

from freelln.errors import InputValidationError
from freelln.experiments import (
    ExperimentConfig,
    conjecture_study,
    converge_study,
    phi_table,
    rate_d2_study,
)
from freelln.finite_free_ops import laguerre_profile
from freelln.free_limit_oracle import BernoulliHalf, Discrete, MarchenkoPastur
from freelln.symmetric_core import RootMultiset, SymmetricProfile, profile_from_roots


def test_config_validation():
    cfg = ExperimentConfig("x", n_schedule=[2, 4], d_schedule=(3,))
    assert cfg.n_schedule == (2, 4)
    for bad in (dict(n_schedule=(4, 2)), dict(n_schedule=()), dict(d_schedule=(0, 1)),
                dict(rel_tol=Fraction(0)), dict(prec=0)):
        with pytest.raises(InputValidationError):
            ExperimentConfig("x", **bad)


def test_converge_equal_roots_zero_error():
    rows = converge_study(profile_from_roots(RootMultiset.of(1, 1, 1)), (2, 16))
    assert all(r["log_error"] == 0 and r["in_bracket"] for r in rows)


def test_converge_laguerre3_n256_rate():
    rows = converge_study(laguerre_profile(3), (256,))
    for r in rows:
        assert abs(r["n_log_error"]) <= math.log(3) + 0.01
        assert r["in_bracket"] and r["status"] == "ok"


def test_converge_zero_rows_and_order():
    rows = converge_study(profile_from_roots(RootMultiset.of(2, 1, 0)), (4, 8))
    assert [(r["n"], r["i"]) for r in rows] == [(4, 1), (4, 2), (4, 3), (8, 1), (8, 2), (8, 3)]
    assert rows[2]["status"] == "zero" and rows[2]["lam"] == 0


def test_converge_parallel_matches_serial():
    P = laguerre_profile(3)
    assert converge_study(P, (2, 4, 8), workers=3) == converge_study(P, (2, 4, 8))


def test_converge_needs_exact_profile():
    with pytest.raises(InputValidationError):
        converge_study(SymmetricProfile.from_log(laguerre_profile(2).log_e_tilde), (2,))


def test_rate_d2_rows():
    rows = rate_d2_study(7)
    assert rows[0]["closed_1"] == pytest.approx(1 + math.sqrt(0.5))
    assert rows[6]["constant"] == Fraction(1, 128)
    assert all(r["exact_ok"] and r["agree"] for r in rows)


def test_rate_d2_limits():
    (row,) = rate_d2_study(schedule=[4096])
    assert abs(row["root_nth_1"] - 1) < 1e-3 and abs(row["root_nth_2"] - 0.5) < 1e-3
    assert abs(row["n_log_error_1"] - math.log(2)) < 1e-3
    assert abs(row["n_log_error_2"] + math.log(2)) < 1e-3


def test_conjecture_families():
    rows = conjecture_study("laguerre", (10, 50))
    assert [r["ks"] for r in rows] == pytest.approx([0.1, 0.02], abs=1e-12)
    assert all(r["r1_error"] == 0 for r in rows)
    rows = conjecture_study("two_root", (10, 40))
    assert all(r["ks"] <= 2 / (2 * r["d"]) for r in rows)
    assert rows[0]["log_nu"] is None and rows[0]["r_last_error"] is None


def test_conjecture_dirac_zero_ks():
    rows = conjecture_study(Discrete(((Fraction(5, 2), 1),)), (3, 9))
    assert all(r["ks"] == 0 and r["r1_error"] == 0 for r in rows)


def test_conjecture_discrete_log_moments_match():
    rows = conjecture_study(Discrete(((1, "1/2"), (3, "1/2"))), (10,))
    assert rows[0]["log_error"] < 1e-12


def test_conjecture_mp_endpoint_shrinks():
    rows = conjecture_study(MarchenkoPastur(), (10, 100))
    assert rows[1]["r1_error"] < rows[0]["r1_error"] < 0.01


def test_conjecture_rejects_unknown_family():
    with pytest.raises(InputValidationError):
        conjecture_study("hermite", (3,))


def test_phi_table_bernoulli():
    rows = phi_table(BernoulliHalf(), 5)
    for r in rows:
        t = r["t"]
        assert r["quantile"] == pytest.approx((2 * t - 1) / (2 * t))
