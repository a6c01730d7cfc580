from fractions import Fraction
from math import comb, prod

import mpmath
import pytest
from hypothesis import given, strategies as st

from conftest import brute_elementary, root_lists
from freelln.errors import InputValidationError, PrecisionBudgetExceeded, SignPatternError
from freelln.symmetric_core import (
    BigPoly,
    RootMultiset,
    SymmetricProfile,
    coefficients_to_profile,
    elementary_symmetric,
    expand_roots,
    profile_from_roots,
    profile_to_coefficients,
    root_power_map,
)


def F(*xs):
    return tuple(Fraction(x) for x in xs)


# -- RootMultiset ------------------------------------------------------------

def test_multiset_sorted_descending_keeps_repeats():
    r = RootMultiset.of(1, 3, 0, 3)
    assert r.roots == F(3, 3, 1, 0)
    assert r.degree == 4 and r.zero_count == 1 and r.exact


@pytest.mark.parametrize("bad", [(), (-1, 2)])
def test_multiset_rejects_invalid(bad):
    with pytest.raises(InputValidationError):
        RootMultiset(bad)


def test_multiset_parses_rational_strings():
    assert RootMultiset(("3/2", "1")).roots == F("3/2", 1)


# -- elementary_symmetric ----------------------------------------------------

@pytest.mark.parametrize("d", [1, 4, 9])
def test_elementary_all_ones_binomial(d):
    assert elementary_symmetric(RootMultiset((1,) * d)) == tuple(comb(d, i) for i in range(d + 1))


def test_elementary_123():
    assert elementary_symmetric(RootMultiset.of(1, 2, 3)) == F(1, 6, 11, 6)


def test_elementary_with_zeros():
    assert elementary_symmetric(RootMultiset.of(0, 0, 5)) == F(1, 5, 0, 0)


@given(root_lists(max_size=9))
def test_elementary_matches_subset_enumeration(roots):
    assert elementary_symmetric(RootMultiset(tuple(roots))) == brute_elementary(roots)


def test_elementary_bigfloat_input():
    with mpmath.workprec(200):
        r = RootMultiset((mpmath.sqrt(2), mpmath.mpf(1)))
        e = elementary_symmetric(r, prec=200)
        assert abs(e[1] - (1 + mpmath.sqrt(2))) < mpmath.mpf(2) ** -190
        assert abs(e[2] - mpmath.sqrt(2)) < mpmath.mpf(2) ** -190


# -- profile_from_roots ------------------------------------------------------

def test_profile_all_ones():
    P = profile_from_roots(RootMultiset((1,) * 5))
    assert P.e_tilde_exact == (1,) * 6 and P.zero_count == 0


def test_profile_123():
    P = profile_from_roots(RootMultiset.of(1, 2, 3))
    assert P.e_tilde_exact == F(1, 2, "11/3", 6)
    assert P.zero_count == 0


@pytest.mark.parametrize("d", [1, 2, 5])
def test_profile_two_root_polynomial(d):
    P = profile_from_roots(RootMultiset((1,) * d + (0,) * d))
    expected = tuple(Fraction(comb(d, j), comb(2 * d, j)) if j <= d else 0
                     for j in range(2 * d + 1))
    assert P.e_tilde_exact == expected and P.zero_count == d


def test_profile_log_domain_agrees_with_exact():
    P = profile_from_roots(RootMultiset.of(1, 2, 3))
    for e, le in zip(P.e_tilde_exact, P.log_e_tilde):
        assert abs(mpmath.exp(le) - mpmath.mpf(e.numerator) / e.denominator) < 1e-30


def test_profile_log_of_zero_is_neg_inf():
    P = profile_from_roots(RootMultiset.of(2, 0))
    assert P.log_e_tilde[2] == mpmath.mpf("-inf")


def test_profile_validation():
    with pytest.raises(InputValidationError):
        SymmetricProfile.from_exact(["2", "1"])          # e~_0 must be 1
    with pytest.raises(InputValidationError):
        SymmetricProfile.from_exact(["1", "0", "1"])     # zero not a suffix
    with pytest.raises(InputValidationError):
        SymmetricProfile.from_exact(["1", "-1"])


def test_from_log_profile():
    P = SymmetricProfile.from_log(["0", "0", str(mpmath.log(0.5))])
    assert not P.exact and P.degree == 2 and P.zero_count == 0


@given(root_lists(max_size=10))
def test_newton_inequality_holds_for_real_roots(roots):
    P = profile_from_roots(RootMultiset(tuple(roots)))
    e, k = P.e_tilde_exact, P.zero_count
    for i in range(1, P.degree - k):
        assert e[i] ** 2 >= e[i - 1] * e[i + 1]
    assert P.satisfies_newton()


@given(root_lists(max_size=10))
def test_zero_suffix_switches_at_d_minus_k(roots):
    P = profile_from_roots(RootMultiset(tuple(roots)))
    d, k = P.degree, roots.count(0)
    assert P.zero_count == k
    assert all(v > 0 for v in P.e_tilde_exact[: d - k + 1])
    assert all(v == 0 for v in P.e_tilde_exact[d - k + 1:])


# -- coefficients ------------------------------------------------------------

def test_to_coefficients_examples():
    assert profile_to_coefficients(SymmetricProfile.from_exact([1] * 4)).coeffs == F(1, -3, 3, -1)
    P = SymmetricProfile.from_exact(["1", "2", "11/3", "6"])
    assert profile_to_coefficients(P).coeffs == F(1, -6, 11, -6)
    P = SymmetricProfile.from_exact(["1", "1", "1/2"])
    assert profile_to_coefficients(P).coeffs == F(1, -2, "1/2")


def test_from_coefficients_examples():
    assert coefficients_to_profile(BigPoly(F(1, -2, "1/2"))).e_tilde_exact == F(1, 1, "1/2")
    assert coefficients_to_profile(BigPoly(F(1, -3, 3, -1))).e_tilde_exact == F(1, 1, 1, 1)
    P = coefficients_to_profile(BigPoly(F(1, 0, 0, 0)))
    assert P.e_tilde_exact == F(1, 0, 0, 0) and P.zero_count == 3


@pytest.mark.parametrize("coeffs", [(1, 2, 1), (1, 0, 1), (1, -1, 0, 1)])
def test_from_coefficients_rejects_bad_signs(coeffs):
    with pytest.raises(SignPatternError):
        coefficients_to_profile(BigPoly(F(*coeffs)))


def test_bigpoly_must_be_monic():
    with pytest.raises(InputValidationError):
        BigPoly(F(2, 1))


@given(root_lists(max_size=12))
def test_round_trip_exact(roots):
    P = profile_from_roots(RootMultiset(tuple(roots)))
    Q = coefficients_to_profile(profile_to_coefficients(P))
    assert Q.e_tilde_exact == P.e_tilde_exact and Q.zero_count == P.zero_count


@given(root_lists(max_size=12))
def test_profile_coefficients_equal_direct_expansion(roots):
    # independent expansion of prod (x - r)
    cs = [Fraction(1)]
    for r in roots:
        cs = [a - r * b for a, b in zip(cs + [0], [0] + cs)]
    P = profile_from_roots(RootMultiset(tuple(roots)))
    assert profile_to_coefficients(P).coeffs == tuple(cs)
    assert expand_roots(RootMultiset(tuple(roots))).coeffs == tuple(cs)


def test_to_coefficients_precision_budget():
    P = SymmetricProfile.from_log(["0", "-2000"], prec=128)
    with pytest.raises(PrecisionBudgetExceeded):
        profile_to_coefficients(P, prec=64)


def test_bigpoly_horner():
    p = BigPoly(F(1, -6, 11, -6))
    assert [p(x) for x in (1, 2, 3, 0)] == [0, 0, 0, -6]


# -- root_power_map ----------------------------------------------------------

def test_root_power_identity():
    r = RootMultiset.of(3, 1, 0)
    assert root_power_map(r, 1).roots == r.roots


def test_root_power_square_roots_exact():
    assert root_power_map(RootMultiset.of(4, 1, 0), Fraction(1, 2)).roots == F(2, 1, 0)


def test_root_power_cube_roots_exact():
    out = root_power_map(RootMultiset(("8", "1/8")), Fraction(1, 3))
    assert out.roots == F(2, "1/2")


def test_root_power_irrational_goes_bigfloat():
    out = root_power_map(RootMultiset.of(2), Fraction(1, 2))
    with mpmath.workprec(128):
        assert abs(out.roots[0] - mpmath.sqrt(2)) < 1e-30


@given(root_lists(max_size=6), st.integers(1, 4))
def test_root_power_integer_exponent(roots, a):
    out = root_power_map(RootMultiset(tuple(roots)), a)
    assert out.roots == tuple(sorted((r ** a for r in roots), reverse=True))


def test_root_power_rejects_nonpositive_alpha():
    with pytest.raises(InputValidationError):
        root_power_map(RootMultiset.of(1), 0)
