"""JSON and CSV encodings for roots, profiles, polynomials and result tables.

Exact rationals are written as ``"p/q"`` strings, big-floats as decimal
strings with a stated number of significant digits.
"""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction

import mpmath

from .errors import InputValidationError
from .symmetric_core import (
    BigPoly,
    RootMultiset,
    SymmetricProfile,
    coefficients_to_profile,
    is_exact,
    profile_from_roots,
    profile_to_coefficients,
    to_scalar,
)

DECIMAL_DIGITS = 30

__all__ = [
    "DECIMAL_DIGITS",
    "format_exact",
    "format_decimal",
    "format_value",
    "roots_to_json",
    "roots_from_json",
    "profile_to_json",
    "load_polynomial",
    "load_profile",
    "polynomial_to_json",
    "rows_to_csv",
    "rows_to_json",
]


def format_exact(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def format_decimal(x, digits: int = DECIMAL_DIGITS) -> str:
    if x is None:
        return ""
    if is_exact(x):
        x = Fraction(x)
        with mpmath.workprec(4 * digits + 64):
            return mpmath.nstr(mpmath.mpf(x.numerator) / x.denominator, digits)
    if isinstance(x, (bool, int, str)):
        return str(x)
    return mpmath.nstr(mpmath.mpf(x), digits)


def format_value(x, digits: int = DECIMAL_DIGITS) -> str:
    """``p/q`` for exact values, a decimal string otherwise."""
    if x is None:
        return ""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, str):
        return x
    if is_exact(x):
        return format_exact(x)
    return format_decimal(x, digits)


def roots_to_json(roots: RootMultiset, digits: int = DECIMAL_DIGITS) -> dict:
    return {"degree": roots.degree, "roots": [format_value(r, digits) for r in roots.roots]}


def roots_from_json(obj: dict) -> RootMultiset:
    try:
        roots = RootMultiset(tuple(obj["roots"]))
    except KeyError as exc:
        raise InputValidationError("missing 'roots'") from exc
    if "degree" in obj and int(obj["degree"]) != roots.degree:
        raise InputValidationError("'degree' disagrees with the number of roots")
    return roots


def profile_to_json(profile: SymmetricProfile, digits: int = DECIMAL_DIGITS) -> dict:
    out = {
        "degree": profile.degree,
        "zero_count": profile.zero_count,
        "precision_bits": profile.prec,
        "log_e_tilde": [mpmath.nstr(v, digits) for v in profile.log_e_tilde],
    }
    if profile.exact:
        out["e_tilde"] = [format_exact(v) for v in profile.e_tilde_exact]
    return out


def _expand_signed(roots) -> BigPoly:
    # real roots of either sign (additive convolution accepts them)
    cs = [Fraction(1)] if all(is_exact(r) for r in roots) else [mpmath.mpf(1)]
    for lam in roots:
        cs = [a - lam * b for a, b in zip(cs + [0], [0] + cs)]
    return BigPoly(tuple(cs))


def load_polynomial(obj: dict) -> BigPoly:
    """Parse a polynomial given by ``roots``, ``e_tilde`` or ``coefficients``."""
    try:
        if "roots" in obj:
            roots = [to_scalar(r) for r in obj["roots"]]
            if not roots:
                raise InputValidationError("empty root list")
            poly = _expand_signed(roots)
        elif "e_tilde" in obj:
            poly = profile_to_coefficients(SymmetricProfile.from_exact(obj["e_tilde"]))
        elif "log_e_tilde" in obj:
            poly = profile_to_coefficients(SymmetricProfile.from_log(
                list(obj["log_e_tilde"]), int(obj.get("precision_bits", 128))))
        elif "coefficients" in obj:
            poly = BigPoly(tuple(obj["coefficients"]))
        else:
            raise InputValidationError("polynomial needs 'roots', 'e_tilde' or 'coefficients'")
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        if isinstance(exc, InputValidationError):
            raise
        raise InputValidationError(f"bad polynomial: {exc}") from exc
    if "degree" in obj and int(obj["degree"]) != poly.degree:
        raise InputValidationError("'degree' disagrees with the polynomial data")
    return poly


def load_profile(obj: dict) -> SymmetricProfile:
    """Like :func:`load_polynomial` but for non-negative-rooted input."""
    if "roots" in obj:
        return profile_from_roots(roots_from_json(obj))
    return coefficients_to_profile(load_polynomial(obj))


def polynomial_to_json(poly: BigPoly, digits: int = DECIMAL_DIGITS) -> dict:
    out = {"degree": poly.degree, "coefficients": [format_value(c, digits) for c in poly.coeffs]}
    try:
        profile = coefficients_to_profile(poly)
    except InputValidationError:
        return out
    if profile.exact:
        out["e_tilde"] = [format_exact(v) for v in profile.e_tilde_exact]
    else:
        out["log_e_tilde"] = [mpmath.nstr(v, digits) for v in profile.log_e_tilde]
    return out


def rows_to_csv(rows: list, columns: list | None = None, digits: int = DECIMAL_DIGITS) -> str:
    if not rows:
        return ""
    columns = columns or list(rows[0])
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([format_value(row.get(c), digits) for c in columns])
    return buf.getvalue()


def rows_to_json(rows: list, digits: int = DECIMAL_DIGITS, **extra) -> str:
    body = [{k: format_value(v, digits) for k, v in row.items()} for row in rows]
    return json.dumps({"rows": body, **extra}, indent=2)
