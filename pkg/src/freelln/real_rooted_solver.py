"""Certified real-root extraction for powers of non-negative-rooted polynomials.

All decisions (counts, which side of a point a root lies on) are made with
exact integer sign evaluations.  Big-float Newton steps only propose tight
brackets, which are then accepted or rejected by exact signs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, gcd, lcm

import mpmath

from .errors import InputValidationError, PrecisionBudgetExceeded
from .symmetric_core import (
    DEFAULT_PREC,
    NEG_INF,
    BigPoly,
    RootMultiset,
    SymmetricProfile,
    is_exact,
    mpf_to_fraction,
    to_mpf,
)

DEFAULT_REL_TOL = Fraction(1, 10**30)
DEFAULT_MAX_DEPTH = 20000

__all__ = [
    "DEFAULT_REL_TOL",
    "RootBracket",
    "CertifiedRoot",
    "PowerRoots",
    "sturm_count",
    "theorem_brackets",
    "separation_power",
    "working_precision",
    "power_polynomial",
    "power_roots",
    "roots_of_power",
    "nth_root_of_roots",
]


# ---------------------------------------------------------------------------
# dense polynomial helpers (descending coefficient lists)
# ---------------------------------------------------------------------------

def _strip(p):
    i = 0
    while i < len(p) - 1 and p[i] == 0:
        i += 1
    return p[i:]


def _deriv(p):
    n = len(p) - 1
    return [c * (n - i) for i, c in enumerate(p[:-1])] or [0]


def _divmod(a, b):
    a = [Fraction(c) for c in a]
    b = _strip(b)
    if len(a) < len(b):
        return [Fraction(0)], a
    q = []
    lead = Fraction(b[0])
    for _ in range(len(a) - len(b) + 1):
        c = a[0] / lead
        q.append(c)
        for j in range(len(b)):
            a[j] -= c * b[j]
        a.pop(0)
    return q, _strip(a or [Fraction(0)])


def _primitive(p):
    """Positive rational multiple of ``p`` with coprime integer coefficients."""
    p = [Fraction(c) for c in _strip(p)]
    den = lcm(*(c.denominator for c in p))
    ints = [int(c * den) for c in p]
    g = gcd(*ints) or 1
    return [c // g for c in ints]


def _monic_gcd(a, b):
    a, b = _primitive(a), _primitive(b)
    while not (len(b) == 1 and b[0] == 0):
        _, r = _divmod(a, b)
        a, b = b, _primitive(r) if any(r) else [0]
    return _primitive(a) if a[0] > 0 else [-c for c in _primitive(a)]


def _exquo(a, b):
    q, r = _divmod(a, b)
    if any(r):
        raise ArithmeticError("inexact polynomial division")
    return q


def _square_free_decomposition(f):
    """Yun's algorithm: ``f = c * prod g_m**m`` with coprime square-free ``g_m``."""

    def sub(x, y):
        width = max(len(x), len(y))
        x = [0] * (width - len(x)) + list(x)
        y = [0] * (width - len(y)) + list(y)
        return _strip([u - v for u, v in zip(x, y)])

    out = []
    a = _monic_gcd(f, _deriv(f))
    b = _exquo(f, a)
    c = _exquo(_deriv(f), a)
    dd = sub(c, _deriv(b))
    m = 1
    while len(_strip(b)) > 1:
        a = _monic_gcd(b, dd) if any(dd) else _primitive(b)
        if len(a) > 1:
            out.append((_primitive(a), m))
        b = _exquo(b, a)
        c = _exquo(dd, a) if any(dd) else [Fraction(0)]
        dd = sub(c, _deriv(b))
        m += 1
    return out


def _sign_at(p, x: Fraction) -> int:
    """Sign of the integer polynomial ``p`` at the rational ``x`` (exact)."""
    num, den = x.numerator, x.denominator
    deg = len(p) - 1
    acc = 0
    npow = 1
    # homogenized Horner: sum c_i num**(deg-i) den**i, den > 0
    for c in p:
        acc = acc * num + c * npow
        npow *= den
    return (acc > 0) - (acc < 0)


def _sturm_chain(f):
    chain = [_primitive(f), _primitive(_deriv(f))]
    while len(chain[-1]) > 1:
        _, r = _divmod(chain[-2], chain[-1])
        if not any(r):
            break
        chain.append([-c for c in _primitive(r)])
    return chain


def _variations(chain, x: Fraction) -> int:
    signs = [s for s in (_sign_at(p, x) for p in chain) if s]
    return sum(1 for s, t in zip(signs, signs[1:]) if s != t)


def _count(chain, a, b) -> int:
    return _variations(chain, a) - _variations(chain, b)


# ---------------------------------------------------------------------------
# public types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RootBracket:
    """Interval ``(lower, upper]`` holding ``count`` roots (with multiplicity)."""

    lower: object
    upper: object
    count: int = 1
    index: int | None = None

    def __post_init__(self):
        if self.lower > self.upper:
            raise InputValidationError("bracket lower bound exceeds upper bound")
        if self.count < 1:
            raise InputValidationError("bracket count must be >= 1")


@dataclass(frozen=True)
class CertifiedRoot:
    """A distinct positive root isolated in ``bracket`` with an exact witness.

    ``factor`` is the integer square-free factor vanishing there and
    ``sign_right`` the sign of that factor just right of ``bracket.lower``.
    """

    bracket: RootBracket
    value: object
    multiplicity: int
    factor: tuple
    sign_right: int

    def compare(self, x) -> int:
        """Exact sign of ``root - x``."""
        x = Fraction(x) if is_exact(x) else mpf_to_fraction(x)
        a, b = self.bracket.lower, self.bracket.upper
        if x <= a:
            return 1
        if x > b:
            return -1
        s = _sign_at(self.factor, x)
        if s == 0:
            return 0
        return 1 if s == self.sign_right else -1

    def within(self, lower, upper) -> bool:
        return self.compare(lower) >= 0 and self.compare(upper) <= 0

    @property
    def relative_width(self) -> Fraction:
        a, b = self.bracket.lower, self.bracket.upper
        return (b - a) / a if a > 0 else Fraction(10**9)


@dataclass(frozen=True)
class PowerRoots:
    roots: RootMultiset
    certified: tuple
    zero_count: int
    rel_tol: Fraction
    prec: int
    polynomial: BigPoly


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------

def sturm_count(poly: BigPoly, a, b) -> int:
    """Number of distinct real roots of ``poly`` in ``(a, b]`` (exact)."""
    if not poly.exact or not (is_exact(a) and is_exact(b)):
        raise InputValidationError("sturm_count needs exact rational inputs")
    a, b = Fraction(a), Fraction(b)
    if not a < b:
        raise InputValidationError("need a < b")
    f = list(poly.coeffs)
    sqf = _exquo(f, _monic_gcd(f, _deriv(f))) if poly.degree > 1 else f
    return _count(_sturm_chain(sqf), a, b)


def theorem_brackets(P: SymmetricProfile, n: int) -> list:
    """A-priori brackets ``[R_i**n / C(d, i-1), C(d, i) R_i**n]`` for ``i <= d - k``.

    Exact rationals for exact profiles; big-floats (from the log domain)
    otherwise.
    """
    d, k = P.degree, P.zero_count
    out = []
    for i in range(1, d - k + 1):
        if P.exact:
            r = (P.e_tilde_exact[i] / P.e_tilde_exact[i - 1]) ** n
            lo, hi = r / comb(d, i - 1), r * comb(d, i)
        else:
            with mpmath.workprec(P.prec):
                lr = n * (P.log_e_tilde[i] - P.log_e_tilde[i - 1])
                lo = mpmath.exp(lr - mpmath.log(comb(d, i - 1)))
                hi = mpmath.exp(lr + mpmath.log(comb(d, i)))
        out.append(RootBracket(lo, hi, 1, i))
    return out


def separation_power(P: SymmetricProfile) -> int | None:
    """Smallest ``n`` from which all theorem brackets are pairwise disjoint.

    ``None`` when two limit roots coincide (all source roots equal), in which
    case the brackets never separate.
    """
    d, k = P.degree, P.zero_count
    need = 1
    with mpmath.workprec(P.prec):
        for i in range(1, d - k):
            gap = (2 * P.log_e_tilde[i] - P.log_e_tilde[i - 1] - P.log_e_tilde[i + 1])
            if P.exact:
                e = P.e_tilde_exact
                if e[i] ** 2 == e[i - 1] * e[i + 1]:
                    return None
            elif gap <= 0:
                return None
            width = mpmath.log(comb(d, i - 1)) + mpmath.log(comb(d, i + 1))
            n = int(mpmath.floor(width / gap)) + 1
            if P.exact:
                # settle rounding at the boundary exactly
                e = P.e_tilde_exact
                ratio = (e[i] * e[i]) / (e[i - 1] * e[i + 1])
                bound = comb(d, i - 1) * comb(d, i + 1)
                while n > 1 and ratio ** (n - 1) > bound:
                    n -= 1
                while not ratio ** n > bound:
                    n += 1
            need = max(need, n)
    return need


def working_precision(P: SymmetricProfile, n: int, rel_tol=DEFAULT_REL_TOL) -> int:
    """Bits for big-float work: ``max(128, 2 n max|log2 e~_i| + 64)`` plus tolerance bits."""
    with mpmath.workprec(P.prec):
        spread = max((abs(v) / mpmath.ln2 for v in P.log_e_tilde if v != NEG_INF),
                     default=mpmath.mpf(0))
    tol_bits = int(-mpmath.log(to_mpf(rel_tol), 2)) + 64
    return max(DEFAULT_PREC, int(2 * n * spread) + 64, tol_bits)


def power_polynomial(P: SymmetricProfile, n: int) -> BigPoly:
    """Exact coefficients of the ``n``-fold power: ``(-1)**i C(d, i) e~_i**n``."""
    if not P.exact:
        raise InputValidationError("exact coefficients need an exact profile")
    d = P.degree
    return BigPoly(tuple((-1) ** i * comb(d, i) * v ** n
                         for i, v in enumerate(P.e_tilde_exact)))


def _geometric_split(lo: Fraction, hi: Fraction) -> Fraction:
    if hi >= 4 * lo:
        ratio = hi / lo
        bits = (ratio.numerator.bit_length() - ratio.denominator.bit_length()) // 2
        mid = lo * 2 ** max(bits, 1)
        if lo < mid < hi:
            return mid
    return (lo + hi) / 2


def _isolate(chain, lo: Fraction, hi: Fraction, max_depth: int) -> list:
    """Split ``(lo, hi]`` until each piece holds exactly one distinct root."""
    out, stack, steps = [], [(lo, hi, _count(chain, lo, hi))], 0
    while stack:
        a, b, c = stack.pop()
        if c == 0:
            continue
        if c == 1:
            out.append((a, b))
            continue
        steps += 1
        if steps > max_depth:
            raise PrecisionBudgetExceeded("root isolation exceeded the depth budget")
        m = _geometric_split(a, b)
        left = _count(chain, a, m)
        stack.append((m, b, c - left))
        stack.append((a, m, left))
    return out


def _newton(fm, dfm, x0, a, b, prec, iters=80):
    with mpmath.workprec(prec):
        x = x0
        for _ in range(iters):
            fx = mpmath.polyval(fm, x)
            dfx = mpmath.polyval(dfm, x)
            if dfx == 0:
                return None
            step = fx / dfx
            x = x - step
            if not (a <= x <= b):
                return None
            if abs(step) <= abs(x) * mpmath.mpf(2) ** (-prec + 8):
                break
        return x


def _refine(f, a: Fraction, b: Fraction, rel_tol: Fraction, prec: int, max_depth: int):
    """Shrink ``(a, b]`` around its single simple root of ``f`` to ``rel_tol``.

    Returns ``(lower, upper, value, sign_right)``.
    """
    sign_right = _sign_at(f, a) or _sign_at(_deriv(f), a)
    if _sign_at(f, b) == 0:
        return b, b, to_mpf(b, prec), sign_right
    with mpmath.workprec(prec):
        fm = [to_mpf(c, prec) for c in f]
        dfm = [to_mpf(c, prec) for c in _deriv(f)]
    depth = 0
    while (b - a) > rel_tol * a / 2:
        if depth > max_depth:
            achieved = (b - a) / a
            raise PrecisionBudgetExceeded(
                f"bisection depth {max_depth} reached, relative width {float(achieved):.3g}",
                achieved=achieved)
        guess = _newton(fm, dfm, to_mpf(_geometric_split(a, b), prec),
                        to_mpf(a, prec), to_mpf(b, prec), prec)
        if guess is not None:
            c = mpf_to_fraction(guess)
            delta = c * rel_tol / 4
            lo, hi = c - delta, c + delta
            if a < lo and hi <= b and lo > 0:
                s_lo, s_hi = _sign_at(f, lo), _sign_at(f, hi)
                if s_lo == 0:
                    return lo, lo, to_mpf(lo, prec), sign_right
                if s_lo == sign_right and s_hi != sign_right:
                    a, b = lo, hi
                    break
        for _ in range(4):
            m = _geometric_split(a, b)
            s = _sign_at(f, m)
            if s == 0:
                return m, m, to_mpf(m, prec), sign_right
            if s == sign_right:
                a = m
            else:
                b = m
            depth += 1
    with mpmath.workprec(prec):
        value = (to_mpf(a, prec) + to_mpf(b, prec)) / 2
    return a, b, value, sign_right


def power_roots(P: SymmetricProfile, n: int, rel_tol=DEFAULT_REL_TOL,
                max_depth: int = DEFAULT_MAX_DEPTH, prec: int | None = None) -> PowerRoots:
    """Certified roots of the ``n``-fold finite free multiplicative power of ``P``.

    Distinct positive roots are isolated with Sturm counts, inside the
    a-priori brackets when those are disjoint and by recursive splitting
    otherwise, then refined to relative width ``rel_tol``.
    """
    if not P.exact:
        raise InputValidationError("root extraction needs an exact profile")
    if n < 1:
        raise InputValidationError("n must be a positive integer")
    rel_tol = Fraction(rel_tol) if is_exact(rel_tol) else mpf_to_fraction(mpmath.mpf(rel_tol))
    if not 0 < rel_tol < 1:
        raise InputValidationError("rel_tol must lie in (0, 1)")
    d, k = P.degree, P.zero_count
    prec = prec or working_precision(P, n, rel_tol)
    poly = power_polynomial(P, n)
    if d == k:
        return PowerRoots(RootMultiset((Fraction(0),) * d), (), k, rel_tol, prec, poly)

    q = list(poly.coeffs[: d - k + 1])
    factors = _square_free_decomposition(_primitive(q))
    brackets = theorem_brackets(P, n)
    intervals = []  # (factor, multiplicity, a, b)
    sep = separation_power(P)
    if len(factors) == 1 and factors[0][1] == 1 and sep is not None and n >= sep:
        f = factors[0][0]
        chain = _sturm_chain(f)
        trial = [(Fraction(br.lower), Fraction(br.upper)) for br in brackets]
        if all(_sign_at(f, a) != 0 and _count(chain, a, b) == 1 for a, b in trial):
            intervals = [(f, 1, a, b) for a, b in trial]
    if not intervals:
        lo = min(Fraction(br.lower) for br in brackets) / 2
        hi = max(Fraction(br.upper) for br in brackets)
        for f, m in factors:
            chain = _sturm_chain(f)
            distinct = len(f) - 1
            widen = 0
            while _count(chain, lo, hi) < distinct:
                lo /= 2
                widen += 1
                if widen > 4096:
                    raise PrecisionBudgetExceeded("could not bracket all positive roots")
            intervals += [(f, m, a, b) for a, b in _isolate(chain, lo, hi, max_depth)]

    certified = []
    for f, m, a, b in intervals:
        lo_, hi_, value, sgn = _refine(f, a, b, rel_tol, prec, max_depth)
        certified.append(CertifiedRoot(RootBracket(lo_, hi_, m), value, m, tuple(f), sgn))
    certified.sort(key=lambda c: c.bracket.lower, reverse=True)
    values = [c.value for c in certified for _ in range(c.multiplicity)]
    values += [mpmath.mpf(0)] * k
    return PowerRoots(RootMultiset(tuple(values)), tuple(certified), k, rel_tol, prec, poly)


def roots_of_power(P: SymmetricProfile, n: int, rel_tol=DEFAULT_REL_TOL,
                   max_depth: int = DEFAULT_MAX_DEPTH) -> RootMultiset:
    """The ``d`` roots of the ``n``-fold power, each to relative tolerance ``rel_tol``."""
    return power_roots(P, n, rel_tol, max_depth).roots


def nth_root_of_roots(roots: RootMultiset, n: int, prec: int | None = None) -> RootMultiset:
    """``exp(log(lambda) / n)`` for every root; zeros stay zero."""
    if n < 1:
        raise InputValidationError("n must be a positive integer")
    prec = prec or DEFAULT_PREC
    with mpmath.workprec(prec):
        out = [mpmath.mpf(0) if r == 0 else mpmath.exp(mpmath.log(to_mpf(r, prec)) / n)
               for r in roots.roots]
    return RootMultiset(tuple(out))
