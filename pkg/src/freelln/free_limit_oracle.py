"""S-transforms and the multiplicative law-of-large-numbers limit measure.

For a compactly supported probability measure ``mu != delta_0`` on
``[0, inf)`` with atom ``m = mu({0})``,

    psi(z) = int t z / (1 - t z) dmu(t),        z < 0,
    S(w)   = (w + 1) / w * psi^{-1}(w),         w in (m - 1, 0),

and the limit measure ``Phi(mu)`` has quantile ``Q(t) = 1 / S(t - 1)`` on
``(m, 1)`` plus an atom of mass ``m`` at zero.  Since ``psi`` is strictly
increasing on the negative axis, its inverse is found by a bracketed real
solve in ``log(-z)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy import integrate, optimize

from .errors import InputValidationError
from .symmetric_core import to_scalar

__all__ = [
    "MeasureSpec",
    "Discrete",
    "MarchenkoPastur",
    "BernoulliHalf",
    "Uniform",
    "PhiQuantileFn",
    "psi_transform",
    "s_transform",
    "phi_quantile",
    "support_endpoints",
    "phi_log_moment",
    "measure_from_json",
    "measure_to_json",
]

_INV_TOL = 1e-15   # absolute tolerance in log(-z), i.e. relative in z
_CDF_EPS = 1e-12


class MeasureSpec:
    """A compactly supported probability measure on ``[0, inf)``."""

    zero_mass: float = 0.0

    def psi(self, z: float) -> float:
        raise NotImplementedError

    def one_plus_psi(self, z: float) -> float:
        """``1 + psi(z) = int 1 / (1 - t z) dmu``, computed without cancellation."""
        raise NotImplementedError

    def closed_form_s(self, w: float):
        return None

    def mean(self) -> float:
        raise NotImplementedError

    def inverse_harmonic(self) -> float:
        """``(int t^-1 dmu)^-1``, zero when the integral diverges."""
        raise NotImplementedError

    def cdf(self, x: float) -> float:
        raise NotImplementedError

    def cdf_left(self, x: float) -> float:
        """``mu([0, x))``; equals :meth:`cdf` for measures without atoms."""
        return self.cdf(x)

    def quantile(self, u):
        """Generalized inverse ``inf{x : F(x) >= u}`` of the measure itself."""
        raise NotImplementedError

    def log_moment(self) -> float:
        raise NotImplementedError

    @property
    def is_dirac(self) -> bool:
        return False


@dataclass(frozen=True)
class Discrete(MeasureSpec):
    """Finite atomic measure; ``atoms`` holds ``(location, weight)`` pairs."""

    atoms: tuple

    def __post_init__(self):
        merged: dict = {}
        for loc, w in self.atoms:
            loc, w = to_scalar(loc), to_scalar(w)
            if loc < 0:
                raise InputValidationError("atom locations must be non-negative")
            if w <= 0:
                raise InputValidationError("atom weights must be positive")
            merged[loc] = merged.get(loc, 0) + w
        total = sum(merged.values())
        if abs(float(total) - 1.0) > 1e-12:
            raise InputValidationError(f"weights sum to {float(total)}, not 1")
        atoms = tuple(sorted(merged.items(), key=lambda a: a[0]))
        if len(atoms) == 1 and atoms[0][0] == 0:
            raise InputValidationError("the point mass at zero has no S-transform")
        object.__setattr__(self, "atoms", atoms)

    @property
    def _loc(self):
        return np.array([float(a) for a, _ in self.atoms])

    @property
    def _w(self):
        return np.array([float(w) for _, w in self.atoms])

    @property
    def zero_mass(self) -> float:
        return float(sum(w for a, w in self.atoms if a == 0))

    @property
    def is_dirac(self) -> bool:
        return len(self.atoms) == 1

    def psi(self, z):
        lam = self._loc
        return float(np.sum(self._w * lam * z / (1.0 - lam * z)))

    def one_plus_psi(self, z):
        return float(np.sum(self._w / (1.0 - self._loc * z)))

    def closed_form_s(self, w):
        if self.is_dirac:
            return 1.0 / float(self.atoms[0][0])
        return None

    def mean(self):
        return float(sum(a * w for a, w in self.atoms))

    def inverse_harmonic(self):
        if self.atoms[0][0] == 0:
            return 0.0
        return float(1 / sum(w / a for a, w in self.atoms))

    def cdf(self, x):
        return float(sum(w for a, w in self.atoms if a <= x))

    def cdf_left(self, x):
        return float(sum(w for a, w in self.atoms if a < x))

    def quantile(self, u):
        acc = 0
        for a, w in self.atoms:
            acc += w
            if acc >= u:
                return a
        return self.atoms[-1][0]

    def log_moment(self):
        if self.atoms[0][0] == 0:
            return -math.inf
        return float(sum(float(w) * math.log(a) for a, w in self.atoms))


@dataclass(frozen=True)
class BernoulliHalf(Discrete):
    """``(delta_0 + delta_1) / 2``."""

    atoms: tuple = ((Fraction(0), Fraction(1, 2)), (Fraction(1), Fraction(1, 2)))

    def closed_form_s(self, w):
        return (2 + 2 * w) / (1 + 2 * w)


@dataclass(frozen=True)
class MarchenkoPastur(MeasureSpec):
    """Density ``sqrt(t (4 - t)) / (2 pi t)`` on ``(0, 4)``.

    Integrals use ``t = 4 sin(theta)**2``, under which the density becomes
    the smooth weight ``(4 / pi) cos(theta)**2`` on ``(0, pi / 2)``.  For
    ``1 + psi`` a further ``u = tan(theta)`` in log scale keeps quadrature
    accurate when ``|z|`` is huge (quantile levels near 0).
    """

    @staticmethod
    def density(t):
        t = np.asarray(t, dtype=float)
        inside = (t > 0) & (t < 4)
        out = np.zeros_like(t)
        out[inside] = np.sqrt(t[inside] * (4 - t[inside])) / (2 * np.pi * t[inside])
        return out

    @staticmethod
    def _integrate(f):
        val, _ = integrate.quad(
            lambda th: (4 / np.pi) * np.cos(th) ** 2 * f(4 * np.sin(th) ** 2),
            0.0, np.pi / 2, epsabs=0.0, epsrel=1e-13, limit=400)
        return val

    def psi(self, z):
        if z < -1:
            return self.one_plus_psi(z) - 1.0
        return self._integrate(lambda t: t * z / (1 - t * z))

    def one_plus_psi(self, z):
        # u = tan(theta) turns the integrand into 4 / (pi (1 + u^2)(1 + a u^2))
        # with a = 1 - 4z, which has features at u = 1 and u = a**-1/2.  In
        # x = log u both are unit-width bumps and the tails decay like e^-|x|.
        a = 1.0 - 4.0 * z
        x0 = -0.5 * math.log(a)

        def g(x):
            u = math.exp(x)
            return u / ((1 + u * u) * (1 + a * u * u))

        val, _ = integrate.quad(g, x0 - 45.0, 45.0, points=sorted({x0, 0.0}),
                                epsabs=0.0, epsrel=1e-13, limit=400)
        return 4 / np.pi * val

    def closed_form_s(self, w):
        return 1.0 / (1.0 + w)

    def mean(self):
        return 1.0

    def inverse_harmonic(self):
        return 0.0

    def cdf(self, x):
        if x <= 0:
            return 0.0
        if x >= 4:
            return 1.0
        th = math.asin(math.sqrt(x / 4))
        return (2 * th + math.sin(2 * th)) / math.pi

    def quantile(self, u):
        u = float(u)
        if u <= 0:
            return 0.0
        if u >= 1:
            return 4.0
        th = optimize.brentq(lambda s: (2 * s + math.sin(2 * s)) / math.pi - u,
                             0.0, math.pi / 2, xtol=1e-16, rtol=4 * np.finfo(float).eps)
        return 4 * math.sin(th) ** 2

    def log_moment(self):
        return -1.0


@dataclass(frozen=True)
class Uniform(MeasureSpec):
    """Uniform distribution on ``[a, b]`` with ``0 <= a < b``."""

    a: float = 0.0
    b: float = 1.0

    def __post_init__(self):
        a, b = to_scalar(self.a), to_scalar(self.b)
        if not 0 <= a < b:
            raise InputValidationError("need 0 <= a < b")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    def _antideriv_one_plus_psi(self, t, z):
        # d/dt of -log(1 - t z) / z is 1 / (1 - t z)
        return -math.log1p(-t * z) / z

    def one_plus_psi(self, z):
        a, b = float(self.a), float(self.b)
        return (self._antideriv_one_plus_psi(b, z) - self._antideriv_one_plus_psi(a, z)) / (b - a)

    def psi(self, z):
        a, b = float(self.a), float(self.b)
        if abs(z) * b < 1e-3:
            # series int t z / (1 - t z) = sum_k z^k m_k, m_k = mean of t^k
            return float(sum(z ** k * (b ** (k + 1) - a ** (k + 1)) / ((k + 1) * (b - a))
                             for k in range(1, 12)))
        return self.one_plus_psi(z) - 1.0

    def mean(self):
        return float((self.a + self.b) / 2)

    def inverse_harmonic(self):
        a, b = float(self.a), float(self.b)
        return 0.0 if a == 0 else (b - a) / math.log(b / a)

    def cdf(self, x):
        return min(max((x - float(self.a)) / float(self.b - self.a), 0.0), 1.0)

    def quantile(self, u):
        u = min(max(to_scalar(u), 0), 1)
        return self.a + u * (self.b - self.a)

    def log_moment(self):
        a, b = float(self.a), float(self.b)
        xlogx = (lambda x: x * math.log(x) - x if x > 0 else 0.0)
        return (xlogx(b) - xlogx(a)) / (b - a)


# ---------------------------------------------------------------------------
# transforms
# ---------------------------------------------------------------------------

def psi_transform(mu: MeasureSpec, z: float) -> float:
    """``int t z / (1 - t z) dmu(t)`` for ``z < 0``."""
    if not z < 0:
        raise InputValidationError("psi is evaluated on the negative axis only")
    return mu.psi(float(z))


def _psi_inverse(mu: MeasureSpec, w: float) -> float:
    """Solve ``psi(z) = w`` for ``z < 0``; ``w`` in ``(m - 1, 0)``."""
    if w < -0.5:
        target = 1.0 + w
        resid = lambda s: mu.one_plus_psi(-math.exp(s)) - target   # noqa: E731
    else:
        resid = lambda s: mu.psi(-math.exp(s)) - w                 # noqa: E731
    # resid is decreasing in s = log(-z)
    j = 1
    while True:
        lo, hi = -j * math.log(2), j * math.log(2)
        r_lo, r_hi = resid(lo), resid(hi)
        if r_lo > 0 > r_hi:
            break
        if r_lo == 0:
            return -math.exp(lo)
        if r_hi == 0:
            return -math.exp(hi)
        j *= 2
        if j > 1024:
            raise InputValidationError(f"could not bracket psi^-1({w})")
    s = optimize.brentq(resid, lo, hi, xtol=_INV_TOL, rtol=4 * np.finfo(float).eps,
                        maxiter=500)
    return -math.exp(s)


def s_transform(mu: MeasureSpec, t: float, method: str = "auto") -> float:
    """S-transform on ``(zero_mass - 1, 0)``.

    ``method`` is ``"auto"`` (closed form when known), ``"closed"`` or
    ``"numeric"`` (always invert ``psi``).
    """
    m = mu.zero_mass
    t = float(t)
    if not m - 1 < t < 0:
        raise InputValidationError(f"S-transform argument {t} outside ({m - 1}, 0)")
    if method not in ("auto", "closed", "numeric"):
        raise InputValidationError(f"unknown method {method!r}")
    if method != "numeric":
        closed = mu.closed_form_s(t)
        if closed is not None:
            return float(closed)
        if method == "closed":
            raise InputValidationError(f"no closed-form S-transform for {mu!r}")
    return (t + 1) / t * _psi_inverse(mu, t)


def phi_quantile(mu: MeasureSpec, t: float, method: str = "auto") -> float:
    """Quantile ``1 / S(t - 1)`` of the limit measure on ``(zero_mass, 1)``."""
    m = mu.zero_mass
    if not m < t < 1:
        raise InputValidationError(f"quantile level {t} outside ({m}, 1)")
    t = float(t)
    if method == "numeric" or (method == "auto" and mu.closed_form_s(t - 1) is None):
        # 1 / S(t - 1) = (t - 1) / (t * z) with psi(z) = t - 1
        return (t - 1) / (t * _psi_inverse(mu, t - 1))
    return 1.0 / s_transform(mu, t - 1, method)


def support_endpoints(mu: MeasureSpec) -> tuple:
    """``(lower, upper)`` of the limit measure's support interval."""
    return mu.inverse_harmonic(), mu.mean()


@dataclass(frozen=True)
class PhiQuantileFn:
    """Quantile function of ``Phi(source)`` with a matching CDF.

    Closed-form CDFs are used where known unless ``method == "numeric"``;
    otherwise the CDF is obtained by inverting the monotone quantile.
    """

    source: MeasureSpec
    method: str = "auto"

    @property
    def domain(self) -> tuple:
        return self.source.zero_mass, 1.0

    def __call__(self, t: float) -> float:
        return phi_quantile(self.source, t, self.method)

    def _closed_cdf(self, x: float):
        mu = self.source
        if self.method == "numeric":
            return None
        if mu.is_dirac:
            return 1.0 if x >= float(mu.atoms[0][0]) else 0.0
        if isinstance(mu, MarchenkoPastur):
            return min(max(x, 0.0), 1.0)
        if isinstance(mu, BernoulliHalf):
            if x < 0:
                return 0.0
            return 1.0 if x >= 0.5 else 1.0 / (2.0 * (1.0 - x))
        return None

    def cdf(self, x: float) -> float:
        """``Phi(mu)([0, x])``."""
        x = float(x)
        if x < 0:
            return 0.0
        closed = self._closed_cdf(x)
        if closed is not None:
            return closed
        m = self.source.zero_mass
        lo, hi = m + _CDF_EPS, 1.0 - _CDF_EPS
        if x <= self(lo):
            return m
        if x >= self(hi):
            return 1.0
        return optimize.brentq(lambda t: self(t) - x, lo, hi, xtol=1e-14)

    def cdf_left(self, x: float) -> float:
        """``Phi(mu)([0, x))``."""
        x = float(x)
        if x <= 0:
            return 0.0
        if self.source.is_dirac and self.method != "numeric":
            return 1.0 if x > float(self.source.atoms[0][0]) else 0.0
        return self.cdf(x)


def phi_log_moment(mu: MeasureSpec, method: str = "auto") -> float:
    """``int log t dPhi(mu)`` by quadrature of ``log Q`` over ``(0, 1)``."""
    if mu.zero_mass > 0:
        return -math.inf
    Q = PhiQuantileFn(mu, method)
    val, _ = integrate.quad(lambda t: math.log(Q(t)), 0.0, 1.0, epsabs=1e-12,
                            epsrel=1e-10, limit=200)
    return val


# ---------------------------------------------------------------------------
# JSON
# ---------------------------------------------------------------------------

def measure_from_json(obj: dict) -> MeasureSpec:
    """Parse ``{"kind": "discrete", "atoms": [[weight, location], ...]}``,
    ``{"kind": "mp"}``, ``{"kind": "bernoulli_half"}`` or
    ``{"kind": "uniform", "a": ..., "b": ...}``."""
    kind = obj.get("kind")
    if kind == "discrete":
        try:
            return Discrete(tuple((loc, w) for w, loc in obj["atoms"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise InputValidationError(f"bad discrete measure: {exc}") from exc
    if kind == "mp":
        return MarchenkoPastur()
    if kind == "bernoulli_half":
        return BernoulliHalf()
    if kind == "uniform":
        return Uniform(obj.get("a", 0), obj.get("b", 1))
    raise InputValidationError(f"unknown measure kind {kind!r}")


def measure_to_json(mu: MeasureSpec) -> dict:
    if isinstance(mu, BernoulliHalf):
        return {"kind": "bernoulli_half"}
    if isinstance(mu, Discrete):
        return {"kind": "discrete", "atoms": [[str(w), str(a)] for a, w in mu.atoms]}
    if isinstance(mu, MarchenkoPastur):
        return {"kind": "mp"}
    if isinstance(mu, Uniform):
        return {"kind": "uniform", "a": str(mu.a), "b": str(mu.b)}
    raise InputValidationError(f"cannot serialize {mu!r}")
