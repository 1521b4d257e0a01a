"""Point evaluation of the five reproducing kernels.

Families
--------
fock      B(z, w) = exp(z * conj(w))
rbf       K_gamma(z, w) = exp(-(z - conj(w))^2 / gamma^2)
ml        E_q(z, w) = sum_n (z conj(w))^n / Gamma(q n + 1)
touchard  K_p(z, w) = sum_k (k+1)^(2p) (z conj(w))^k / k!
szego     K(z, w) = 1 / (1 - z conj(w)), on the open unit disk
"""

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy.special import gammaln

from .validation import as_complex_array

GAMMA_DEFAULT = math.sqrt(2.0)

FAMILIES = ("fock", "rbf", "ml", "touchard", "szego")


class KernelDomainError(ValueError):
    """An evaluation point lies outside the kernel's domain."""


class SeriesConvergenceError(ArithmeticError):
    """Kernel series failed to converge within the term cap."""

    def __init__(self, family, abs_u, param):
        self.family = family
        self.abs_u = abs_u
        self.param = param
        super().__init__(
            f"{family} kernel series did not converge: |z*conj(w)|={abs_u:.6g}, "
            f"parameter={param!r}"
        )


@dataclass(frozen=True)
class KernelSpec:
    """Tagged kernel family with parameters and series truncation control."""

    family: str
    gamma: float = GAMMA_DEFAULT
    q: float = 1.0
    p: int = 0
    series_tol: float = 1e-15
    series_cap: int = 10000

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown kernel family {self.family!r}")
        if not self.gamma > 0:
            raise ValueError("gamma must be positive")
        if not self.q > 0:
            raise ValueError("q must be positive")
        if self.p < 0 or int(self.p) != self.p:
            raise ValueError("p must be a nonnegative integer")
        if not (0 < self.series_tol <= 1e-6):
            raise ValueError("series_tol must lie in (0, 1e-6]")
        if self.series_cap < 64:
            raise ValueError("series_cap must be at least 64")

    def check_domain(self, z):
        z = as_complex_array(z)
        if self.family == "szego" and np.any(np.abs(z) >= 1.0):
            raise KernelDomainError("szego kernel requires points in the open unit disk")
        return z

    def evaluate_many(self, z, w):
        """Vectorized kernel evaluation; z and w broadcast together."""
        z = self.check_domain(z)
        w = self.check_domain(w)
        if self.family == "fock":
            return np.exp(z * np.conj(w))
        if self.family == "rbf":
            return np.exp(-((z - np.conj(w)) ** 2) / self.gamma**2)
        if self.family == "ml":
            return _ml_series(z * np.conj(w), self.q, self.series_tol, self.series_cap)
        if self.family == "touchard":
            return _touchard_eval(z * np.conj(w), self.p, self.series_tol, self.series_cap)
        return 1.0 / (1.0 - z * np.conj(w))

    def evaluate(self, z, w):
        return complex(self.evaluate_many(np.complex128(z), np.complex128(w)))

    def to_json(self):
        obj = {"family": self.family}
        if self.family == "rbf":
            obj["gamma"] = self.gamma
        elif self.family == "ml":
            obj["q"] = self.q
        elif self.family == "touchard":
            obj["p"] = self.p
        return obj

    @classmethod
    def from_json(cls, obj):
        kwargs = {k: obj[k] for k in ("gamma", "q", "p") if k in obj}
        return cls(family=obj["family"], **kwargs)


@dataclass(frozen=True)
class TouchardTables:
    """Stirling-number triangle and Touchard coefficients for T_{2p+1}."""

    p: int
    stirling: tuple = field(repr=False)
    touchard_coeffs: tuple

    @property
    def bell_numbers(self):
        return tuple(sum(row) for row in self.stirling)


@lru_cache(maxsize=None)
def touchard_tables(p):
    """Build exact-integer tables up to row n = 2p+1.

    Recurrence: S(n, k) = k*S(n-1, k) + S(n-1, k-1).
    """
    nmax = 2 * p + 1
    rows = [(1,)]  # S(0, 0) = 1
    for n in range(1, nmax + 1):
        prev = rows[-1]
        row = [0] * (n + 1)
        for k in range(1, n + 1):
            row[k] = k * (prev[k] if k < n else 0) + prev[k - 1]
        rows.append(tuple(row))
    return TouchardTables(p=p, stirling=tuple(rows), touchard_coeffs=rows[nmax])


def _series_sum(u, log_term, tol, cap, family, param):
    """Sum a power series in u with log-space terms.

    log_term(n, logmag) must return the log-magnitude of term n; the phase
    is n*arg(u). Stops once three consecutive terms fall below
    tol * |partial sum| everywhere (guards against alternating-term false
    convergence).
    """
    u = np.asarray(u, dtype=np.complex128)
    mag = np.abs(u)
    with np.errstate(divide="ignore"):
        logmag = np.where(mag > 0, np.log(np.where(mag > 0, mag, 1.0)), -np.inf)
    ang = np.angle(u)
    out = np.full(u.shape, 1.0 + 0.0j)  # n = 0 term is 1 for both series
    streak = np.zeros(u.shape, dtype=np.int64)
    for n in range(1, cap + 1):
        term = np.exp(log_term(n, logmag)) * np.exp(1j * n * ang)
        out = out + term
        small = np.abs(term) <= tol * np.abs(out)
        streak = np.where(small, streak + 1, 0)
        if np.all(streak >= 3):
            return out
    raise SeriesConvergenceError(family, float(np.max(mag)), param)


def _ml_series(u, q, tol, cap):
    def log_term(n, logmag):
        return n * logmag - gammaln(q * n + 1.0)

    return _series_sum(u, log_term, tol, cap, "ml", q)


def _touchard_series(u, p, tol, cap):
    def log_term(k, logmag):
        return 2 * p * math.log(k + 1.0) + k * logmag - gammaln(k + 1.0)

    return _series_sum(u, log_term, tol, cap, "touchard", p)


def _touchard_closed(u, p):
    """T_{2p+1}(u) * exp(u) / u; valid away from u = 0."""
    coeffs = touchard_tables(p).touchard_coeffs
    # Horner on T_{2p+1}(u)/u = sum_{k>=1} S(2p+1, k) u^(k-1)
    acc = np.zeros_like(u)
    for c in coeffs[:0:-1]:
        acc = acc * u + c
    return acc * np.exp(u)


def _touchard_eval(u, p, tol, cap):
    u = np.asarray(u, dtype=np.complex128)
    scalar = u.ndim == 0
    u = np.atleast_1d(u)
    out = np.empty(u.shape, dtype=np.complex128)
    small = np.abs(u) <= 1.0
    if np.any(small):
        out[small] = _touchard_series(u[small], p, tol, cap)
    if np.any(~small):
        out[~small] = _touchard_closed(u[~small], p)
    return out[0] if scalar else out


def fock_kernel(z, w):
    """exp(z * conj(w))."""
    return KernelSpec("fock").evaluate(z, w)


def rbf_kernel(z, w, gamma=GAMMA_DEFAULT):
    """exp(-(z - conj(w))^2 / gamma^2)."""
    return KernelSpec("rbf", gamma=gamma).evaluate(z, w)


def mittag_leffler_kernel(z, w, q, tol=1e-15, cap=10000):
    return KernelSpec("ml", q=q, series_tol=tol, series_cap=cap).evaluate(z, w)


def touchard_kernel(z, w, p, tol=1e-15, cap=10000):
    return KernelSpec("touchard", p=p, series_tol=tol, series_cap=cap).evaluate(z, w)


def szego_kernel(z, w):
    """1 / (1 - z * conj(w)) on the open unit disk."""
    return KernelSpec("szego").evaluate(z, w)
