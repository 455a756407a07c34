"""Real-order special functions: Gamma, Bessel J/K/I and the even Bessel series.

The Bessel order is restricted to nu > -1 throughout.  Evaluation is
delegated to scipy.special (which meets the accuracy targets on the required
ranges); the even entire function j_nu is evaluated by its own power series
near the origin so that it is defined for arguments of either sign.
"""

from dataclasses import dataclass

import numpy as np
import scipy.special as _sp

from .errors import DomainError, RangeError

__all__ = ["Order", "gamma", "bessel_j", "bessel_k", "bessel_i", "j_even",
           "kv_complex"]


@dataclass(frozen=True)
class Order:
    """Dimensionless real Bessel order, restricted to nu > -1."""

    nu: float

    def __post_init__(self):
        if not np.isfinite(self.nu) or self.nu <= -1.0:
            raise DomainError(f"order must satisfy nu > -1, got {self.nu}")


def _nu(order) -> float:
    return order.nu if isinstance(order, Order) else float(order)


def gamma(x):
    """Gamma function for real x away from the poles at 0, -1, -2, ..."""
    x = np.asarray(x, dtype=float)
    if np.any((x <= 0) & (x == np.floor(x))):
        raise DomainError("gamma pole at non-positive integer argument")
    out = _sp.gamma(x)
    return float(out) if out.ndim == 0 else out


def bessel_j(order, u):
    """Bessel function of the first kind J_nu(u) for u >= 0."""
    nu = _nu(order)
    u = np.asarray(u, dtype=float)
    if np.any(u < 0):
        raise DomainError("bessel_j requires u >= 0")
    out = _sp.jv(nu, u)
    return float(out) if out.ndim == 0 else out


def bessel_k(order, u):
    """Modified Bessel function K_nu(u) for u > 0."""
    nu = _nu(order)
    u = np.asarray(u, dtype=float)
    if np.any(u <= 0):
        raise DomainError("bessel_k requires u > 0")
    out = _sp.kv(nu, u)
    return float(out) if out.ndim == 0 else out


def bessel_i(order, u):
    """Modified Bessel function I_nu(u) for u >= 0."""
    nu = _nu(order)
    u = np.asarray(u, dtype=float)
    if np.any(u < 0):
        raise DomainError("bessel_i requires u >= 0")
    out = _sp.iv(nu, u)
    return float(out) if out.ndim == 0 else out


def kv_complex(nu, z):
    """K_nu for complex argument with Re z > 0, via the Hankel-function relation.

    K_nu(z) = (pi/2) i^(nu+1) H1_nu(iz), valid for -pi < arg z <= pi/2.
    """
    z = np.asarray(z, dtype=complex)
    if np.any(np.real(z) <= 0):
        raise DomainError("kv_complex requires Re z > 0")
    out = 0.5 * np.pi * (1j) ** (nu + 1.0) * _sp.hankel1(nu, 1j * z)
    return complex(out) if out.ndim == 0 else out


# series cutoff: below |s| = 100 the alternating series loses at most ~3 digits
_SERIES_SMAX = 100.0
_SERIES_TERMS = 80


def j_even(order, s):
    """Even entire Bessel series j_nu(s) = sum_n (-s/4)^n / (n! Gamma(nu+n+1) 2^nu).

    For s = u^2 > 0 this equals u^(-nu) J_nu(u); for s = -u^2 < 0 it equals
    u^(-nu) I_nu(u).  Defined for s of either sign.
    """
    nu = _nu(order)
    s = np.asarray(s, dtype=float)
    scalar = s.ndim == 0
    s = np.atleast_1d(s)
    out = np.empty_like(s)

    small = np.abs(s) <= _SERIES_SMAX
    if np.any(small):
        ss = s[small]
        term = np.full_like(ss, 2.0 ** (-nu) / _sp.gamma(nu + 1.0))
        acc = term.copy()
        for n in range(1, _SERIES_TERMS):
            term = term * (-ss / 4.0) / (n * (nu + n))
            acc += term
        out[small] = acc

    big = ~small
    if np.any(big):
        sb = s[big]
        pos = sb > 0
        r = np.empty_like(sb)
        if np.any(pos):
            u = np.sqrt(sb[pos])
            r[pos] = _sp.jv(nu, u) * u ** (-nu)
        if np.any(~pos):
            u = np.sqrt(-sb[~pos])
            with np.errstate(over="raise"):
                try:
                    r[~pos] = _sp.iv(nu, u) * u ** (-nu)
                except FloatingPointError as exc:
                    raise RangeError("j_even overflow at large negative s") from exc
        if np.any(~np.isfinite(r)):
            raise RangeError("j_even overflow at large negative s")
        out[big] = r

    return float(out[0]) if scalar else out
