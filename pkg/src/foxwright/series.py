"""Direct power-series evaluation.

The main entry point is :func:`fox_wright`, which sums

    sum_k  gamma_ratio(k) * z^k / k!

in signed log space so that huge gamma ratios and huge factorials cancel
before anything is exponentiated.  Classical specialisations (generalized
hypergeometric, the two-parameter Wright function, Mittag-Leffler) are thin
wrappers.  The four-parameter Wright function gets its own loop because its
scales may be negative, which the row-based model deliberately rejects;
reciprocal-gamma semantics (zeros at poles) make the sum well defined there.

Summation is honest about its own failure modes: every call returns an
:class:`EvalResult` carrying the term count, a truncation estimate, and a
status flag, and the strict wrappers turn bad statuses into exceptions.
"""

from __future__ import annotations

import cmath
import enum
import math
import os
from dataclasses import dataclass

from .errors import NonConvergentError, OutsideDomainError
from .params import (
    ParameterSet,
    correction_coeffs,
    derive_constants,
    gamma_ratio_log_signed,
    in_domain,
)
from .special import log_abs_gamma_signed, log_gamma, touchard_sum

__all__ = [
    "EvalResult",
    "SeriesStatus",
    "fox_wright",
    "fox_wright_value",
    "hyper_pfq",
    "wright_function",
    "mittag_leffler",
    "four_param_wright",
    "correction_series",
]

_DEFAULT_MAX_TERMS = 10_000
_STOP_STREAK = 3


def _max_terms_limit(explicit: int | None) -> int:
    if explicit is not None:
        return explicit
    env = os.environ.get("FOXWRIGHT_MAX_TERMS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return _DEFAULT_MAX_TERMS


class SeriesStatus(enum.Enum):
    CONVERGED = "converged"
    MAX_TERMS = "max-terms"
    OUTSIDE_DOMAIN = "outside-domain"


@dataclass(frozen=True)
class EvalResult:
    """Outcome of a series summation.

    ``trunc_estimate`` is the magnitude of the last computed term relative
    to the accumulated value, i.e. an a-posteriori bound stand-in, not a
    rigorous error bound.
    """

    value: complex
    terms_used: int
    trunc_estimate: float
    status: SeriesStatus

    @property
    def real(self) -> float:
        return self.value.real if isinstance(self.value, complex) else float(self.value)

    def ok(self) -> bool:
        return self.status is SeriesStatus.CONVERGED


def fox_wright(
    params: ParameterSet,
    z: complex,
    tol: float = 1e-12,
    max_terms: int | None = None,
) -> EvalResult:
    """Sum the series at z, stopping after three consecutive negligible terms.

    Outside the convergence domain no summation is attempted and the result
    carries ``SeriesStatus.OUTSIDE_DOMAIN`` with a NaN value.  Hitting the
    term cap (10000 by default, FOXWRIGHT_MAX_TERMS overrides) reports
    ``MAX_TERMS`` along with the relative size of the last term, so
    near-boundary evaluations are never silently trusted.
    """
    if not in_domain(params, z):
        return EvalResult(complex("nan"), 0, math.inf, SeriesStatus.OUTSIDE_DOMAIN)

    limit = _max_terms_limit(max_terms)
    zc = complex(z)
    is_real = zc.imag == 0.0
    log_abs_z = math.log(abs(zc)) if zc != 0 else -math.inf
    arg_z = cmath.phase(zc)

    total = 0.0 + 0.0j
    small_streak = 0
    last_mag = math.inf
    terms = 0
    for k in range(limit):
        log_ratio, sign = gamma_ratio_log_signed(params, k)
        terms = k + 1
        if log_ratio == -math.inf:
            term = 0.0 + 0.0j
            mag = 0.0
        elif k == 0:
            mag = math.exp(log_ratio)
            term = complex(sign * mag)
        else:
            log_mag = log_ratio + k * log_abs_z - log_gamma(k + 1.0)
            mag = math.exp(log_mag)
            if is_real:
                term = complex(sign * mag * (1.0 if zc.real >= 0 or k % 2 == 0 else -1.0))
            else:
                term = sign * mag * cmath.exp(1j * k * arg_z)
        total += term
        last_mag = mag
        if zc == 0:
            return EvalResult(_narrow(total, is_real), 1, 0.0, SeriesStatus.CONVERGED)
        scale = max(abs(total), 1e-300)
        if mag <= tol * scale:
            small_streak += 1
            if small_streak >= _STOP_STREAK:
                return EvalResult(
                    _narrow(total, is_real), terms, mag / scale, SeriesStatus.CONVERGED
                )
        else:
            small_streak = 0
    return EvalResult(
        _narrow(total, is_real),
        terms,
        last_mag / max(abs(total), 1e-300),
        SeriesStatus.MAX_TERMS,
    )


def _narrow(value: complex, is_real: bool) -> complex:
    if is_real:
        return value.real
    return value


def fox_wright_value(
    params: ParameterSet,
    z: complex,
    tol: float = 1e-12,
    max_terms: int | None = None,
) -> complex:
    """Like :func:`fox_wright` but raises instead of returning a bad status."""
    res = fox_wright(params, z, tol=tol, max_terms=max_terms)
    if res.status is SeriesStatus.OUTSIDE_DOMAIN:
        raise OutsideDomainError(f"z={z} lies outside the convergence domain")
    if res.status is SeriesStatus.MAX_TERMS:
        raise NonConvergentError(
            f"series did not settle within {res.terms_used} terms "
            f"(relative last term ~ {res.trunc_estimate:.3e})"
        )
    return res.value


# ---------------------------------------------------------------------------
# Classical specialisations
# ---------------------------------------------------------------------------


def hyper_pfq(a: list[float], b: list[float], z: complex, tol: float = 1e-12) -> complex:
    """Generalized hypergeometric pFq via the unit-scale series.

    pFq multiplies each term by a Pochhammer ratio instead of a gamma ratio,
    so the row-based sum needs the constant prefactor prod gamma(b)/prod
    gamma(a) stripped back out.
    """
    params = ParameterSet([(x, 1.0) for x in a], [(x, 1.0) for x in b])
    log_pref = 0.0
    sign = 1.0
    for x in b:
        la, sg = log_abs_gamma_signed(x)
        log_pref += la
        sign *= sg
    for x in a:
        la, sg = log_abs_gamma_signed(x)
        log_pref -= la
        sign *= sg
    return sign * math.exp(log_pref) * fox_wright_value(params, z, tol=tol)


def wright_function(alpha: float, beta: float, z: complex, tol: float = 1e-12) -> complex:
    """Two-parameter Wright function  sum_k z^k / (k! gamma(alpha*k + beta))."""
    params = ParameterSet([], [(beta, alpha)])
    return fox_wright_value(params, z, tol=tol)


def mittag_leffler(alpha: float, beta: float, z: complex, tol: float = 1e-12) -> complex:
    """Two-parameter Mittag-Leffler  sum_k z^k / gamma(alpha*k + beta).

    The k! in the row-based series is cancelled by an upper pair (1, 1).
    """
    params = ParameterSet([(1.0, 1.0)], [(beta, alpha)])
    return fox_wright_value(params, z, tol=tol)


def four_param_wright(
    mu1: float,
    a: float,
    nu1: float,
    b: float,
    z: complex,
    tol: float = 1e-12,
    max_terms: int | None = None,
) -> EvalResult:
    """sum_k z^k / (gamma(a + mu1*k) * gamma(b + nu1*k)) with rgamma semantics.

    mu1 and nu1 may have either sign.  A gamma pole in either factor zeroes
    that term rather than failing, matching the reciprocal-gamma reading
    under which the sum is defined for all parameter signs.  For positive
    scales this equals the row series with upper=[(1,1)],
    lower=[(a,mu1),(b,nu1)] since gamma(1+k)/k! = 1.

    Domain: entire for mu1 + nu1 > 0; for mu1 + nu1 == 0 a disk of radius
    |mu1|^mu1 * |nu1|^nu1, boundary included when a + b > 2; empty otherwise.
    """
    zc = complex(z)
    balance = mu1 + nu1
    if balance < -1e-12:
        return EvalResult(complex("nan"), 0, math.inf, SeriesStatus.OUTSIDE_DOMAIN)
    if abs(balance) <= 1e-12 and zc != 0:
        radius = abs(mu1) ** mu1 * abs(nu1) ** nu1
        r = abs(zc)
        if r > radius * (1 + 1e-12):
            return EvalResult(complex("nan"), 0, math.inf, SeriesStatus.OUTSIDE_DOMAIN)
        if abs(r - radius) <= radius * 1e-12 and not (a + b > 2.0):
            return EvalResult(complex("nan"), 0, math.inf, SeriesStatus.OUTSIDE_DOMAIN)

    limit = _max_terms_limit(max_terms)
    is_real = zc.imag == 0.0
    log_abs_z = math.log(abs(zc)) if zc != 0 else -math.inf
    arg_z = cmath.phase(zc)

    total = 0.0 + 0.0j
    streak = 0
    last_mag = math.inf
    terms = 0
    for k in range(limit):
        terms = k + 1
        log_den = 0.0
        sign = 1.0
        pole = False
        for shift, scl in ((a, mu1), (b, nu1)):
            arg = shift + k * scl
            if arg <= 0 and abs(arg - round(arg)) < 1e-9:
                pole = True
                break
            la, sg = log_abs_gamma_signed(arg)
            log_den += la
            sign *= sg
        if pole:
            term = 0.0 + 0.0j
            mag = 0.0
        elif k == 0:
            mag = math.exp(-log_den)
            term = complex(sign * mag)
        else:
            mag = math.exp(k * log_abs_z - log_den)
            if is_real:
                term = complex(sign * mag * (1.0 if zc.real >= 0 or k % 2 == 0 else -1.0))
            else:
                term = sign * mag * cmath.exp(1j * k * arg_z)
        total += term
        last_mag = mag
        if zc == 0:
            return EvalResult(_narrow(total, is_real), 1, 0.0, SeriesStatus.CONVERGED)
        scale = max(abs(total), 1e-300)
        if mag <= tol * scale:
            streak += 1
            if streak >= _STOP_STREAK:
                return EvalResult(
                    _narrow(total, is_real), terms, mag / scale, SeriesStatus.CONVERGED
                )
        else:
            streak = 0
    return EvalResult(
        _narrow(total, is_real),
        terms,
        last_mag / max(abs(total), 1e-300),
        SeriesStatus.MAX_TERMS,
    )


# ---------------------------------------------------------------------------
# Polynomial-atom part of the series in the balanced integer case
# ---------------------------------------------------------------------------


def correction_series(params: ParameterSet, z: complex) -> complex:
    """eta * sum_k rho^k P(k) z^k / k!  where P(k) = sum_j l_{m-j} k^j.

    This is the part of the series contributed by the endpoint atoms when
    the scale sums balance and mu == -m for an integer m >= 0.  Each power
    k^j collapses through the Stirling transform, so the whole thing costs
    a handful of exp calls.
    """
    c = derive_constants(params)
    if abs(c.delta) > 1e-9:
        raise OutsideDomainError("correction series requires balanced scale sums")
    if c.m_order is None:
        raise OutsideDomainError("correction series requires mu to be a non-positive integer")
    m = c.m_order
    ell = correction_coeffs(params, m)
    w = c.rho * z
    if isinstance(z, complex) and z.imag != 0:
        acc: complex = 0.0
        for j in range(m + 1):
            acc += ell[m - j] * _touchard_complex(j, w)
    else:
        acc = 0.0
        for j in range(m + 1):
            acc += ell[m - j] * touchard_sum(j, (w.real if isinstance(w, complex) else w))
    return c.eta * acc


def _touchard_complex(j: int, w: complex) -> complex:
    from .special import stirling2_row

    row = stirling2_row(j)
    poly: complex = 0.0
    for i, s in enumerate(row):
        if s:
            poly += s * w**i
    return cmath.exp(w) * poly
