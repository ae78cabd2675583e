"""Parameter model for generalized Wright series.

A parameter set is two rows of (shift, scale) gamma pairs.  The series built
from it is

    sum_k  [prod_i gamma(a_i + k*A_i) / prod_j gamma(b_j + k*B_j)] * z^k / k!

Everything downstream (domain classification, measure support, asymptotic
normalisation, correction coefficients) is a pure function of the rows, so
this module computes those derived quantities once and caches them.

Two closely related scale products show up and are easy to conflate:

* ``rho``: the product prod A_i^A_i * prod B_j^(-B_j).  This is the growth
  base of the coefficient ratio, the endpoint of the support of the
  representing measure, and the rate in every exponential bound.
* ``conv_radius``: its reciprocal, which is the radius of convergence of
  the power series in the balanced (delta == -1) case.

Keeping both as named fields avoids a whole class of sign errors.
"""

from __future__ import annotations

import enum
import hashlib
import json
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .errors import ParameterError
from .special import bernoulli_poly, log_abs_gamma_signed

__all__ = [
    "ParameterSet",
    "DerivedConstants",
    "Convergence",
    "derive_constants",
    "classify_convergence",
    "in_domain",
    "correction_coeffs",
    "gamma_ratio",
    "gamma_ratio_log_signed",
    "shift_parameters",
]

Pair = tuple[float, float]

_INT_TOL = 1e-9
_POLE_SCAN_CAP = 10_000


class Convergence(enum.Enum):
    """Domain type of the series as a function of the scale balance."""

    ENTIRE_PLANE = "entire-plane"
    DISK = "disk"
    BOUNDARY_SUMMABLE = "boundary-summable"
    DIVERGENT = "divergent"


@dataclass(frozen=True)
class ParameterSet:
    """Immutable pair of gamma rows, validated on construction.

    ``upper`` are the numerator pairs (a_i, A_i), ``lower`` the denominator
    pairs (b_j, B_j).  Scales must be positive; numerator pairs must not put
    a gamma pole on any series index k = 0, 1, 2, ...
    """

    upper: tuple[Pair, ...]
    lower: tuple[Pair, ...]

    def __init__(self, upper: Sequence[Sequence[float]], lower: Sequence[Sequence[float]]):
        object.__setattr__(self, "upper", tuple((float(a), float(s)) for a, s in upper))
        object.__setattr__(self, "lower", tuple((float(b), float(s)) for b, s in lower))
        self._validate()

    def _validate(self) -> None:
        if not self.upper and not self.lower:
            raise ParameterError("at least one of upper/lower must be non-empty")
        for name, row in (("upper", self.upper), ("lower", self.lower)):
            for shift, scale in row:
                if not (math.isfinite(shift) and math.isfinite(scale)):
                    raise ParameterError(f"{name} pair ({shift}, {scale}) is not finite")
                if scale <= 0.0:
                    raise ParameterError(f"{name} scale must be positive, got {scale}")
        for shift, scale in self.upper:
            # gamma(shift + k*scale) sits in the numerator for every k >= 0;
            # a pole there makes a series term infinite.  Only finitely many
            # k can land on a non-positive argument, so scan exactly those.
            k_max = int(math.floor(-shift / scale)) if shift <= 0.0 else -1
            for k in range(0, min(k_max, _POLE_SCAN_CAP) + 1):
                arg = shift + k * scale
                if abs(arg - round(arg)) < _INT_TOL and round(arg) <= 0:
                    raise ParameterError(
                        f"upper pair ({shift}, {scale}) hits a gamma pole at term k={k}"
                    )

    @property
    def p(self) -> int:
        return len(self.upper)

    @property
    def q(self) -> int:
        return len(self.lower)

    # -- serialisation ------------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "upper": [[a, s] for a, s in self.upper],
            "lower": [[b, s] for b, s in self.lower],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ParameterSet":
        try:
            return cls(data["upper"], data["lower"])
        except (KeyError, TypeError) as exc:
            raise ParameterError(f"malformed parameter dict: {exc}") from exc

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> "ParameterSet":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParameterError(f"invalid parameter JSON: {exc}") from exc
        return cls.from_dict(data)

    def hash_key(self) -> str:
        """16-hex-char digest of the canonical JSON form, for report rows."""
        return hashlib.sha256(self.to_json().encode()).hexdigest()[:16]

    def constants(self) -> "DerivedConstants":
        return derive_constants(self)


@dataclass(frozen=True)
class DerivedConstants:
    """Scalar invariants of a parameter set.

    delta           scale balance sum(B) - sum(A); sign decides the domain
    rho             growth base prod A^A * prod B^(-B); support endpoint
    conv_radius     1/rho; series radius when delta == -1
    mu              second-order exponent sum(b) - sum(a) + (p - q)/2
    eta             asymptotic normalisation of the coefficient ratio
    gamma_abscissa  -min(a_i / A_i) over upper pairs (-inf when upper is empty)
    m_order         m when mu == -m for an integer m >= 0, else None
    """

    delta: float
    rho: float
    conv_radius: float
    mu: float
    eta: float
    gamma_abscissa: float
    m_order: int | None


@lru_cache(maxsize=256)
def derive_constants(params: ParameterSet) -> DerivedConstants:
    a_shifts = [a for a, _ in params.upper]
    a_scales = [s for _, s in params.upper]
    b_shifts = [b for b, _ in params.lower]
    b_scales = [s for _, s in params.lower]

    delta = sum(b_scales) - sum(a_scales)
    log_rho = sum(s * math.log(s) for s in a_scales) - sum(s * math.log(s) for s in b_scales)
    rho = math.exp(log_rho)
    mu = sum(b_shifts) - sum(a_shifts) + (params.p - params.q) / 2.0

    log_eta = ((params.p - params.q) / 2.0) * math.log(2.0 * math.pi)
    log_eta += sum((a - 0.5) * math.log(s) for a, s in params.upper)
    log_eta += sum((0.5 - b) * math.log(s) for b, s in params.lower)
    eta = math.exp(log_eta)

    if params.upper:
        gamma_abscissa = -min(a / s for a, s in params.upper)
    else:
        gamma_abscissa = -math.inf

    m_order: int | None = None
    mu_rounded = round(mu)
    if abs(mu - mu_rounded) < _INT_TOL and mu_rounded <= 0:
        m_order = int(-mu_rounded)

    return DerivedConstants(
        delta=delta,
        rho=rho,
        conv_radius=1.0 / rho,
        mu=mu,
        eta=eta,
        gamma_abscissa=gamma_abscissa,
        m_order=m_order,
    )


def classify_convergence(params: ParameterSet) -> Convergence:
    """Domain trichotomy driven by the scale balance delta.

    delta > -1 gives an entire function; delta == -1 a disk of radius
    ``conv_radius``, whose boundary is summable exactly when mu > 1/2;
    delta < -1 leaves only z = 0.
    """
    c = derive_constants(params)
    if c.delta > -1.0 + _INT_TOL:
        return Convergence.ENTIRE_PLANE
    if c.delta > -1.0 - _INT_TOL:
        if c.mu > 0.5:
            return Convergence.BOUNDARY_SUMMABLE
        return Convergence.DISK
    return Convergence.DIVERGENT


def in_domain(params: ParameterSet, z: complex, rel_tol: float = 1e-12) -> bool:
    """Whether the series at z converges for this parameter set."""
    kind = classify_convergence(params)
    if kind is Convergence.ENTIRE_PLANE:
        return True
    if kind is Convergence.DIVERGENT:
        return z == 0
    radius = derive_constants(params).conv_radius
    r = abs(z)
    if r < radius * (1.0 - rel_tol):
        return True
    on_boundary = abs(r - radius) <= radius * rel_tol
    return on_boundary and kind is Convergence.BOUNDARY_SUMMABLE


def shift_parameters(params: ParameterSet, delta: float) -> ParameterSet:
    """Shift every pair's offset by delta times its own scale.

    This transform leaves delta-balance, rho and mu unchanged, multiplies
    eta by rho**delta, and multiplies the representing density by t**delta;
    it is the workhorse behind the quotient-monotonicity checks.
    """
    return ParameterSet(
        [(a + delta * s, s) for a, s in params.upper],
        [(b + delta * s, s) for b, s in params.lower],
    )


def gamma_ratio_log_signed(params: ParameterSet, k: float) -> tuple[float, float]:
    """(log|r|, sign) of the coefficient ratio prod gamma(a+kA) / prod gamma(b+kB).

    A pole in a denominator gamma makes the ratio zero, reported as
    (-inf, 1.0).  A numerator pole raises ValueError, since the ratio is
    genuinely infinite there.
    """
    log_acc = 0.0
    sign = 1.0
    for a, s in params.upper:
        la, sg = log_abs_gamma_signed(a + k * s)
        log_acc += la
        sign *= sg
    for b, s in params.lower:
        arg = b + k * s
        if arg <= 0.0 and abs(arg - round(arg)) < _INT_TOL:
            return -math.inf, 1.0
        la, sg = log_abs_gamma_signed(arg)
        log_acc -= la
        sign *= sg
    return log_acc, sign


def gamma_ratio(params: ParameterSet, k: float) -> float:
    """The coefficient ratio at real index k, as an ordinary float."""
    log_abs, sign = gamma_ratio_log_signed(params, k)
    if log_abs == -math.inf:
        return 0.0
    return sign * math.exp(log_abs)


# ---------------------------------------------------------------------------
# Correction coefficients for the asymptotics of the coefficient ratio
# ---------------------------------------------------------------------------
#
# In the balanced case sum(A) == sum(B) the ratio behaves like
#
#     gamma_ratio(k) ~ eta * rho^k * k^(-mu) * (l_0 + l_1/k + l_2/k^2 + ...)
#
# The l_r follow from exponentiating the Stirling-series expansions of the
# individual log-gammas.  Writing the log-correction as sum_n q_n / (n k^n)
# with
#
#     q_n = (-1)^(n+1)/(n+1) * [ sum_i B_{n+1}(a_i)/A_i^n
#                                - sum_j B_{n+1}(b_j)/B_j^n ]
#
# (B_m the Bernoulli polynomials), the exponential gives the convolution
# recurrence l_0 = 1, r*l_r = sum_{n=1}^{r} q_n * l_{r-n}.


@lru_cache(maxsize=256)
def _q_sequence(params: ParameterSet, count: int) -> tuple[float, ...]:
    out = []
    for n in range(1, count + 1):
        acc = 0.0
        for a, s in params.upper:
            acc += bernoulli_poly(n + 1, a) / s**n
        for b, s in params.lower:
            acc -= bernoulli_poly(n + 1, b) / s**n
        out.append(((-1.0) ** (n + 1) / (n + 1.0)) * acc)
    return tuple(out)


def correction_coeffs(params: ParameterSet, order: int) -> tuple[float, ...]:
    """(l_0, l_1, ..., l_order) for the ratio asymptotics above.

    Only meaningful when the scale sums balance; callers in the measure
    layer enforce that, this function just computes the recurrence.
    """
    if order < 0:
        raise ValueError("order must be non-negative")
    q = _q_sequence(params, order)
    ell = [1.0]
    for r in range(1, order + 1):
        acc = 0.0
        for n in range(1, r + 1):
            acc += q[n - 1] * ell[r - n]
        ell.append(acc / r)
    return tuple(ell)
