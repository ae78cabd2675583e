"""Evaluation of the representing density on (0, rho).

For a balanced parameter set (sum of upper scales == sum of lower scales)
with mu equal to a non-positive integer -m, the gamma ratio splits into

    gamma_ratio(s) = integral_0^rho H(t) t^(s-1) dt
                     + eta * rho^s * (l_0 s^m + l_1 s^(m-1) + ... + l_m)

where H is the regular density this module computes and the polynomial part
is the Mellin transform of an atom (plus derivative atoms) sitting at
t = rho.  The atoms are always handled in closed form elsewhere
(``atom_mellin`` here, ``correction_series`` in the series module); nothing
in this file ever tries to integrate across them.

Two evaluation routes are implemented and cross-checked:

* Residue route: H(t) is the sum of residues of gamma_ratio(s) * t^(-s)
  over the poles of the numerator gammas at s = -(alpha_i + n)/A_i.  Poles
  closer than 1e-8 are treated as one multiple pole and their joint residue
  is extracted by a small circular contour (midpoint rule, spectrally
  accurate), which is agnostic to multiplicity.  Distinct poles separated
  by less than 1e-6 are refused: the circle radius cannot be chosen safely.
  Convergence is geometric in (t/rho)^sigma, so the route is used away
  from rho.

* Contour route: H(t) = (1/2 pi) Integral ratio(c+i tau) t^(-c-i tau) dtau
  along a vertical line right of every pole.  The integrand only decays
  algebraically, so the known asymptotic eta * rho^s * sum l_r s^(m-r) is
  subtracted through order m+6; the subtracted terms with non-negative
  powers of s transform to atoms at rho (zero on the open interval) while
  the 1/s^j terms transform back analytically as
  eta * l_(m+j) * ln(rho/t)^(j-1)/(j-1)!.  What remains decays like
  |tau|^(-7) and is integrated on cached unit panels of Gauss-Legendre
  nodes.  The cancellation ratio - subtraction is computed in log space
  with a complex expm1 so the accuracy survives where the two agree to
  ten digits.

A parameter set whose ratio IS its polynomial part (upper == lower rows,
or duplication-formula collapses) has H identically zero; that degeneracy
is detected from the contour integrand and both routes then return exact
zeros rather than integrating noise.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import (
    ConstraintError,
    NonConvergentError,
    OutsideDomainError,
    ParameterError,
    PoleCollisionError,
)
from .params import ParameterSet, correction_coeffs, derive_constants
from .quadrature import gauss_legendre, integrate_adaptive
from .series import EvalResult, SeriesStatus
from .special import gamma_real, log_gamma_complex_vec

__all__ = [
    "HfunMethod",
    "HfunEvalConfig",
    "MeasureEvaluator",
    "get_evaluator",
    "hfun_value",
    "hfun_moment",
    "atom_mellin",
    "moment_identity_check",
    "MomentIdentityReport",
    "hfun_nonneg_scan",
    "NonnegReport",
    "measure_integral",
]

_MERGE_GAP = 1e-8
_COLLISION_GAP = 1e-6
_CIRCLE_NODES = 32
_EXTRA_ORDERS = 6  # extra subtracted 1/s^j terms on the contour
_RESIDUE_SWITCH = 0.8  # Auto: residues for t <= 0.8 rho
_DEGENERATE_RATIO = 1e-12
_PANEL_POINTS = 16
_MAX_PANELS = 400


class HfunMethod(enum.Enum):
    RESIDUE_SERIES = "residue-series"
    REGULARIZED_CONTOUR = "regularized-contour"
    AUTO = "auto"


@dataclass(frozen=True)
class HfunEvalConfig:
    """Knobs for the density evaluator.

    contour_abscissa: real part c of the vertical line (must exceed the
        rightmost pole abscissa); None picks max(gamma, 0) + 1 bumped so
        every gamma argument stays in the right half-plane.
    contour_cutoff: truncation T of the tau integral; None grows panels
        until the integrand has decayed below 1e-12 of its peak.
    max_residue_terms: budget of circle nodes across all pole clusters.
    """

    method: HfunMethod = HfunMethod.AUTO
    contour_abscissa: float | None = None
    contour_cutoff: float | None = None
    max_residue_terms: int = 8000
    tol: float = 1e-9

    def __post_init__(self) -> None:
        if self.tol <= 0:
            raise ParameterError("tol must be positive")
        if self.contour_cutoff is not None and self.contour_cutoff <= 0:
            raise ParameterError("contour_cutoff must be positive")
        if self.max_residue_terms < _CIRCLE_NODES:
            raise ParameterError("max_residue_terms below a single cluster's node count")


class MeasureEvaluator:
    """Cached per-parameter-set machinery for H(t) and its integrals."""

    def __init__(self, params: ParameterSet, config: HfunEvalConfig | None = None):
        self.params = params
        self.config = config or HfunEvalConfig()
        self.constants = derive_constants(params)
        if abs(self.constants.delta) > 1e-9:
            raise ConstraintError(
                "density machinery requires balanced scale sums "
                f"(delta = {self.constants.delta:.3g})"
            )
        # mu > 0 has a pure density (no endpoint atoms); mu = -m adds the
        # polynomial atom part.  Negative non-integer mu would need
        # fractional-derivative atoms, which nothing downstream wants.
        if self.constants.m_order is None and self.constants.mu <= 1e-9:
            raise ConstraintError(
                "density machinery requires mu > 0 or mu equal to a non-positive "
                f"integer (mu = {self.constants.mu:.6g})"
            )
        self.m = self.constants.m_order
        self.mu = self.constants.mu
        self.rho = self.constants.rho
        self.eta = self.constants.eta
        self._n_sub = (self.m or 0) + _EXTRA_ORDERS
        self._ell = correction_coeffs(params, self._n_sub)
        self._c = self._pick_abscissa()

        # contour state
        self._tau: np.ndarray = np.empty(0)
        self._gl_w: np.ndarray = np.empty(0)
        self._g: np.ndarray = np.empty(0, dtype=complex)
        self._sub_peak = 0.0
        self._g_peak = 0.0
        self._contour_built = False
        self.degenerate = False

        # residue state
        self._clusters: list[tuple[float, np.ndarray, np.ndarray]] = []
        self._res_sigma_built = 0.0
        self._res_nodes_used = 0
        self._pole_gen_exhausted = False

        self._build_contour()

    # ------------------------------------------------------------------
    # shared helpers
    # ------------------------------------------------------------------

    def _pick_abscissa(self) -> float:
        g = self.constants.gamma_abscissa
        c = max(g, 0.0) + 1.0
        # keep every gamma argument's real part >= 0.6 along the line so the
        # vectorised log-gamma never reflects (reflection would meet
        # sin(pi z) overflow for large |Im z|)
        for shift, scale in self.params.upper + self.params.lower:
            c = max(c, (0.6 - shift) / scale)
        explicit = self.config.contour_abscissa
        if explicit is not None:
            if explicit <= g:
                raise ParameterError(
                    f"contour abscissa {explicit} does not clear the pole front {g}"
                )
            return float(explicit)
        return c

    def _log_ratio(self, s: np.ndarray) -> np.ndarray:
        acc = np.zeros_like(s, dtype=complex)
        for a, sc in self.params.upper:
            acc = acc + log_gamma_complex_vec(sc * s + a)
        for b, sc in self.params.lower:
            acc = acc - log_gamma_complex_vec(sc * s + b)
        return acc

    # ------------------------------------------------------------------
    # contour route
    # ------------------------------------------------------------------

    def _g_values(self, s: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """ratio(s) minus its subtracted asymptotic part, plus |subtraction|.

        Returned as (g, |sub|); the second array feeds the degeneracy and
        truncation heuristics.
        """
        log_ratio = self._log_ratio(s)
        w_inv = 1.0 / s
        poly = np.zeros_like(s, dtype=complex)
        for r in range(self._n_sub, -1, -1):
            poly = poly * w_inv + self._ell[r]
        with np.errstate(divide="ignore", invalid="ignore"):
            log_sub = (
                math.log(self.eta)
                + s * math.log(self.rho)
                - self.mu * np.log(s)
                + np.log(poly)
            )
            w = log_ratio - log_sub
            w = w - 2j * math.pi * np.round(w.imag / (2.0 * math.pi))
            sub = np.exp(log_sub)
            g_accurate = sub * _cexpm1(w)
            g_plain = np.exp(log_ratio) - sub
        g = np.where(np.abs(w) < 0.5, g_accurate, g_plain)
        g = np.where(np.isfinite(g), g, g_plain)
        return g, np.abs(sub)

    def _build_contour(self) -> None:
        nodes, weights = gauss_legendre(_PANEL_POINTS)
        explicit_t = self.config.contour_cutoff
        n_panels = _MAX_PANELS if explicit_t is None else max(1, int(math.ceil(explicit_t)))

        taus: list[np.ndarray] = []
        gs: list[np.ndarray] = []
        ws: list[np.ndarray] = []
        prev_peak = math.inf
        floor_streak = 0
        for j in range(n_panels):
            lo, hi = float(j), float(j + 1)
            if explicit_t is not None:
                hi = min(hi, explicit_t)
                if hi <= lo:
                    break
            half = 0.5 * (hi - lo)
            tau = 0.5 * (lo + hi) + half * nodes
            s = self._c + 1j * tau
            g, sub = self._g_values(s)
            taus.append(tau)
            gs.append(g)
            ws.append(weights * half)
            self._sub_peak = max(self._sub_peak, float(np.max(sub)))
            panel_peak = float(np.max(np.abs(g)))
            self._g_peak = max(self._g_peak, panel_peak)
            if explicit_t is None and j >= 20:
                if panel_peak <= 1e-12 * self._g_peak:
                    break
                if self._g_peak <= _DEGENERATE_RATIO * self._sub_peak:
                    # the gamma-product ratio matches its asymptotic form
                    # exactly on the whole grid: nothing left to integrate
                    break
                # Past the panel where rounding noise in the log-space
                # subtraction overtakes the true tau^-(n_sub+1) decay, panel
                # peaks stop shrinking and further panels only add noise.
                deep_tail = panel_peak <= 1e-6 * self._g_peak
                if deep_tail and panel_peak >= 0.9 * prev_peak:
                    floor_streak += 1
                    if floor_streak >= 3:
                        break
                else:
                    floor_streak = 0
            prev_peak = panel_peak

        self._tau = np.concatenate(taus)
        self._gl_w = np.concatenate(ws)
        self._g = np.concatenate(gs)
        self._contour_built = True
        self.degenerate = self._g_peak <= _DEGENERATE_RATIO * self._sub_peak

    def _addback(self, t: np.ndarray) -> np.ndarray:
        """Analytic inverse transform of the subtracted 1/s-power terms.

        Each subtracted term eta rho^s s^(-(mu+r)) transforms back to
        eta ln(rho/t)^(mu+r-1) / gamma(mu+r) on (0, rho).  Terms whose
        exponent mu+r is a non-positive integer are the endpoint atoms:
        the reciprocal gamma kills them here, which is exactly right since
        atoms contribute nothing on the open interval.
        """
        u = np.log(self.rho / t)
        acc = np.zeros_like(t)
        for r in range(self._n_sub + 1):
            x = self.mu + r
            if x < 1e-9:
                continue
            acc += self._ell[r] * u ** (x - 1.0) / gamma_real(x)
        return self.eta * acc

    def _contour_density(self, t: np.ndarray) -> np.ndarray:
        if self.degenerate:
            return np.zeros_like(t)
        phase = np.exp(-1j * np.outer(np.log(t), self._tau))
        integral = (phase * (self._gl_w * self._g)).sum(axis=1)
        return t ** (-self._c) / math.pi * integral.real + self._addback(t)

    # ------------------------------------------------------------------
    # residue route
    # ------------------------------------------------------------------

    def _generate_poles(self, sigma_max: float) -> list[float]:
        out: list[float] = []
        for a, sc in self.params.upper:
            n = 0
            while True:
                sigma = (a + n) / sc
                if sigma > sigma_max:
                    break
                out.append(sigma)
                n += 1
        out.sort()
        return out

    def _ensure_residue_table(self, sigma_target: float) -> None:
        # quantise upward so creeping t_max values don't trigger a rebuild per call
        sigma_target = 10.0 * math.ceil(sigma_target / 10.0)
        if self.degenerate or sigma_target <= self._res_sigma_built:
            return
        if self._pole_gen_exhausted:
            return
        budget = self.config.max_residue_terms
        sigmas = self._generate_poles(sigma_target)
        # cluster identical (within merge gap) pole positions
        clusters: list[list[float]] = []
        for sg in sigmas:
            if clusters and sg - clusters[-1][-1] <= _MERGE_GAP:
                clusters[-1].append(sg)
            else:
                clusters.append([sg])
        centers = [sum(c) / len(c) for c in clusters]
        for left, right in zip(centers, centers[1:]):
            gap = right - left
            if gap < _COLLISION_GAP:
                raise PoleCollisionError(
                    f"numerator pole ladders nearly collide (gap {gap:.2e} at sigma ~ {left:.6g}); "
                    "neither a merged multiple pole nor separated circles is numerically safe"
                )

        theta = 2.0 * math.pi * (np.arange(_CIRCLE_NODES) + 0.5) / _CIRCLE_NODES
        unit = np.exp(1j * theta)
        new_clusters: list[tuple[float, np.ndarray, np.ndarray]] = []
        nodes_used = 0
        for idx, center in enumerate(centers):
            gap = math.inf
            if idx > 0:
                gap = min(gap, center - centers[idx - 1])
            if idx + 1 < len(centers):
                gap = min(gap, centers[idx + 1] - center)
            radius = min(0.3 * gap, 0.25)
            if nodes_used + _CIRCLE_NODES > budget:
                self._pole_gen_exhausted = True
                break
            s_nodes = -center + radius * unit
            log_w = (
                self._log_ratio(s_nodes)
                + math.log(radius / _CIRCLE_NODES)
                + 1j * theta
            )
            new_clusters.append((center, s_nodes, log_w))
            nodes_used += _CIRCLE_NODES
        self._clusters = new_clusters
        self._res_nodes_used = nodes_used
        self._res_sigma_built = sigma_target

    def _residue_density(self, t: np.ndarray) -> tuple[np.ndarray, bool]:
        """(values, converged) by streaming pole clusters outward."""
        if self.degenerate:
            return np.zeros_like(t), True
        t_max = float(np.max(t))
        ratio_log = math.log(t_max / self.rho)
        if ratio_log >= 0:
            return np.full_like(t, np.nan), False
        first = -self.constants.gamma_abscissa  # smallest pole abscissa
        sigma_target = first + math.log(1e-3 * self.config.tol) / ratio_log
        self._ensure_residue_table(sigma_target)

        log_t = np.log(t)
        acc = np.zeros_like(t)
        scale = 0.0
        streak = 0
        tol = self.config.tol
        for _center, s_nodes, log_w in self._clusters:
            contrib = np.exp(log_w[None, :] - np.outer(log_t, s_nodes)).sum(axis=1).real
            acc += contrib
            scale = max(scale, float(np.max(np.abs(acc))))
            if float(np.max(np.abs(contrib))) <= tol * max(scale, 1e-300):
                streak += 1
                if streak >= 3:
                    return acc, True
            else:
                streak = 0
        return acc, False

    # ------------------------------------------------------------------
    # public surface
    # ------------------------------------------------------------------

    def density(self, t: np.ndarray, method: HfunMethod | None = None) -> np.ndarray:
        """Regular part H(t) on the open support interval, vectorised."""
        t = np.atleast_1d(np.asarray(t, dtype=float))
        if np.any(t <= 0.0) or np.any(t >= self.rho):
            raise OutsideDomainError(
                f"density is defined on the open interval (0, {self.rho:.6g})"
            )
        method = method or self.config.method
        if self.degenerate:
            return np.zeros_like(t)
        if method is HfunMethod.REGULARIZED_CONTOUR:
            return self._contour_density(t)
        if method is HfunMethod.RESIDUE_SERIES:
            vals, ok = self._residue_density(t)
            if not ok:
                raise NonConvergentError(
                    "residue shells failed to decay within the node budget; "
                    "use the contour method this close to the support endpoint"
                )
            return vals
        near = t > _RESIDUE_SWITCH * self.rho
        out = np.empty_like(t)
        if np.any(~near):
            vals, ok = self._residue_density(t[~near])
            if not ok:
                vals = self._contour_density(t[~near])
            out[~near] = vals
        if np.any(near):
            out[near] = self._contour_density(t[near])
        return out

    def atom_mellin(self, s: float) -> float:
        """Mellin transform of the endpoint atoms: eta rho^s sum_r l_r s^(m-r).

        Identically zero when mu > 0 (pure-density regime, no atoms).
        """
        if self.m is None:
            return 0.0
        poly = 0.0
        for r in range(self.m + 1):
            poly += self._ell[r] * s ** (self.m - r)
        return self.eta * self.rho**s * poly

    def measure_integral(self, fn: Callable[[np.ndarray], np.ndarray]) -> float:
        """integral_0^rho fn(t) H(t) dt, split and desingularised at both ends.

        The left half runs in the substituted variable t = rho u^2 which
        flattens the algebraic small-t behaviour of H; the right half is
        straight adaptive refinement (the density stays bounded at rho but
        picks up log(rho/t) powers in its derivatives).
        """
        if self.degenerate:
            return 0.0
        rho = self.rho
        tol = self.config.tol

        def left(u: np.ndarray) -> np.ndarray:
            t = rho * u * u
            return np.asarray(fn(t)) * self.density(t) * 2.0 * rho * u

        def right(t: np.ndarray) -> np.ndarray:
            return np.asarray(fn(t)) * self.density(t)

        a = integrate_adaptive(left, 0.0, math.sqrt(0.5), tol_abs=tol / 2, tol_rel=tol)
        b = integrate_adaptive(right, rho / 2.0, rho, tol_abs=tol / 2, tol_rel=tol)
        return a + b

    def moment(self, s: float) -> float:
        """integral_0^rho H(t) t^(s-1) dt."""
        return self.measure_integral(lambda t: t ** (s - 1.0))


_EVALUATORS: dict[tuple[ParameterSet, HfunEvalConfig], MeasureEvaluator] = {}


def get_evaluator(params: ParameterSet, config: HfunEvalConfig | None = None) -> MeasureEvaluator:
    key = (params, config or HfunEvalConfig())
    ev = _EVALUATORS.get(key)
    if ev is None:
        ev = MeasureEvaluator(key[0], key[1])
        _EVALUATORS[key] = ev
    return ev


def _cexpm1(w: np.ndarray) -> np.ndarray:
    """exp(w) - 1 for complex w without cancellation near w = 0."""
    re = w.real
    im = w.imag
    real = np.expm1(re) * np.cos(im) - 2.0 * np.sin(0.5 * im) ** 2
    imag = np.exp(re) * np.sin(im)
    return real + 1j * imag


# ---------------------------------------------------------------------------
# functional wrappers
# ---------------------------------------------------------------------------


def hfun_value(
    params: ParameterSet, t: float, config: HfunEvalConfig | None = None
) -> EvalResult:
    """Point value of the regular density, as an EvalResult."""
    ev = get_evaluator(params, config)
    if not (0.0 < t < ev.rho):
        raise OutsideDomainError(f"t={t} outside the support interval (0, {ev.rho:.6g})")
    value = float(ev.density(np.array([t]))[0])
    work = ev._res_nodes_used + int(ev._tau.size)
    return EvalResult(value, work, 0.0, SeriesStatus.CONVERGED)


def hfun_moment(params: ParameterSet, k: float, config: HfunEvalConfig | None = None) -> float:
    """k-th Mellin moment of the regular density over (0, rho)."""
    ev = get_evaluator(params, config)
    return ev.moment(k)


def atom_mellin(params: ParameterSet, s: float, config: HfunEvalConfig | None = None) -> float:
    return get_evaluator(params, config).atom_mellin(s)


@dataclass(frozen=True)
class MomentIdentityReport:
    rows: tuple[dict, ...]
    max_rel_err: float

    def ok(self, threshold: float = 1e-6) -> bool:
        return self.max_rel_err <= threshold


def moment_identity_check(
    params: ParameterSet,
    k_list: list[float],
    config: HfunEvalConfig | None = None,
) -> MomentIdentityReport:
    """Compare gamma_ratio(k) against moment(k) + atom part, per k.

    The relative error is normalised by 1 + |gamma_ratio| so tiny ratios
    don't blow up the report.
    """
    from .params import gamma_ratio

    ev = get_evaluator(params, config)
    rows = []
    worst = 0.0
    for k in k_list:
        lhs = gamma_ratio(params, k)
        integral = ev.moment(k)
        atoms = ev.atom_mellin(k)
        rhs = integral + atoms
        abs_err = abs(lhs - rhs)
        rel_err = abs_err / (1.0 + abs(lhs))
        worst = max(worst, rel_err)
        rows.append(
            {
                "k": k,
                "gamma_ratio": lhs,
                "moment": integral,
                "atom": atoms,
                "rhs": rhs,
                "abs_err": abs_err,
                "rel_err": rel_err,
            }
        )
    return MomentIdentityReport(tuple(rows), worst)


@dataclass(frozen=True)
class NonnegReport:
    min_value: float
    min_location: float
    nonneg: bool
    tol_abs: float


def hfun_nonneg_scan(
    params: ParameterSet,
    grid: np.ndarray | list[float] | None = None,
    config: HfunEvalConfig | None = None,
) -> NonnegReport:
    """Scan the density over a grid and report whether it stays nonnegative.

    The tolerance scales with the largest magnitude seen so an all-zero
    degenerate density reports nonnegative without special-casing.
    """
    ev = get_evaluator(params, config)
    if grid is None:
        grid = np.linspace(ev.rho * 1e-3, ev.rho * (1 - 1e-3), 50)
    grid = np.asarray(grid, dtype=float)
    vals = ev.density(grid)
    idx = int(np.argmin(vals))
    tol_abs = 1e-9 * float(np.max(np.abs(vals)))
    return NonnegReport(
        min_value=float(vals[idx]),
        min_location=float(grid[idx]),
        nonneg=bool(vals[idx] >= -tol_abs),
        tol_abs=tol_abs,
    )


def measure_integral(
    params: ParameterSet,
    fn: Callable[[np.ndarray], np.ndarray],
    config: HfunEvalConfig | None = None,
) -> float:
    return get_evaluator(params, config).measure_integral(fn)
