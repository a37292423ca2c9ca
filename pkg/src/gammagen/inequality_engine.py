"""Positivity lemmas, monotone auxiliary functions, and sandwich checkers.

For each Gamma deformation there is a combined psi expression that is
positive on its hypothesis domain, an auxiliary function of t built from
it whose log-derivative factors through that expression (hence the
function is increasing), and a two-sided bound obtained by evaluating the
auxiliary function at t = 0 and t = 1.  This module exposes all three
layers as checkable predicates that produce quantitative margins.

Verdict slack (``tol_report``, default 1e-9) is deliberately three orders
of magnitude looser than the series evaluation tolerance (1e-12), so that
pass/fail decisions are robust to accumulated evaluation error.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

from . import core_special
from .core_special import (
    DomainError,
    SeriesControl,
    ToleranceNotMet,
    gamma,
    log_gamma,
    psi,
)
from .gen_gamma import (
    KParam,
    PParam,
    QParam,
    gamma_k,
    gamma_p,
    gamma_q,
    log_gamma_k,
    log_gamma_p,
    log_gamma_q,
    psi_k,
    psi_p,
    psi_q,
    _check_k,
    _check_p,
    _check_q,
)

__all__ = [
    "DEFAULT_TOL_REPORT",
    "GenParams",
    "InequalityReport",
    "MonotoneScan",
    "lemma_expr_p",
    "lemma_expr_q",
    "lemma_expr_k",
    "lemma_expr_p_unchecked",
    "lemma_expr_q_unchecked",
    "lemma_expr_k_unchecked",
    "omega",
    "phi",
    "theta",
    "log_omega",
    "log_phi",
    "log_theta",
    "log_deriv_omega",
    "log_deriv_phi",
    "log_deriv_theta",
    "check_sandwich_p",
    "check_sandwich_q",
    "check_sandwich_k",
    "classical_bounds_p",
    "classical_bounds_q",
    "classical_bounds_k",
    "scan_monotone",
    "family_callables",
]

DEFAULT_TOL_REPORT = 1e-9


@dataclass(frozen=True)
class GenParams:
    """The shared parameter tuple (a, b, alpha, beta), all strictly positive.

    Theorem-specific admissibility (a >= b for the k-family, alpha bounds
    for the p/q sandwiches) is checked by the individual operations.
    """

    a: float
    b: float
    alpha: float
    beta: float

    def __post_init__(self):
        for name in ("a", "b", "alpha", "beta"):
            v = getattr(self, name)
            if not v > 0:
                raise DomainError(f"{name} must be > 0 (got {v})")


@dataclass(frozen=True)
class InequalityReport:
    """One grid point of a sandwich check.

    ``passed`` applies the verdict rule
    margin > -tol_report on both sides; under a strict claim a margin of
    exactly zero fails, since rounding noise never produces an exact zero
    while a structural equality does.  (The attribute is named ``passed``
    only because ``pass`` is reserved in Python; it serializes as "pass".)
    """

    t: float
    lower: float
    middle: float
    upper: float
    lower_margin: float
    upper_margin: float
    strict: bool
    passed: bool
    tol_report: float
    note: str = ""


@dataclass(frozen=True)
class MonotoneScan:
    """Grid scan of an auxiliary function and its log-derivative."""

    grid: tuple
    values: tuple
    min_forward_diff: float
    derivative_min: float


# ---------------------------------------------------------------------------
# Combined psi expressions (the positivity lemmas)
# ---------------------------------------------------------------------------

def _converged_value(result, what: str) -> float:
    if not result.converged:
        raise ToleranceNotMet(
            f"{what}: series budget exhausted (err_bound {result.err_bound:.3g})")
    return result.value


def lemma_expr_p_unchecked(a: float, b: float, t: float, p: int) -> float:
    """a*gamma_E + b ln p + a psi(t) - b psi_p(t), with no hypothesis checks."""
    return (a * core_special.EULER_GAMMA + b * math.log(p)
            + a * psi(t) - b * psi_p(t, p))


def lemma_expr_p(a: float, b: float, t: float, p: int) -> float:
    """The p-family combined expression; strictly positive for t > 1.

    Raises DomainError outside the hypothesis domain (use the unchecked
    variant for exploration; it never feeds verdicts).
    """
    if not a > 0:
        raise DomainError(f"a must be > 0 (got {a})")
    if not b > 0:
        raise DomainError(f"b must be > 0 (got {b})")
    if not t > 1:
        raise DomainError(f"t must be > 1 for the p-family positivity (got {t})")
    _check_p(p)
    return lemma_expr_p_unchecked(a, b, t, p)


def lemma_expr_q_unchecked(a: float, b: float, t: float, q: float,
                           ctrl: SeriesControl | None = None) -> float:
    """a*gamma_E - b ln(1-q) + a psi(t) - b psi_q(t), no hypothesis checks."""
    return (a * core_special.EULER_GAMMA - b * math.log1p(-q)
            + a * psi(t) - b * _converged_value(psi_q(t, q, ctrl), "psi_q"))


def lemma_expr_q(a: float, b: float, t: float, q: float,
                 ctrl: SeriesControl | None = None) -> float:
    """The q-family combined expression; strictly positive for t > 1."""
    if not a > 0:
        raise DomainError(f"a must be > 0 (got {a})")
    if not b > 0:
        raise DomainError(f"b must be > 0 (got {b})")
    if not t > 1:
        raise DomainError(f"t must be > 1 for the q-family positivity (got {t})")
    _check_q(q)
    return lemma_expr_q_unchecked(a, b, t, q, ctrl)


def lemma_expr_k_unchecked(a: float, b: float, t: float, k: float,
                           ctrl: SeriesControl | None = None) -> float:
    """The k-family combined expression, with no hypothesis checks."""
    g = core_special.EULER_GAMMA
    return ((k * a * g - b * g) / k + (b / k) * math.log(k) + (a - b) / t
            + a * psi(t) - b * _converged_value(psi_k(t, k, ctrl), "psi_k"))


def lemma_expr_k(a: float, b: float, t: float, k: float,
                 ctrl: SeriesControl | None = None) -> float:
    """The k-family combined expression; nonnegative for a >= b > 0, k >= 1, t > 0."""
    if not b > 0:
        raise DomainError(f"b must be > 0 (got {b})")
    if not a >= b:
        raise DomainError(f"a >= b required for family k (got a={a}, b={b})")
    if not k >= 1:
        raise DomainError(f"k >= 1 required for family k (got {k})")
    if not t > 0:
        raise DomainError(f"t must be > 0 (got {t})")
    return lemma_expr_k_unchecked(a, b, t, k, ctrl)


# ---------------------------------------------------------------------------
# Auxiliary monotone functions (log-space evaluation)
# ---------------------------------------------------------------------------

def _eval_point(t: float, gp: GenParams) -> float:
    if not t >= 0:
        raise DomainError(f"t must be >= 0 (got {t})")
    s = gp.alpha + gp.beta * t
    if not s > 0:
        raise DomainError(f"alpha + beta*t must be > 0 (got {s})")
    return s


def log_omega(t: float, gp: GenParams, p: int) -> float:
    """ln of the p-family auxiliary function

        omega(t) = p^(b beta t) e^(a beta gamma_E t)
                   Gamma(alpha+beta t)^a / Gamma_p(alpha+beta t)^b.

    Increasing in t wherever alpha + beta t > 1; evaluation itself only
    needs alpha + beta t > 0.
    """
    s = _eval_point(t, gp)
    _check_p(p)
    return (gp.b * gp.beta * t * math.log(p)
            + gp.a * gp.beta * core_special.EULER_GAMMA * t
            + gp.a * log_gamma(s) - gp.b * log_gamma_p(s, p))


def omega(t: float, gp: GenParams, p: int) -> float:
    return math.exp(log_omega(t, gp, p))


def log_phi(t: float, gp: GenParams, q: float,
            ctrl: SeriesControl | None = None) -> float:
    """ln of the q-family auxiliary function

        phi(t) = (1-q)^(-b beta t) e^(a beta gamma_E t)
                 Gamma(alpha+beta t)^a / Gamma_q(alpha+beta t)^b.
    """
    s = _eval_point(t, gp)
    _check_q(q)
    lgq = _converged_value(log_gamma_q(s, q, ctrl), "log_gamma_q")
    return (-gp.b * gp.beta * t * math.log1p(-q)
            + gp.a * gp.beta * core_special.EULER_GAMMA * t
            + gp.a * log_gamma(s) - gp.b * lgq)


def phi(t: float, gp: GenParams, q: float,
        ctrl: SeriesControl | None = None) -> float:
    return math.exp(log_phi(t, gp, q, ctrl))


def log_theta(t: float, gp: GenParams, k: float) -> float:
    """ln of the k-family auxiliary function

        theta(t) = (alpha+beta t)^(a-b) e^(t beta gamma_E (k a - b)/k)
                   k^(b beta t / k) Gamma(alpha+beta t)^a / Gamma_k(alpha+beta t)^b.

    Requires a >= b and k >= 1 (its monotonicity hypotheses).
    """
    if not gp.a >= gp.b:
        raise DomainError(f"a >= b required for family k (got a={gp.a}, b={gp.b})")
    if not k >= 1:
        raise DomainError(f"k >= 1 required for family k (got {k})")
    s = _eval_point(t, gp)
    g = core_special.EULER_GAMMA
    return ((gp.a - gp.b) * math.log(s)
            + (gp.b * gp.beta * t / k) * math.log(k)
            + t * gp.beta * g * (k * gp.a - gp.b) / k
            + gp.a * log_gamma(s) - gp.b * log_gamma_k(s, k))


def theta(t: float, gp: GenParams, k: float) -> float:
    return math.exp(log_theta(t, gp, k))


# Log-derivatives, exactly as the factored forms beta * lemma_expr(...).
# Positivity of the lemma expression on the hypothesis domain is what makes
# the auxiliary functions increasing.

def log_deriv_omega(t: float, gp: GenParams, p: int) -> float:
    return gp.beta * lemma_expr_p(gp.a, gp.b, gp.alpha + gp.beta * t, p)


def log_deriv_phi(t: float, gp: GenParams, q: float,
                  ctrl: SeriesControl | None = None) -> float:
    return gp.beta * lemma_expr_q(gp.a, gp.b, gp.alpha + gp.beta * t, q, ctrl)


def log_deriv_theta(t: float, gp: GenParams, k: float,
                    ctrl: SeriesControl | None = None) -> float:
    return gp.beta * lemma_expr_k(gp.a, gp.b, gp.alpha + gp.beta * t, k, ctrl)


# ---------------------------------------------------------------------------
# Sandwich checkers
# ---------------------------------------------------------------------------

def _verdict(t, log_lower, log_middle, log_upper, strict, tol_report, note):
    lower = math.exp(log_lower)
    middle = math.exp(log_middle)
    upper = math.exp(log_upper)
    lower_margin = middle - lower
    upper_margin = upper - middle
    ok = lower_margin > -tol_report and upper_margin > -tol_report
    if strict and (lower_margin == 0.0 or upper_margin == 0.0):
        ok = False
    return InequalityReport(t, lower, middle, upper, lower_margin,
                            upper_margin, strict, ok, tol_report, note)


def _check_unit_grid(grid) -> None:
    for t in grid:
        if not 0.0 < t < 1.0:
            raise DomainError(
                f"sandwich grids must lie strictly in (0, 1) (got t={t})")


def _check_alpha_floor(gp: GenParams) -> str:
    # The increasingness hypothesis alpha + beta*t > 1 must hold down to the
    # t = 0 endpoint, where the lower bound is evaluated; with beta > 0 that
    # means alpha >= 1.  The exact boundary alpha = 1 is admitted but flagged.
    if gp.alpha < 1.0:
        raise DomainError(
            "alpha >= 1 required so alpha + beta*t > 1 holds down to the "
            f"t = 0 endpoint (got alpha={gp.alpha})")
    if gp.alpha == 1.0:
        return ("alpha + beta*t > 1 holds for t > 0 only; the t = 0 endpoint "
                "sits on the hypothesis boundary")
    return ""


def check_sandwich_p(gp: GenParams, p: int, grid: Sequence[float],
                     tol_report: float = DEFAULT_TOL_REPORT) -> list[InequalityReport]:
    """Check, at every grid point t in (0, 1),

        p^(-b beta t) e^(-a beta g t) G(alpha)^a / G_p(alpha)^b
          <  G(alpha+beta t)^a / G_p(alpha+beta t)^b
          <  p^(b beta (1-t)) e^(a beta g (1-t)) G(alpha+beta)^a / G_p(alpha+beta)^b

    (strict bounds).  Returns one report per grid point, in grid order.
    """
    _check_p(p)
    note = _check_alpha_floor(gp)
    _check_unit_grid(grid)
    g = core_special.EULER_GAMMA
    lnp = math.log(p)
    log_at0 = gp.a * log_gamma(gp.alpha) - gp.b * log_gamma_p(gp.alpha, p)
    log_at1 = (gp.a * log_gamma(gp.alpha + gp.beta)
               - gp.b * log_gamma_p(gp.alpha + gp.beta, p))
    out = []
    for t in grid:
        s = gp.alpha + gp.beta * t
        log_lower = -gp.b * gp.beta * t * lnp - gp.a * gp.beta * g * t + log_at0
        log_middle = gp.a * log_gamma(s) - gp.b * log_gamma_p(s, p)
        log_upper = (gp.b * gp.beta * (1.0 - t) * lnp
                     + gp.a * gp.beta * g * (1.0 - t) + log_at1)
        out.append(_verdict(t, log_lower, log_middle, log_upper,
                            True, tol_report, note))
    return out


def check_sandwich_q(gp: GenParams, q: float, grid: Sequence[float],
                     tol_report: float = DEFAULT_TOL_REPORT,
                     ctrl: SeriesControl | None = None) -> list[InequalityReport]:
    """q-family analogue of ``check_sandwich_p`` (strict bounds)."""
    _check_q(q)
    note = _check_alpha_floor(gp)
    _check_unit_grid(grid)
    g = core_special.EULER_GAMMA
    ln1mq = math.log1p(-q)
    log_at0 = (gp.a * log_gamma(gp.alpha)
               - gp.b * _converged_value(log_gamma_q(gp.alpha, q, ctrl), "log_gamma_q"))
    log_at1 = (gp.a * log_gamma(gp.alpha + gp.beta)
               - gp.b * _converged_value(log_gamma_q(gp.alpha + gp.beta, q, ctrl),
                                         "log_gamma_q"))
    out = []
    for t in grid:
        s = gp.alpha + gp.beta * t
        log_lower = gp.b * gp.beta * t * ln1mq - gp.a * gp.beta * g * t + log_at0
        log_middle = (gp.a * log_gamma(s)
                      - gp.b * _converged_value(log_gamma_q(s, q, ctrl), "log_gamma_q"))
        log_upper = (gp.b * gp.beta * (t - 1.0) * ln1mq
                     + gp.a * gp.beta * g * (1.0 - t) + log_at1)
        out.append(_verdict(t, log_lower, log_middle, log_upper,
                            True, tol_report, note))
    return out


def check_sandwich_k(gp: GenParams, k: float, grid: Sequence[float],
                     tol_report: float = DEFAULT_TOL_REPORT) -> list[InequalityReport]:
    """k-family sandwich (non-strict bounds):

        alpha^(a-b) e^(-t C) G(alpha)^a / ((alpha+beta t)^(a-b) k^(b beta t/k) G_k(alpha)^b)
          <=  G(alpha+beta t)^a / G_k(alpha+beta t)^b
          <=  (alpha+beta)^(a-b) e^((1-t) C) G(alpha+beta)^a
              / ((alpha+beta t)^(a-b) k^(b beta (t-1)/k) G_k(alpha+beta)^b)

    with C = beta gamma_E (k a - b)/k.  Requires a >= b > 0 and k >= 1.
    """
    if not gp.a >= gp.b:
        raise DomainError(f"a >= b required for family k (got a={gp.a}, b={gp.b})")
    if not k >= 1:
        raise DomainError(f"k >= 1 required for family k (got {k})")
    _check_unit_grid(grid)
    g = core_special.EULER_GAMMA
    lnk = math.log(k)
    c = gp.beta * g * (k * gp.a - gp.b) / k
    dab = gp.a - gp.b
    log_at0 = (dab * math.log(gp.alpha) + gp.a * log_gamma(gp.alpha)
               - gp.b * log_gamma_k(gp.alpha, k))
    log_at1 = (dab * math.log(gp.alpha + gp.beta)
               + gp.a * log_gamma(gp.alpha + gp.beta)
               - gp.b * log_gamma_k(gp.alpha + gp.beta, k))
    out = []
    for t in grid:
        s = gp.alpha + gp.beta * t
        lns = math.log(s)
        log_lower = (log_at0 - t * c - (gp.b * gp.beta * t / k) * lnk - dab * lns)
        log_middle = gp.a * log_gamma(s) - gp.b * log_gamma_k(s, k)
        log_upper = (log_at1 + (1.0 - t) * c
                     - (gp.b * gp.beta * (t - 1.0) / k) * lnk - dab * lns)
        out.append(_verdict(t, log_lower, log_middle, log_upper,
                            False, tol_report, ""))
    return out


# ---------------------------------------------------------------------------
# Regression predicates: the single-parameter (a = b = beta = 1) bounds
# ---------------------------------------------------------------------------

def classical_bounds_p(alpha: float, p: int, t: float) -> tuple[float, float, float]:
    """(lower, middle, upper) of the original single-parameter p-bound,

        p^-t e^(-g t) G(alpha)/G_p(alpha) < G(alpha+t)/G_p(alpha+t)
                                          < p^(1-t) e^(g(1-t)) G(alpha+1)/G_p(alpha+1),

    assembled directly, term by term, without the generalized machinery.
    """
    g = core_special.EULER_GAMMA
    lower = p ** (-t) * math.exp(-g * t) * gamma(alpha) / gamma_p(alpha, p)
    middle = gamma(alpha + t) / gamma_p(alpha + t, p)
    upper = (p ** (1.0 - t) * math.exp(g * (1.0 - t))
             * gamma(alpha + 1.0) / gamma_p(alpha + 1.0, p))
    return lower, middle, upper


def classical_bounds_q(alpha: float, q: float, t: float,
                       ctrl: SeriesControl | None = None) -> tuple[float, float, float]:
    """Single-parameter q-bound, assembled directly."""
    g = core_special.EULER_GAMMA
    gq = lambda x: _converged_value(gamma_q(x, q, ctrl), "gamma_q")
    lower = (1.0 - q) ** t * math.exp(-g * t) * gamma(alpha) / gq(alpha)
    middle = gamma(alpha + t) / gq(alpha + t)
    upper = ((1.0 - q) ** (t - 1.0) * math.exp(g * (1.0 - t))
             * gamma(alpha + 1.0) / gq(alpha + 1.0))
    return lower, middle, upper


def classical_bounds_k(alpha: float, k: float, t: float) -> tuple[float, float, float]:
    """Single-parameter k-bound (non-strict), assembled directly."""
    g = core_special.EULER_GAMMA
    c = (k * g - g) / k
    lower = (k ** (-t / k) * math.exp(-t * c)
             * gamma(alpha) / gamma_k(alpha, k))
    middle = gamma(alpha + t) / gamma_k(alpha + t, k)
    upper = (k ** ((1.0 - t) / k) * math.exp((1.0 - t) * c)
             * gamma(alpha + 1.0) / gamma_k(alpha + 1.0, k))
    return lower, middle, upper


# ---------------------------------------------------------------------------
# Monotonicity scans
# ---------------------------------------------------------------------------

def scan_monotone(fn: Callable[[float], float],
                  log_deriv: Callable[[float], float],
                  grid: Sequence[float]) -> MonotoneScan:
    """Evaluate fn over a strictly increasing grid (>= 2 points) and record
    the minimum forward difference and the minimum log-derivative."""
    grid = tuple(float(t) for t in grid)
    if len(grid) < 2:
        raise DomainError("monotone scan needs at least 2 grid points")
    if any(t1 >= t2 for t1, t2 in zip(grid, grid[1:])):
        raise DomainError("monotone scan grid must be strictly increasing")
    values = tuple(fn(t) for t in grid)
    min_fwd = min(v2 - v1 for v1, v2 in zip(values, values[1:]))
    deriv_min = min(log_deriv(t) for t in grid)
    return MonotoneScan(grid, values, min_fwd, deriv_min)


def family_callables(family: str, gp: GenParams, param,
                     ctrl: SeriesControl | None = None):
    """(fn, log_deriv) closures for one family, with parameters bound.

    ``param`` may be a raw number or a PParam/QParam/KParam instance.
    """
    if isinstance(param, (PParam, QParam, KParam)):
        param = getattr(param, {"PParam": "p", "QParam": "q", "KParam": "k"}[
            type(param).__name__])
    if family == "p":
        p = _check_p(param)
        return (lambda t: omega(t, gp, p),
                lambda t: log_deriv_omega(t, gp, p))
    if family == "q":
        _check_q(param)
        return (lambda t: phi(t, gp, param, ctrl),
                lambda t: log_deriv_phi(t, gp, param, ctrl))
    if family == "k":
        _check_k(param)
        return (lambda t: theta(t, gp, param),
                lambda t: log_deriv_theta(t, gp, param, ctrl))
    raise DomainError(f"family must be one of p, q, k (got {family!r})")
