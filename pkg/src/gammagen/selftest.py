"""Built-in verification suites behind the ``selftest`` CLI command.

Each suite cross-validates a fast evaluator against the independent
oracle, re-checks the functional equations, or re-derives the
single-parameter bounds and compares them term by term against the
generalized checkers at a = b = beta = 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import oracle
from .core_special import gamma, psi
from .gen_gamma import gamma_k, gamma_p, gamma_q, psi_k, psi_p, psi_q
from .inequality_engine import (
    GenParams,
    check_sandwich_k,
    check_sandwich_p,
    check_sandwich_q,
    classical_bounds_k,
    classical_bounds_p,
    classical_bounds_q,
)

DEFAULT_SEED = 20250802


@dataclass
class SuiteResult:
    name: str
    passed: int = 0
    failed: int = 0
    failures: list = field(default_factory=list)

    def record(self, label: str, ok: bool):
        if ok:
            self.passed += 1
        else:
            self.failed += 1
            self.failures.append(label)

    @property
    def total(self):
        return self.passed + self.failed


def _oracle_suites(rng, n_series: int, n_quad: int) -> list[SuiteResult]:
    out = []

    def suite(name, n, sample, fast, ref, rel_tol):
        res = SuiteResult(name)
        for _ in range(n):
            args = sample()
            ok = oracle.cross_validate(fast(*args), ref(*args), rel_tol)
            res.record(f"{name}{args}", ok)
        out.append(res)

    t_any = lambda: (float(rng.uniform(0.05, 30.0)),)
    t_p = lambda: (float(rng.uniform(0.05, 30.0)), int(rng.integers(1, 500)))
    t_q = lambda: (float(rng.uniform(0.05, 30.0)), float(rng.uniform(0.05, 0.95)))
    t_k = lambda: (float(rng.uniform(0.05, 20.0)), float(rng.uniform(0.5, 10.0)))

    suite("gamma-vs-oracle", n_quad, t_any, gamma, oracle.gamma_hp, 1e-10)
    suite("psi-vs-oracle", n_series, t_any, psi,
          lambda t: oracle.psi_hp(t), 1e-10)
    suite("psi_p-vs-oracle", n_series, t_p, lambda t, p: psi_p(t, p),
          oracle.psi_p_hp, 1e-10)
    suite("psi_q-vs-oracle", n_series, t_q,
          lambda t, q: psi_q(t, q).value, oracle.psi_q_hp, 1e-10)
    suite("psi_k-vs-oracle", n_series, t_k,
          lambda t, k: psi_k(t, k).value, oracle.psi_k_hp, 1e-10)
    suite("gamma_p-vs-oracle", n_series, t_p, gamma_p, oracle.gamma_p_hp, 1e-10)
    suite("gamma_q-vs-oracle", n_series, t_q,
          lambda t, q: gamma_q(t, q).value, oracle.gamma_q_hp, 1e-10)
    suite("gamma_k-vs-quadrature", n_quad, t_k, gamma_k, oracle.gamma_k_quad, 1e-12)
    return out


def _functional_equation_suite(rng, n: int) -> SuiteResult:
    res = SuiteResult("functional-equations")
    for _ in range(n):
        t = float(rng.uniform(0.1, 20.0))
        p = int(rng.integers(1, 300))
        q = float(rng.uniform(0.05, 0.95))
        k = float(rng.uniform(0.2, 8.0))
        ok_p = math.isclose(gamma_p(t + 1.0, p),
                            p * t / (t + p + 1.0) * gamma_p(t, p), rel_tol=1e-10)
        ok_q = math.isclose(gamma_q(t + 1.0, q).value,
                            (1.0 - q**t) / (1.0 - q) * gamma_q(t, q).value,
                            rel_tol=1e-10)
        ok_k = math.isclose(gamma_k(t + k, k), t * gamma_k(t, k), rel_tol=1e-10)
        res.record(f"p(t={t:.4g},p={p})", ok_p)
        res.record(f"q(t={t:.4g},q={q:.4g})", ok_q)
        res.record(f"k(t={t:.4g},k={k:.4g})", ok_k)
    return res


def _close(x, y, tol=1e-12):
    return math.isclose(x, y, rel_tol=tol, abs_tol=tol)


def _reduction_suites(rng, n: int) -> list[SuiteResult]:
    """At a = b = beta = 1 the generalized bounds must coincide termwise
    with the directly assembled single-parameter bounds."""
    gp = GenParams(1.0, 1.0, 1.0, 1.0)  # alpha replaced per case
    out = []

    res_p = SuiteResult("reduction-p")
    for _ in range(n):
        alpha = float(rng.uniform(1.0, 3.0))
        p = int(rng.integers(1, 50))
        t = float(rng.uniform(0.05, 0.95))
        rep = check_sandwich_p(GenParams(1.0, 1.0, alpha, 1.0), p, [t])[0]
        lo, mid, up = classical_bounds_p(alpha, p, t)
        res_p.record(f"(alpha={alpha:.4g},p={p},t={t:.4g})",
                     _close(rep.lower, lo) and _close(rep.middle, mid)
                     and _close(rep.upper, up))
    out.append(res_p)

    res_q = SuiteResult("reduction-q")
    for _ in range(n):
        alpha = float(rng.uniform(1.0, 3.0))
        q = float(rng.uniform(0.05, 0.95))
        t = float(rng.uniform(0.05, 0.95))
        rep = check_sandwich_q(GenParams(1.0, 1.0, alpha, 1.0), q, [t])[0]
        lo, mid, up = classical_bounds_q(alpha, q, t)
        res_q.record(f"(alpha={alpha:.4g},q={q:.4g},t={t:.4g})",
                     _close(rep.lower, lo) and _close(rep.middle, mid)
                     and _close(rep.upper, up))
    out.append(res_q)

    res_k = SuiteResult("reduction-k")
    for _ in range(n):
        alpha = float(rng.uniform(0.2, 3.0))
        k = float(rng.uniform(1.0, 8.0))
        t = float(rng.uniform(0.05, 0.95))
        rep = check_sandwich_k(GenParams(1.0, 1.0, alpha, 1.0), k, [t])[0]
        lo, mid, up = classical_bounds_k(alpha, k, t)
        res_k.record(f"(alpha={alpha:.4g},k={k:.4g},t={t:.4g})",
                     _close(rep.lower, lo) and _close(rep.middle, mid)
                     and _close(rep.upper, up))
    out.append(res_k)
    return out


def run(quick: bool = False, seed: int = DEFAULT_SEED, echo=print) -> int:
    """Run every suite; print per-suite counts; return 0 iff all passed."""
    rng = np.random.default_rng(seed)
    n_series, n_quad, n_func, n_red = (8, 5, 12, 4) if quick else (30, 20, 50, 10)

    suites = _oracle_suites(rng, n_series, n_quad)
    suites.append(_functional_equation_suite(rng, n_func))
    suites.extend(_reduction_suites(rng, n_red))

    any_failed = False
    for s in suites:
        status = "PASS" if s.failed == 0 else "FAIL"
        echo(f"{s.name}: {status} {s.passed}/{s.total}")
        for label in s.failures[:5]:
            echo(f"  failing case: {label}")
        any_failed = any_failed or s.failed > 0
    echo("selftest: " + ("PASS" if not any_failed else "FAIL"))
    return 1 if any_failed else 0
