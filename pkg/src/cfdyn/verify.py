"""Invariant suites behind the `verify` subcommand and the acceptance tests.

Each suite returns a list of CheckResult rows.  A row passes when its
measured residual sits at or below its bound; bounds combine a fixed
numeric tolerance with whatever truncation tails the evaluations report,
so a pass certifies agreement, not luck.
"""

from __future__ import annotations

import math
import random
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Callable, Optional

import numpy as np

from .cf import (ContinuedFraction, ONE, agrees_on_settled, cf_from_rational,
                 minkowski_q)
from .errors import DomainError, TruncationExhausted
from .maps import FIBONACCI_ALPHA, GAUSS_ALPHA, jimm, t_alpha_step
from .transfer import (DEFAULT_CONFIG, HALF_MINUS, FunctionOracle,
                       TransferConfig, apply_transfer, closed_form_density,
                       gkw_matrix, hurwitz_image, leading_eigen,
                       qmark_pushforward, residual_b, residual_k_minus,
                       residual_kernel_eta, residual_master)
from .zeta import fib_functional_eq_residual, fib_zeta, hurwitz_zeta

EPS = float(np.finfo(float).eps)

DENSITY_PAIRS = (
    ("classical", GAUSS_ALPHA, "gauss", None),
    ("parameter-one", ONE, "alpha_one", None),
    ("golden", FIBONACCI_ALPHA, "fibonacci", None),
    ("series-k2", ContinuedFraction((), (2,)), "k_series", 2),
    ("series-k3", ContinuedFraction((), (3,)), "k_series", 3),
)


@dataclass(frozen=True)
class CheckResult:
    """One verified statement: measured residual against its bound."""

    name: str
    measure: float
    bound: float
    passed: bool
    detail: str = ""

    def as_dict(self) -> dict:
        return asdict(self)


def _check(name: str, measure, bound, detail: str = "") -> CheckResult:
    m, b = float(measure), float(bound)
    return CheckResult(name, m, b, m <= b, detail)


def all_passed(checks) -> bool:
    return all(c.passed for c in checks)


# ---------------------------------------------------------------------------
# densities: closed-form fixed functions of the weight-1 operator


def suite_densities(cfg: TransferConfig = DEFAULT_CONFIG,
                    tol: Optional[float] = None,
                    n_points: int = 20) -> list[CheckResult]:
    base = 1e-8 if tol is None else tol
    ys = np.linspace(0.05, 0.95, n_points)
    out = []
    for label, alpha, which, k in DENSITY_PAIRS:
        psi = closed_form_density(which, K=k)
        worst_margin = -math.inf
        worst = (0.0, 0.0, 0.0)
        for y in ys:
            got = apply_transfer(alpha, 1.0, psi, float(y), cfg)
            gap = abs(got.value - float(psi(float(y))))
            bound = base + got.tail
            if gap - bound > worst_margin:
                worst_margin = gap - bound
                worst = (gap, bound, float(y))
        out.append(_check(f"density-{label}", worst[0], worst[1],
                          f"{n_points} points in [0.05,0.95], worst at "
                          f"y={worst[2]:.2f}"))
    return out


# ---------------------------------------------------------------------------
# equations: functional-equation residuals


def _discretized_half_eigen(cfg: TransferConfig):
    # the eigenfunction is singular at 0, so the refinement distance is
    # measured on the window the five-point identity actually touches
    lam64, d64 = leading_eigen(gkw_matrix(HALF_MINUS, 1.0, 64, cfg))
    lam128, d128 = leading_eigen(gkw_matrix(HALF_MINUS, 1.0, 128, cfg))
    window = (d128.nodes >= 0.1) & (d128.nodes <= 0.9)
    sup = float(np.max(np.abs(d64(d128.nodes[window]) - d128.values[window])))
    disc = max(abs(lam64 - 1.0), sup)
    return d64, disc


def suite_equations(cfg: TransferConfig = DEFAULT_CONFIG,
                    tol: Optional[float] = None) -> list[CheckResult]:
    base = 1e-12 if tol is None else tol
    out = []

    sine = lambda u: math.sin(2.0 * math.pi * u)
    worst = max(abs(residual_master(sine, 1, 1.0, Fraction(k, 16)))
                for k in range(3, 13))
    out.append(_check("master-sine", worst, base,
                      "sin(2 pi y) at the ten points k/16, k=3..12"))

    for label, _, which, k in DENSITY_PAIRS:
        psi = closed_form_density(which, K=k)
        worst = max(abs(residual_master(psi, 1, 1.0, y))
                    for y in (0.2, 0.4, 0.6, 0.8))
        out.append(_check(f"master-{label}", worst, base,
                          "closed-form density, s=1, unit eigenvalue"))

    psi = closed_form_density("gauss")
    worst = max(abs(residual_b(psi, 1, 1.0, y)) for y in (0.2, 0.5, 0.8))
    out.append(_check("lewis-classical-density", worst, base,
                      "companion three-term form on the classical density"))

    inv = lambda u: 1 / u
    worst = max(abs(residual_kernel_eta(inv, 1, y))
                for y in (Fraction(3, 7), Fraction(2, 9), Fraction(1, 2)))
    out.append(_check("kernel-eta-exact", worst, 0.0,
                      "eta(y)=1/y at rational points, exact arithmetic"))

    grid, disc = _discretized_half_eigen(cfg)

    def extended(u):
        u = float(u)
        if u <= 1.0:
            return float(grid(u))
        return apply_transfer(HALF_MINUS, 1.0, grid.oracle(), u, cfg).value

    worst = max(abs(residual_k_minus(extended, 1, 2, y))
                for y in (0.2, 0.4, 0.6, 0.8))
    out.append(_check("k-minus-discretized", worst, 10.0 * disc,
                      f"five-point identity on the grid eigenfunction; "
                      f"discretization error {disc:.2e}"))
    return out


# ---------------------------------------------------------------------------
# conjugacy: the digit-rewrite involution intertwines the members


def suite_conjugacy(n_samples: int = 500, depth: int = 30,
                    seed: int = 9) -> list[CheckResult]:
    rng = random.Random(seed)
    fail_round = fail_twine = skipped = 0
    min_settled = depth
    for _ in range(n_samples):
        digits = tuple(rng.randint(1, 8) for _ in range(depth))
        x = ContinuedFraction(digits, (), False)
        try:
            back = jimm(jimm(x))
            min_settled = min(min_settled, agrees_on_settled(back, x))
        except DomainError:
            fail_round += 1
        except TruncationExhausted:
            skipped += 1
        try:
            lhs = jimm(t_alpha_step(GAUSS_ALPHA, jimm(x)))
            rhs = t_alpha_step(FIBONACCI_ALPHA, x)
            min_settled = min(min_settled, agrees_on_settled(lhs, rhs))
        except DomainError:
            fail_twine += 1
        except TruncationExhausted:
            skipped += 1
    return [
        _check("conjugacy-involution", fail_round, 0,
               f"{n_samples} truncated depth-{depth} expansions"),
        _check("conjugacy-intertwine", fail_twine, 0,
               "rewrite-map-rewrite against the golden-parameter step"),
        _check("conjugacy-settled-floor", depth - min_settled, 12,
               f"weakest sample certified {min_settled} digits; "
               f"{skipped} undecidable comparisons"),
    ]


# ---------------------------------------------------------------------------
# qmark: the singular law shared by every member


def _sorted_rationals(count: int) -> list[Fraction]:
    pool = sorted({Fraction(p, q) for q in range(2, 33)
                   for p in range(1, q) if math.gcd(p, q) == 1})
    step = max(1, len(pool) // count)
    return pool[::step][:count]


def suite_qmark(cfg: TransferConfig = DEFAULT_CONFIG) -> list[CheckResult]:
    out = []
    want = {Fraction(1, 2): Fraction(1, 2), Fraction(1, 3): Fraction(1, 4),
            Fraction(2, 5): Fraction(3, 8)}
    bad = sum(minkowski_q(cf_from_rational(x)) != v for x, v in want.items())
    out.append(_check("qmark-dyadic-values", bad, 0,
                      "?(1/2)=1/2, ?(1/3)=1/4, ?(2/5)=3/8 exactly"))

    pts = _sorted_rationals(200)
    vals = [minkowski_q(cf_from_rational(x)) for x in pts]
    bad = sum(b <= a for a, b in zip(vals, vals[1:]))
    out.append(_check("qmark-monotone", bad, 0,
                      f"strictly increasing on {len(pts)} sorted rationals"))

    bad = sum(minkowski_q(cf_from_rational(x))
              + minkowski_q(cf_from_rational(1 - x)) != 1
              for x in pts[:50])
    out.append(_check("qmark-reflection", bad, 0,
                      "?(x) + ?(1-x) = 1 exactly on 50 rationals"))

    worst_margin = -math.inf
    worst_gap, worst_tail, worst_at = Fraction(0), Fraction(0), ""
    for label, alpha in (("classical", GAUSS_ALPHA),
                         ("golden", FIBONACCI_ALPHA),
                         ("half-minus", HALF_MINUS)):
        for y in (Fraction(1, 3), Fraction(2, 5), Fraction(5, 8), Fraction(1)):
            got = qmark_pushforward(alpha, y, cfg)
            gap = abs(got.value - minkowski_q(cf_from_rational(y)))
            if float(gap - got.tail) > worst_margin:
                worst_margin = float(gap - got.tail)
                worst_gap, worst_tail = gap, got.tail
                worst_at = f"{label}, y={y}"
    out.append(_check("qmark-pushforward", float(worst_gap), float(worst_tail),
                      f"three parameters, four points; worst at {worst_at}"))
    return out


# ---------------------------------------------------------------------------
# zeta: shifted power sums and the two-variable series


def suite_zeta(cfg: TransferConfig = DEFAULT_CONFIG,
               tol: Optional[float] = None) -> list[CheckResult]:
    base = 1e-9 if tol is None else tol
    out = []

    worst_gap, worst_bound = -math.inf, 0.0
    for z, a in ((1.5, 0.7), (2.0, 1.0), (3.0, 0.5), (2.5, 2.0)):
        lhs, rhs = hurwitz_zeta(z, a), hurwitz_zeta(z, a + 1.0)
        gap = abs(lhs.value - rhs.value - a ** (-z))
        bound = lhs.tail + rhs.tail + 32.0 * EPS * (abs(lhs.value)
                                                    + abs(rhs.value)
                                                    + a ** (-z))
        if gap - bound > worst_gap - worst_bound:
            worst_gap, worst_bound = gap, bound
    out.append(_check("hurwitz-shift", worst_gap, worst_bound,
                      "difference at consecutive shifts equals a^(-z); "
                      "bound = tails + rounding allowance"))

    a, b = fib_zeta(1.0, 400), fib_zeta(1.0, 800)
    out.append(_check("fib-zeta-doubling", abs(a.value - b.value), base,
                      f"value {a.value:.12f} stable under doubled truncation"))

    worst_gap, worst_bound = -math.inf, 0.0
    for s in np.linspace(1.0, 3.0, 5):
        for t in np.linspace(0.0, 2.0, 5):
            for x in np.linspace(0.5, 2.0, 5):
                r = fib_functional_eq_residual(float(s), float(t), float(x))
                if abs(r.value) - r.tail > worst_gap - worst_bound:
                    worst_gap, worst_bound = abs(r.value), r.tail
    out.append(_check("fib-functional-eq", worst_gap, worst_bound,
                      "125-point grid over s in [1,3], t in [0,2], "
                      "x in [1/2,2]"))

    one = FunctionOracle(lambda u: np.ones_like(np.asarray(u, dtype=float)),
                         vectorized=True, label="1")
    worst = -math.inf
    for kind, alpha in (("alpha1", ONE), ("half", HALF_MINUS)):
        for s in (1.0, 1.5):
            for y in (0.3, 0.7, 1.0):
                img = hurwitz_image(kind, s, y)
                branch = apply_transfer(alpha, s, one, y, cfg)
                worst = max(worst, abs(img.value - branch.value))
    out.append(_check("image-identities", worst, base,
                      "shifted-power closed forms against direct branch "
                      "sums, two parameters"))
    return out


# ---------------------------------------------------------------------------
# helper suites reused by the acceptance tests (not CLI-exposed)


def suite_matrix(cfg: TransferConfig = DEFAULT_CONFIG) -> list[CheckResult]:
    target = closed_form_density("gauss")
    lam_err, sup_err = {}, {}
    for n in (32, 64, 128, 256):
        lam, dens = leading_eigen(gkw_matrix(GAUSS_ALPHA, 1.0, n, cfg))
        lam_err[n] = abs(lam - 1.0)
        sup_err[n] = float(np.max(np.abs(dens.values - target(dens.nodes))))
    steps = ((64, 32), (128, 64), (256, 128))
    growths = (sum(lam_err[a] > lam_err[b] for a, b in steps)
               + sum(sup_err[a] > sup_err[b] for a, b in steps))
    return [
        _check("matrix-eigenvalue-128", lam_err[128], 1e-4,
               "leading eigenvalue against 1"),
        _check("matrix-density-128", sup_err[128], 5e-3,
               "sup distance to the closed-form density"),
        _check("matrix-monotone", growths, 0,
               "refinements that failed to shrink both error measures, "
               "n=32,64,128,256"),
    ]


def suite_fixed_points() -> list[CheckResult]:
    from .cf import periodic_value
    from .maps import fibonacci_fixed_point
    from .series import fibonacci

    bad_fix = bad_val = 0
    for k in range(1, 7):
        x = fibonacci_fixed_point(k)
        if t_alpha_step(FIBONACCI_ALPHA, x) != x:
            bad_fix += 1
        want = Fraction(fibonacci(k), fibonacci(k + 2))
        sq = periodic_value(x).square()
        if not (sq.is_rational and sq.as_fraction() == want):
            bad_val += 1
    return [
        _check("golden-fixed-points", bad_fix, 0,
               "period-k points are exactly fixed, k=1..6"),
        _check("golden-fixed-values", bad_val, 0,
               "squared values equal F_k/F_{k+2} in exact integers"),
    ]


SUITES: dict[str, Callable[..., list[CheckResult]]] = {
    "densities": suite_densities,
    "equations": suite_equations,
    "conjugacy": suite_conjugacy,
    "qmark": suite_qmark,
    "zeta": suite_zeta,
}
