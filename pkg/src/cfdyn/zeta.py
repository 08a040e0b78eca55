"""Zeta-type series attached to the map family.

One argument convention is used throughout: exponent first, shift second,
hurwitz_zeta(z, a) = sum_{n>=0} (n+a)^(-z).  Branch-weighted sums are
expressed through the transfer machinery so their truncation tails come
from a single code path.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass
from typing import Optional

from .cf import ContinuedFraction
from .errors import ConvergenceError, DomainError
from .series import SeriesValue, fibonacci, hurwitz_sum
from .transfer import DEFAULT_CONFIG, FunctionOracle, TransferConfig, apply_transfer

PHI = (1.0 + math.sqrt(5.0)) / 2.0


@dataclass(frozen=True)
class ZetaParams:
    """Validated parameter bundle for the branch-sum zeta."""

    s: float
    t: float = 0.0
    y: float = 1.0
    truncation: int = 400
    alpha: Optional[ContinuedFraction] = None

    def __post_init__(self):
        if not self.y > 0:
            raise DomainError("y must be positive")
        if self.truncation < 1:
            raise DomainError("truncation must be >= 1")

    @property
    def branch_summable(self) -> bool:
        # harmonic-type branch families need 2s+t > 1
        return 2.0 * self.s + self.t > 1.0


def hurwitz_zeta(z: float, a: float, n_terms: int = 100_000) -> SeriesValue:
    """sum_{n>=0} (n+a)^(-z) by direct summation plus the integral tail
    correction; the reported tail is the first omitted term."""
    return hurwitz_sum(z, a, n_terms)


def zeta_alpha(alpha: ContinuedFraction, s: float, t: float, y: float,
               cfg: TransferConfig = DEFAULT_CONFIG) -> SeriesValue:
    """Branch sum  sum_b |b'(y)|^s b(y)^t  over the inverse branches of
    the parameter's map: the transfer operator applied to u^t."""
    if not 0 < y <= 1:
        raise DomainError("y must lie in (0, 1]")
    if 2.0 * s + t <= 1.0:
        raise DomainError("branch sum diverges unless 2s+t > 1")

    def power(u):
        return u ** t

    return apply_transfer(alpha, s, FunctionOracle(power, True, f"u^{t}"), y, cfg)


def _fib_term_log(k: int, y: float) -> tuple:
    """(log numerator-base, log denominator-base) of the k-th summand,
    stable for big-integer Fibonacci values."""
    f_km1 = fibonacci(k - 1)
    f_k = fibonacci(k)
    f_kp1 = fibonacci(k + 1)
    if k == 0:
        ln_num = 0.0  # F_0 y + F_{-1} = 1
    else:
        ln_num = math.log(f_k) + math.log(y + f_km1 / f_k)
    ln_den = math.log(f_kp1) + math.log(y + f_k / f_kp1)
    return ln_num, ln_den


def fib_hurwitz(s: float, t: float, y: float, n_terms: int = 400) -> SeriesValue:
    """sum_{k>=0} (F_k y + F_{k-1})^t / (F_{k+1} y + F_k)^(2s+t), with
    F_{-1} = 1.  Terms decay geometrically with ratio -> phi^(-2s); the
    reported tail is that geometric bound, inflated to stay above the
    pre-asymptotic oscillation."""
    if s <= 0:
        raise DomainError("terms only decay for s > 0")
    if not y > 0:
        raise DomainError("y must be positive")
    if n_terms < 2:
        raise DomainError("need at least two terms")
    total = 0.0
    prev_term = None
    term = 0.0
    for k in range(n_terms):
        ln_num, ln_den = _fib_term_log(k, y)
        prev_term, term = term, math.exp(t * ln_num - (2.0 * s + t) * ln_den)
        total += term
        if term < 1e-18 * total:
            break
    if term == 0.0:
        return SeriesValue(total, 0.0)
    measured = term / prev_term if prev_term else 0.0
    ratio = 1.1 * max(measured, PHI ** (-2.0 * s))
    if ratio >= 0.97:
        if term < 1e-15 * total:
            ratio = 0.97
        else:
            raise ConvergenceError(
                f"cannot certify the geometric tail (ratio {ratio:.3f})",
                last=total)
    return SeriesValue(total, term * ratio / (1.0 - ratio))


def fib_zeta(s: float, n_terms: int = 400) -> SeriesValue:
    """sum_{k>=1} F_k^(-s), through the two-variable series at y=1: that
    series starts at F_2, so the k=1 term contributes the extra 1."""
    inner = fib_hurwitz(s / 2.0, 0.0, 1.0, n_terms)
    return SeriesValue(inner.value + 1.0, inner.tail)


def fib_functional_eq_residual(s: float, t: float, x: float,
                               n_terms: int = 400) -> SeriesValue:
    """Both sides of the shift identity of the two-variable series,
    computed by independent summation:

        Z(s, t, 1 + 1/x) = x^(2s) Z(s, t, x) - x^(-t)

    (each summand at 1+1/x equals x^(2s) times the next summand at x, and
    the k=0 summand accounts for the x^(-t)).  Returns lhs - rhs with the
    combined truncation tail plus a rounding allowance: the truncation
    tails alone sit orders of magnitude below float accumulation noise,
    so the honest uncertainty is dominated by the magnitudes summed."""
    if x <= 0:
        raise DomainError("x must be positive")
    lhs = fib_hurwitz(s, t, 1.0 + 1.0 / x, n_terms)
    rhs = fib_hurwitz(s, t, x, n_terms)
    scale = x ** (2.0 * s)
    shift = x ** (-t)
    residual = lhs.value - (scale * rhs.value - shift)
    fuzz = 64.0 * sys.float_info.epsilon * (abs(lhs.value)
                                            + scale * abs(rhs.value) + shift)
    return SeriesValue(residual, lhs.tail + scale * rhs.tail + fuzz)
