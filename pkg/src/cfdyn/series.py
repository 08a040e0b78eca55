"""Shared numeric helpers: exact Fibonacci/Pell tables, Euler-Maclaurin
tails for power sums, and the (value, tail) pair that every series
evaluator in this package returns."""

from __future__ import annotations

import threading
from typing import NamedTuple

import numpy as np

from .errors import DomainError


class SeriesValue(NamedTuple):
    """A computed sum together with a bound on the truncation error.

    Unpacks like the plain ``(value, tail)`` pair."""

    value: float
    tail: float


_table_lock = threading.Lock()
_FIB = [1, 0]   # F_{-1}, F_0
_PELL = [1, 0]  # P_{-1}, P_0


def fibonacci(k: int) -> int:
    """F_k with the convention F_{-1} = 1, F_0 = 0."""
    if k < -1:
        raise DomainError("Fibonacci index must be >= -1")
    if len(_FIB) <= k + 1:
        with _table_lock:
            while len(_FIB) <= k + 1:
                _FIB.append(_FIB[-1] + _FIB[-2])
    return _FIB[k + 1]


def pell(k: int) -> int:
    """P_k with P_{-1} = 1, P_0 = 0 (so P_1 = 1, P_2 = 2, P_3 = 5, ...)."""
    if k < -1:
        raise DomainError("Pell index must be >= -1")
    if len(_PELL) <= k + 1:
        with _table_lock:
            while len(_PELL) <= k + 1:
                _PELL.append(2 * _PELL[-1] + _PELL[-2])
    return _PELL[k + 1]


def power_tail(a: float, b: float, p: float, start: int) -> SeriesValue:
    """Euler-Maclaurin estimate of sum_{i >= start} (a*i + b)^(-p).

    Requires a > 0, p > 1 and a positive first summand.  The summand is
    completely monotone in i, so the magnitude of the second-order
    correction also bounds the remainder; it is returned as the tail.
    """
    if a <= 0 or p <= 1:
        raise DomainError("need a > 0 and p > 1 for a convergent power tail")
    u = a * start + b
    if u <= 0:
        raise DomainError("first summand must be positive")
    integral = u ** (1.0 - p) / (a * (p - 1.0))
    half = 0.5 * u ** -p
    corr = a * p * u ** (-p - 1.0) / 12.0
    return SeriesValue(integral + half + corr, corr)


def hurwitz_sum(z: float, a: float, n_terms: int = 100_000) -> SeriesValue:
    """sum_{k >= 0} (k + a)^(-z): direct summation of n_terms plus the
    integral correction (n + a)^(1-z)/(z-1).

    The correction leaves an error below the first omitted term, which
    is reported as the tail."""
    if z <= 1:
        raise DomainError("power sum diverges for exponent <= 1")
    if a <= 0:
        raise DomainError("shift must be positive")
    if n_terms < 1:
        raise DomainError("need at least one explicit term")
    k = np.arange(n_terms, dtype=float)
    partial = float(np.sum((k + a) ** -z))
    u = n_terms + a
    return SeriesValue(partial + u ** (1.0 - z) / (z - 1.0), u ** -z)
