"""Transfer operators attached to the map family.

Every parameter alpha induces a weighted sum over the inverse branches of
its map; this module enumerates those branches exactly (integer Mobius
data), applies the operator pointwise with a certified truncation tail,
discretizes it on a uniform grid for eigenpair extraction, and carries the
closed-form invariant densities plus residual checkers for the functional
equations those densities satisfy.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator, Optional

import numpy as np

from .cf import (
    INF,
    ContinuedFraction,
    MobiusMap,
    ONE,
    ZERO,
    cf_from_rational,
    cf_value,
    minkowski_q,
)
from .errors import ConvergenceError, DomainError, TruncationExhausted
from .maps import t_alpha_step
from .series import SeriesValue, hurwitz_sum, power_tail

LOG2 = math.log(2.0)

HALF_MINUS = ContinuedFraction((2,))
HALF_PLUS = ContinuedFraction((1, 1))


@dataclass(frozen=True)
class TransferConfig:
    """Summation budgets.  The analytic parameters (the weight exponent s
    and an eigenvalue guess) are explicit operation arguments instead, so
    one config can be shared across calls."""

    depth_max: int = 200
    inner_max: int = 200_000
    tail_tol: float = 1e-14

    def __post_init__(self):
        if self.depth_max < 1:
            raise DomainError("depth_max must be >= 1")
        if self.inner_max < 1:
            raise DomainError("inner_max must be >= 1")
        if not self.tail_tol > 0:
            raise DomainError("tail_tol must be positive")


DEFAULT_CONFIG = TransferConfig()


# ---------------------------------------------------------------------------
# branch enumeration


@dataclass(frozen=True)
class _Level:
    """Convergent data of the parameter at one comparison depth.

    p/q rows follow the usual recurrence; ``digit`` is the parameter's
    digit at this depth, infinite when its expansion has ended."""

    depth: int
    digit: float
    p: int    # numerator convergent, depth-1
    pp: int   # numerator convergent, depth-2
    q: int
    qq: int
    pk: Optional[int]  # depth-k convergents; None past a finite expansion
    qk: Optional[int]

    def interior_map(self, i: int) -> MobiusMap:
        return MobiusMap(self.p, self.p * i + self.pp, self.q, self.q * i + self.qq)

    def boundary_map(self) -> MobiusMap:
        return MobiusMap(self.pk, self.p, self.qk, self.q)

    @property
    def interior_count(self) -> float:
        return self.digit - 1  # inf stays inf


@dataclass(frozen=True)
class _LevelData:
    levels: tuple
    exhausted: bool   # truncated parameter ran out of digits
    complete: bool    # expansion ended in an infinite digit (rational)


_level_cache: dict = {}
_level_lock = threading.Lock()


def _levels(alpha: ContinuedFraction, depth_max: int) -> _LevelData:
    key = (alpha, depth_max)
    hit = _level_cache.get(key)
    if hit is not None:
        return hit
    with _level_lock:
        hit = _level_cache.get(key)
        if hit is not None:
            return hit
        levels = []
        exhausted = False
        complete = False
        p, pp = 0, 1
        q, qq = 1, 0
        digits = alpha.digits()
        for k in range(1, depth_max + 1):
            a = next(digits, None)
            if a is None:
                exhausted = True
                break
            if a == INF:
                levels.append(_Level(k, INF, p, pp, q, qq, None, None))
                complete = True
                break
            pk = a * p + pp
            qk = a * q + qq
            levels.append(_Level(k, a, p, pp, q, qq, pk, qk))
            p, pp = pk, p
            q, qq = qk, q
        data = _LevelData(tuple(levels), exhausted, complete)
        if len(_level_cache) > 256:
            _level_cache.clear()
        _level_cache[key] = data
        return data


@dataclass(frozen=True)
class Branch:
    """One inverse branch: its Mobius map, which side of the digit
    comparison it comes from, and the comparison depth."""

    map: MobiusMap
    kind: str               # "interior" or "boundary"
    depth: int
    inner: Optional[int] = None


@dataclass(frozen=True)
class BranchFamily:
    """Lazily enumerable branch list for one parameter, ordered by depth.

    Iteration yields interior branches (index i) before the depth's
    boundary branch, stops once a depth's largest possible weight falls
    below ``cfg.tail_tol``, and raises TruncationExhausted afterwards if a
    truncated parameter ended before that point."""

    alpha: ContinuedFraction
    cfg: TransferConfig = DEFAULT_CONFIG

    def __iter__(self) -> Iterator[Branch]:
        data = _levels(self.alpha, self.cfg.depth_max)
        for lv in data.levels:
            # largest weight at this depth is the boundary branch's
            # 1/q_{k-1}^2 (constant bottom-row term); past tolerance, stop.
            if lv.q ** -2 < self.cfg.tail_tol:
                return
            count = lv.interior_count
            cap = self.cfg.inner_max if count == INF else min(int(count), self.cfg.inner_max)
            for i in range(1, cap + 1):
                yield Branch(lv.interior_map(i), "interior", lv.depth, i)
            if lv.digit != INF:
                yield Branch(lv.boundary_map(), "boundary", lv.depth)
        if data.exhausted:
            raise TruncationExhausted(
                "parameter expansion has too few settled digits for the requested depth")

    @property
    def branches(self) -> Iterator[Branch]:
        return iter(self)


def enumerate_branches(alpha: ContinuedFraction,
                       cfg: TransferConfig = DEFAULT_CONFIG) -> BranchFamily:
    """Inverse branches of the map with the given parameter, lazily."""
    return BranchFamily(alpha, cfg)


# ---------------------------------------------------------------------------
# pointwise application


@dataclass
class FunctionOracle:
    """A real function the operator can sample.

    ``vectorized`` promises that ``fn`` accepts numpy arrays elementwise;
    anything else is called one float at a time."""

    fn: Callable
    vectorized: bool = False
    label: str = ""

    def __call__(self, y):
        return self.fn(y)


def _as_oracle(psi) -> FunctionOracle:
    if isinstance(psi, FunctionOracle):
        return psi
    if callable(psi):
        return FunctionOracle(psi)
    raise DomainError("psi must be callable")


def _eval_array(oracle: FunctionOracle, arr: np.ndarray) -> np.ndarray:
    if oracle.vectorized:
        return np.asarray(oracle.fn(arr), dtype=float)
    return np.array([float(oracle.fn(float(v))) for v in arr], dtype=float)


def _abs_at(oracle: FunctionOracle, u: float) -> float:
    try:
        return abs(float(oracle.fn(u)))
    except ZeroDivisionError:
        return math.inf


def _family_probe_sup(oracle: FunctionOracle, lv: _Level, y: float, m: int) -> float:
    """Sup of |psi| over the dropped part of an arithmetic branch family,
    estimated at a few probe indices plus the family's limit point.  The
    probed points bracket the tail image segment; for the monotone
    densities used here the estimate is an upper bound."""
    sup = 0.0
    for i in (m + 1, m + 2, m + 4, m + 8, m + 16):
        z = y + i
        sup = max(sup, _abs_at(oracle, (lv.p * z + lv.pp) / (lv.q * z + lv.qq)))
    sup = max(sup, _abs_at(oracle, lv.p / lv.q))
    return sup


def _family_tail_terms(oracle: FunctionOracle, lv: _Level, y: float,
                       m: int, count: float, s: float) -> tuple:
    """(correction, bound) for the family members beyond index m.

    The dropped images crowd against the family limit p/q, so psi(limit)
    times the dropped weight is added to the sum and only the spread of
    psi across that shrinking segment is left in the bound (doubled, to
    cover mild non-monotone variation).  When psi cannot be evaluated at
    the limit the whole dropped mass goes into the bound instead."""
    head = power_tail(lv.q, lv.q * y + lv.qq, 2.0 * s, m + 1)
    weight, werr = head.value, head.tail
    if count != INF:
        cut = power_tail(lv.q, lv.q * y + lv.qq, 2.0 * s, int(count) + 1)
        weight = max(weight - cut.value, 0.0)
        werr += cut.tail
    limit = lv.p / lv.q
    try:
        at_limit = float(oracle.fn(limit))
    except ZeroDivisionError:
        at_limit = math.nan
    if not math.isfinite(at_limit):
        return 0.0, (weight + werr) * _family_probe_sup(oracle, lv, y, m)
    spread = 0.0
    for i in (m + 1, m + 2, m + 4):
        z = y + i
        try:
            probe = float(oracle.fn((lv.p * z + lv.pp) / (lv.q * z + lv.qq)))
        except ZeroDivisionError:
            probe = math.inf
        spread = max(spread, abs(probe - at_limit))
        if not math.isfinite(spread):
            return 0.0, (weight + werr) * _family_probe_sup(oracle, lv, y, m)
    return weight * at_limit, 2.0 * weight * spread + werr * (abs(at_limit) + spread)


def apply_transfer(alpha: ContinuedFraction, s: float, psi, y: float,
                   cfg: TransferConfig = DEFAULT_CONFIG) -> SeriesValue:
    """Weighted branch sum  sum_b |b'(y)|^s psi(b(y))  with a certified
    truncation tail.

    y is normally in (0,1) but any positive y is accepted: every branch
    image stays inside (0,1), which is what lets grid eigenfunctions be
    extended past 1 through this very sum."""
    if s <= 0.5:
        raise DomainError("branch series diverges for s <= 1/2")
    if not y > 0:
        raise DomainError("evaluation point must be positive")
    oracle = _as_oracle(psi)
    data = _levels(alpha, cfg.depth_max)

    total = 0.0
    tail = 0.0
    sums = []  # per-depth absolute sums, for the geometric depth bound
    stopped_early = False
    for lv in data.levels:
        level_sum = 0.0
        count = lv.interior_count
        m = cfg.inner_max if count == INF else min(int(count), cfg.inner_max)
        if m >= 1:
            z = y + np.arange(1, m + 1, dtype=float)
            den = lv.q * z + lv.qq
            weights = den ** (-2.0 * s)
            values = _eval_array(oracle, (lv.p * z + lv.pp) / den)
            level_sum += float(np.sum(weights * values))
        if count > m:
            correction, bound = _family_tail_terms(oracle, lv, y, m, count, s)
            level_sum += correction
            tail += bound
        if lv.digit != INF:
            den0 = lv.qk * y + lv.q
            level_sum += den0 ** (-2.0 * s) * float(oracle.fn((lv.pk * y + lv.p) / den0))
        total += level_sum
        sums.append(abs(level_sum))
        if len(sums) >= 2 and sums[-1] < cfg.tail_tol * max(1.0, abs(total)) \
                and sums[-2] < cfg.tail_tol * max(1.0, abs(total)):
            stopped_early = True
            break

    if not data.complete and len(sums) >= 2 and sums[-1] > 0.0:
        # depth series truncated: bound the rest geometrically
        ratio = sums[-1] / sums[-2] if sums[-2] > 0 else 0.0
        if not stopped_early and ratio >= 0.9:
            raise ConvergenceError(
                f"depth sums are not contracting (ratio {ratio:.3f})", last=total)
        ratio = min(ratio, 0.9)
        tail += sums[-1] * ratio / (1.0 - ratio)
    if data.exhausted and not stopped_early:
        last_q = data.levels[-1].q if data.levels else 1
        if last_q ** (-2.0 * s) > cfg.tail_tol:
            raise TruncationExhausted(
                "parameter expansion has too few settled digits for this tolerance")
    return SeriesValue(total, tail)


def koopman(alpha: ContinuedFraction, psi, x: ContinuedFraction) -> float:
    """Composition with the map: psi evaluated at the image of x."""
    oracle = _as_oracle(psi)
    img = t_alpha_step(alpha, x)
    return float(oracle.fn(cf_value(img)[0]))


# ---------------------------------------------------------------------------
# grid discretization


def gkw_matrix(alpha: ContinuedFraction, s: float, n: int,
               cfg: TransferConfig = DEFAULT_CONFIG) -> np.ndarray:
    """Collocation matrix of the operator on piecewise-linear hats over
    the uniform grid j/n: row j expresses (L psi)(y_j), with each branch
    image's weight split linearly between its two neighbouring nodes."""
    if n < 16:
        raise DomainError("grid size must be >= 16")
    if s <= 0.5:
        raise DomainError("branch series diverges for s <= 1/2")
    data = _levels(alpha, cfg.depth_max)
    nodes = n + 1
    ys = np.linspace(0.0, 1.0, nodes)
    rows = np.arange(nodes)
    mat = np.zeros((nodes, nodes))

    def scatter_all_rows(weights: np.ndarray, images: np.ndarray) -> None:
        t = images * n
        idx = np.minimum(t.astype(int), n - 1)
        frac = t - idx
        np.add.at(mat, (rows, idx), weights * (1.0 - frac))
        np.add.at(mat, (rows, idx + 1), weights * frac)

    for lv in data.levels:
        if lv.q ** (-2.0 * s) < cfg.tail_tol:
            break
        count = lv.interior_count
        capped = cfg.inner_max if count == INF else min(int(count), cfg.inner_max)
        if count == INF:
            # one row at a time, vectorized over the family index
            i = np.arange(1, capped + 1, dtype=float)
            for j in range(nodes):
                z = ys[j] + i
                den = lv.q * z + lv.qq
                w = den ** (-2.0 * s)
                t = (lv.p * z + lv.pp) / den * n
                idx = np.minimum(t.astype(int), n - 1)
                frac = t - idx
                mat[j] += np.bincount(idx, weights=w * (1.0 - frac), minlength=nodes)
                mat[j] += np.bincount(idx + 1, weights=w * frac, minlength=nodes)
        else:
            for i in range(1, capped + 1):
                z = ys + i
                den = lv.q * z + lv.qq
                scatter_all_rows(den ** (-2.0 * s), (lv.p * z + lv.pp) / den)
        if count > capped:
            # members past the cap sit within O(1/inner_max) of the family
            # limit p/q; lump their total weight there, which keeps the
            # matrix a faithful quadrature instead of silently losing mass
            dropped = np.array([power_tail(lv.q, lv.q * yj + lv.qq, 2.0 * s,
                                           capped + 1).value for yj in ys])
            if count != INF:
                dropped -= np.array([power_tail(lv.q, lv.q * yj + lv.qq, 2.0 * s,
                                                int(count) + 1).value for yj in ys])
                dropped = np.maximum(dropped, 0.0)
            scatter_all_rows(dropped, np.full(nodes, lv.p / lv.q))
        if lv.digit != INF:
            den = lv.qk * ys + lv.q
            scatter_all_rows(den ** (-2.0 * s), (lv.pk * ys + lv.p) / den)
    return mat


@dataclass(eq=False)
class GridDensity:
    """Piecewise-linear function on the uniform grid over [0, 1]."""

    n: int
    values: np.ndarray

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float)
        if self.values.shape != (self.n + 1,):
            raise DomainError("need n+1 samples for a size-n grid")
        if not np.all(np.isfinite(self.values)):
            raise DomainError("grid samples must be finite")

    @property
    def nodes(self) -> np.ndarray:
        return np.linspace(0.0, 1.0, self.n + 1)

    def __call__(self, y):
        return np.interp(y, self.nodes, self.values)

    def oracle(self) -> FunctionOracle:
        return FunctionOracle(self.__call__, vectorized=True, label="grid")

    def to_csv(self, path) -> None:
        import csv

        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["y", "value"])
            for y, v in zip(self.nodes, self.values):
                writer.writerow([f"{y:.17g}", f"{v:.17g}"])


def leading_eigen(m: np.ndarray, tol: float = 1e-12,
                  max_iter: int = 5000) -> tuple:
    """Leading eigenpair by power iteration with L1 normalization.

    Stops when successive eigenvalue estimates differ by less than tol;
    the eigenvector is renormalized to unit trapezoid mass before return."""
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DomainError("need a square matrix")
    if np.any(m < 0):
        raise DomainError("matrix must be entrywise nonnegative")
    if max_iter < 1:
        raise ConvergenceError("no iterations allowed", last=None)
    size = m.shape[0]
    v = np.full(size, 1.0 / size)
    lam_prev = None
    lam = 0.0
    for _ in range(max_iter):
        w = m @ v
        lam = float(np.sum(w))  # v has unit L1 mass and everything is >= 0
        if lam == 0.0:
            raise ConvergenceError("operator annihilated the iterate", last=None)
        v = w / lam
        if lam_prev is not None and abs(lam - lam_prev) < tol:
            n = size - 1
            mass = float(np.trapezoid(v, dx=1.0 / n))
            return lam, GridDensity(n, v / mass)
        lam_prev = lam
    raise ConvergenceError(
        f"power iteration did not settle in {max_iter} steps", last=(lam, v))


# ---------------------------------------------------------------------------
# closed-form invariant densities


def _k_series_fn(K: int, m_terms: int) -> Callable:
    # psi_K(y) = sum_{i>=0} 1/((1+Kiy)(1+(Ki+1)y)) - 1/((y+Ki+K)(y+Ki+K+1)),
    # capped at m_terms with Euler-Maclaurin closures of both tails.  The
    # closures are corrections, not bounds: their own error is smaller than
    # the next Bernoulli term, far below 1e-12 at the default cap.
    def fn(y):
        arr = np.atleast_1d(np.asarray(y, dtype=float))
        out = np.empty_like(arr)
        ki = np.arange(m_terms, dtype=float) * K
        for lo in range(0, arr.size, 256):
            seg = arr[lo:lo + 256]
            v = 1.0 + ki[None, :] * seg[:, None]
            ssum = np.sum(1.0 / (v * (v + seg[:, None])), axis=1)
            u = seg[:, None] + ki[None, :] + K
            ssum -= np.sum(1.0 / (u * (u + 1.0)), axis=1)
            vm = 1.0 + (K * m_terms) * seg
            ssum += np.log1p(seg / vm) / (K * seg * seg)
            ssum += 0.5 / (vm * (vm + seg))
            ssum += K * seg * (2.0 * vm + seg) / (12.0 * (vm * (vm + seg)) ** 2)
            um = seg + K * m_terms + K
            ssum -= np.log1p(1.0 / um) / K
            ssum -= 0.5 / (um * (um + 1.0))
            ssum -= K * (2.0 * um + 1.0) / (12.0 * (um * (um + 1.0)) ** 2)
            out[lo:lo + 256] = ssum
        return out if np.ndim(y) else float(out[0])

    return fn


def closed_form_density(which: str, K: Optional[int] = None,
                        m_terms: int = 20_000) -> FunctionOracle:
    """The known invariant densities, as vectorized oracles on (0, inf).

    kinds: "gauss" 1/((1+y) log 2); "alpha_one" 1/y; "fibonacci"
    1/(y(y+1)); "k_series" the series density of the constant-digit-K
    parameter (K=1 collapses to the fibonacci one, numerically)."""
    kind = which.strip().lower()
    if kind == "gauss":
        return FunctionOracle(lambda y: 1.0 / ((1.0 + y) * LOG2), True, "gauss")
    if kind == "alpha_one":
        return FunctionOracle(lambda y: 1.0 / y, True, "alpha_one")
    if kind == "fibonacci":
        return FunctionOracle(lambda y: 1.0 / (y * (y + 1.0)), True, "fibonacci")
    if kind == "k_series":
        if K is None or K < 1:
            raise DomainError("k_series needs K >= 1")
        return FunctionOracle(_k_series_fn(K, m_terms), True, f"k_series_{K}")
    raise DomainError(f"unknown density kind {which!r}")


# ---------------------------------------------------------------------------
# residual checkers
#
# All checkers evaluate their combination verbatim in the arithmetic of the
# inputs: handing them Fraction points, integer s and an exact psi yields
# exact rational residuals.


def _exactify(y):
    return Fraction(y) if isinstance(y, int) else y


def residual_master(psi, s, lam, y):
    """The master equation shared by eigenfunctions of every member's
    operator; identically zero for 1-periodic odd functions."""
    f = _as_oracle(psi).fn
    y = _exactify(y)
    return (f(y) - f(1 + y)
            + y ** (-2 * s) * (f(1 / y) - f(1 + 1 / y))
            - (1 + y) ** (-2 * s) * (f(y / (1 + y)) + f(1 / (1 + y))) / lam)


def residual_lewis(psi, s, y):
    """Three-term period-function equation."""
    f = _as_oracle(psi).fn
    y = _exactify(y)
    return f(y) - f(1 + y) - (1 + y) ** (-2 * s) * f(y / (1 + y))


def residual_b(psi, s, lam, y):
    """Companion three-term equation; at lam=1 it is the fixed-point
    equation of the classical operator's analytic eigenfunctions."""
    f = _as_oracle(psi).fn
    y = _exactify(y)
    return f(y) - f(1 + y) - (1 + y) ** (-2 * s) * f(1 / (1 + y)) / lam


def residual_fib_threeterm(psi, s, lam, y):
    """Three-term equation tied to the golden-parameter member."""
    f = _as_oracle(psi).fn
    y = _exactify(y)
    return (f(y) - y ** (-2 * s) * f((y + 1) / y)
            - (y + 1) ** (-2 * s) * f(y / (y + 1)) / lam)


def residual_k_minus(psi, s, K, y):
    """Five-point identity satisfied by fixed functions of the member at
    parameter 1/K with the short expansion, K >= 2."""
    if K < 2:
        raise DomainError("the identity needs an integer K >= 2")
    f = _as_oracle(psi).fn
    y = _exactify(y)
    return f(y + 1) - (f(y)
                       - (1 + y) ** (-2 * s) * f(1 / (1 + y))
                       + (K + y) ** (-2 * s) * f(1 / (K + y))
                       - (K * y + 1) ** (-2 * s) * f(y / (K * y + 1)))


def residual_kernel_eta(eta, s, y):
    """Kernel equation with the exact solution eta(y) = 1/y at s = 1."""
    f = _as_oracle(eta).fn
    y = _exactify(y)
    return y ** (-2 * s) * f(1 / y) - f(y + 1) - y ** (-2 * s) * f(1 + 1 / y)


# ---------------------------------------------------------------------------
# cross-member identities


def transfer_equivalences(kind: str, psi, s: float, y: float,
                          cfg: TransferConfig = DEFAULT_CONFIG):
    """Both sides of a member-to-member conjugation identity.

    "alpha1-to-gauss": the parameter-one operator on psi against the
    classical operator on psi(1-.);  "half-plus-to-minus": the two
    expansions of one half against each other, again via psi(1-.).
    Returns (lhs, rhs) as SeriesValue pairs so the caller can compare
    within the two reported tails."""
    oracle = _as_oracle(psi)
    flipped = FunctionOracle(lambda u: oracle.fn(1 - u), oracle.vectorized,
                             oracle.label + "~flip")
    name = kind.strip().lower().replace("_", "-")
    if name == "alpha1-to-gauss":
        lhs = apply_transfer(ONE, s, oracle, y, cfg)
        rhs = apply_transfer(ZERO, s, flipped, y, cfg)
    elif name == "half-plus-to-minus":
        lhs = apply_transfer(HALF_PLUS, s, oracle, y, cfg)
        rhs = apply_transfer(HALF_MINUS, s, flipped, y, cfg)
    else:
        raise DomainError(f"unknown equivalence kind {kind!r}")
    return lhs, rhs


def hurwitz_image(kind: str, s: float, y: float,
                  n_terms: int = 200_000) -> SeriesValue:
    """Closed shifted-power-sum form of the operator applied to the
    constant function 1, for the two rational parameters that admit one."""
    if s <= 0.5:
        raise DomainError("the image series diverges for s <= 1/2")
    if not y > 0:
        raise DomainError("evaluation point must be positive")
    name = kind.strip().lower()
    if name == "alpha1":
        return hurwitz_sum(2.0 * s, 1.0 + y, n_terms)
    if name == "half":
        h1 = hurwitz_sum(2.0 * s, 2.0 * y + 1.0, n_terms)
        h2 = hurwitz_sum(2.0 * s, y + 1.0, n_terms)
        scale = 2.0 ** (-2.0 * s)
        return SeriesValue((1.0 + y) ** (-2.0 * s) + h1.value - scale * h2.value,
                           h1.tail + scale * h2.tail)
    raise DomainError(f"unknown image kind {kind!r}")


# ---------------------------------------------------------------------------
# pushforward of the singular law


def qmark_pushforward(alpha: ContinuedFraction, y,
                      cfg: TransferConfig = DEFAULT_CONFIG) -> SeriesValue:
    """Distribution function of the branch-image law at y, accumulated as
    exact question-mark masses of branch image intervals.

    Returns exact Fractions: the partial sum and the mass of the branches
    not enumerated (the two add up to the exact law when y = 1)."""
    yq = Fraction(y)
    if not 0 <= yq <= 1:
        raise DomainError("y must lie in [0, 1]")
    data = _levels(alpha, cfg.depth_max)

    def qmark_of(fr: Fraction) -> Fraction:
        return minkowski_q(cf_from_rational(fr))

    inner_cap = min(cfg.inner_max, 64)
    value = Fraction(0)
    covered = Fraction(0)
    done = False
    for lv in data.levels[:64]:
        count = lv.interior_count
        cap = inner_cap if count == INF else min(int(count), inner_cap)
        members = [lv.interior_map(i) for i in range(1, cap + 1)]
        if lv.digit != INF:
            members.append(lv.boundary_map())
        for mb in members:
            at0 = qmark_of(Fraction(mb.b, mb.d))
            at1 = qmark_of(Fraction(mb.a + mb.b, mb.c + mb.d))
            aty = qmark_of(mb.apply(yq))
            value += abs(aty - at0)
            covered += abs(at1 - at0)
        if 1 - covered < Fraction(1, 10 ** 15):
            done = True
            break
    if data.exhausted and not done and float(1 - covered) > cfg.tail_tol:
        raise TruncationExhausted(
            "parameter expansion has too few settled digits to cover the law")
    return SeriesValue(value, 1 - covered)
