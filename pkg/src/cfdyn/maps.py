"""A one-parameter family of interval maps acting on digit expansions.

Each member is indexed by the expansion of a parameter in [0, 1].  The
map compares the digit stream of its argument with the parameter's and
acts at the first disagreement:

* argument digit smaller (or the parameter's stream ends first): the
  matched prefix and the differing digit are stripped away,
* argument digit larger: the matched prefix is stripped and the
  differing digit is reduced by the parameter's digit,
* no disagreement (the argument equals the parameter, or its expansion
  is a prefix of it): the image is 0.

The parameter's digit stream is what matters, so the two expansions of
a rational parameter give genuinely different maps; both are useful.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from cfdyn.cf import (
    INF,
    ZERO,
    ContinuedFraction,
    cf_value,
    drop_digits,
    replace_first_digit,
    same_digits,
)
from cfdyn.errors import (
    ConvergenceError,
    DerivativeUndefined,
    DomainError,
    TruncationExhausted,
)

GAUSS_ALPHA = ZERO
FIBONACCI_ALPHA = ContinuedFraction((), (1,))


@dataclass(frozen=True)
class StepDecision:
    """Where and how the digit comparison resolved.

    For strip/reduce, (c, d) is the bottom row of the inverse-branch
    matrix: |T'(x)| equals (c*y + d)**2 with y the image of x."""

    case: str  # "strip" | "reduce" | "zero"
    k: int = 0
    digit_x: float = 0
    digit_alpha: float = 0
    c: int = 0
    d: int = 0


def _compare_cap(alpha: ContinuedFraction, x: ContinuedFraction) -> int:
    cap = len(alpha.head) + len(x.head) + 2
    if alpha.period or x.period:
        cap += 2 * math.lcm(max(len(alpha.period), 1), max(len(x.period), 1))
    return cap


def _decide(alpha: ContinuedFraction, x: ContinuedFraction) -> StepDecision:
    da, dx = alpha.digits(), x.digits()
    qm1, q = 0, 1  # q_{k-2}, q_{k-1} of the shared prefix, starting at k = 1
    cap = _compare_cap(alpha, x)
    for k in range(1, cap + 1):
        a = next(da, None)
        b = next(dx, None)
        if a is None or b is None:
            raise TruncationExhausted(f"digit {k} is not settled")
        if a == b:
            if not isinstance(a, int):  # both streams ended: equal rationals
                return StepDecision("zero", k)
            qm1, q = q, a * q + qm1
            continue
        if not isinstance(b, int):  # x ends first: prefix of the parameter
            return StepDecision("zero", k)
        if not isinstance(a, int) or b < a:
            return StepDecision("strip", k, b, a, q, q * b + qm1)
        return StepDecision("reduce", k, b, a, a * q + qm1, q)
    # streams agree beyond the decision horizon for eventually periodic
    # sequences, hence agree everywhere
    return StepDecision("zero", cap + 1)


def _image(d: StepDecision, x: ContinuedFraction) -> ContinuedFraction:
    if d.case == "zero":
        return ZERO
    if d.case == "strip":
        return drop_digits(x, d.k)
    return replace_first_digit(drop_digits(x, d.k - 1), d.digit_x - d.digit_alpha)


def t_alpha_step(alpha: ContinuedFraction, x: ContinuedFraction) -> ContinuedFraction:
    """One application of the map with the given parameter expansion."""
    return _image(_decide(alpha, x), x)


def log_deriv_at(alpha: ContinuedFraction, x: ContinuedFraction, depth: int = 45) -> float:
    """log|T'(x)|.

    Defined wherever the digit comparison resolves to a branch; raises
    DerivativeUndefined at 0, at the parameter itself, and at rationals
    whose expansion is a prefix of the parameter's."""
    d = _decide(alpha, x)
    if d.case == "zero":
        raise DerivativeUndefined("the comparison never resolves at this point")
    y, _ = cf_value(_image(d, x), depth)
    return 2.0 * math.log(d.c * y + d.d)


@dataclass
class OrbitRecord:
    states: list
    shadow: list
    log_deriv_sum: float
    deriv_steps: int
    hit_zero_at: int | None
    exhausted: bool

    @property
    def steps(self) -> int:
        return len(self.states) - 1


def orbit(alpha: ContinuedFraction, x: ContinuedFraction, n: int) -> OrbitRecord:
    """Iterate the map up to n times, accumulating log-derivatives.

    Stops early at 0 (which is fixed, with no derivative available
    there) or when a truncated argument runs out of settled digits."""
    if n < 0:
        raise DomainError("n must be >= 0")
    states = [x]
    shadow = [cf_value(x)[0]]
    total = 0.0
    dsteps = 0
    hit = None
    exhausted = False
    cur = x
    for step in range(n):
        try:
            d = _decide(alpha, cur)
        except TruncationExhausted:
            exhausted = True
            break
        if d.case == "zero":
            states.append(ZERO)
            shadow.append(0.0)
            hit = step
            break
        cur = _image(d, cur)
        y = cf_value(cur)[0]
        total += 2.0 * math.log(d.c * y + d.d)
        dsteps += 1
        states.append(cur)
        shadow.append(y)
        if cur == ZERO:
            hit = step
            break
    return OrbitRecord(states, shadow, total, dsteps, hit, exhausted)


def is_periodic_point(alpha: ContinuedFraction, x: ContinuedFraction, n: int = 1) -> bool:
    cur = x
    for _ in range(n):
        cur = t_alpha_step(alpha, cur)
    return same_digits(cur, x)


def fibonacci_fixed_point(k: int) -> ContinuedFraction:
    """The k-th fixed point of the golden-parameter map:
    [0; 1, (1 repeated k-1 times, then 2)]."""
    if k < 1:
        raise DomainError("k must be >= 1")
    return ContinuedFraction((1,), (1,) * (k - 1) + (2,))


# ---------------------------------------------------------------------------
# The digit-rewrite involution
# ---------------------------------------------------------------------------


class _RewriteEngine:
    """Token transducer behind the flip involution.

    Digit n emits the block (1 repeated n-2 times, then 2); the very
    first digit uses n-1 ones.  A block with a negative one-count merges
    into the pending token instead, growing it by one.  Tokens before
    the pending one are settled and never change afterwards."""

    def __init__(self) -> None:
        self.settled: list[int] = []
        self.pending: int | None = None
        self.first = True

    def feed(self, n: int) -> None:
        ones = n - 1 if self.first else n - 2
        self.first = False
        if ones < 0:
            # only reachable with a pending token: the first block never
            # has a negative one-count
            self.pending += 1
            return
        if self.pending is not None:
            self.settled.append(self.pending)
        self.settled.extend([1] * ones)
        self.pending = 2


def jimm(x: ContinuedFraction) -> ContinuedFraction:
    """The digit-rewrite involution.

    Rationals land on expansions with an all-ones tail; expansions with
    an all-ones tail land back on rationals (the pending token grows
    without bound and falls off the end); other periodic expansions stay
    periodic.  Truncated input propagates its settled prefix."""
    eng = _RewriteEngine()
    if x.is_truncated:
        for a in x.head:
            eng.feed(a)
        return ContinuedFraction(tuple(eng.settled), (), False)
    if x.is_rational:
        for a in x.head:
            eng.feed(a)
        tokens = eng.settled + ([eng.pending] if eng.pending is not None else [])
        return ContinuedFraction(tuple(tokens), (1,))
    if x.period == (1,):
        for a in x.head:
            eng.feed(a)
        return ContinuedFraction(tuple(eng.settled))
    # generic periodic input: after one full cycle the pending token at
    # the cycle boundary is already in its steady state, so the tokens
    # settled during the second cycle are one full output period
    for a in x.head:
        eng.feed(a)
    for a in x.period:
        eng.feed(a)
    s1, p1 = len(eng.settled), eng.pending
    for a in x.period:
        eng.feed(a)
    s2, p2 = len(eng.settled), eng.pending
    if p1 != p2:
        raise ConvergenceError("rewrite cycle failed to stabilise")
    return ContinuedFraction(tuple(eng.settled[:s1]), tuple(eng.settled[s1:s2]))
