"""Interval-map family: digit mechanics against closed-form oracles.

The parameter-0 member is the classical shift 1/x - floor(1/x), which
gives an exact rational oracle.  The complement symmetry and the flip
involution give digit-exact cross-checks for every other member tested.
"""

import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from cfdyn.cf import (
    ONE,
    ZERO,
    ContinuedFraction,
    cf_complement,
    cf_from_rational,
    cf_to_rational,
    cf_value,
)
from cfdyn.errors import DerivativeUndefined, DomainError, TruncationExhausted
from cfdyn.maps import (
    FIBONACCI_ALPHA,
    GAUSS_ALPHA,
    fibonacci_fixed_point,
    is_periodic_point,
    jimm,
    log_deriv_at,
    orbit,
    t_alpha_step,
)

CF = ContinuedFraction
GOLDEN = FIBONACCI_ALPHA
SQRT2M1 = CF((), (2,))
ALPHA_ONE = ONE

fractions_01 = st.fractions(min_value=0, max_value=1, max_denominator=300)
variants = st.sampled_from(["minus", "plus"])
periodics = st.builds(
    lambda h, p: CF(tuple(h), tuple(p)),
    st.lists(st.integers(1, 5), min_size=0, max_size=3),
    st.lists(st.integers(1, 5), min_size=1, max_size=4),
)


def gauss_map(fr: Fraction) -> Fraction:
    inv = 1 / fr
    return inv - math.floor(inv)


class TestGaussMember:
    def test_shift_golden(self):
        assert t_alpha_step(GAUSS_ALPHA, cf_from_rational(2, 5)).head == (2,)
        assert t_alpha_step(GAUSS_ALPHA, GOLDEN) == GOLDEN
        assert t_alpha_step(GAUSS_ALPHA, ZERO) == ZERO
        assert t_alpha_step(GAUSS_ALPHA, ONE) == ZERO

    @given(fractions_01, variants)
    def test_matches_classical_formula(self, fr, variant):
        if fr == 0:
            return
        x = cf_from_rational(fr, variant=variant)
        image = t_alpha_step(GAUSS_ALPHA, x)
        assert cf_to_rational(image) == gauss_map(fr)

    @given(periodics)
    def test_periodic_is_digit_shift(self, x):
        image = t_alpha_step(GAUSS_ALPHA, x)
        stream = x.digits()
        next(stream)
        expected = [next(stream) for _ in range(12)]
        got = image.digits()
        assert [next(got) for _ in range(12)] == expected


class TestParameterOneMember:
    def test_reduce_branch(self):
        # [0;3] -> [0;2]: the first digit shrinks by the parameter's 1
        assert t_alpha_step(ALPHA_ONE, cf_from_rational(1, 3)).head == (2,)

    def test_strip_branch(self):
        # first digits agree, the parameter then ends: two digits drop
        assert t_alpha_step(ALPHA_ONE, CF((1, 5, 2))).head == (2,)

    @given(fractions_01)
    def test_against_piecewise_formula(self, fr):
        if fr in (0, 1):
            return
        x = cf_from_rational(fr)
        image = cf_to_rational(t_alpha_step(ALPHA_ONE, x))
        if fr <= Fraction(1, 2):
            assert image == fr / (1 - fr)
        else:
            assert image == gauss_map(gauss_map(fr))

    def test_fixed_point_of_comparison(self):
        assert t_alpha_step(ALPHA_ONE, ONE) == ZERO


class TestRationalParameterVariants:
    def test_the_two_half_maps_differ(self):
        minus = cf_from_rational(1, 2)            # [0;2]
        plus = cf_from_rational(1, 2, "plus")     # [0;1,1]
        x = cf_from_rational(1, 3)                # [0;3]
        assert t_alpha_step(minus, x) == ONE
        assert t_alpha_step(plus, x).head == (2,)


class TestComplementSymmetry:
    """T with parameter (1 - alpha) at (1 - x) equals T_alpha at x, with
    both complements taken by the raw digit rule."""

    @given(fractions_01, variants, fractions_01, variants)
    def test_rational_parameters(self, fa, va, fx, vx):
        alpha = cf_from_rational(fa, variant=va)
        x = cf_from_rational(fx, variant=vx)
        lhs = t_alpha_step(
            cf_complement(alpha, canonical=False),
            cf_complement(x, canonical=False),
        )
        assert lhs == t_alpha_step(alpha, x)

    @given(periodics, fractions_01, variants)
    def test_periodic_parameters(self, alpha, fx, vx):
        x = cf_from_rational(fx, variant=vx)
        lhs = t_alpha_step(cf_complement(alpha), cf_complement(x, canonical=False))
        assert lhs == t_alpha_step(alpha, x)

    @given(periodics, periodics)
    def test_periodic_both(self, alpha, x):
        lhs = t_alpha_step(cf_complement(alpha), cf_complement(x))
        assert lhs == t_alpha_step(alpha, x)


class TestFibonacciMember:
    def test_fixed_points_exact(self):
        for k in range(1, 7):
            x = fibonacci_fixed_point(k)
            assert t_alpha_step(FIBONACCI_ALPHA, x) == x
            assert is_periodic_point(FIBONACCI_ALPHA, x, 1)

    def test_half_goes_to_one(self):
        assert t_alpha_step(FIBONACCI_ALPHA, cf_from_rational(1, 2)) == ONE

    def test_prefix_rationals_go_to_zero(self):
        assert t_alpha_step(FIBONACCI_ALPHA, ONE) == ZERO
        assert t_alpha_step(FIBONACCI_ALPHA, CF((1, 1, 1))) == ZERO
        assert t_alpha_step(FIBONACCI_ALPHA, GOLDEN) == ZERO


class TestDerivative:
    def test_gauss_at_half(self):
        assert log_deriv_at(GAUSS_ALPHA, cf_from_rational(1, 2)) == pytest.approx(
            math.log(4), abs=1e-12
        )

    @given(fractions_01)
    def test_gauss_matches_inverse_square(self, fr):
        if fr == 0:
            return
        x = cf_from_rational(fr)
        assert log_deriv_at(GAUSS_ALPHA, x) == pytest.approx(
            -2 * math.log(float(fr)), abs=1e-9
        )

    def test_fibonacci_at_half(self):
        # the golden-parameter map sends 1/2 to 1 with |T'| = 4
        assert log_deriv_at(FIBONACCI_ALPHA, cf_from_rational(1, 2)) == pytest.approx(
            math.log(4), abs=1e-12
        )

    def test_undefined_points(self):
        with pytest.raises(DerivativeUndefined):
            log_deriv_at(GAUSS_ALPHA, ZERO)
        with pytest.raises(DerivativeUndefined):
            log_deriv_at(FIBONACCI_ALPHA, GOLDEN)
        with pytest.raises(DerivativeUndefined):
            log_deriv_at(FIBONACCI_ALPHA, ONE)

    def test_indifferent_fixed_point_of_golden_member(self):
        # near 0 the golden-parameter map has derivative approaching 1
        x = cf_from_rational(1, 500)
        assert log_deriv_at(FIBONACCI_ALPHA, x) < 0.01


class TestOrbit:
    def test_golden_member_traps_half(self):
        rec = orbit(FIBONACCI_ALPHA, cf_from_rational(1, 2), 10)
        assert [s.head for s in rec.states] == [(2,), (1,), ()]
        assert rec.hit_zero_at == 1
        assert rec.deriv_steps == 1
        assert rec.log_deriv_sum == pytest.approx(math.log(4), abs=1e-12)

    def test_gauss_on_quadratic_fixed_point(self):
        rec = orbit(GAUSS_ALPHA, SQRT2M1, 5)
        assert all(s == SQRT2M1 for s in rec.states)
        assert rec.hit_zero_at is None
        assert rec.deriv_steps == 5
        assert rec.log_deriv_sum == pytest.approx(
            10 * math.log(1 + math.sqrt(2)), rel=1e-9
        )

    def test_truncated_input_stops(self):
        rec = orbit(GAUSS_ALPHA, CF((4, 4), exact=False), 10)
        assert rec.exhausted and rec.steps == 2

    def test_shadow_tracks_values(self):
        rec = orbit(GAUSS_ALPHA, cf_from_rational(5, 13), 10)
        assert rec.shadow[0] == pytest.approx(5 / 13)
        assert rec.states[-1] == ZERO


class TestJimm:
    def test_goldens(self):
        assert jimm(ZERO) == GOLDEN
        assert jimm(GOLDEN) == ZERO
        assert jimm(ONE) == CF((2,), (1,))
        assert jimm(cf_from_rational(1, 2)) == CF((1, 2), (1,))
        assert jimm(SQRT2M1) == CF((1,), (2,))
        assert jimm(CF((1,), (1, 2))) == CF((), (3,))

    def test_block_example(self):
        assert jimm(ContinuedFraction((2, 3))) == ContinuedFraction((1, 2, 1, 2), (1,))

    @given(fractions_01, variants)
    def test_involution_on_rationals(self, fr, variant):
        x = cf_from_rational(fr, variant=variant)
        assert jimm(jimm(x)) == x

    @given(periodics)
    def test_involution_on_periodics(self, x):
        assert jimm(jimm(x)) == x

    @given(periodics)
    def test_periodic_value_consistency(self, x):
        # the image's float value must sit inside its own certificate
        v, err = cf_value(jimm(x), depth=50)
        assert 0.0 <= v <= 1.0 and err < 1e-6

    def test_truncated_keeps_settled_prefix(self):
        full = jimm(ContinuedFraction((2, 3, 4, 2, 5)))
        part = jimm(ContinuedFraction((2, 3, 4, 2, 5), exact=False))
        assert part.is_truncated
        assert part.head == full.head[: len(part.head)]
        assert len(part.head) >= 5


class TestConjugacy:
    """Flipping, applying the parameter-0 member, and flipping back is
    the golden-parameter member."""

    @given(fractions_01, variants)
    def test_on_rationals(self, fr, variant):
        x = cf_from_rational(fr, variant=variant)
        lhs = jimm(t_alpha_step(GAUSS_ALPHA, jimm(x)))
        assert lhs == t_alpha_step(FIBONACCI_ALPHA, x)

    @given(periodics)
    def test_on_periodics(self, x):
        # the golden point itself is the one convention mismatch: both
        # members trap their own parameter at 0, but the conjugation
        # chain returns it unchanged
        if x == GOLDEN:
            return
        lhs = jimm(t_alpha_step(GAUSS_ALPHA, jimm(x)))
        assert lhs == t_alpha_step(FIBONACCI_ALPHA, x)


class TestArgumentChecks:
    def test_orbit_rejects_negative(self):
        with pytest.raises(DomainError):
            orbit(GAUSS_ALPHA, ZERO, -1)

    def test_fixed_point_index(self):
        with pytest.raises(DomainError):
            fibonacci_fixed_point(0)

    def test_truncated_comparison_raises(self):
        with pytest.raises(TruncationExhausted):
            t_alpha_step(GAUSS_ALPHA, CF((), (), False))
