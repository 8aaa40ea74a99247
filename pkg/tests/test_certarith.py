from fractions import Fraction

import gmpy2
import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from circorder.certarith import BallReal, Comparison, PrecisionPolicy, certified_compare, floor_div

mpmath.mp.prec = 6000

fracs = st.fractions(min_value=-50, max_value=50, max_denominator=10**6)
precs = st.sampled_from([53, 64, 128, 256, 1024])


def frac_of(x):
    return Fraction(*gmpy2.mpq(x).as_integer_ratio())


def encloses(ball, value):
    # value given as a high-precision mpmath number or a Fraction
    if not isinstance(value, Fraction):
        sign, man, exp, _ = mpmath.mpf(value)._mpf_
        value = (-1) ** sign * Fraction(int(man)) * Fraction(2) ** int(exp)
    return frac_of(ball.lo) <= value <= frac_of(ball.hi)


@given(fracs, fracs, precs)
@settings(max_examples=200, deadline=None)
def test_field_ops_enclose_exact_rationals(a, b, prec):
    x, y = BallReal.exact(a, prec), BallReal.exact(b, prec)
    assert encloses(x + y, a + b)
    assert encloses(x - y, a - b)
    assert encloses(x * y, a * b)
    assert encloses(-x, -a)
    assert encloses(abs(x - y), abs(a - b))
    if b != 0:
        assert encloses(x / y, a / b)


@given(fracs, precs)
@settings(max_examples=150, deadline=None)
def test_transcendentals_enclose(a, prec):
    x = BallReal.exact(a, prec)
    q = mpmath.mpf(a.numerator) / a.denominator
    assert encloses(x.sin(), mpmath.sin(q))
    assert encloses(x.cos(), mpmath.cos(q))
    assert encloses(x.atan(), mpmath.atan(q))
    if a > 0:
        assert encloses(x.sqrt(), mpmath.sqrt(q))
    if a < 20:
        assert encloses(x.exp(), mpmath.exp(q))


@pytest.mark.parametrize("prec", [64, 256, 4096])
def test_pi_and_radius_shrink(prec):
    p = BallReal.pi(prec)
    assert encloses(p, mpmath.pi)
    assert frac_of(p.rad) < Fraction(1, 2 ** (prec - 4))


def test_negation_keeps_full_precision():
    # a 200-bit midpoint must survive negation without rounding to 53 bits
    x = BallReal.exact(Fraction(1, 3), 200)
    y = -(-x)
    assert y.mid == x.mid
    assert (x + (-x)).contains(0)
    assert float((x - y).rad) < 1e-55


def test_floor_div_is_exact():
    x = gmpy2.mpfr("3.0000000000000000000000000001", 200)
    assert floor_div(x) == 3
    assert floor_div(gmpy2.mpfr(-0.5)) == -1
    assert floor_div(gmpy2.mpfr(13), 7) == 1
    assert floor_div(gmpy2.mpfr(-1e-40, 200), 7) == -1


def test_certain_floor():
    assert BallReal.exact(Fraction(5, 2), 64).certain_floor() == 2
    assert BallReal.from_bounds(Fraction(1, 2), Fraction(3, 2)).certain_floor() is None


def test_compare_refines_until_separated():
    a = BallReal.from_bounds(0, 1, 64)

    def refine(p):
        return BallReal.exact(Fraction(1, 3), p), BallReal.exact(Fraction(1, 3) + Fraction(1, 2**300), p)

    assert certified_compare(a, a) is Comparison.INCONCLUSIVE
    assert certified_compare(a, a, refine) is Comparison.LESS
    assert certified_compare(a, a, symbolic_equal=True) is Comparison.EQUAL_AS_WORDS


def test_policy_ladder():
    assert list(PrecisionPolicy(64, 512).ladder()) == [64, 128, 256, 512]
    assert list(PrecisionPolicy(64, 100).ladder()) == [64, 100]
    with pytest.raises(ValueError):
        PrecisionPolicy(128, 64)
