"""Midpoint-radius ball arithmetic over MPFR, plus the comparison kernel.

Every operation rounds its midpoint to nearest at the working precision and
adds the rounding error (at most half an ulp, MPFR being correctly rounded)
to a radius that is itself computed with upward rounding.  The enclosure of
the exact result is therefore rigorous.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator, Union

import gmpy2
from gmpy2 import mpfr, mpq

ExactRational = Fraction

DEFAULT_PREC = 64

_UP = gmpy2.context(precision=64, round=gmpy2.RoundUp)
_DOWN = gmpy2.context(precision=64, round=gmpy2.RoundDown)
_NEAR: dict[int, gmpy2.context] = {}
_EPS: dict[int, mpfr] = {}
_ZERO = mpfr(0)
_ONE = mpfr(1)
_DIRECTED: dict[int, tuple[gmpy2.context, gmpy2.context]] = {}
_EXACT: dict[int, gmpy2.context] = {}


def _directed(prec: int) -> tuple[gmpy2.context, gmpy2.context]:
    c = _DIRECTED.get(prec)
    if c is None:
        c = _DIRECTED[prec] = (gmpy2.context(precision=prec, round=gmpy2.RoundDown),
                               gmpy2.context(precision=prec, round=gmpy2.RoundUp))
    return c


def _neg(x: mpfr) -> mpfr:
    # plain unary minus would round to the global (53-bit) context
    p = x.precision
    c = _EXACT.get(p)
    if c is None:
        c = _EXACT[p] = gmpy2.context(precision=p)
    return c.minus(x)


def _abs(x: mpfr) -> mpfr:
    return _neg(x) if x < 0 else x


def floor_div(x: mpfr, modulus: int = 1) -> int:
    """floor(x / modulus), exactly."""
    return int(gmpy2.mpq(x) // modulus)


class Inconclusive(ArithmeticError):
    """Balls still overlap at the precision cap."""


class DomainError(ArithmeticError):
    pass


def _ctx(prec: int) -> gmpy2.context:
    c = _NEAR.get(prec)
    if c is None:
        if prec < 16:
            raise ValueError("precision must be at least 16 bits")
        c = _NEAR[prec] = gmpy2.context(precision=prec)
        _EPS[prec] = _UP.div(1, gmpy2.mpz(2) ** (prec - 1))
    return c


def _err(mid: mpfr, prec: int) -> mpfr:
    # bound for one correctly rounded result: 2^(1-p) |mid|
    return _UP.mul(_abs(mid), _EPS[prec])


Number = Union[int, Fraction, float]


class BallReal:
    __slots__ = ("mid", "rad", "prec")

    def __init__(self, mid: mpfr, rad: mpfr = _ZERO, prec: int = DEFAULT_PREC):
        self.mid = mid
        self.rad = rad
        self.prec = prec

    # -- construction --------------------------------------------------------
    @classmethod
    def exact(cls, value: Number, prec: int = DEFAULT_PREC) -> "BallReal":
        c = _ctx(prec)
        if isinstance(value, float):
            if not math.isfinite(value):
                raise DomainError("non-finite value")
            mid = c.add(mpfr(value, 53), 0)
            num, den = value.as_integer_ratio()
        else:
            q = Fraction(value)
            num, den = q.numerator, q.denominator
            mid = c.div(gmpy2.mpz(num), gmpy2.mpz(den))
        rad = _ZERO if mpq(*mid.as_integer_ratio()) == mpq(num, den) else _err(mid, prec)
        return cls(mid, rad, prec)

    @classmethod
    def pi(cls, prec: int = DEFAULT_PREC) -> "BallReal":
        mid = _ctx(prec).const_pi()
        return cls(mid, _err(mid, prec), prec)

    @classmethod
    def from_bounds(cls, lo: Number, hi: Number, prec: int = DEFAULT_PREC) -> "BallReal":
        a, b = Fraction(lo), Fraction(hi)
        if a > b:
            raise ValueError("empty ball")
        mid = cls.exact((a + b) / 2, prec)
        half = cls.exact((b - a) / 2, prec)
        return cls(mid.mid, _UP.add(_UP.add(mid.rad, half.rad), half.mid), prec)

    # -- views ---------------------------------------------------------------
    @property
    def lo(self) -> mpfr:
        return _directed(max(self.prec, 64))[0].sub(self.mid, self.rad)

    @property
    def hi(self) -> mpfr:
        return _directed(max(self.prec, 64))[1].add(self.mid, self.rad)

    def __float__(self) -> float:
        return float(self.mid)

    def float_enclosure(self) -> tuple[float, float]:
        """(midpoint, radius) as doubles with the radius rounded up."""
        m = float(self.mid)
        r = _UP.add(self.rad, _abs(_UP.sub(self.mid, m)))
        rf = float(gmpy2.context(precision=53, round=gmpy2.RoundUp).add(r, 0))
        return m, max(rf, 5e-324) if r > 0 else 0.0

    def contains(self, value: Union[Number, "BallReal"]) -> bool:
        if isinstance(value, BallReal):
            return self.lo <= value.lo and value.hi <= self.hi
        q = mpq(Fraction(value)) if not isinstance(value, float) else mpq(*value.as_integer_ratio())
        return self.lo <= q <= self.hi

    def certainly_lt(self, other: Union["BallReal", Number]) -> bool:
        o = _coerce(other, self.prec)
        return self.hi < o.lo

    def certainly_gt(self, other: Union["BallReal", Number]) -> bool:
        o = _coerce(other, self.prec)
        return self.lo > o.hi

    def overlaps(self, other: "BallReal") -> bool:
        return not (self.certainly_lt(other) or self.certainly_gt(other))

    def is_positive(self) -> bool:
        return self.lo > 0

    def is_negative(self) -> bool:
        return self.hi < 0

    def excludes_zero(self) -> bool:
        return self.lo > 0 or self.hi < 0

    def certain_floor(self) -> int | None:
        a = floor_div(self.lo)
        return a if a == floor_div(self.hi) else None

    def __repr__(self) -> str:
        return f"BallReal({float(self.mid)!r} +- {float(self.rad):.3g}, prec={self.prec})"

    # -- arithmetic ------------------------------------------------------------
    def __neg__(self) -> "BallReal":
        return BallReal(_neg(self.mid), self.rad, self.prec)

    def __abs__(self) -> "BallReal":
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        hi = max(_abs(self.lo), _abs(self.hi))
        half = _UP.div(hi, 2)
        return BallReal(half, half, self.prec)

    def __add__(self, other: Union["BallReal", Number]) -> "BallReal":
        o = _coerce(other, self.prec)
        p = max(self.prec, o.prec)
        mid = _ctx(p).add(self.mid, o.mid)
        return BallReal(mid, _UP.add(_UP.add(self.rad, o.rad), _err(mid, p)), p)

    __radd__ = __add__

    def __sub__(self, other: Union["BallReal", Number]) -> "BallReal":
        o = _coerce(other, self.prec)
        p = max(self.prec, o.prec)
        mid = _ctx(p).sub(self.mid, o.mid)
        return BallReal(mid, _UP.add(_UP.add(self.rad, o.rad), _err(mid, p)), p)

    def __rsub__(self, other: Number) -> "BallReal":
        return _coerce(other, self.prec) - self

    def __mul__(self, other: Union["BallReal", Number]) -> "BallReal":
        o = _coerce(other, self.prec)
        p = max(self.prec, o.prec)
        mid = _ctx(p).mul(self.mid, o.mid)
        r = _UP.add(_UP.mul(_abs(self.mid), o.rad), _UP.mul(self.rad, _abs(o.mid)))
        r = _UP.add(r, _UP.mul(self.rad, o.rad))
        return BallReal(mid, _UP.add(r, _err(mid, p)), p)

    __rmul__ = __mul__

    def __truediv__(self, other: Union["BallReal", Number]) -> "BallReal":
        o = _coerce(other, self.prec)
        den = _DOWN.sub(_abs(o.mid), o.rad)
        if den <= 0:
            raise DomainError("division by a ball containing zero")
        p = max(self.prec, o.prec)
        mid = _ctx(p).div(self.mid, o.mid)
        q = _UP.add(_abs(mid), _err(mid, p))
        r = _UP.div(_UP.add(self.rad, _UP.mul(q, o.rad)), den)
        return BallReal(mid, _UP.add(r, _err(mid, p)), p)

    def __rtruediv__(self, other: Number) -> "BallReal":
        return _coerce(other, self.prec) / self

    def square(self) -> "BallReal":
        return self * self

    def sqrt(self) -> "BallReal":
        if self.mid == 0 and self.rad == 0:
            return self
        lo = self.lo
        if lo <= 0:
            raise DomainError("sqrt of a ball reaching non-positive values")
        mid = _ctx(self.prec).sqrt(self.mid)
        den = _DOWN.add(_DOWN.sqrt(lo), _DOWN.sqrt(self.mid))
        r = _UP.div(self.rad, den)
        return BallReal(mid, _UP.add(r, _err(mid, self.prec)), self.prec)

    def sin(self) -> "BallReal":
        mid = _ctx(self.prec).sin(self.mid)
        return BallReal(mid, _UP.add(self.rad, _err(mid, self.prec)), self.prec)

    def cos(self) -> "BallReal":
        mid = _ctx(self.prec).cos(self.mid)
        return BallReal(mid, _UP.add(self.rad, _err(mid, self.prec)), self.prec)

    def atan(self) -> "BallReal":
        mid = _ctx(self.prec).atan(self.mid)
        lo, hi = self.lo, self.hi
        t = lo if lo > 0 else (_neg(hi) if hi < 0 else _ZERO)
        lip = _UP.div(1, _DOWN.add(1, _DOWN.mul(t, t)))
        return BallReal(mid, _UP.add(_UP.mul(self.rad, lip), _err(mid, self.prec)), self.prec)

    def exp(self) -> "BallReal":
        mid = _ctx(self.prec).exp(self.mid)
        lip = _UP.exp(self.hi)
        return BallReal(mid, _UP.add(_UP.mul(self.rad, lip), _err(mid, self.prec)), self.prec)

    def with_prec(self, prec: int) -> "BallReal":
        if prec >= self.prec:
            return BallReal(self.mid, self.rad, prec)
        mid = _ctx(prec).add(self.mid, 0)
        return BallReal(mid, _UP.add(self.rad, _err(mid, prec)), prec)


def _coerce(x: Union[BallReal, Number], prec: int) -> BallReal:
    if isinstance(x, BallReal):
        return x
    return BallReal.exact(x, prec)


def atan2(y: BallReal, x: BallReal) -> BallReal:
    """Argument of x + iy, on a branch continuous across the ball.

    The value lies in (-pi, pi] when the ball avoids the negative real axis,
    otherwise in (pi/2, 3pi/2).
    """
    if x.is_positive():
        return (y / x).atan()
    pi = BallReal.pi(max(x.prec, y.prec))
    if y.is_positive():
        return pi / 2 - (x / y).atan()
    if y.is_negative():
        return -(pi / 2) - (x / y).atan()
    if x.is_negative():
        return (y / x).atan() + pi
    raise DomainError("argument of a ball containing zero")


class ComplexBall:
    __slots__ = ("re", "im")

    def __init__(self, re: BallReal, im: BallReal):
        self.re = re
        self.im = im

    @classmethod
    def exact(cls, re: Number, im: Number = 0, prec: int = DEFAULT_PREC) -> "ComplexBall":
        return cls(BallReal.exact(re, prec), BallReal.exact(im, prec))

    @classmethod
    def cis(cls, theta: BallReal) -> "ComplexBall":
        """exp(i theta)."""
        return cls(theta.cos(), theta.sin())

    @property
    def prec(self) -> int:
        return max(self.re.prec, self.im.prec)

    def __add__(self, o: "ComplexBall") -> "ComplexBall":
        return ComplexBall(self.re + o.re, self.im + o.im)

    def __sub__(self, o: "ComplexBall") -> "ComplexBall":
        return ComplexBall(self.re - o.re, self.im - o.im)

    def __neg__(self) -> "ComplexBall":
        return ComplexBall(-self.re, -self.im)

    def __mul__(self, o: Union["ComplexBall", BallReal, Number]) -> "ComplexBall":
        if isinstance(o, ComplexBall):
            return ComplexBall(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)
        return ComplexBall(self.re * o, self.im * o)

    __rmul__ = __mul__

    def conj(self) -> "ComplexBall":
        return ComplexBall(self.re, -self.im)

    def abs2(self) -> BallReal:
        return self.re * self.re + self.im * self.im

    def __truediv__(self, o: Union["ComplexBall", BallReal, Number]) -> "ComplexBall":
        if isinstance(o, ComplexBall):
            d = o.abs2()
            num = self * o.conj()
            return ComplexBall(num.re / d, num.im / d)
        return ComplexBall(self.re / o, self.im / o)

    def arg(self) -> BallReal:
        return atan2(self.im, self.re)

    def sqrt(self) -> "ComplexBall":
        r = self.abs2().sqrt().sqrt()
        half = self.arg() / 2
        return ComplexBall(r * half.cos(), r * half.sin())

    def contains(self, re: Number, im: Number = 0) -> bool:
        return self.re.contains(re) and self.im.contains(im)

    def __repr__(self) -> str:
        return f"ComplexBall({self.re!r}, {self.im!r})"


# -- comparison kernel ------------------------------------------------------


class Comparison(enum.Enum):
    LESS = -1
    EQUAL_AS_WORDS = 0
    GREATER = 1
    INCONCLUSIVE = 2


@dataclass(frozen=True)
class PrecisionPolicy:
    start: int = 64
    cap: int = 8192

    def __post_init__(self) -> None:
        if self.start < 16 or self.cap < self.start:
            raise ValueError("need 16 <= start <= cap")

    def ladder(self) -> Iterator[int]:
        p = self.start
        while p < self.cap:
            yield p
            p *= 2
        yield self.cap


DEFAULT_POLICY = PrecisionPolicy()


def certified_compare(a: BallReal, b: BallReal,
                      refine: Callable[[int], tuple[BallReal, BallReal]] | None = None,
                      *, symbolic_equal: bool = False,
                      policy: PrecisionPolicy = DEFAULT_POLICY) -> Comparison:
    """Compare two balls, recomputing them at higher precision while they overlap.

    ``symbolic_equal`` must be decided by the caller from word provenance;
    equality is never inferred from the numbers.
    """
    if symbolic_equal:
        return Comparison.EQUAL_AS_WORDS
    ladder = [p for p in policy.ladder() if p > max(a.prec, b.prec)]
    while True:
        if a.certainly_lt(b):
            return Comparison.LESS
        if a.certainly_gt(b):
            return Comparison.GREATER
        if refine is None or not ladder:
            return Comparison.INCONCLUSIVE
        a, b = refine(ladder.pop(0))
