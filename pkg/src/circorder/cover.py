"""d-fold covers of the boundary action and their lifts to the real line.

Internally every lifted point is a real number in turns of the base circle.
The d-fold cover circle is R/dZ in these units; a lift of e_l is the lift of
the base map whose displacement lies in (0, 1), shifted by i_l deck units.
Then e_l^{m_l} translates by m_l i_l + 1 = d units, i.e. once around the
cover, and that translation is the central element z of the extension.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

from . import words as W
from .certarith import BallReal, Inconclusive
from .lift import Lift, word_letters
from .report import Report
from .words import GroupSpec, Word, gen_word


class CoverSearchError(RuntimeError):
    pass


@dataclass(frozen=True)
class CoverDatum:
    spec: GroupSpec
    a: int
    d: int
    lifts: tuple[int, ...]  # () for the trivial cover
    rot_alpha: Fraction

    @property
    def i(self) -> tuple[int, ...]:
        return self.lifts or (0,) * self.spec.k

    @property
    def alpha_translation(self) -> int:
        """Displacement of the lifted alpha at its fixed points, in base turns."""
        return 2 * self.spec.n - 1 + self.spec.k + sum(self.i)

    def letter_extras(self) -> list[int]:
        """Deck shifts per letter index (see lift.letter_index)."""
        out = []
        for il in self.i:
            out += [il, -il]
        return out + [0] * (4 * self.spec.n)

    def to_dict(self) -> dict:
        return {"a": self.a, "d": self.d, "i": list(self.lifts), "rot_alpha": str(self.rot_alpha)}

    def __str__(self) -> str:
        return f"a={self.a} d={self.d} i={self.lifts} rotAlpha={self.rot_alpha}"


def trivial_cover(spec: GroupSpec) -> CoverDatum:
    return CoverDatum(spec, 0, 1, (), Fraction(2 * spec.n - 1 + spec.k))


def cover_for_a(spec: GroupSpec, a: int) -> Optional[CoverDatum]:
    """The datum with d = m_1...m_k a + 1, or None if gcd(d, 2n-1+k+sum i) > 1."""
    if a < 0:
        raise ValueError("a must be non-negative")
    if a == 0:
        return trivial_cover(spec)
    d = spec.order_product * a + 1
    # minimal non-negative i with d | m i + 1
    lifts = tuple((-pow(m, -1, d)) % d for m in spec.m)
    num = 2 * spec.n - 1 + spec.k + sum(lifts)
    if math.gcd(d, num) != 1:
        return None
    return CoverDatum(spec, a, d, lifts, Fraction(num, d))


def search_valid_d(spec: GroupSpec, count: int, a_cap: int = 10_000) -> list[CoverDatum]:
    if spec.excluded:
        raise ValueError(f"spec {spec} is excluded")
    if count < 1:
        raise ValueError("count must be positive")
    out = []
    for a in range(a_cap + 1):
        datum = cover_for_a(spec, a)
        if datum is not None:
            out.append(datum)
            if len(out) == count:
                return out
    raise CoverSearchError(f"only {len(out)} valid degrees with a <= {a_cap}")


def check_Np0_neq_p1(spec: GroupSpec) -> int:
    """N p_0 - p_1 with N = k + 2n - 1, p_0 = prod m_l, p_1 = sum_l prod_{j != l} m_j."""
    p0 = spec.order_product
    p1 = sum(p0 // m for m in spec.m)
    return (spec.k + 2 * spec.n - 1) * p0 - p1


# -- lifted evaluation -------------------------------------------------------------


Point = Union[BallReal, Fraction, int]


class CoverLift:
    """Lifted action of G (and of the central extension) for one cover datum."""

    def __init__(self, config, datum: Optional[CoverDatum] = None):
        if not config.verified:
            raise ValueError("configuration is not verified")
        self.config = config
        self.datum = datum or trivial_cover(config.spec)
        if self.datum.spec != config.spec:
            raise ValueError("cover datum belongs to another spec")
        self.d = self.datum.d
        self.lift = Lift(config.system, self.datum.letter_extras())
        self.policy = config.policy
        self._float: dict[Word, tuple[float, float]] = {}
        self._ball: dict[tuple[Word, int], BallReal] = {}
        self._base: dict[int, BallReal] = {}

    # basepoint: x_e1 with angle in [0, 1)
    def basepoint(self, prec: int) -> BallReal:
        b = self._base.get(prec)
        if b is None:
            b = self._base[prec] = self.config.angle(self.config.xe(1), prec)
        return b

    def evaluate(self, word: Word, y: Point, prec: Optional[int] = None) -> BallReal:
        if not isinstance(y, BallReal):
            y = BallReal.exact(Fraction(y), prec or self.policy.start)
        return self.lift.eval_ball(word_letters(word), y)

    def orbit_float(self, word: Word) -> tuple[float, float]:
        """(mid, rad) of the lifted word applied to the basepoint; rad may be inf."""
        v = self._float.get(word)
        if v is None:
            m, r = self.basepoint(128).float_enclosure()
            v = self._float[word] = self.lift.eval_float(word_letters(word), m, r)
        return v

    def orbit_ball(self, word: Word, prec: int) -> BallReal:
        key = (word, prec)
        v = self._ball.get(key)
        if v is None:
            v = self._ball[key] = self.lift.eval_ball(word_letters(word), self.basepoint(prec))
        return v

    def clear_cache(self) -> None:
        self._float.clear()
        self._ball.clear()


@dataclass(frozen=True)
class LiftedMap:
    base: Word
    cover: CoverLift = field(repr=False)

    def __call__(self, y: Point, prec: Optional[int] = None) -> BallReal:
        return self.cover.evaluate(self.base, y, prec)


def lift_generator(config, datum: CoverDatum, generator: W.Gen, sign: int = 1) -> LiftedMap:
    cover = config if isinstance(config, CoverLift) else CoverLift(config, datum)
    return LiftedMap(gen_word(config.spec, generator, sign), cover)


def evaluate_lift(cover: CoverLift, word: Word, y: Point, prec: Optional[int] = None) -> BallReal:
    """The lifted word applied to y (turns of the base circle)."""
    return cover.evaluate(word, y, prec)


def to_cover_units(cover: CoverLift, y: BallReal) -> BallReal:
    return y / cover.d


# -- gap orbit and rotation numbers ------------------------------------------------


def _lifted_gap(cover: CoverLift, prec: int) -> tuple[BallReal, BallReal, BallReal]:
    """(lo, hi, x0): lifts of fix-(alpha) < x_e1 < fix+(alpha) with x0 in [0, 1)."""
    cfg = cover.config
    lo_ref, hi_ref = cfg.gap_endpoints()
    x0 = cover.basepoint(prec)
    lo = cfg.angle(lo_ref, prec)
    hi = cfg.angle(hi_ref, prec)
    if not lo.certainly_lt(x0):
        lo = lo - 1
    if not hi.certainly_gt(x0):
        hi = hi + 1
    if not (lo.certainly_lt(x0) and x0.certainly_lt(hi) and (hi - lo).certainly_lt(1)):
        raise Inconclusive("cannot place the basepoint gap")
    return lo, hi, x0


def gap_orbit_check(config, datum: CoverDatum) -> Report:
    cover = config if isinstance(config, CoverLift) else CoverLift(config, datum)
    cfg = cover.config
    d = cover.d
    rep = Report(f"gap orbit, d = {d}")
    r = datum.alpha_translation
    step = (datum.rot_alpha * d).numerator % d if d > 1 else 0
    orbit = sorted((j * step) % d for j in range(d))
    rep.add(f"j -> {step} j mod {d} is a bijection of Z_{d}",
            "exact" if orbit == list(range(d)) else "failed")
    alpha = cfg.alpha
    ad = W.power(alpha, d)
    lo_ref, hi_ref = cfg.gap_endpoints()
    fixed = lo_ref.translate(ad) == lo_ref and hi_ref.translate(ad) == hi_ref
    rep.add(f"alpha^{d} fixes both endpoints of I_1", "symbolic" if fixed else "failed")
    letters = word_letters(alpha)
    translated = displaced = False
    for prec in cover.policy.ladder():
        try:
            lo, hi, x0 = _lifted_gap(cover, prec)
        except Inconclusive:
            continue
        translated = True
        for end in (lo, hi):
            disp = cover.lift.eval_ball(letters, end) - end
            # the displacement is an integer: enclosing r within 1/2 pins it
            translated &= disp.contains(r) and (disp - r).certainly_lt(Fraction(1, 2)) \
                and (disp - r).certainly_gt(Fraction(-1, 2))
        y = x0
        displaced = True
        for j in range(1, d):
            y = cover.lift.eval_ball(letters, y)
            shift = j * r
            # consecutive iterates approach the attracting end quickly; more bits may be needed
            displaced &= (lo + shift).certainly_lt(y) and y.certainly_lt(hi + shift) and shift % d != 0
        if translated and displaced:
            break
    rep.add(f"lifted alpha translates the lifted gap by {r}", "certified" if translated else "inconclusive")
    if d > 1:
        rep.add(f"alpha^j moves I_1 to I_1 + j*{r} != I_1 mod {d} for 0 < j < {d}",
                "certified" if displaced else "inconclusive")
    return rep


def orbit_rotation_number(cover: CoverLift, word: Optional[Word] = None, iterates: int = 1000,
                          prec: Optional[int] = None) -> Fraction:
    """Rotation number on the cover circle (in full turns of the cover), by orbit tracking.

    With D the certified displacement after N iterates, the translation number
    lies within 1/N of D/N (base turns).  The result is the unique rational of
    denominator <= d in that window; the window is checked to be narrower than
    the spacing 1/d^2 of such rationals.
    """
    word = word if word is not None else cover.config.alpha
    letters = word_letters(word)
    d = cover.d
    for p in cover.policy.ladder():
        if prec and p < prec:
            continue
        try:
            x = cover.basepoint(p)
            y = x
            for _ in range(iterates):
                y = cover.lift.eval_ball(letters, y)
            D = y - x
            lo = Fraction(*D.lo.as_integer_ratio()) - 1
            hi = Fraction(*D.hi.as_integer_ratio()) + 1
            if (hi - lo) / (iterates * d) >= Fraction(1, d * d):
                raise ValueError("too few iterates to pin the rotation number")
            cand = ((lo + hi) / (2 * iterates * d)).limit_denominator(d)
            if not lo / (iterates * d) < cand < hi / (iterates * d):
                raise Inconclusive("no rational of denominator <= d in the window")
            return cand
        except Inconclusive:
            continue
    raise Inconclusive("rotation number not resolved")
