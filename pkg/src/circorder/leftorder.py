"""The central extension with e_i^{m_i} = z and its left orders <^(d).

Elements are (G-normal form, z-exponent).  The lifted action of the cover
module is a homomorphism from this group to homeomorphisms of the line, with
z acting as translation by d base turns; comparing images of the lifted
basepoint gives the order.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence

from . import words as W
from .certarith import BallReal, Comparison, Inconclusive
from .circular import OrderHandle
from .lift import letter_index
from .report import Report
from .words import Gen, GroupSpec, Word

_SLACK = 1e-15


@dataclass(frozen=True)
class HatWord:
    base: Word
    z: int = 0

    @property
    def spec(self) -> GroupSpec:
        return self.base.spec

    def __mul__(self, other: "HatWord") -> "HatWord":
        return hat_multiply(self, other)

    def __pow__(self, p: int) -> "HatWord":
        return hat_power(self, p)

    def inverse(self) -> "HatWord":
        return hat_invert(self)

    @property
    def is_identity(self) -> bool:
        return self.base.is_identity and self.z == 0

    @property
    def is_central(self) -> bool:
        return self.base.is_identity

    def __str__(self) -> str:
        if self.z == 0:
            return str(self.base)
        zs = "z" if self.z == 1 else f"z^{self.z}"
        return zs if self.base.is_identity else f"{self.base} {zs}"


def hat_reduce(spec: GroupSpec, raw: Iterable[tuple[Gen, int]], z: int = 0) -> HatWord:
    """Normal form; exponents of e_i leave 1..m_i-1 by carrying multiples of m_i into z."""
    stack: list[list] = []
    for g, p in raw:
        spec.check(g)
        if p == 0:
            continue
        if stack and stack[-1][0] == g:
            p += stack.pop()[1]
        if g.kind == "e":
            m = spec.order_of(g)
            q = p % m
            z += (p - q) // m
            p = q
        if p:
            stack.append([g, p])
    return HatWord(W.Word(spec, tuple((g, p) for g, p in stack)), z)


def hat_identity(spec: GroupSpec) -> HatWord:
    return HatWord(W.identity(spec), 0)


def central(spec: GroupSpec, c: int) -> HatWord:
    return HatWord(W.identity(spec), c)


def hat_gen(spec: GroupSpec, g: Gen, p: int = 1) -> HatWord:
    return hat_reduce(spec, [(g, p)])


def lift_word(g: Word, z: int = 0) -> HatWord:
    """The element of the extension with the same normal form as g, times z^z."""
    return HatWord(g, z)


def hat_multiply(a: HatWord, b: HatWord) -> HatWord:
    if a.spec != b.spec:
        raise ValueError("mixed specs")
    return hat_reduce(a.spec, a.base.syllables + b.base.syllables, a.z + b.z)


def hat_invert(a: HatWord) -> HatWord:
    return hat_reduce(a.spec, [(g, -p) for g, p in reversed(a.base.syllables)], -a.z)


def hat_power(a: HatWord, p: int) -> HatWord:
    out = hat_identity(a.spec)
    step = a if p >= 0 else hat_invert(a)
    for _ in range(abs(p)):
        out = hat_multiply(out, step)
    return out


def project(a: HatWord) -> Word:
    return a.base


# -- orders ---------------------------------------------------------------------


HatAssignment = Mapping[Gen, HatWord]


def hat_substitute(phi: HatAssignment, a: HatWord) -> HatWord:
    spec = a.spec
    out = hat_identity(spec)
    for g, p in a.base.syllables:
        out = out * hat_power(phi[g], p)
    if a.z:
        out = out * hat_power(center_image(spec, phi), a.z)
    return out


def center_image(spec: GroupSpec, phi: HatAssignment) -> HatWord:
    g = W.E(1)
    return hat_power(phi[g], spec.order_of(g))


class LeftOrderHandle:
    """The order <^(d) on the extension, optionally pulled back by an automorphism."""

    def __init__(self, order: OrderHandle, twist: Optional[HatAssignment] = None):
        self.order = order
        self.spec = order.spec
        self.cover = order.cover
        self.d = order.d
        self.twist = dict(twist) if twist is not None else None
        self.z_sign = 1
        if self.twist is not None:
            zi = center_image(self.spec, self.twist)
            if not zi.is_central or abs(zi.z) != 1:
                raise ValueError("automorphism does not preserve the center")
            self.z_sign = zi.z

    def __repr__(self) -> str:
        tw = "" if self.twist is None else ", twisted"
        return f"LeftOrderHandle({self.spec}, d={self.d}{tw})"

    def image(self, a: HatWord) -> HatWord:
        return a if self.twist is None else hat_substitute(self.twist, a)

    def basepoint(self, prec: int) -> BallReal:
        return self.cover.basepoint(prec)

    def value_float(self, a: HatWord) -> tuple[float, float]:
        b = self.image(a)
        m, r = self.cover.orbit_float(b.base)
        return m + self.d * b.z, r + _SLACK * (abs(m) + abs(self.d * b.z))

    def value_ball(self, a: HatWord, prec: int) -> BallReal:
        b = self.image(a)
        return self.cover.orbit_ball(b.base, prec) + self.d * b.z


def _cmp_float(x: tuple[float, float], y: tuple[float, float]) -> Optional[int]:
    if not math.isfinite(x[1] + y[1]):
        return None
    gap = y[0] - x[0]
    tol = x[1] + y[1] + _SLACK * (abs(x[0]) + abs(y[0]))
    if gap > tol:
        return -1
    if gap < -tol:
        return 1
    return None


def _compare_values(h: LeftOrderHandle, a: HatWord, b: HatWord) -> int:
    s = _cmp_float(h.value_float(a), h.value_float(b))
    if s is not None:
        return s
    for p in h.order.policy.ladder():
        try:
            x, y = h.value_ball(a, p), h.value_ball(b, p)
        except Inconclusive:
            continue
        if x.certainly_lt(y):
            return -1
        if x.certainly_gt(y):
            return 1
    raise Inconclusive(f"cannot compare {a} and {b}")


def hat_compare(h: LeftOrderHandle, a: HatWord, b: HatWord) -> Comparison:
    if a == b:
        return Comparison.EQUAL_AS_WORDS
    return Comparison.LESS if _compare_values(h, a, b) < 0 else Comparison.GREATER


def hat_less(h: LeftOrderHandle, a: HatWord, b: HatWord) -> bool:
    return hat_compare(h, a, b) is Comparison.LESS


def _displacement(h: LeftOrderHandle, a: HatWord, unit: int) -> int:
    """floor((value(a) - value(1)) / unit), certified."""
    one = hat_identity(h.spec)
    x, r = h.value_float(a)
    y, s = h.value_float(one)
    if math.isfinite(r + s):
        u = (x - y) / unit
        tol = (r + s + _SLACK * (abs(x) + abs(y))) / abs(unit) + _SLACK * abs(u)
        lo, hi = math.floor(u - tol), math.floor(u + tol)
        if lo == hi:
            return lo
    for p in h.order.policy.ladder():
        try:
            v = (h.value_ball(a, p) - h.value_ball(one, p)) / unit
        except Inconclusive:
            continue
        f = v.certain_floor()
        if f is not None:
            return f
    raise Inconclusive(f"cannot place {a} between powers of z")


def cofinal_bounds(h: LeftOrderHandle, a: HatWord) -> tuple[int, int]:
    """(kLow, kHigh) with z^kLow < a < z^kHigh and |kHigh - kLow| minimal."""
    s = h.z_sign
    if a.is_central:
        return a.z - s, a.z + s
    # value(z^k) = value(1) + s k d
    f = _displacement(h, a, s * h.d)
    return (f, f + 1) if s > 0 else (f + 1, f)


def window_lift(h: LeftOrderHandle, g: Word) -> HatWord:
    """The unique lift of g with 1 <= lift < zeta, zeta the positive generator of the center."""
    a = lift_word(g)
    if g.is_identity:
        return a
    s = h.z_sign
    f = _displacement(h, a, s * h.d)
    return HatWord(g, -f)


def project_order(h: LeftOrderHandle, g1: Word, g2: Word, g3: Word) -> int:
    if g1 == g2 or g2 == g3 or g1 == g3:
        return 0
    lifts = [window_lift(h, g) for g in (g1, g2, g3)]
    order = [0, 1, 2]
    # insertion sort on three items by the left order
    for i in range(1, 3):
        j = i
        while j > 0 and hat_less(h, lifts[order[j]], lifts[order[j - 1]]):
            order[j], order[j - 1] = order[j - 1], order[j]
            j -= 1
    inversions = sum(1 for a in range(3) for b in range(a + 1, 3) if order[a] > order[b])
    return 1 if inversions % 2 == 0 else -1


def winding_number(h: LeftOrderHandle, raw: Sequence[tuple[Gen, int]]) -> int:
    """Deck turns between the unreduced product of lifts and its normal form, on the cover."""
    spec = h.spec
    red = hat_reduce(spec, raw)
    letters = []
    for g, p in reversed(list(raw)):
        letters += [letter_index(spec, g.kind, g.index, 1 if p > 0 else -1)] * abs(p)
    for prec in h.order.policy.ladder():
        try:
            full = h.cover.lift.eval_ball(letters, h.basepoint(prec))
            normal = h.cover.orbit_ball(red.base, prec)
        except Inconclusive:
            continue
        w = (full - normal) / h.d
        f = (w + Fraction(1, 2)).certain_floor()
        if f is not None and (w - f).certainly_lt(Fraction(1, 4)) and (w - f).certainly_gt(Fraction(-1, 4)):
            return f
    raise Inconclusive("winding number not resolved")


# -- automorphisms ------------------------------------------------------------------


def check_hat_automorphism(spec: GroupSpec, phi: HatAssignment, phi_inv: HatAssignment) -> None:
    gens = spec.generators()
    for table in (phi, phi_inv):
        missing = [str(g) for g in gens if g not in table]
        if missing:
            raise ValueError(f"assignment misses {', '.join(missing)}")
        zi = center_image(spec, table)
        if not zi.is_central or abs(zi.z) != 1:
            raise ValueError("center not preserved")
        for g in gens:
            if g.kind == "e" and hat_power(table[g], spec.order_of(g)) != zi:
                raise ValueError(f"relation e^m = z fails for the image of {g}")
    for g in gens:
        x = hat_gen(spec, g)
        if hat_substitute(phi_inv, hat_substitute(phi, x)) != x or \
                hat_substitute(phi, hat_substitute(phi_inv, x)) != x:
            raise ValueError(f"supplied inverse fails on {g}")


def hat_inner(spec: GroupSpec, g: HatWord) -> tuple[dict[Gen, HatWord], dict[Gen, HatWord]]:
    gi = hat_invert(g)
    phi = {x: g * hat_gen(spec, x) * gi for x in spec.generators()}
    inv = {x: gi * hat_gen(spec, x) * g for x in spec.generators()}
    return phi, inv


def descend(phi: HatAssignment, g: Word) -> Word:
    return hat_substitute(phi, lift_word(g)).base


def automorphism_compat_check(h: LeftOrderHandle, phi: HatAssignment, phi_inv: HatAssignment,
                              sample: Iterable[tuple[Word, Word, Word]]) -> Report:
    """Projection after pulling back by phi-hat equals pulling back by phi after projection."""
    check_hat_automorphism(h.spec, phi, phi_inv)
    twisted = LeftOrderHandle(h.order, phi)
    rep = Report("automorphism compatibility")
    bad = total = 0
    first = ""
    for g1, g2, g3 in sample:
        total += 1
        lhs = project_order(twisted, g1, g2, g3)
        rhs = project_order(h, descend(phi, g1), descend(phi, g2), descend(phi, g3))
        if lhs != rhs:
            bad += 1
            first = first or f"{g1}, {g2}, {g3}"
    rep.add(f"{bad} mismatches in {total} triples", "certified" if bad == 0 else "failed", first)
    return rep
