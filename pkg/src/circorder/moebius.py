"""Disk automorphisms acting on the boundary circle.

A map is stored as (alpha, beta) with z -> (alpha z + beta)/(conj(beta) z + conj(alpha))
and |alpha|^2 - |beta|^2 = 1.  Boundary points are angles measured in turns,
so the circle is R/Z and counterclockwise means increasing angle.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Union

from .certarith import (DEFAULT_POLICY, DEFAULT_PREC, BallReal, ComplexBall, DomainError, floor_div,
                        Inconclusive, PrecisionPolicy)
from .words import Word, invert, multiply

Number = Union[int, Fraction]

RENORM_EVERY = 32


class Kind(enum.Enum):
    ELLIPTIC = "elliptic"
    PARABOLIC_OR_UNRESOLVED = "parabolic-or-unresolved"
    HYPERBOLIC = "hyperbolic"


@dataclass(frozen=True)
class Moebius:
    alpha: ComplexBall
    beta: ComplexBall
    word: Optional[Word] = None
    depth: int = 0  # compositions since the last renormalization

    @property
    def prec(self) -> int:
        return self.alpha.prec

    @property
    def entries(self) -> tuple[tuple[ComplexBall, ComplexBall], tuple[ComplexBall, ComplexBall]]:
        return (self.alpha, self.beta), (self.beta.conj(), self.alpha.conj())

    def det(self) -> BallReal:
        return self.alpha.abs2() - self.beta.abs2()

    def trace(self) -> BallReal:
        return self.alpha.re * 2

    def __matmul__(self, other: "Moebius") -> "Moebius":
        return compose(self, other)

    def renormalized(self) -> "Moebius":
        s = self.det().sqrt()
        return Moebius(self.alpha / s, self.beta / s, self.word, 0)


def _word_mul(a: Optional[Word], b: Optional[Word]) -> Optional[Word]:
    if a is None or b is None:
        return None
    return multiply(a, b)


def compose(f: Moebius, g: Moebius) -> Moebius:
    """f after g."""
    a = f.alpha * g.alpha + f.beta * g.beta.conj()
    b = f.alpha * g.beta + f.beta * g.alpha.conj()
    out = Moebius(a, b, _word_mul(f.word, g.word), max(f.depth, g.depth) + 1)
    return out.renormalized() if out.depth >= RENORM_EVERY else out


def inverse(f: Moebius) -> Moebius:
    return Moebius(f.alpha.conj(), -f.beta, None if f.word is None else invert(f.word), f.depth)


def identity(prec: int = DEFAULT_PREC, word: Optional[Word] = None) -> Moebius:
    return Moebius(ComplexBall.exact(1, 0, prec), ComplexBall.exact(0, 0, prec), word)


def rotation(turns: Number, prec: int = DEFAULT_PREC) -> Moebius:
    half = BallReal.pi(prec) * Fraction(turns)
    return Moebius(ComplexBall.cis(half), ComplexBall.exact(0, 0, prec))


def from_sl2r(a: Number, b: Number, c: Number, d: Number, prec: int = DEFAULT_PREC) -> Moebius:
    """Upper half-plane matrix transported to the disk by z -> (z - i)/(z + i)."""
    A, B, C, D = (BallReal.exact(Fraction(x), prec) for x in (a, b, c, d))
    det = A * D - B * C
    if not det.is_positive():
        raise DomainError("matrix must have positive determinant")
    s = det.sqrt()
    alpha = ComplexBall((A + D) / (s * 2), (B - C) / (s * 2))
    beta = ComplexBall((A - D) / (s * 2), -(B + C) / (s * 2))
    return Moebius(alpha, beta)


def _as_complex(z: Union[ComplexBall, complex, tuple], prec: int) -> ComplexBall:
    if isinstance(z, ComplexBall):
        return z
    if isinstance(z, tuple):
        return ComplexBall.exact(Fraction(z[0]), Fraction(z[1]), prec)
    return ComplexBall.exact(Fraction(z.real), Fraction(z.imag), prec)


def elliptic_about(center: Union[ComplexBall, complex, tuple], m: int, prec: int = DEFAULT_PREC) -> Moebius:
    """Counterclockwise rotation by 1/m turn about an interior point of the disk."""
    if m < 2:
        raise ValueError("order must be at least 2")
    c = _as_complex(center, prec)
    r2 = c.abs2()
    one_minus = 1 - r2
    if not one_minus.is_positive():
        raise DomainError("center must lie inside the disk")
    omega = ComplexBall.cis(BallReal.pi(prec) / m)
    alpha = (omega - omega.conj() * r2) / one_minus
    beta = c * (omega.conj() - omega) / one_minus
    return Moebius(alpha, beta)


def hyperbolic_with(p: Number, q: Number, length: Union[Number, BallReal], prec: int = DEFAULT_PREC) -> Moebius:
    """Hyperbolic map attracting towards angle p, repelling from angle q."""
    p, q = Fraction(p), Fraction(q)
    if (p - q) % 1 == 0:
        raise ValueError("axis endpoints must differ")
    ell = length if isinstance(length, BallReal) else BallReal.exact(Fraction(length), prec)
    if not ell.is_positive():
        raise ValueError("translation length must be positive")
    two_pi = BallReal.pi(prec) * 2
    P = ComplexBall.cis(two_pi * p)
    Q = ComplexBall.cis(two_pi * q)
    k = (-ell).exp()
    sk = (-ell / 2).exp()
    den = (P - Q) * sk
    alpha = (P - Q * k) / den
    beta = (P * Q) * (k - 1) / den
    return Moebius(alpha, beta)


def side_pairing(phi_r: Number, phi_a: Number, w: Number, prec: int = DEFAULT_PREC) -> Moebius:
    """Hyperbolic map sending [phi_r - w, phi_r + w] onto the complement of
    (phi_a - w, phi_a + w), endpoints swapped; the image of phi_r + w is phi_a - w.

    It is the inversion in the geodesic over the first arc followed by the
    reflection in the diameter bisecting the two arcs.
    """
    two_pi = BallReal.pi(prec) * 2
    psi = two_pi * ((Fraction(phi_r) + Fraction(phi_a)) / 2)
    om = two_pi * Fraction(w)
    s, c = om.sin(), om.cos()
    alpha = ComplexBall.cis(psi - two_pi * Fraction(phi_r)) * ComplexBall(BallReal.exact(0, prec), 1 / s)
    beta = ComplexBall.cis(psi) * ComplexBall(BallReal.exact(0, prec), -(c / s))
    return Moebius(alpha, beta)


def classify(f: Moebius) -> Kind:
    t = abs(f.trace())
    if t.certainly_lt(2):
        return Kind.ELLIPTIC
    if t.certainly_gt(2):
        return Kind.HYPERBOLIC
    return Kind.PARABOLIC_OR_UNRESOLVED


# -- boundary action ----------------------------------------------------------


def boundary_map(f: Moebius, theta: BallReal) -> BallReal:
    """Image angle, not reduced mod 1."""
    two_pi = BallReal.pi(theta.prec) * 2
    ratio = f.beta / f.alpha
    w = ComplexBall(BallReal.exact(1, theta.prec), BallReal.exact(0, theta.prec)) + ratio * ComplexBall.cis(-(two_pi * theta))
    pi = two_pi / 2
    return theta + (f.alpha.arg() + (w.im / w.re).atan()) / pi


def boundary_derivative(f: Moebius, theta: BallReal) -> BallReal:
    two_pi = BallReal.pi(theta.prec) * 2
    z = ComplexBall.cis(two_pi * theta)
    q = f.beta.conj() * z + f.alpha.conj()
    return 1 / q.abs2()


def reduce_angle(theta: BallReal) -> BallReal:
    k = floor_div(theta.mid)
    return theta - k if k else theta


# -- points with provenance -------------------------------------------------


class _Anon:
    """Identity token for images under maps that carry no word; equal only to itself."""

    def __repr__(self) -> str:
        return "anon"


@dataclass(frozen=True)
class PointRef:
    """Exact identity of a boundary point: a base point translated by a word.

    Base kinds: ("xe", i), ("xp", j), ("xm", j) for marked points;
    ("fix+", w), ("fix-", w) for fixed points of a hyperbolic word;
    ("off", ref, eps) for the point at angle eps counterclockwise of ref;
    ("angle", q) for an explicit rational angle.
    """

    base: tuple
    word: Optional[Word] = None

    def translate(self, g: Word) -> "PointRef":
        if self.base[0] in ("fix+", "fix-"):
            w = self.base[1]
            inner = multiply(multiply(g, w), invert(g))
            return PointRef((self.base[0], inner), self.word)
        return PointRef(self.base, g if self.word is None else multiply(g, self.word))

    def __str__(self) -> str:
        kind = self.base[0]
        if kind in ("xe", "xp", "xm"):
            name = {"xe": "x_e{}", "xp": "x{}+", "xm": "x{}-"}[kind].format(self.base[1])
        elif kind in ("fix+", "fix-"):
            name = f"{kind}({self.base[1]})"
        elif kind == "off":
            name = f"({self.base[1]})+{self.base[2]}"
        else:
            name = f"<{self.base[1]}>"
        if self.word is None or self.word.is_identity:
            return name
        return f"{self.word}.{name}"


@dataclass(frozen=True, eq=False)
class CirclePoint:
    angle: BallReal
    ref: PointRef
    refine: Optional[Callable[[int], BallReal]] = None

    @classmethod
    def at(cls, q: Number, prec: int = DEFAULT_PREC) -> "CirclePoint":
        q = Fraction(q) % 1
        return cls(BallReal.exact(q, prec), PointRef(("angle", q)),
                   lambda p, q=q: BallReal.exact(q, p))

    def angle_at(self, prec: int) -> BallReal:
        if self.refine is None or self.angle.prec >= prec:
            return self.angle
        return self.refine(prec)

    def same(self, other: "CirclePoint") -> bool:
        return self.ref == other.ref

    def __repr__(self) -> str:
        return f"CirclePoint({self.ref}, {float(self.angle.mid) % 1:.6f})"


@dataclass(frozen=True)
class CircleInterval:
    left: CirclePoint
    right: CirclePoint

    def __post_init__(self) -> None:
        if self.left.same(self.right):
            raise ValueError("degenerate arc")

    def __repr__(self) -> str:
        return f"[{self.left.ref}, {self.right.ref}]"


def act(f: Moebius, x: CirclePoint) -> CirclePoint:
    ang = reduce_angle(boundary_map(f, x.angle))
    ref = x.ref.translate(f.word) if f.word is not None else PointRef(("image", _Anon(), x.ref))
    return CirclePoint(ang, ref, None)


def fixed_points(f: Moebius) -> tuple[CirclePoint, CirclePoint]:
    """(attracting, repelling) fixed points of a hyperbolic map."""
    if classify(f) is not Kind.HYPERBOLIC:
        raise DomainError("fixed points requested for a non-hyperbolic map")
    a = f.alpha
    s = (a.re * a.re - 1).sqrt()
    if a.re.is_negative():
        s = -s
    bconj = f.beta.conj()
    two_pi = BallReal.pi(f.prec) * 2
    out = []
    for sign, tag in ((1, "fix+"), (-1, "fix-")):
        z = ComplexBall(s * sign, a.im) / bconj
        ang = reduce_angle(z.arg() / two_pi)
        ref = PointRef((tag, f.word if f.word is not None else _Anon()))
        out.append(CirclePoint(ang, ref))
    return out[0], out[1]


# -- cyclic order -------------------------------------------------------------


def _rot(delta: BallReal, modulus: int) -> Optional[BallReal]:
    k = floor_div(delta.mid, modulus)
    r = delta - k * modulus if k else delta
    if r.lo > 0 and r.hi < modulus:
        return r
    return None


def cyclic_sign(a: BallReal, b: BallReal, c: BallReal, modulus: int = 1) -> Optional[int]:
    """+1 if a, b, c are counterclockwise on R/modulus, -1 if clockwise, None if unresolved."""
    u = _rot(b - a, modulus)
    if u is None:
        return None
    v = _rot(c - a, modulus)
    if v is None:
        return None
    if u.certainly_lt(v):
        return 1
    if u.certainly_gt(v):
        return -1
    return None


def ord3(x: CirclePoint, y: CirclePoint, z: CirclePoint,
         policy: PrecisionPolicy = DEFAULT_POLICY) -> int:
    if x.same(y) or y.same(z) or x.same(z):
        return 0
    pts = (x, y, z)
    start = max(p.angle.prec for p in pts)
    s = cyclic_sign(x.angle, y.angle, z.angle)
    if s is not None:
        return s
    for p in policy.ladder():
        if p <= start:
            continue
        if all(pt.refine is None for pt in pts):
            break
        a, b, c = (pt.angle_at(p) for pt in pts)
        s = cyclic_sign(a, b, c)
        if s is not None:
            return s
    raise Inconclusive(f"cannot order {x!r}, {y!r}, {z!r}")


def in_open_arc(x: CirclePoint, arc: CircleInterval, policy: PrecisionPolicy = DEFAULT_POLICY) -> bool:
    if x.same(arc.left) or x.same(arc.right):
        return False
    return ord3(arc.left, x, arc.right, policy) == 1


def in_closed_arc(x: CirclePoint, arc: CircleInterval, policy: PrecisionPolicy = DEFAULT_POLICY) -> bool:
    if x.same(arc.left) or x.same(arc.right):
        return True
    return ord3(arc.left, x, arc.right, policy) == 1


def arcs_intersect(a: CircleInterval, b: CircleInterval, policy: PrecisionPolicy = DEFAULT_POLICY) -> bool:
    """Closed arcs meet iff one contains the other's starting point."""
    return in_closed_arc(a.left, b, policy) or in_closed_arc(b.left, a, policy)


def interiors_intersect(a: CircleInterval, b: CircleInterval, policy: PrecisionPolicy = DEFAULT_POLICY) -> bool:
    if a.left.same(b.left):
        return True
    return in_open_arc(a.left, b, policy) or in_open_arc(b.left, a, policy)


def arc_contains_arc(outer: CircleInterval, inner: CircleInterval,
                     policy: PrecisionPolicy = DEFAULT_POLICY) -> bool:
    """inner is a subset of outer (closed arcs)."""
    if not (in_closed_arc(inner.left, outer, policy) and in_closed_arc(inner.right, outer, policy)):
        return False
    if inner.left.same(outer.left) and inner.right.same(outer.right):
        return True
    # both endpoints inside: inner could still wrap around the complement
    if inner.left.same(outer.right) or inner.right.same(outer.left):
        return False
    if inner.left.same(outer.left):
        return True
    if inner.right.same(outer.right):
        return True
    return ord3(outer.left, inner.left, inner.right, policy) == 1
