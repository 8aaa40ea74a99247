"""Lifted boundary action on the real line.

A generator image f in SU(1,1) acts on lifted angles (in turns) by
    t -> t + (A + arg w(t)) / pi + shift,   w(t) = 1 + (beta/alpha) exp(-2 pi i t),
where A is a fixed branch of arg(alpha) and Re w > 0 always.  Lifts differ
by integer shifts; the canonical ones are: displacement in (0, 1) for e_i,
in (-1, 0) for e_i^-1, and vanishing at the fixed points for h_j^{+-1}.

Two evaluation tiers share this description: a double-precision kernel
(see kernel.py) and MPFR balls at any precision.
"""
from __future__ import annotations

import math
from array import array
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

import gmpy2

from . import kernel
from .certarith import _DOWN, _UP, BallReal, ComplexBall, Inconclusive
from .moebius import Moebius, classify, Kind, fixed_points, inverse
from .words import GroupSpec, Word

_ONE_53 = gmpy2.context(precision=53, round=gmpy2.RoundUp)
_DOWN_53 = gmpy2.context(precision=53, round=gmpy2.RoundDown)


def letter_index(spec: GroupSpec, kind: str, index: int, sign: int) -> int:
    code = index - 1 if kind == "e" else spec.k + index - 1
    return 2 * code + (0 if sign > 0 else 1)


def word_letters(word: Word) -> array:
    """Letters of a word in application order (rightmost first)."""
    spec = word.spec
    out = array("i")
    for gen, p in reversed(word.syllables):
        l = letter_index(spec, gen.kind, gen.index, 1 if p > 0 else -1)
        out.extend([l] * abs(p))
    return out


@dataclass
class LetterData:
    A: BallReal
    ratio: ComplexBall
    a2_lo: gmpy2.mpfr
    rmax: gmpy2.mpfr


class GeneratorSystem:
    """Generator images at any precision, with branch choices frozen once."""

    def __init__(self, spec: GroupSpec, images: Callable[[int], Sequence[Moebius]]):
        self.spec = spec
        self._images_fn = images
        self._images: dict[int, list[Moebius]] = {}
        self._tables: dict[int, list[LetterData]] = {}
        self.nletters = 2 * (spec.k + 2 * spec.n)
        base = self.letter_maps(128)
        self._branch = []
        for f in base:
            a = float(f.alpha.arg().mid)
            self._branch.append(Fraction(round(a / math.pi * 64), 64))
        self.canonical_shifts = self._canonical_shifts()

    def images(self, prec: int) -> list[Moebius]:
        imgs = self._images.get(prec)
        if imgs is None:
            imgs = self._images[prec] = list(self._images_fn(prec))
        return imgs

    def letter_maps(self, prec: int) -> list[Moebius]:
        out = []
        for f in self.images(prec):
            out += [f, inverse(f)]
        return out

    def table(self, prec: int) -> list[LetterData]:
        tab = self._tables.get(prec)
        if tab is not None:
            return tab
        pi = BallReal.pi(prec)
        tab = []
        for f, ref in zip(self.letter_maps(prec), self._branch):
            rot = ComplexBall.cis(-(pi * ref))
            u = f.alpha * rot
            if not u.re.is_positive():
                raise Inconclusive("argument branch lost")
            A = pi * ref + (u.im / u.re).atan()
            ratio = f.beta / f.alpha
            tab.append(LetterData(A, ratio, f.alpha.abs2().lo, ratio.abs2().sqrt().hi))
        self._tables[prec] = tab
        return tab

    def float_params(self, shifts: Sequence[int], prec: int = 128) -> array:
        out = array("d")
        for ld, s in zip(self.table(prec), shifts):
            am, ar = ld.A.float_enclosure()
            rm, rr = ld.ratio.re.float_enclosure()
            im, ir = ld.ratio.im.float_enclosure()
            a2 = float(_DOWN_53.add(ld.a2_lo, 0))
            rmax = float(_ONE_53.add(ld.rmax, 0))
            out.extend([am, ar, rm, im, max(rr, ir), a2, rmax, float(s)])
        return out

    def _canonical_shifts(self) -> list[int]:
        params = self.float_params([0] * self.nletters)
        maps = self.letter_maps(128)
        shifts = []
        for l, f in enumerate(maps):
            kind = classify(f)
            if kind is Kind.ELLIPTIC:
                y, r = kernel.eval_letters(params, array("i", [l]), 0.123, 0.0)
                disp = y - 0.123
                fl = math.floor(disp)
                if abs(disp - round(disp)) < 1e-9:
                    raise ValueError("elliptic generator with a boundary fixed point")
                shifts.append(-fl if l % 2 == 0 else -fl - 1)
            elif kind is Kind.HYPERBOLIC:
                att, _ = fixed_points(f)
                t = float(att.angle.mid)
                y, r = kernel.eval_letters(params, array("i", [l]), t, 0.0)
                shifts.append(-round(y - t))
            else:
                raise ValueError("generator image is neither elliptic nor hyperbolic")
        return shifts


class Lift:
    """A choice of lifts for every generator: canonical shifts plus per-letter extras."""

    def __init__(self, system: GeneratorSystem, extra: Sequence[int] = (), z_shift: int = 1):
        self.system = system
        extra = list(extra) + [0] * (system.nletters - len(extra))
        self.shifts = [c + e for c, e in zip(system.canonical_shifts, extra)]
        self.z_shift = z_shift
        self._fparams = system.float_params(self.shifts)

    def eval_float(self, letters: array, mid: float, rad: float) -> tuple[float, float]:
        return kernel.eval_letters(self._fparams, letters, mid, rad)

    def eval_ball(self, letters: Sequence[int], theta: BallReal) -> BallReal:
        prec = theta.prec
        tab = self.system.table(prec)
        pi = BallReal.pi(prec)
        two_pi = pi * 2
        two_pi_hi = two_pi.hi
        one = ComplexBall.exact(1, 0, prec)
        for l in letters:
            ld = tab[l]
            m = BallReal(theta.mid, gmpy2.mpfr(0), prec)
            w = one + ld.ratio * ComplexBall.cis(-(two_pi * m))
            if not w.re.is_positive():
                raise Inconclusive("lost the branch of the lifted map")
            val = m + (ld.A + (w.im / w.re).atan()) / pi + self.shifts[l]
            if theta.rad > 0:
                wlo = w.abs2().sqrt().lo
                wmin = _DOWN.sub(wlo, _UP.mul(_UP.mul(ld.rmax, two_pi_hi), theta.rad))
                if wmin <= 0:
                    raise Inconclusive("ball too wide for the derivative bound")
                lip = _UP.div(1, _DOWN.mul(ld.a2_lo, _DOWN.mul(wmin, wmin)))
                val = BallReal(val.mid, _UP.add(val.rad, _UP.mul(lip, theta.rad)), prec)
            theta = val
        return theta
