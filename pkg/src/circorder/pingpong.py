"""A concrete Fuchsian realization of G and its certified ping-pong structure.

Layout.  The circle is cut into k + 4n equal slots.  Slot i-1 holds the petal
X_i = [x_{e_i}, e_i^-1 x_{e_i}] of the elliptic e_i; each pair h_j, h_{j+1}
(j odd) uses four consecutive slots A_j, R_{j+1}, R_j, A_{j+1}.  The map h_j
sends the complement of R_j = [x_j^-, x_j^+] onto A_j, with x_j^+ going to the
clockwise end of A_j.  All arcs have the same half-width w, and w is halved
until every check passes.

All points carry exact provenance (a marked point translated by a reduced
word), so identities between endpoints are decided by the word problem and
only genuine inequalities are left to ball arithmetic.
"""
from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from . import words as W
from .certarith import BallReal, ComplexBall, DomainError, Inconclusive, PrecisionPolicy, floor_div
from .lift import GeneratorSystem, Lift, word_letters
from .moebius import (CircleInterval, CirclePoint, Kind, Moebius, PointRef, arc_contains_arc,
                      arcs_intersect, boundary_map, classify, compose, elliptic_about,
                      fixed_points, identity as moebius_identity, inverse as moebius_inverse, in_closed_arc, in_open_arc,
                      interiors_intersect, ord3, reduce_angle, side_pairing)
from .report import Report
from .words import E, H, GroupSpec, Word, gen_word, invert, multiply, reduce


class ConfigurationError(ValueError):
    def __init__(self, message: str, report: Optional[Report] = None):
        super().__init__(message)
        self.report = report


@dataclass(frozen=True)
class GeometryParams:
    width_divisor: int = 6  # initial half-width is 1/(divisor * slots)
    max_halvings: int = 6
    precision_bits: int = 64
    precision_cap: int = 8192

    @property
    def policy(self) -> PrecisionPolicy:
        return PrecisionPolicy(self.precision_bits, self.precision_cap)


@dataclass(frozen=True)
class Geometry:
    spec: GroupSpec
    width: Fraction
    radii: tuple[Fraction, ...]

    @property
    def nslots(self) -> int:
        return self.spec.k + 4 * self.spec.n

    def slot(self, s: int) -> Fraction:
        return Fraction(2 * s + 1, 2 * self.nslots)

    def e_angle(self, i: int) -> Fraction:
        return self.slot(i - 1)

    def h_slots(self, j: int) -> tuple[Fraction, Fraction]:
        """(center of R_j, center of A_j)."""
        base = self.spec.k + 4 * ((j - 1) // 2)
        if j % 2:
            return self.slot(base + 2), self.slot(base)
        return self.slot(base + 1), self.slot(base + 3)

    def _center(self, i: int, prec: int) -> ComplexBall:
        two_pi = BallReal.pi(prec) * 2
        return ComplexBall.cis(two_pi * self.e_angle(i)) * BallReal.exact(self.radii[i - 1], prec)

    def images(self, prec: int) -> list[Moebius]:
        spec = self.spec
        out = []
        for i in range(1, spec.k + 1):
            f = elliptic_about(self._center(i, prec), spec.m[i - 1], prec)
            out.append(Moebius(f.alpha, f.beta, gen_word(spec, E(i))))
        for j in range(1, 2 * spec.n + 1):
            r, a = self.h_slots(j)
            f = side_pairing(r, a, self.width, prec)
            out.append(Moebius(f.alpha, f.beta, gen_word(spec, H(j))))
        return out

    def marked_angle(self, base: tuple, prec: int) -> BallReal:
        kind, idx = base
        if kind == "xp":
            return BallReal.exact(self.h_slots(idx)[0] + self.width, prec)
        if kind == "xm":
            return BallReal.exact(self.h_slots(idx)[0] - self.width, prec)
        # x_{e_i}: pulled back from the model position where e_i is a rotation about 0
        c = self._center(idx, prec)
        s = (1 - c.abs2()).sqrt()
        back = Moebius(ComplexBall(1 / s, BallReal.exact(0, prec)), c / s)
        m = self.spec.m[idx - 1]
        model = self.e_angle(idx) + Fraction(1, 2) + Fraction(1, 2 * m)
        return reduce_angle(boundary_map(back, BallReal.exact(model, prec)))

    def to_dict(self) -> dict:
        return {"width": str(self.width), "radii": [str(r) for r in self.radii],
                "slots": self.nslots}


def make_geometry(spec: GroupSpec, width: Fraction) -> Geometry:
    radii = []
    for m in spec.m:
        kappa = math.tan(math.pi * width) * math.tan(math.pi / (2 * m))
        r = (1 - kappa) / (1 + kappa)
        radii.append(Fraction(round(r * 2**48), 2**48))
    return Geometry(spec, Fraction(width), tuple(radii))


Arc = tuple[PointRef, PointRef]


def _tr(g: Word, ref: PointRef) -> PointRef:
    return ref.translate(g)


def _tr_arc(g: Word, arc: Arc) -> Arc:
    return _tr(g, arc[0]), _tr(g, arc[1])


def _off(ref: PointRef, eps: Fraction) -> PointRef:
    return PointRef(("off", ref, eps), W.identity(ref.word.spec))


@dataclass(frozen=True)
class AttractingDomain:
    owner: tuple[int, int]  # (S-generator index, +-1)
    components: tuple[CircleInterval, ...]
    arcs: tuple[Arc, ...] = field(repr=False, default=())


class PingPongConfig:
    def __init__(self, spec: GroupSpec, geometry: Geometry, params: GeometryParams = GeometryParams()):
        if spec.excluded:
            raise ConfigurationError(f"spec {spec} is excluded")
        self.spec = spec
        self.geometry = geometry
        self.params = params
        self.policy = params.policy
        self.system = GeneratorSystem(spec, geometry.images)
        self.lift = Lift(self.system)
        self.basis = W.s_basis(spec)
        self.alpha = W.alpha(spec)
        self.one = W.identity(spec)
        self.epsilon: Optional[Fraction] = None
        self.flags = {"generators": False, "transitions": False, "intersections": False,
                      "domains": False, "pingpong": False}
        self.reports: dict[str, Report] = {}
        self._angles: dict[tuple[PointRef, int], BallReal] = {}
        self._moebius: dict[tuple[Word, int], Moebius] = {}

    # -- points -----------------------------------------------------------------
    @property
    def verified(self) -> bool:
        return all(self.flags.values())

    def xe(self, i: int) -> PointRef:
        return PointRef(("xe", i), self.one)

    def xp(self, j: int) -> PointRef:
        return PointRef(("xp", j), self.one)

    def xm(self, j: int) -> PointRef:
        return PointRef(("xm", j), self.one)

    def word_moebius(self, word: Word, prec: int) -> Moebius:
        key = (word, prec)
        f = self._moebius.get(key)
        if f is None:
            imgs = self.system.images(prec)
            f = moebius_identity(prec, self.one)
            for gen, p in word.syllables:
                g = imgs[gen.index - 1 if gen.kind == "e" else self.spec.k + gen.index - 1]
                if p < 0:
                    g = moebius_inverse(g)
                for _ in range(abs(p)):
                    f = compose(f, g)
            self._moebius[key] = f
        return f

    def base_angle(self, base: tuple, prec: int) -> BallReal:
        kind = base[0]
        if kind in ("xe", "xp", "xm"):
            return self.geometry.marked_angle(base, prec)
        if kind == "angle":
            return BallReal.exact(base[1], prec)
        if kind == "off":
            return self.angle(base[1], prec) + base[2]
        if kind in ("fix+", "fix-"):
            att, rep = fixed_points(self.word_moebius(base[1], prec))
            return (att if kind == "fix+" else rep).angle
        raise ValueError(f"unknown base point {base!r}")

    def angle(self, ref: PointRef, prec: int) -> BallReal:
        """Angle of the point in [0, 1) turns, at the given precision."""
        key = (ref, prec)
        a = self._angles.get(key)
        if a is None:
            a = self.base_angle(ref.base, prec)
            if ref.word is not None and not ref.word.is_identity:
                a = self.lift.eval_ball(word_letters(ref.word), a)
            a = reduce_angle(a)
            self._angles[key] = a
        return a

    def point(self, ref: PointRef, prec: Optional[int] = None) -> CirclePoint:
        p = prec or self.policy.start
        return CirclePoint(self.angle(ref, p), ref, lambda q, ref=ref: self.angle(ref, q))

    def interval(self, arc: Arc, prec: Optional[int] = None) -> CircleInterval:
        return CircleInterval(self.point(arc[0], prec), self.point(arc[1], prec))

    # -- named arcs (as provenance pairs) ---------------------------------------
    def arc_J(self, i: int) -> Arc:
        k, n = self.spec.k, self.spec.n
        if not 1 <= i <= k:
            raise IndexError(f"J_{i} out of range")
        left = _tr(gen_word(self.spec, E(i), -1), self.xe(i))
        if i < k:
            return left, self.xe(i + 1)
        if n == 0:
            return left, self.xe(1)
        return left, _tr(gen_word(self.spec, H(1)), self.xp(1))

    def arc_K(self, i: int, sign: int) -> Arc:
        n2 = 2 * self.spec.n
        if not 1 <= i <= n2:
            raise IndexError(f"K_{i} out of range")
        h = lambda j: gen_word(self.spec, H(j))
        if sign > 0:
            if i % 2:
                return self.xp(i), _tr(h(i + 1), self.xp(i + 1))
            return self.xp(i), self.xm(i - 1)
        left = _tr(h(i), self.xm(i))
        if i % 2:
            return left, self.xm(i + 1)
        if i < n2:
            return left, _tr(h(i + 1), self.xp(i + 1))
        return left, self.xe(1)

    def arc_Jlambda(self, t: int, lam: Sequence[int], sign: int) -> Arc:
        lam = tuple(lam)
        if not 2 <= t <= self.spec.k or lam not in W.lambda_set(self.spec, t):
            raise ValueError(f"invalid lambda {lam} for t={t}")
        spec = self.spec
        w = reduce(spec, [(E(s), lam[s - 1]) for s in range(t - 1, 0, -1)])
        u = lam[t - 1]
        et = lambda p: gen_word(spec, E(t), p)
        if sign < 0:
            return _tr(w * et(u - 1), self.xe(t)), _tr(w * et(u), self.xe(t))
        return _tr(et(u) * w, self.xe(t)), _tr(et(u) * w * et(-1), self.xe(t))

    def arc_Jh(self, l: int, sign: int) -> Arc:
        if not 1 <= l <= 2 * self.spec.n:
            raise IndexError(f"h_{l} out of range")
        if sign < 0:
            return self.xm(l), self.xp(l)
        h = gen_word(self.spec, H(l))
        return _tr(h, self.xp(l)), _tr(h, self.xm(l))

    def s_arc(self, idx: int, sign: int) -> Arc:
        """g_xi(J_lambda^+-) or e^i(J_{h_l}^+-) for the S-generator idx."""
        s = self.basis[idx]
        if s.kind == "S1":
            g = W.g_xi(self.spec, s.t, s.xi)
            return _tr_arc(g, self.arc_Jlambda(s.t, s.lam, sign))
        return _tr_arc(W.sorted_rep(self.spec, s.tup), self.arc_Jh(s.l, sign))

    def coset_points(self) -> list[PointRef]:
        return [_tr(W.sorted_rep(self.spec, c), self.xe(1)) for c in W.coset_tuples(self.spec)]

    def gap_endpoints(self) -> tuple[PointRef, PointRef]:
        """(repelling, attracting) fixed points of alpha: the gap around x_{e_1}."""
        return PointRef(("fix-", self.alpha), self.one), PointRef(("fix+", self.alpha), self.one)

    # -- domains ------------------------------------------------------------------
    def domain_arc(self, idx: int, sign: int, eps: Fraction) -> Arc:
        s = self.basis[idx]
        if s.kind == "S2":
            return self.s_arc(idx, sign)
        a, b = self.s_arc(idx, 1)
        if sign > 0:
            return _off(a, -eps), _off(b, eps)
        inv = invert(s.word)
        return _tr(inv, _off(b, eps)), _tr(inv, _off(a, -eps))

    def letters(self) -> list[tuple[int, int]]:
        return [(i, sgn) for i in range(len(self.basis)) for sgn in (1, -1)]

    def domain_arcs(self, eps: Optional[Fraction] = None) -> dict[tuple[int, int], Arc]:
        eps = self.epsilon if eps is None else eps
        if eps is None:
            raise ValueError("epsilon not set; run the domain search first")
        return {lt: self.domain_arc(lt[0], lt[1], eps) for lt in self.letters()}

    # -- certification -------------------------------------------------------------
    def certify(self) -> bool:
        rep = check_generators(self)
        self.reports["generators"] = rep
        self.flags["generators"] = rep.ok
        if not rep.ok:
            return False
        rep = check_transitions(self)
        self.reports["transitions"] = rep
        self.flags["transitions"] = rep.ok
        if not rep.ok:
            return False
        rep = check_intersections(self)
        self.reports["intersections"] = rep
        self.flags["intersections"] = rep.ok
        if not rep.ok:
            return False
        rep = search_epsilon(self)
        self.reports["domains"] = rep
        self.flags["domains"] = rep.ok
        if not rep.ok:
            return False
        rep = check_pingpong(self)
        self.reports["pingpong"] = rep
        self.flags["pingpong"] = rep.ok
        return rep.ok

    def full_report(self) -> Report:
        out = Report(f"configuration {self.spec}")
        for key in ("generators", "transitions", "intersections", "domains", "pingpong"):
            if key in self.reports:
                out.extend(self.reports[key])
        return out

    def to_dict(self) -> dict:
        text = self.full_report().text().encode()
        return {
            "spec": str(self.spec),
            "geometry": self.geometry.to_dict(),
            "precision_bits": self.params.precision_bits,
            "precision_cap": self.params.precision_cap,
            "epsilon": None if self.epsilon is None else str(self.epsilon),
            "flags": dict(self.flags),
            "report_sha256": hashlib.sha256(text).hexdigest(),
        }


def build_configuration(spec: GroupSpec, params: GeometryParams = GeometryParams()) -> PingPongConfig:
    if spec.excluded:
        raise ConfigurationError(f"spec {spec} is excluded")
    width = Fraction(1, params.width_divisor * (spec.k + 4 * spec.n))
    last: Optional[PingPongConfig] = None
    for _ in range(params.max_halvings + 1):
        cfg = PingPongConfig(spec, make_geometry(spec, width), params)
        try:
            if cfg.certify():
                return cfg
        except (Inconclusive, DomainError) as exc:
            cfg.reports.setdefault("error", Report("error")).add("certification", "inconclusive", str(exc))
        last = cfg
        width /= 2
    rep = last.full_report() if last else None
    first = rep.failures()[0] if rep and rep.failures() else None
    raise ConfigurationError(f"no certified configuration for {spec}; first failure: {first}", rep)


# -- named intervals as circle arcs ---------------------------------------------


def interval_J(config: PingPongConfig, i: int) -> CircleInterval:
    return config.interval(config.arc_J(i))


def interval_K(config: PingPongConfig, i: int, sign: int) -> CircleInterval:
    return config.interval(config.arc_K(i, sign))


def interval_Jlambda(config: PingPongConfig, t: int, lam: Sequence[int], sign: int) -> CircleInterval:
    return config.interval(config.arc_Jlambda(t, lam, sign))


def interval_Jh(config: PingPongConfig, l: int, sign: int) -> CircleInterval:
    return config.interval(config.arc_Jh(l, sign))


# -- checks ---------------------------------------------------------------------


def check_generators(config: PingPongConfig) -> Report:
    rep = Report("generator images")
    spec = config.spec
    prec = config.policy.start
    imgs = config.system.images(prec)
    for i in range(1, spec.k + 1):
        f = imgs[i - 1]
        g = f
        for _ in range(spec.m[i - 1] - 1):
            g = compose(g, f)
        # +-identity in SU(1,1) is the identity of PSU(1,1)
        ok = classify(f) is Kind.ELLIPTIC and g.beta.contains(0, 0) and \
            (g.alpha.contains(1, 0) or g.alpha.contains(-1, 0))
        rep.add(f"e{i} elliptic of order {spec.m[i - 1]}", "certified" if ok else "failed")
    for j in range(1, 2 * spec.n + 1):
        f = imgs[spec.k + j - 1]
        ok = classify(f) is Kind.HYPERBOLIC
        rep.add(f"h{j} hyperbolic", "certified" if ok else "failed")
    return rep


def _chain(config: PingPongConfig) -> list[tuple[Word, Arc]]:
    """Translated arcs J_0, e_1 J_1, ..., ending at alpha J_0."""
    spec = config.spec
    one = config.one
    n, k = spec.n, spec.k
    J0 = config.arc_K(2 * n, -1) if n else config.arc_J(k)
    out = [(one, J0)]
    g = one
    for i in range(1, k + 1):
        g = g * gen_word(spec, E(i))
        out.append((g, config.arc_J(i)))
    for b in range(n):
        j = 2 * b + 1
        hj, hj1 = gen_word(spec, H(j)), gen_word(spec, H(j + 1))
        out.append((g * hj, config.arc_K(j, 1)))
        out.append((g * hj * hj1, config.arc_K(j + 1, 1)))
        out.append((g * hj * hj1 * invert(hj), config.arc_K(j, -1)))
        g = g * W.commutator(hj, hj1)
        out.append((g, config.arc_K(j + 1, -1)))
    return out


def check_transitions(config: PingPongConfig) -> Report:
    rep = Report("transition identities")
    spec = config.spec
    n, k = spec.n, spec.k
    h = lambda j, p=1: gen_word(spec, H(j), p)

    def ident(name: str, lhs: PointRef, rhs: PointRef) -> None:
        rep.add(name, "symbolic" if lhs == rhs else "failed", f"{lhs} = {rhs}")

    J = lambda i: (config.arc_K(2 * n, -1) if n else config.arc_J(k)) if i == 0 else config.arc_J(i)
    for i in range(1, k + 1):
        rhs = _tr(gen_word(spec, E(i)), J(i)[0])
        ident(f"d+(J_{i - 1}) = d-(e{i} J_{i})", J(i - 1)[1], rhs)
    for j in range(1, 2 * n + 1):
        if j % 2:
            ident(f"d+(K_{j}^+) = d-(h{j + 1} K_{j + 1}^+)", config.arc_K(j, 1)[1],
                  _tr(h(j + 1), config.arc_K(j + 1, 1)[0]))
            ident(f"d+(K_{j}^-) = d-(h{j + 1}^-1 K_{j + 1}^-)", config.arc_K(j, -1)[1],
                  _tr(h(j + 1, -1), config.arc_K(j + 1, -1)[0]))
            prev = config.arc_J(k) if j == 1 else config.arc_K(j - 1, -1)
            ident(f"d+(K_{j - 1}^-) = d-(h{j} K_{j}^+)", prev[1], _tr(h(j), config.arc_K(j, 1)[0]))
        else:
            ident(f"d+(K_{j}^+) = d-(h{j - 1}^-1 K_{j - 1}^-)", config.arc_K(j, 1)[1],
                  _tr(h(j - 1, -1), config.arc_K(j - 1, -1)[0]))
    chain = _chain(config)
    links_ok = all(_tr(g1, a1[1]) == _tr(g2, a2[0]) for (g1, a1), (g2, a2) in zip(chain, chain[1:]))
    g_last, a_last = chain[-1]
    closes = g_last == config.alpha and a_last == chain[0][1]
    rep.add(f"chain of {len(chain)} arcs closes up under alpha = {config.alpha}",
            "symbolic" if links_ok and closes else "failed")
    lo, hi = config.gap_endpoints()
    fixed = _tr(config.alpha, lo) == lo and _tr(config.alpha, hi) == hi
    rep.add("alpha fixes both gap endpoints", "symbolic" if fixed else "failed")
    try:
        gap = config.interval((lo, hi))
        inside = True
        for g, arc in chain:
            for end in arc:
                inside &= in_open_arc(config.point(_tr(g, end)), gap, config.policy)
        x = config.point(config.xe(1))
        ax = config.point(_tr(config.alpha, config.xe(1)))
        moves = ord3(x, ax, gap.right, config.policy) == 1
        rep.add("chain lies inside the gap (fix-(alpha), fix+(alpha))", "certified" if inside else "failed")
        rep.add("alpha pushes x_e1 towards fix+(alpha)", "certified" if moves else "failed")
    except (Inconclusive, DomainError) as exc:
        rep.add("gap around x_e1", "inconclusive", str(exc))
    return rep


def _pairs_report(rep: Report, name: str, results: Iterable[tuple[bool, str]]) -> None:
    total = 0
    for ok, label in results:
        total += 1
        if not ok:
            rep.add(name, "failed", label)
            return
    rep.add(name, "certified", f"{total} pairs")


def check_intersections(config: PingPongConfig, policy: Optional[PrecisionPolicy] = None) -> Report:
    """Pairwise relations among g_xi(J_lambda^+-), e^i(J_{h_l}^+-) and the coset points."""
    pol = policy or config.policy
    prec = pol.start
    rep = Report("intersection pattern")
    basis = config.basis
    s1 = [s.index for s in basis if s.kind == "S1"]
    s2 = [s.index for s in basis if s.kind == "S2"]
    iv = lambda idx, sgn: config.interval(config.s_arc(idx, sgn), prec)
    meet = lambda a, b: arcs_intersect(a, b, pol)
    try:
        _pairs_report(rep, "i) S1 plus arcs meet iff equal", (
            (meet(iv(a, 1), iv(b, 1)) == (a == b), f"{basis[a]} vs {basis[b]}")
            for a in s1 for b in s1))
        _pairs_report(rep, "ii) S1 minus arcs: interiors meet iff equal", (
            (interiors_intersect(iv(a, -1), iv(b, -1), pol) == (a == b), f"{basis[a]} vs {basis[b]}")
            for a in s1 for b in s1))
        _pairs_report(rep, "iii) S1 plus vs S1 minus disjoint", (
            (not meet(iv(a, 1), iv(b, -1)), f"{basis[a]} vs {basis[b]}") for a in s1 for b in s1))
        _pairs_report(rep, "iv) S1 plus vs S2 arcs disjoint", (
            (not meet(iv(a, 1), iv(b, sg)), f"{basis[a]} vs {basis[b]}")
            for a in s1 for b in s2 for sg in (1, -1)))
        _pairs_report(rep, "v) S1 minus vs S2 arcs disjoint", (
            (not meet(iv(a, -1), iv(b, sg)), f"{basis[a]} vs {basis[b]}")
            for a in s1 for b in s2 for sg in (1, -1)))
        _pairs_report(rep, "vi) S2 plus vs S2 minus disjoint", (
            (not meet(iv(a, 1), iv(b, -1)), f"{basis[a]} vs {basis[b]}") for a in s2 for b in s2))
        _pairs_report(rep, "vii) S2 same-sign arcs meet iff equal", (
            (meet(iv(a, sg), iv(b, sg)) == (a == b), f"{basis[a]} vs {basis[b]}")
            for a in s2 for b in s2 for sg in (1, -1)))
        pts = [config.point(r, prec) for r in config.coset_points()]
        _pairs_report(rep, "coset points avoid S1 arcs", (
            (not in_closed_arc(p, iv(a, sg), pol), f"{p.ref} in {basis[a]}")
            for p in pts for a in s1 for sg in (1, -1)))
        _pairs_report(rep, "coset points avoid S2 arcs", (
            (not in_closed_arc(p, iv(a, sg), pol), f"{p.ref} in {basis[a]}")
            for p in pts for a in s2 for sg in (1, -1)))
    except (Inconclusive, DomainError) as exc:
        rep.add("intersection pattern", "inconclusive", str(exc))
    return rep


def _disjoint_family(config: PingPongConfig, arcs: Sequence[Arc], points: Sequence[PointRef],
                     prec: int) -> Optional[str]:
    """None if all closed arcs and points are pairwise disjoint, else a description."""
    pol = config.policy
    ivs = [config.interval(a, prec) for a in arcs]
    pts = [config.point(p, prec) for p in points]
    for i in range(len(ivs)):
        for j in range(i + 1, len(ivs)):
            if arcs_intersect(ivs[i], ivs[j], pol):
                return f"{ivs[i]} meets {ivs[j]}"
        for p in pts:
            if in_closed_arc(p, ivs[i], pol):
                return f"{p.ref} in {ivs[i]}"
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            if pts[i].same(pts[j]):
                return f"{pts[i].ref} repeated"
    return None


def _eps_ok(config: PingPongConfig, eps: Fraction) -> bool:
    arcs = list(config.domain_arcs(eps).values())
    try:
        return _disjoint_family(config, arcs, config.coset_points(), config.policy.start) is None
    except (Inconclusive, DomainError):
        return False


def search_epsilon(config: PingPongConfig, iterations: int = 20) -> Report:
    """Largest dyadic thickening (bisection on the exponent, then the mantissa) keeping all domains and coset points disjoint."""
    rep = Report("attracting domains")
    ndom = 2 * len(config.basis)
    top = math.ceil(math.log2(8 * ndom))
    if not _eps_ok(config, Fraction(1, 2**40)):
        rep.add("epsilon search", "failed", "no admissible thickening above 2^-40")
        return rep
    # scales differ by many orders of magnitude: search the exponent first
    e_ok, e_bad = 40, top - 1
    if _eps_ok(config, Fraction(1, 2**top)):
        e_ok = top
    while e_ok - e_bad > 1 and e_ok > top:
        mid = (e_ok + e_bad) // 2
        if _eps_ok(config, Fraction(1, 2**mid)):
            e_ok = mid
        else:
            e_bad = mid
    lo = Fraction(1, 2**e_ok)
    best = lo
    if e_ok > top:
        hi = 2 * lo
        for _ in range(iterations // 2):
            mid = (lo + hi) / 2
            if _eps_ok(config, mid):
                lo = mid
            else:
                hi = mid
        best = lo
    config.epsilon = best
    rep.add(f"{ndom} domains and {config.spec.order_product} coset points pairwise disjoint",
            "certified", f"epsilon = {best}")
    return rep


def check_pingpong(config: PingPongConfig) -> Report:
    """s maps the complement of D(s^-1) into D(s), for every letter s."""
    rep = Report("ping-pong inclusions")
    pol = config.policy
    arcs = config.domain_arcs()
    try:
        for (idx, sgn), (a, b) in arcs.items():
            inv_a, inv_b = arcs[(idx, -sgn)]
            s = config.basis.letter_word(idx, sgn)
            image = config.interval((_tr(s, inv_b), _tr(s, inv_a)))
            ok = arc_contains_arc(config.interval((a, b)), image, pol)
            name = f"{config.basis[idx]}{'' if sgn > 0 else '^-1'}"
            rep.add(f"{name} (S1 - D(s^-1)) in D(s)", "certified" if ok else "failed")
    except (Inconclusive, DomainError) as exc:
        rep.add("ping-pong inclusions", "inconclusive", str(exc))
    return rep


def attracting_domains(config: PingPongConfig) -> list[AttractingDomain]:
    if config.epsilon is None:
        search_epsilon(config)
    out = []
    for (idx, sgn), arc in config.domain_arcs().items():
        out.append(AttractingDomain((idx, sgn), (config.interval(arc),), (arc,)))
    return out


# -- combinatorial cyclic order ---------------------------------------------------


@dataclass
class CombinatorialData:
    """Finite data determining the cyclic order of the orbit of the basepoint.

    Objects are components of domains in the d-fold cover, ("dom", letter, c),
    and the lifted coset points, ("pt", coset tuple).  ``position`` gives the
    counterclockwise order of all objects, ``table[(letter, obj)]`` is the
    component of D(letter) containing the image of obj.
    """

    d: int
    objects: list[tuple]
    position: dict[tuple, int]
    table: dict[tuple, tuple]
    inverse_letter: dict[tuple[int, int], tuple[int, int]]

    def cyclic(self, a: tuple, b: tuple, c: tuple) -> int:
        pa, pb, pc = self.position[a], self.position[b], self.position[c]
        if len({pa, pb, pc}) < 3:
            return 0
        return 1 if (pa < pb < pc) or (pb < pc < pa) or (pc < pa < pb) else -1


def _locate(value: BallReal, start: BallReal, length: BallReal, d: int) -> Optional[int]:
    u = value - start
    k = floor_div(u.mid, d)
    u = u - k * d
    c = u.certain_floor()
    if c is None or not 0 <= c < d:
        return None
    frac = u - c
    if frac.lo >= 0 and frac.certainly_lt(length):
        return c
    return None


def extract_data(config: PingPongConfig, lift: Optional[Lift] = None, d: int = 1) -> CombinatorialData:
    lift = lift or config.lift
    arcs = config.domain_arcs()
    cosets = W.coset_tuples(config.spec)
    letters = config.letters()
    for prec in config.policy.ladder():
        try:
            return _extract(config, lift, d, arcs, cosets, letters, prec)
        except (Inconclusive, DomainError):
            continue
    raise Inconclusive("could not extract combinatorial data")


def _extract(config, lift, d, arcs, cosets, letters, prec) -> CombinatorialData:
    starts: dict[tuple, BallReal] = {}
    lengths: dict[tuple[int, int], BallReal] = {}
    base = config.angle(config.xe(1), prec)
    for lt in letters:
        a, b = arcs[lt]
        A = config.angle(a, prec)
        L = config.angle(b, prec) - A
        if L.hi < 0:
            L = L + 1
        if not (L.lo > 0 and L.hi < 1):
            raise Inconclusive("domain length")
        lengths[lt] = L
        for c in range(d):
            starts[("dom", lt, c)] = A + c
    for tup in cosets:
        rep = W.sorted_rep(config.spec, tup)
        v = lift.eval_ball(word_letters(rep), base)
        k = floor_div(v.mid, d)
        starts[("pt", tup)] = v - k * d
    objs = sorted(starts, key=lambda o: float(starts[o].mid))
    for o1, o2 in zip(objs, objs[1:]):
        if not starts[o1].certainly_lt(starts[o2]):
            raise Inconclusive("objects not separated")
    position = {o: i for i, o in enumerate(objs)}
    table: dict[tuple, tuple] = {}
    for lt in letters:
        word = config.basis.letter_word(*lt)
        lets = word_letters(word)
        inv = (lt[0], -lt[1])
        for o in objs:
            if o[0] == "dom" and o[1] == inv:
                continue
            v = lift.eval_ball(lets, starts[o])
            c = _locate(v, starts[("dom", lt, 0)], lengths[lt], d)
            if c is None:
                raise Inconclusive(f"cannot place the image of {o} under {lt}")
            table[(lt, o)] = ("dom", lt, c)
    inverse_letter = {lt: (lt[0], -lt[1]) for lt in letters}
    return CombinatorialData(d, objs, position, table, inverse_letter)


def _level1(data: CombinatorialData, item: tuple) -> tuple:
    if item[0] == "ref":
        return item[1]
    _, w, tup = item
    obj: tuple = ("pt", tup)
    for lt in reversed(w):
        obj = data.table[(lt, obj)]
    return obj


def combinatorial_cyclic_order(data: CombinatorialData,
                               u1: tuple[Sequence[tuple[int, int]], tuple[int, ...]],
                               u2: tuple[Sequence[tuple[int, int]], tuple[int, ...]],
                               u3: tuple[Sequence[tuple[int, int]], tuple[int, ...]]) -> int:
    """Cyclic order of w_1 g_1 x, w_2 g_2 x, w_3 g_3 x from the finite data only.

    Each u is (freely reduced S-word as (index, +-1) letters, coset tuple).
    """
    items = []
    for w, tup in (u1, u2, u3):
        w = tuple(w)
        if W.free_reduce(w) != w:
            raise ValueError("S-word is not freely reduced")
        items.append(("pt", w, tuple(tup)))
    if items[0] == items[1] or items[1] == items[2] or items[0] == items[2]:
        return 0
    while True:
        objs = [_level1(data, it) for it in items]
        if len(set(objs)) == 3:
            return data.cyclic(*objs)
        if objs[0] == objs[1] == objs[2]:
            lt = items[0][1][0]
            items = [("pt", it[1][1:], it[2]) for it in items]
            continue
        a, b = (0, 1) if objs[0] == objs[1] else ((0, 2) if objs[0] == objs[2] else (1, 2))
        c = 3 - a - b
        if objs[a][0] != "dom" or items[a][0] != "pt" or items[b][0] != "pt":
            raise ValueError("inconsistent combinatorial data")
        lt = items[a][1][0]
        new = list(items)
        new[a] = ("pt", items[a][1][1:], items[a][2])
        new[b] = ("pt", items[b][1][1:], items[b][2])
        new[c] = ("ref", ("dom", data.inverse_letter[lt], 0))
        items = new


def element_of(config: PingPongConfig, w: Sequence[tuple[int, int]], tup: Sequence[int]) -> Word:
    """The group element w * (sorted coset representative)."""
    return multiply(config.basis.expand(w), W.sorted_rep(config.spec, tup))


def export_svg(config: PingPongConfig, options=None) -> str:
    from .svg import SvgOptions, render
    return render(config, options or SvgOptions())
