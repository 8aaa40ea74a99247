"""Finite stage of the dynamical realization: place g_0, g_1, ... on the circle
one at a time, each at the midpoint of the gap it must occupy.

Angles are exact dyadic Fractions in [0, 1), so all order checks are exact.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence

from . import words as W
from .report import Report
from .words import GroupSpec, Word


class RealizationError(ValueError):
    def __init__(self, message: str, index: int):
        super().__init__(message)
        self.index = index


@dataclass
class FiniteOrderTable:
    elements: list[Word]
    values: dict[tuple[int, int, int], int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not self.elements or not self.elements[0].is_identity:
            raise ValueError("the enumeration must start with the identity")

    @classmethod
    def from_order(cls, elements: Sequence[Word], c: Callable[[Word, Word, Word], int]) -> "FiniteOrderTable":
        tab = cls(list(elements))
        for i, j, k in itertools.combinations(range(len(elements)), 3):
            tab.values[(i, j, k)] = c(elements[i], elements[j], elements[k])
        return tab

    def __len__(self) -> int:
        return len(self.elements)

    def value(self, i: int, j: int, k: int) -> int:
        """c(g_i, g_j, g_k), using antisymmetry to reach the stored sorted triple."""
        if i == j or j == k or i == k:
            return 0
        trip = (i, j, k)
        order = sorted(trip)
        v = self.values[tuple(order)]
        # parity of the permutation taking the sorted triple to (i, j, k)
        perm = [order.index(x) for x in trip]
        inversions = sum(1 for a in range(3) for b in range(a + 1, 3) if perm[a] > perm[b])
        return v if inversions % 2 == 0 else -v


def ord_angles(a: Fraction, b: Fraction, c: Fraction) -> int:
    """Exact cyclic order of three angles in [0, 1)."""
    if a == b or b == c or a == c:
        return 0
    u, v = (b - a) % 1, (c - a) % 1
    return 1 if u < v else -1


def realize(table: FiniteOrderTable, x0: Fraction = Fraction(0)) -> list[Fraction]:
    x0 = Fraction(x0) % 1
    n = len(table)
    iota = [x0]
    if n == 1:
        return iota
    iota.append((x0 + Fraction(1, 2)) % 1)
    for new in range(2, n):
        ring = sorted(range(new), key=lambda i: iota[i])
        slots = []
        for pos, i in enumerate(ring):
            j = ring[(pos + 1) % new]
            if table.value(i, new, j) == 1:
                slots.append((i, j))
        if len(slots) != 1:
            raise RealizationError(
                f"element {new} ({table.elements[new]}) fits {len(slots)} gaps", new)
        i, j = slots[0]
        a, b = iota[i], iota[j]
        if b <= a:
            b += 1
        iota.append(((a + b) / 2) % 1)
    return iota


def is_dyadic(q: Fraction) -> bool:
    den = q.denominator
    return den & (den - 1) == 0


def check_embedding(table: FiniteOrderTable, iota: Sequence[Fraction]) -> list[tuple[int, int, int]]:
    """Triples whose table value disagrees with the cyclic order of the angles."""
    return [t for t, v in table.values.items() if ord_angles(*(iota[i] for i in t)) != v]


def word_length(w: Word) -> int:
    """Length over the alphabet e_i^{+-1}, h_j^{+-1}."""
    spec = w.spec
    return sum(min(p, spec.order_of(g) - p) if g.kind == "e" else abs(p) for g, p in w.syllables)


def enumerate_elements(spec: GroupSpec, count: int) -> list[Word]:
    """First `count` distinct elements in length-lexicographic order.

    Letters are ordered e_1, e_1^-1, ..., e_k, e_k^-1, h_1, h_1^-1, ...; see
    word_length.  Within a length, words come in the order they are reached by
    appending letters to the previous layer.
    """
    letters = []
    for g in spec.generators():
        letters.append(W.gen_word(spec, g, 1))
        letters.append(W.gen_word(spec, g, -1))
    seen = {W.identity(spec)}
    out = [W.identity(spec)]
    frontier = [W.identity(spec)]
    while len(out) < count and frontier:
        nxt = []
        for w in frontier:
            for l in letters:
                v = w * l
                if v not in seen and word_length(v) == word_length(w) + 1:
                    seen.add(v)
                    out.append(v)
                    nxt.append(v)
                    if len(out) == count:
                        return out
        frontier = nxt
    return out


@dataclass
class RealizationRun:
    elements: list[Word]
    table: FiniteOrderTable
    angles: Optional[list[Fraction]]
    report: Report


def realize_order(h, depth: int, x0: Fraction = Fraction(0)) -> RealizationRun:
    """Tabulate c^(d) on the first `depth` elements, realize it, and re-extract."""
    from .circular import eval_c

    rep = Report(f"realization round trip, {h.spec}, d = {h.d}, depth {depth}")
    elements = enumerate_elements(h.spec, depth)
    table = FiniteOrderTable.from_order(elements, lambda a, b, c: eval_c(h, a, b, c))
    rep.add(f"table of {len(table.values)} triples from {len(elements)} elements", "certified")
    try:
        iota = realize(table, x0)
    except RealizationError as exc:
        rep.add("realization", "failed", str(exc))
        return RealizationRun(elements, table, None, rep)
    bad = check_embedding(table, iota)
    rep.add(f"re-extracted order: {len(bad)} mismatches", "exact" if not bad else "failed",
            "" if not bad else f"first at {bad[0]}")
    dy = all(is_dyadic(q) for q in iota)
    rep.add("all angles are dyadic rationals", "exact" if dy else "failed")
    return RealizationRun(elements, table, iota, rep)


def roundtrip(h, depth: int, x0: Fraction = Fraction(0)) -> Report:
    return realize_order(h, depth, x0).report
