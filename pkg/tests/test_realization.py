import random
from fractions import Fraction

import pytest

from circorder import words as W
from circorder.realization import (FiniteOrderTable, RealizationError, check_embedding, enumerate_elements,
                                   is_dyadic, ord_angles, realize, roundtrip, word_length)
from circorder.words import GroupSpec

from conftest import handle_for


def table_from_angles(spec, angles):
    elems = enumerate_elements(spec, len(angles))
    lookup = dict(zip(elems, angles))
    return FiniteOrderTable.from_order(elems, lambda a, b, c: ord_angles(lookup[a], lookup[b], lookup[c]))


@pytest.mark.parametrize("seed", range(5))
def test_realize_recovers_any_cyclic_arrangement(seed):
    spec = GroupSpec.parse("1,1,2")
    rng = random.Random(seed)
    angles = [Fraction(0)] + [Fraction(x, 10**4) for x in rng.sample(range(1, 10**4), 24)]
    tab = table_from_angles(spec, angles)
    iota = realize(tab)
    assert check_embedding(tab, iota) == []
    assert all(is_dyadic(q) for q in iota)
    assert iota[0] == 0 and iota[1] == Fraction(1, 2)


def test_realize_with_offset_basepoint():
    spec = GroupSpec.parse("0,2,2,3")
    tab = table_from_angles(spec, [Fraction(k, 13) for k in (0, 5, 2, 9, 11, 1, 7)])
    iota = realize(tab, Fraction(3, 4))
    assert iota[0] == Fraction(3, 4)
    assert check_embedding(tab, iota) == []


def test_inconsistent_table_is_reported():
    spec = GroupSpec.parse("0,2,2,3")
    elems = enumerate_elements(spec, 4)
    tab = FiniteOrderTable(elems)
    for t in [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)]:
        tab.values[t] = 1
    # (0,1,2), (0,2,3) and (0,1,3) positive forces (1,2,3) positive; flip it
    tab.values[(1, 2, 3)] = -1
    with pytest.raises(RealizationError) as err:
        realize(tab)
    assert err.value.index == 3


def test_table_antisymmetry():
    spec = GroupSpec.parse("0,2,2,3")
    tab = table_from_angles(spec, [Fraction(0), Fraction(1, 3), Fraction(2, 3)])
    assert tab.value(0, 1, 2) == 1
    assert tab.value(1, 0, 2) == -1
    assert tab.value(2, 0, 1) == 1
    assert tab.value(0, 0, 2) == 0


def test_enumeration_is_length_ordered():
    spec = GroupSpec.parse("0,2,2,3")
    elems = enumerate_elements(spec, 40)
    assert elems[0].is_identity
    assert len(set(elems)) == 40
    lens = [word_length(w) for w in elems]
    assert lens == sorted(lens)
    # e1 (order 2) contributes one element of length 1, e2 two
    assert lens.count(1) == 3
    assert str(elems[1]) == "e1"


def test_word_length_counts_short_way_round():
    spec = GroupSpec.parse("0,2,2,5")
    assert word_length(W.gen_word(spec, W.E(2), 4)) == 1
    assert word_length(W.gen_word(spec, W.E(2), 3)) == 2


@pytest.mark.parametrize("d", [1, 7])
def test_roundtrip_on_group_order(d):
    rep = roundtrip(handle_for("0,2,2,3", d), 30)
    assert rep.ok, rep.text()
