import random

import pytest
from hypothesis import given, settings, strategies as st

from circorder import words as W
from circorder.certarith import Comparison
from circorder.circular import eval_c, random_word
from circorder.leftorder import (HatWord, LeftOrderHandle, automorphism_compat_check, center_image, central,
                                 cofinal_bounds, hat_compare, hat_gen, hat_identity, hat_inner, hat_invert,
                                 hat_less, hat_reduce, lift_word, project, project_order, window_lift,
                                 winding_number)
from circorder.words import E, GroupSpec, H

from conftest import handle_for

SPEC = GroupSpec.parse("0,2,2,3")


def random_hat(spec, rng, syl=6, zmax=3):
    return lift_word(random_word(spec, rng, max_syllables=syl), rng.randint(-zmax, zmax))


def test_relation_carries_into_center():
    assert hat_reduce(SPEC, [(E(1), 2)]) == central(SPEC, 1)
    assert hat_reduce(SPEC, [(E(2), -1)]) == HatWord(W.gen_word(SPEC, E(2), 2), -1)
    assert str(hat_reduce(SPEC, [(E(1), 1), (E(2), 3)])) == "e1 z"
    assert hat_gen(SPEC, E(2)) ** 3 == central(SPEC, 1)


@given(st.data())
@settings(max_examples=80, deadline=None)
def test_extension_group_laws(data):
    seed = data.draw(st.integers(0, 10**6))
    rng = random.Random(seed)
    spec = GroupSpec.parse(rng.choice(["0,2,2,3", "1,1,2", "0,3,2,2,2"]))
    a, b, c = (random_hat(spec, rng) for _ in range(3))
    z = central(spec, 1)
    assert (a * b) * c == a * (b * c)
    assert (a * hat_invert(a)).is_identity
    assert a * z == z * a
    assert project(a * b) == project(a) * project(b)


@pytest.fixture(scope="module", params=[1, 7])
def lh(request):
    return LeftOrderHandle(handle_for("0,2,2,3", request.param))


def test_order_axioms(lh):
    rng = random.Random(12)
    for _ in range(120):
        a, b, c, g = (random_hat(SPEC, rng) for _ in range(4))
        ab = hat_compare(lh, a, b)
        assert (ab is Comparison.EQUAL_AS_WORDS) == (a == b)
        assert hat_compare(lh, b, a).value == -ab.value
        assert hat_compare(lh, g * a, g * b) is ab
        if hat_less(lh, a, b) and hat_less(lh, b, c):
            assert hat_less(lh, a, c)


def test_center_is_positive_and_cofinal(lh):
    one = hat_identity(SPEC)
    assert hat_less(lh, one, central(SPEC, 1))
    rng = random.Random(3)
    for _ in range(60):
        a = random_hat(SPEC, rng)
        lo, hi = cofinal_bounds(lh, a)
        assert hi - lo in (1, 2)
        assert hat_less(lh, central(SPEC, lo), a) and hat_less(lh, a, central(SPEC, hi))


def test_window_lift(lh):
    rng = random.Random(8)
    one, z = hat_identity(SPEC), central(SPEC, 1)
    for _ in range(60):
        g = random_word(SPEC, rng, max_syllables=6)
        w = window_lift(lh, g)
        assert project(w) == g
        assert not hat_less(lh, w, one) and hat_less(lh, w, z)


def test_projection_recovers_circular_order(lh):
    rng = random.Random(21)
    for _ in range(150):
        g = [random_word(SPEC, rng, max_syllables=6) for _ in range(3)]
        assert project_order(lh, *g) == eval_c(lh.order, *g)


def test_winding_equals_z_exponent(lh):
    rng = random.Random(5)
    for _ in range(80):
        raw = [(rng.choice(SPEC.generators()), rng.choice([-2, -1, 1, 2, 3])) for _ in range(rng.randint(1, 10))]
        assert winding_number(lh, raw) == hat_reduce(SPEC, raw).z


def test_inner_automorphism_compatibility():
    h = LeftOrderHandle(handle_for("1,1,2", 1))
    spec = h.spec
    phi, inv = hat_inner(spec, hat_reduce(spec, [(H(1), 1), (E(1), 1)]))
    rng = random.Random(2)
    sample = [tuple(random_word(spec, rng, 5) for _ in range(3)) for _ in range(60)]
    assert automorphism_compat_check(h, phi, inv, sample).ok


def test_center_reversing_automorphism():
    # e_i -> e_i^{-1} on (0,3,(2,2,2)) sends z to z^{-1}
    h = LeftOrderHandle(handle_for("0,3,2,2,2", 1))
    spec = h.spec
    phi = {E(i): hat_gen(spec, E(i), -1) for i in (1, 2, 3)}
    assert center_image(spec, phi) == central(spec, -1)
    rng = random.Random(6)
    sample = [tuple(random_word(spec, rng, 5) for _ in range(3)) for _ in range(60)]
    assert automorphism_compat_check(h, phi, phi, sample).ok
    tw = LeftOrderHandle(h.order, phi)
    assert tw.z_sign == -1
    assert hat_less(tw, central(spec, 1), hat_identity(spec))


def test_non_automorphism_rejected():
    h = LeftOrderHandle(handle_for("0,2,2,3", 1))
    bad = {E(1): hat_gen(SPEC, E(1)), E(2): hat_gen(SPEC, E(1))}
    with pytest.raises(ValueError):
        automorphism_compat_check(h, bad, bad, [])
