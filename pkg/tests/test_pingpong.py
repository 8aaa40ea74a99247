import random
from fractions import Fraction

import pytest

from circorder.circular import eval_c
from circorder.pingpong import (ConfigurationError, GeometryParams, attracting_domains, build_configuration,
                                check_intersections, check_transitions, combinatorial_cyclic_order,
                                element_of, extract_data, export_svg)
from circorder.words import GroupSpec, coset_tuples, free_reduce

from conftest import SPECS, config_for, handle_for


@pytest.mark.parametrize("spec", SPECS)
def test_configuration_certifies(spec):
    cfg = config_for(spec)
    assert cfg.verified
    rep = cfg.full_report()
    assert rep.ok, rep.text()
    kinds = {e.status for e in cfg.reports["transitions"].entries}
    assert kinds <= {"symbolic", "certified"}
    assert "symbolic" in kinds
    assert Fraction(1, 2**40) <= cfg.epsilon <= Fraction(1, 8 * 2 * len(cfg.basis))


@pytest.mark.parametrize("spec", ["0,2,2,2", "0,1,3"])
def test_excluded_specs_rejected(spec):
    with pytest.raises(ConfigurationError):
        build_configuration(GroupSpec.parse(spec))


@pytest.mark.parametrize("spec", ["0,2,3,3", "1,1,3", "2,1,2", "0,2,2,4", "0,4,2,2,2,2"])
def test_more_specs_certify(spec):
    assert build_configuration(GroupSpec.parse(spec)).verified


def test_transition_identities_are_word_equalities():
    cfg = config_for("1,2,2,3")
    rep = check_transitions(cfg)
    assert rep.ok
    assert any("closes up under alpha" in e.name and e.status == "symbolic" for e in rep.entries)


def test_doubled_precision_keeps_verdicts():
    cfg = config_for("0,2,2,3")
    hi = build_configuration(cfg.spec, GeometryParams(precision_bits=128, precision_cap=16384))
    assert [e.status for e in cfg.full_report().entries] == [e.status for e in hi.full_report().entries]
    assert check_intersections(cfg, hi.policy).ok


def test_attracting_domains_are_disjoint_arcs():
    cfg = config_for("1,1,2")
    doms = attracting_domains(cfg)
    assert len(doms) == 2 * len(cfg.basis)
    assert all(len(d.arcs) == 1 for d in doms)


def test_serialized_digest_is_stable():
    a = config_for("0,2,2,3").to_dict()
    b = build_configuration(GroupSpec.parse("0,2,2,3")).to_dict()
    assert a == b
    assert a["flags"] == {k: True for k in ("generators", "transitions", "intersections", "domains", "pingpong")}


def _random_s_word(rng, nb, syllables=6):
    out = []
    for _ in range(rng.randint(0, syllables)):
        out += [(rng.randrange(nb), rng.choice((1, -1)))] * rng.randint(1, 3)
    return free_reduce(out)


@pytest.mark.parametrize("spec,d", [("0,2,2,3", 1), ("0,2,2,3", 7), ("1,1,2", 1), ("0,3,2,2,2", 1)])
def test_combinatorial_order_matches_analytic(spec, d):
    cfg = config_for(spec)
    h = handle_for(spec, d)
    data = extract_data(cfg, h.cover.lift, d)
    rng = random.Random(5)
    cos = coset_tuples(cfg.spec)
    for _ in range(150):
        us = [(_random_s_word(rng, len(cfg.basis)), rng.choice(cos)) for _ in range(3)]
        want = eval_c(h, *(element_of(cfg, w, t) for w, t in us))
        assert combinatorial_cyclic_order(data, *us) == want


def test_svg_is_deterministic():
    cfg = config_for("0,2,2,3")
    a = export_svg(cfg)
    assert a == export_svg(cfg)
    assert 'width="1024" height="1024"' in a
