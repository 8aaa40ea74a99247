"""Acceptance suite: one check per criterion, each printing a single PASS/FAIL line.

Run under pytest (lines are collected into the terminal summary) or directly:

    python tests/test_acceptance.py [criterion numbers...]
"""
import itertools
import math
import random
import subprocess
import sys
import time
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from circorder import words as W  # noqa: E402
from circorder.certarith import Comparison  # noqa: E402
from circorder.circular import axiom_report, eval_c, tally_axioms, linear_part, random_quadruples, random_word  # noqa: E402
from circorder.cover import (CoverLift, check_Np0_neq_p1, gap_orbit_check, orbit_rotation_number,  # noqa: E402
                             search_valid_d)
from circorder.leftorder import (LeftOrderHandle, central, cofinal_bounds, hat_compare, hat_less,  # noqa: E402
                                 hat_reduce, lift_word, project_order, winding_number)
from circorder.pingpong import (GeometryParams, attracting_domains, build_configuration,  # noqa: E402
                                check_intersections, check_transitions, combinatorial_cyclic_order,
                                element_of, extract_data)
from circorder.realization import roundtrip  # noqa: E402
from circorder.words import GroupSpec  # noqa: E402

from conftest import ACCEPTANCE_LINES, config_for, handle_for  # noqa: E402

AXIOM_SPECS = ["0,2,2,3", "1,1,2", "0,3,2,2,2"]
FOUR_SPECS = AXIOM_SPECS + ["1,2,2,3"]
AXIOM_SAMPLES = 10_000
AXIOM_SECONDS_PER_SPEC = 300.0
SEED = 20240601


def record(n, ok, detail):
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def first_d_above_one(spec_text):
    return search_valid_d(GroupSpec.parse(spec_text), 2)[1].d


# -- 1 ------------------------------------------------------------------------------


def criterion_1(spec_text):
    parts = []
    ok = True
    t0 = time.perf_counter()
    for d in (1, first_d_above_one(spec_text)):
        h = handle_for(spec_text, d)
        sample = random_quadruples(h.spec, AXIOM_SAMPLES, seed=SEED + d)
        assert max(len(w) for q in sample for w in q) <= 12
        t = tally_axioms(h, sample)
        bad = t.degeneracy + t.cocycle + t.invariance
        ok &= axiom_report(h, t).ok and bad == 0 and t.inconclusive == 0 and t.total == AXIOM_SAMPLES
        parts.append(f"d={d}: {bad} violations, {t.inconclusive} inconclusive")
    elapsed = time.perf_counter() - t0
    ok &= elapsed < AXIOM_SECONDS_PER_SPEC
    return record(1, ok, f"{spec_text}, {AXIOM_SAMPLES} quadruples per d, {'; '.join(parts)}; {elapsed:.0f} s")


# -- 2 ------------------------------------------------------------------------------


def criterion_2():
    mism = 0
    total = 0
    for spec_text in AXIOM_SPECS:
        for d in (1, first_d_above_one(spec_text)):
            h = handle_for(spec_text, d)
            rng = random.Random(SEED + 2 * d)
            for _ in range(AXIOM_SAMPLES // 6 + 1):
                g = [random_word(h.spec, rng, max_syllables=12) for _ in range(3)]
                r = rng.random()
                if r < 0.15:
                    g[rng.randrange(3)] = g[rng.randrange(3)]
                elif r < 0.2:
                    # equal as elements, different spellings
                    i, j = rng.sample(range(3), 2)
                    g[j] = W.reduce(h.spec, list(g[i].syllables) + [(W.E(1), h.spec.m[0])])
                total += 1
                zero = eval_c(h, *g) == 0
                mism += zero != (len(set(g)) < 3)
    return record(2, mism == 0 and total >= AXIOM_SAMPLES, f"{total} triples over 3 specs x 2 degrees, {mism} mismatches")


# -- 3 ------------------------------------------------------------------------------


def criterion_3():
    lines = []
    ok = True
    for spec_text in FOUR_SPECS:
        spec = GroupSpec.parse(spec_text)
        base = config_for(spec_text)
        tr = check_transitions(base)
        sym = all(e.status in ("symbolic", "certified") for e in tr.entries) and \
            any(e.status == "symbolic" for e in tr.entries)
        inter = check_intersections(base)
        doms = attracting_domains(base)
        verdicts = [e.status for e in base.full_report().entries]
        dbl = build_configuration(spec, GeometryParams(precision_bits=128, precision_cap=16384))
        same = verdicts == [e.status for e in dbl.full_report().entries] and \
            check_intersections(base, dbl.policy).ok
        ok &= tr.ok and sym and inter.ok and len(doms) == 2 * len(base.basis) and base.full_report().ok and same
        lines.append(f"{spec_text} ok={tr.ok and inter.ok} flips={'no' if same else 'yes'}")
    return record(3, ok, "; ".join(lines))


# -- 4 ------------------------------------------------------------------------------


def criterion_4():
    fails = 0
    for spec_text in FOUR_SPECS:
        spec = GroupSpec.parse(spec_text)
        basis = W.s_basis(spec)
        rng = random.Random(SEED + 4)
        n = 0
        while n < 500:
            raw = [(rng.choice(spec.generators()), rng.choice([-2, -1, 1, 2])) for _ in range(rng.randint(0, 20))]
            g = W.reduce(spec, raw)
            if g.letter_length() > 20:
                continue
            n += 1
            f, tup = W.sort_to_coset(g)
            fails += basis.expand(f) * g != W.sorted_rep(spec, tup) or W.free_reduce(f) != f
    return record(4, fails == 0, f"500 elements of length <= 20 for each of 4 specs, {fails} failures")


# -- 5 ------------------------------------------------------------------------------


def criterion_5():
    got = []
    ok = True
    for spec_text, want in zip(FOUR_SPECS, (2, 4, 5, None)):
        spec = GroupSpec.parse(spec_text)
        oracle = 1 - spec.order_product * spec.euler_characteristic
        size = len(W.enumerate_S(spec))
        ok &= size == oracle and (want is None or size == want)
        got.append(f"{spec_text}: {size} (oracle {oracle})")
    return record(5, ok, "; ".join(got))


# -- 6 ------------------------------------------------------------------------------


def criterion_6():
    spec = GroupSpec.parse("0,2,2,3")
    found = search_valid_d(spec, 3)
    # brute force over a <= 2 with exact gcd, no modular inverses
    brute = []
    for a in range(3):
        d = 6 * a + 1
        i = () if d == 1 else tuple(min(x for x in range(d) if (m * x + 1) % d == 0) for m in spec.m)
        num = 1 + sum(i)
        if math.gcd(num, d) == 1:
            brute.append((d, i, Fraction(num, d)))
    got = [(c.d, c.lifts, c.rot_alpha) for c in found]
    expected = [(1, (), Fraction(1)), (7, (3, 2), Fraction(6, 7)), (13, (6, 4), Fraction(11, 13))]
    rots = []
    for c in found:
        cov = CoverLift(config_for("0,2,2,3"), c)
        rots.append(orbit_rotation_number(cov, iterates=4 * c.d * c.d + 100))
    ok = got == expected == brute and rots == [c.rot_alpha for c in found]
    return record(6, ok, f"d = {[g[0] for g in got]}, i = {[g[1] for g in got]}, "
                         f"rotAlpha = {[str(g[2]) for g in got]}, orbit-tracked = {[str(r) for r in rots]}")


# -- 7 ------------------------------------------------------------------------------


def criterion_7():
    zeros = []
    count = 0
    for n in range(2):
        for k in range(1, 4):
            for m in itertools.product(range(2, 5), repeat=k):
                count += 1
                if check_Np0_neq_p1(GroupSpec(n, k, m)) == 0:
                    zeros.append(str(GroupSpec(n, k, m)))
    return record(7, zeros == ["0,2,2,2"], f"{count} specs scanned, zero at {zeros}")


# -- 8 ------------------------------------------------------------------------------


def criterion_8():
    ok = True
    notes = []
    gens = []
    for d in (7, 13):
        h = handle_for("0,2,2,3", d)
        rep = gap_orbit_check(h.config, h.datum)
        ok &= rep.ok
        notes.append(f"d={d}: " + ", ".join(f"{e.status}" for e in rep.entries))
        lp = linear_part(h)
        ok &= lp.report.ok
        gens.append(lp.generator)
    # <alpha^7> = <alpha^13> would need alpha^7 = alpha^{+-13}, i.e. alpha of finite order
    distinct = gens[0] not in (gens[1], W.invert(gens[1]))
    alpha = config_for("0,2,2,3").alpha
    ok &= distinct and not W.power(alpha, 6).is_identity and not W.power(alpha, 20).is_identity
    return record(8, ok, "; ".join(notes) + f"; linear parts distinct: {distinct}")


# -- 9 ------------------------------------------------------------------------------


def criterion_9():
    ok = True
    notes = []
    for d in (1, 7):
        rep = roundtrip(handle_for("0,2,2,3", d), 50)
        ok &= rep.ok
        notes.append(f"d={d}: " + ", ".join(e.name for e in rep.entries[1:]))
    return record(9, ok, "; ".join(notes))


# -- 10 -----------------------------------------------------------------------------


def criterion_10():
    total = mism = 0
    for spec_text in FOUR_SPECS:
        cfg = config_for(spec_text)
        h = handle_for(spec_text, 1)
        data = extract_data(cfg, h.cover.lift, 1)
        rng = random.Random(SEED + 10)
        nb = len(cfg.basis)
        cos = W.coset_tuples(cfg.spec)
        for _ in range(1000 if spec_text == "0,2,2,3" else 250):
            us = []
            for _ in range(3):
                letters = []
                for _ in range(rng.randint(0, 6)):
                    letters += [(rng.randrange(nb), rng.choice((1, -1)))] * rng.randint(1, 3)
                us.append((W.free_reduce(letters), rng.choice(cos)))
            total += 1
            want = eval_c(h, *(element_of(cfg, w, t) for w, t in us))
            mism += combinatorial_cyclic_order(data, *us) != want
    return record(10, mism == 0 and total >= 1000, f"{total} triples (1000 on 0,2,2,3), {mism} mismatches")


# -- 11 -----------------------------------------------------------------------------


def criterion_11():
    spec = GroupSpec.parse("0,2,2,3")
    counts = {"axioms": 0, "cofinal": 0, "project": 0, "winding": 0}
    for d in (1, 7):
        lh = LeftOrderHandle(handle_for("0,2,2,3", d))
        rng = random.Random(SEED + 11 * d)
        hat = lambda: lift_word(random_word(spec, rng, max_syllables=8), rng.randint(-3, 3))
        for _ in range(1000):
            a, b, c, g = hat(), hat(), hat(), hat()
            ab = hat_compare(lh, a, b)
            bad = (ab is Comparison.EQUAL_AS_WORDS) != (a == b)
            bad |= hat_compare(lh, b, a).value != -ab.value
            bad |= hat_compare(lh, g * a, g * b) is not ab
            if hat_less(lh, a, b) and hat_less(lh, b, c):
                bad |= not hat_less(lh, a, c)
            counts["axioms"] += bad
            lo, hi = cofinal_bounds(lh, a)
            counts["cofinal"] += not (hat_less(lh, central(spec, lo), a) and hat_less(lh, a, central(spec, hi)))
            x = [random_word(spec, rng, max_syllables=8) for _ in range(3)]
            counts["project"] += project_order(lh, *x) != eval_c(lh.order, *x)
            raw = [(rng.choice(spec.generators()), rng.choice([-2, -1, 1, 2, 3])) for _ in range(rng.randint(1, 12))]
            counts["winding"] += winding_number(lh, raw) != hat_reduce(spec, raw).z
    ok = not any(counts.values())
    return record(11, ok, "1000 samples for d in {1, 7}; failures " + ", ".join(f"{k}={v}" for k, v in counts.items()))


# -- 12 -----------------------------------------------------------------------------


def _cli(*argv):
    r = subprocess.run([sys.executable, "-m", "circorder.cli", *argv], capture_output=True)
    return r.returncode, r.stdout


def criterion_12(tmp):
    runs = {}
    cmds = {
        "axioms": ["axioms", "--spec", "1,1,2", "--d", "5", "--samples", "1000", "--seed", "7"],
        "verify": ["verify", "--spec", "1,2,2,3", "--d", "7"],
        "eval": ["eval", "--spec", "0,3,2,2,2", "--d", "9", "e1 e2 ; e3 e1 ; e2 e3 e1"],
        "realize": ["realize", "--spec", "0,2,2,3", "--d", "7", "--depth", "30"],
    }
    ok = True
    for name, argv in cmds.items():
        outs = set()
        for jobs in ("1", "1", "2", "4"):
            for fmt in ((), ("--json",)):
                code, out = _cli(*argv, *fmt, "--jobs", jobs)
                ok &= code == 0
                outs.add((fmt, out))
        runs[name] = len(outs) == 2
    svgs = set()
    for jobs in ("1", "1", "3"):
        p = Path(tmp) / f"c{jobs}-{len(svgs)}.svg"
        code, _ = _cli("export-svg", "--spec", "0,2,2,3", "--domains", "--intervals", "--orbit", "100",
                       "--svg", str(p), "--jobs", jobs)
        ok &= code == 0
        svgs.add(p.read_bytes())
        q = Path(tmp) / f"r{jobs}-{len(svgs)}.svg"
        _cli("realize", "--spec", "0,2,2,3", "--depth", "25", "--svg", str(q), "--jobs", jobs)
        svgs.add(q.read_bytes())
    ok &= all(runs.values()) and len(svgs) == 2
    return record(12, ok, "byte-identical: " + ", ".join(f"{k}={v}" for k, v in runs.items()) +
                  f", svg={len(svgs) == 2}")


# -- pytest entry points --------------------------------------------------------------


@pytest.mark.parametrize("spec_text", AXIOM_SPECS)
def test_criterion_01_axiom_suite(spec_text):
    assert criterion_1(spec_text)


def test_criterion_02_word_problem_equivalence():
    assert criterion_2()


def test_criterion_03_pingpong_certification():
    assert criterion_3()


def test_criterion_04_sort_to_coset():
    assert criterion_4()


def test_criterion_05_rank_oracle():
    assert criterion_5()


def test_criterion_06_cover_search():
    assert criterion_6()


def test_criterion_07_exclusion_witness():
    assert criterion_7()


def test_criterion_08_gap_orbit_and_linear_parts():
    assert criterion_8()


def test_criterion_09_realization_round_trip():
    assert criterion_9()


def test_criterion_10_combinatorial_vs_analytic():
    assert criterion_10()


def test_criterion_11_left_order_suite():
    assert criterion_11()


def test_criterion_12_cli_determinism(tmp_path):
    assert criterion_12(tmp_path)


if __name__ == "__main__":
    import tempfile

    wanted = {int(x) for x in sys.argv[1:]} or set(range(1, 13))
    results = []
    for n in sorted(wanted):
        if n == 1:
            results += [criterion_1(s) for s in AXIOM_SPECS]
        elif n == 12:
            with tempfile.TemporaryDirectory() as tmp:
                results.append(criterion_12(tmp))
        else:
            results.append(globals()[f"criterion_{n}"]())
    sys.exit(0 if all(results) else 1)
