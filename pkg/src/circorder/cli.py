"""Command line entry point: `circorder <subcommand> --spec n,k,m1,..,mk ...`.

Exit codes: 0 all checks pass, 1 a check failed, 2 bad input, 3 excluded
spec, 4 a certified comparison stayed inconclusive at the precision cap.
"""
from __future__ import annotations

import argparse
import dataclasses
import functools
import json
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence, Union

from . import words as W
from .certarith import Comparison, Inconclusive
from .circular import (AxiomTally, OrderHandle, axiom_report, eval_c, random_quadruples,
                       tally_axioms)
from .cover import CoverSearchError, cover_for_a, gap_orbit_check, search_valid_d, trivial_cover
from .leftorder import HatWord, LeftOrderHandle, cofinal_bounds, hat_compare, hat_reduce, project_order
from .pingpong import ConfigurationError, GeometryParams, build_configuration
from .realization import realize_order
from .report import Report
from .svg import SvgOptions, render, render_realization
from .words import E, GroupSpec, H, Word

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_EXCLUDED, EXIT_INCONCLUSIVE = 0, 1, 2, 3, 4


class UsageError(ValueError):
    pass


class ExcludedSpec(ValueError):
    pass


# -- word parser ------------------------------------------------------------------


class WordSyntaxError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at position {pos}: {text!r}")
        self.pos = pos


_TOKEN = re.compile(r"([ehz])(\d*)|(1)(?!\d)")
_EXP = re.compile(r"\s*\^\s*([+-]?\s*\d+)")


def _tokens(text: str, hat: bool):
    pos = 0
    n = len(text)
    while True:
        while pos < n and text[pos].isspace():
            pos += 1
        if pos >= n:
            return
        if not text[pos].isascii():
            raise WordSyntaxError("non-ASCII character", text, pos)
        m = _TOKEN.match(text, pos)
        if m is None:
            raise WordSyntaxError(f"unexpected {text[pos]!r}", text, pos)
        start = pos
        letter, digits, one = m.group(1), m.group(2), m.group(3)
        if letter == "z":
            if not hat:
                raise WordSyntaxError("z is only allowed for the central extension", text, pos)
            if digits:
                raise WordSyntaxError("z takes no index", text, pos)
        elif letter and not digits:
            raise WordSyntaxError(f"{letter} needs an index", text, pos)
        pos = m.end()
        p = 1
        e = _EXP.match(text, pos)
        if e is not None:
            p = int(e.group(1).replace(" ", ""))
            pos = e.end()
        elif pos < n and text[pos] == "^":
            raise WordSyntaxError("malformed exponent", text, pos)
        yield start, (one or letter), (int(digits) if digits else 0), p


def parse_word(spec: GroupSpec, text: str, hat: bool = False) -> Union[Word, HatWord]:
    """Parse e.g. ``e1 h1^-2 e2^2``; with hat=True the token z is allowed and the
    result is an element of the central extension."""
    raw = []
    z = 0
    for pos, kind, idx, p in _tokens(text, hat):
        if kind == "1":
            continue
        if kind == "z":
            z += p
            continue
        g = E(idx) if kind == "e" else H(idx)
        try:
            spec.check(g)
        except ValueError as exc:
            raise WordSyntaxError(str(exc), text, pos) from None
        raw.append((g, p))
    if hat:
        return hat_reduce(spec, raw, z)
    return W.reduce(spec, raw)


def parse_triple(spec: GroupSpec, text: str) -> tuple[Word, Word, Word]:
    parts = text.split(";")
    if len(parts) != 3:
        raise UsageError(f"expected three words separated by ';', got {len(parts)}")
    return tuple(parse_word(spec, p) for p in parts)


# -- run configuration -------------------------------------------------------------


@dataclass
class RunConfig:
    spec: str = ""
    d: int = 1
    count: int = 3
    a_cap: int = 10_000
    samples: int = 1000
    seed: int = 0
    depth: int = 50
    precision_bits: int = 64
    precision_cap: int = 8192
    width_divisor: int = 6
    max_halvings: int = 6
    svg: Optional[str] = None

    def to_text(self) -> str:
        return json.dumps(dataclasses.asdict(self), sort_keys=True, indent=2) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "RunConfig":
        data = json.loads(text)
        names = {f.name for f in dataclasses.fields(cls)}
        extra = sorted(set(data) - names)
        if extra:
            raise UsageError(f"unknown configuration keys: {', '.join(extra)}")
        return cls(**data)

    @property
    def group(self) -> GroupSpec:
        try:
            return GroupSpec.parse(self.spec)
        except ValueError as exc:
            raise UsageError(str(exc)) from None

    @property
    def params(self) -> GeometryParams:
        return GeometryParams(self.width_divisor, self.max_halvings, self.precision_bits, self.precision_cap)


def _run_config(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig()
    for f in dataclasses.fields(RunConfig):
        v = getattr(args, f.name, None)
        if v is not None:
            setattr(cfg, f.name, v)
    if args.config:
        loaded = json.loads(Path(args.config).read_text())
        base = RunConfig.from_text(json.dumps(loaded))
        for key in loaded:
            setattr(cfg, key, getattr(base, key))
    if not cfg.spec:
        raise UsageError("--spec is required")
    return cfg


# -- shared construction (cached per process) ------------------------------------


@functools.lru_cache(maxsize=8)
def _configuration(spec_text: str, params: GeometryParams):
    spec = GroupSpec.parse(spec_text)
    if spec.excluded:
        raise ExcludedSpec(f"spec {spec} is excluded")
    return build_configuration(spec, params)


def _datum(spec: GroupSpec, d: int):
    if d == 1:
        return trivial_cover(spec)
    p0 = spec.order_product
    if d < 1 or (d - 1) % p0:
        raise UsageError(f"d = {d} is not of the form {p0} a + 1")
    datum = cover_for_a(spec, (d - 1) // p0)
    if datum is None:
        raise UsageError(f"d = {d} fails the coprimality condition")
    return datum


@functools.lru_cache(maxsize=8)
def _handle(spec_text: str, params: GeometryParams, d: int) -> OrderHandle:
    config = _configuration(spec_text, params)
    return OrderHandle(config, _datum(config.spec, d))


def _axiom_chunk(job: tuple) -> AxiomTally:
    spec_text, params, d, samples, seed, start, stop = job
    h = _handle(spec_text, params, d)
    return tally_axioms(h, random_quadruples(h.spec, samples, seed)[start:stop])


# -- subcommands -------------------------------------------------------------------


@dataclass
class Outcome:
    report: Report
    result: object = None
    inconclusive: bool = False


def _check_spec(rc: RunConfig) -> GroupSpec:
    spec = rc.group
    if spec.excluded:
        raise ExcludedSpec(f"spec {spec} is excluded")
    return spec


def cmd_verify(rc: RunConfig, args) -> Outcome:
    _check_spec(rc)
    try:
        config = _configuration(rc.spec, rc.params)
    except ConfigurationError as exc:
        rep = exc.report or Report(f"configuration {rc.spec}")
        rep.add("configuration", "failed", str(exc))
        return Outcome(rep)
    rep = config.full_report()
    if rc.d > 1:
        rep.extend(gap_orbit_check(config, _datum(config.spec, rc.d)))
    if rc.svg:
        Path(rc.svg).write_text(render(config, SvgOptions(intervals=True, domains=True)))
    return Outcome(rep, config.to_dict())


def cmd_eval(rc: RunConfig, args) -> Outcome:
    spec = _check_spec(rc)
    g = parse_triple(spec, " ".join(args.words))
    h = _handle(rc.spec, rc.params, rc.d)
    rep = Report(f"c^({rc.d}) on {spec}")
    try:
        v = eval_c(h, *g)
    except Inconclusive as exc:
        rep.add("c(g1, g2, g3)", "inconclusive", str(exc))
        return Outcome(rep, None, True)
    status = "exact" if v == 0 else "certified"
    rep.add(f"c({g[0]}, {g[1]}, {g[2]}) = {v:+d}" if v else f"c({g[0]}, {g[1]}, {g[2]}) = 0", status)
    return Outcome(rep, v)


def cmd_axioms(rc: RunConfig, args) -> Outcome:
    _check_spec(rc)
    h = _handle(rc.spec, rc.params, rc.d)
    chunk = 250
    jobs = [(rc.spec, rc.params, rc.d, rc.samples, rc.seed, s, min(s + chunk, rc.samples))
            for s in range(0, rc.samples, chunk)]
    if args.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            parts = list(pool.map(_axiom_chunk, jobs))
    else:
        parts = [_axiom_chunk(j) for j in jobs]
    total = functools.reduce(AxiomTally.merge, parts, AxiomTally())
    rep = axiom_report(h, total)
    bad = total.degeneracy + total.cocycle + total.invariance
    rep.add(f"{bad} violations", "certified" if bad == 0 and not total.inconclusive else "failed")
    return Outcome(rep, dataclasses.asdict(total), bool(total.inconclusive))


def cmd_search_d(rc: RunConfig, args) -> Outcome:
    spec = _check_spec(rc)
    rep = Report(f"valid degrees for {spec}")
    try:
        found = search_valid_d(spec, rc.count, rc.a_cap)
    except CoverSearchError as exc:
        rep.add("search", "failed", str(exc))
        return Outcome(rep)
    for dt in found:
        i = "(" + ",".join(map(str, dt.lifts)) + ")"
        rep.add(f"a={dt.a} d={dt.d} i={i} rotAlpha={dt.rot_alpha}", "exact")
    return Outcome(rep, [dt.to_dict() for dt in found])


def cmd_realize(rc: RunConfig, args) -> Outcome:
    _check_spec(rc)
    h = _handle(rc.spec, rc.params, rc.d)
    run = realize_order(h, rc.depth)
    angles = None
    if run.angles is not None:
        angles = [{"element": str(w), "angle": str(q)} for w, q in zip(run.elements, run.angles)]
        if rc.svg:
            Path(rc.svg).write_text(render_realization(run.angles, f"{rc.spec} d={rc.d} depth={rc.depth}"))
    return Outcome(run.report, angles)


def cmd_leftorder(rc: RunConfig, args) -> Outcome:
    spec = _check_spec(rc)
    lh = LeftOrderHandle(_handle(rc.spec, rc.params, rc.d))
    if args.action == "compare":
        if len(args.words) != 2:
            raise UsageError("compare takes two words")
        a, b = (parse_word(spec, t, hat=True) for t in args.words)
        rep = Report(f"<^({rc.d}) on the central extension of {spec}")
        c = hat_compare(lh, a, b)
        sym = {Comparison.LESS: "<", Comparison.GREATER: ">", Comparison.EQUAL_AS_WORDS: "="}[c]
        rep.add(f"{a} {sym} {b}", "exact" if c is Comparison.EQUAL_AS_WORDS else "certified")
        bounds = {}
        for name, x in (("first", a), ("second", b)):
            lo, hi = cofinal_bounds(lh, x)
            rep.add(f"z^{lo} < {x} < z^{hi}", "certified")
            bounds[name] = [lo, hi]
        return Outcome(rep, {"comparison": sym, "cofinal_bounds": bounds})
    triple = args.triple if args.triple is not None else " ".join(args.words)
    g = parse_triple(spec, triple)
    v = project_order(lh, *g)
    rep = Report(f"projected order of <^({rc.d}) on {spec}")
    rep.add(f"pi*(<)({g[0]}, {g[1]}, {g[2]}) = {v:+d}" if v else f"pi*(<)({g[0]}, {g[1]}, {g[2]}) = 0",
            "exact" if v == 0 else "certified")
    return Outcome(rep, v)


def cmd_export_svg(rc: RunConfig, args) -> Outcome:
    _check_spec(rc)
    if not rc.svg:
        raise UsageError("export-svg needs --svg PATH")
    config = _configuration(rc.spec, rc.params)
    opts = SvgOptions(intervals=args.intervals, domains=args.domains, orbit=args.orbit, labels=not args.no_labels)
    text = render(config, opts)
    Path(rc.svg).write_text(text)
    rep = Report(f"svg for {rc.spec}")
    rep.add(f"wrote {len(text.splitlines())} lines", "exact")
    return Outcome(rep)


COMMANDS = {
    "verify": cmd_verify,
    "eval": cmd_eval,
    "axioms": cmd_axioms,
    "search-d": cmd_search_d,
    "realize": cmd_realize,
    "leftorder": cmd_leftorder,
    "export-svg": cmd_export_svg,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--spec", help="n,k,m1,..,mk")
    common.add_argument("--d", type=int, help="cover degree (default 1)")
    common.add_argument("--count", type=int)
    common.add_argument("--a-cap", type=int, dest="a_cap")
    common.add_argument("--samples", type=int)
    common.add_argument("--seed", type=int)
    common.add_argument("--depth", type=int)
    common.add_argument("--precision-bits", type=int, dest="precision_bits")
    common.add_argument("--precision-cap", type=int, dest="precision_cap")
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--svg", metavar="PATH")
    common.add_argument("--config", metavar="PATH", help="JSON run configuration; its keys override flags")
    common.add_argument("--save-config", metavar="PATH", help="write the effective run configuration")
    common.add_argument("--json", action="store_true", help="structured output")

    p = argparse.ArgumentParser(prog="circorder", description="Isolated circular and left orders on free products of cyclic groups.")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("verify", parents=[common], help="build and certify the ping-pong configuration")
    e = sub.add_parser("eval", parents=[common], help="evaluate c^(d) on 'g1 ; g2 ; g3'")
    e.add_argument("words", nargs="+")
    sub.add_parser("axioms", parents=[common], help="random axiom test")
    sub.add_parser("search-d", parents=[common], help="list valid cover degrees")
    sub.add_parser("realize", parents=[common], help="finite dynamical realization round trip")
    lo = sub.add_parser("leftorder", help="left orders on the central extension")
    lsub = lo.add_subparsers(dest="action", required=True)
    lc = lsub.add_parser("compare", parents=[common], help="compare two elements, e.g. 'e1 z^2' 'e2'")
    lc.add_argument("words", nargs="+")
    lp = lsub.add_parser("project", parents=[common], help="projected circular order of a triple")
    lp.add_argument("words", nargs="*")
    lp.add_argument("--triple")
    s = sub.add_parser("export-svg", parents=[common], help="draw the configuration")
    s.add_argument("--intervals", action="store_true")
    s.add_argument("--domains", action="store_true")
    s.add_argument("--orbit", type=int, default=0)
    s.add_argument("--no-labels", action="store_true")
    return p


def _emit(command: str, rc: RunConfig, out: Outcome, as_json: bool, code: int) -> None:
    if as_json:
        doc = {
            "command": command,
            "spec": rc.spec,
            "d": rc.d,
            "ok": code == EXIT_OK,
            "exit_code": code,
            "title": out.report.title,
            "entries": [dataclasses.asdict(e) for e in out.report.entries],
            "result": out.result,
        }
        print(json.dumps(doc, sort_keys=True, indent=2))
    else:
        print(out.report.text())


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    as_json = getattr(args, "json", False)
    try:
        rc = _run_config(args)
        if args.save_config:
            Path(args.save_config).write_text(rc.to_text())
        out = COMMANDS[args.command](rc, args)
    except ExcludedSpec as exc:
        _fail(args.command, str(exc), "excluded", as_json, EXIT_EXCLUDED)
        return EXIT_EXCLUDED
    except ConfigurationError as exc:
        _fail(args.command, str(exc), "failed", as_json, EXIT_FAIL)
        return EXIT_FAIL
    except (UsageError, WordSyntaxError, ValueError, OSError) as exc:
        _fail(args.command, str(exc), "failed", as_json, EXIT_INPUT)
        return EXIT_INPUT
    except Inconclusive as exc:
        _fail(args.command, str(exc), "inconclusive", as_json, EXIT_INCONCLUSIVE)
        return EXIT_INCONCLUSIVE
    if out.inconclusive:
        code = EXIT_INCONCLUSIVE
    else:
        code = EXIT_OK if out.report.ok else EXIT_FAIL
    _emit(args.command, rc, out, as_json, code)
    return code


def _fail(command: str, message: str, status: str, as_json: bool, code: int) -> None:
    if as_json:
        print(json.dumps({"command": command, "ok": False, "exit_code": code, "status": status,
                          "error": message}, sort_keys=True, indent=2))
    else:
        print(f"[{status}] {message}", file=sys.stderr)


if __name__ == "__main__":
    sys.exit(main())
