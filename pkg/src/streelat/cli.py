"""Command-line front end: ``streelat --s 0,1,2 [--flavor stamari] <command>``.

Exit codes: 0 pass, 1 a check found a violation, 2 usage or domain error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from itertools import product
from multiprocessing import Pool

from .core import DomainError, MultiInversionSet, WeakComposition, dumps_tree
from .sweak import Flavor, build_lattice, tree_count
from .topology import (
    DEFAULT_HEIGHT_GUARD,
    interval,
    max_antichain,
    verify_lattice,
)

FORMATS = ("json", "dot", "csv", "text")


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def _global_options(parser: argparse.ArgumentParser, suppress: bool) -> None:
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--s", dest="s", default=d(None), help="weak composition, e.g. 0,1,2")
    parser.add_argument("--flavor", choices=[f.value for f in Flavor], default=d(None))
    parser.add_argument("--format", dest="fmt", choices=FORMATS, default=d(None))
    parser.add_argument("--output", "-o", default=d(None), help="write to this file instead of stdout")
    parser.add_argument("--height-guard", type=_positive, default=d(DEFAULT_HEIGHT_GUARD))
    parser.add_argument("--jobs", type=_positive, default=d(1))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="streelat", description=__doc__.splitlines()[0])
    _global_options(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, help: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help)
        _global_options(p, suppress=True)
        return p

    add("enumerate", "count and list the lattice elements")
    add("hasse", "export the labeled Hasse diagram")
    add("verify", "run every structural check on one lattice")
    p = add("verify-all", "run verify over all small compositions")
    p.add_argument("--max-n", type=_positive, default=4)
    p.add_argument("--max-entry", type=int, default=3)
    p = add("classify", "analyze the interval between two elements")
    p.add_argument("--bottom", required=True, help="inversion set as JSON")
    p.add_argument("--top", required=True, help="inversion set as JSON")
    add("stats", "summary statistics of one lattice")
    p = add("oracle-check", "compare with independent reference lattices")
    p.add_argument("--max-n", type=_positive, default=4)
    return parser


# ------------------------------------------------------------------ helpers


def _composition(args) -> WeakComposition:
    if args.s is None:
        raise DomainError("this command needs --s")
    s = WeakComposition.parse(args.s)
    if s.n < 1:
        raise DomainError("a weak composition needs at least one entry")
    return s


def _flavor(args) -> Flavor:
    return Flavor(args.flavor or Flavor.SWEAK.value)


def _parse_inversions(s: WeakComposition, text: str) -> MultiInversionSet:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DomainError(f"bad inversion JSON: {exc}") from None
    if isinstance(data, dict):
        if "s" in data and list(data["s"]) != list(s.entries):
            raise DomainError("element JSON is for a different composition")
        data = data.get("inv", [])
    try:
        return MultiInversionSet.from_triples(s, data)
    except DomainError:
        raise
    except (TypeError, ValueError) as exc:
        raise DomainError(f"inversions must be [y, x, multiplicity] triples: {exc}") from None


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def _csv(rows) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


# ----------------------------------------------------------------- commands


def cmd_enumerate(args) -> tuple[str, int]:
    L = build_lattice(_composition(args), _flavor(args))
    fmt = args.fmt or "text"
    if fmt == "json":
        return _dump_json({"count": len(L), "elements": [json.loads(dumps_tree(T)) for T in L.elements]}), 0
    if fmt == "csv":
        return _csv([[len(L)]] + [[i, L.node_name(i)] for i in range(len(L))]), 0
    if fmt == "dot":
        raise DomainError("enumerate has no dot format")
    lines = [str(len(L))] + [f"{T.inversions}  {T.bracket()}" for T in L.elements]
    return "\n".join(lines) + "\n", 0


def cmd_hasse(args) -> tuple[str, int]:
    L = build_lattice(_composition(args), _flavor(args))
    fmt = args.fmt or "json"
    if fmt == "json":
        return _dump_json(L.to_json()), 0
    if fmt == "dot":
        return L.to_dot(), 0
    if fmt == "csv":
        return _csv([["lower", "upper", "label"]] + [[L.node_name(a), L.node_name(b), lab] for a, b, lab in L.edges]), 0
    lines = [f"{L.elements[a].inversions} -> {L.elements[b].inversions}  [{lab}]" for a, b, lab in L.edges]
    return "\n".join(lines) + ("\n" if lines else ""), 0


def _verify_one(job) -> dict:
    entries, flavor, guard = job
    return verify_lattice(build_lattice(WeakComposition(tuple(entries)), Flavor(flavor)), guard)


def _text_summary(r: dict) -> str:
    lat = r["lattice"]
    s = "(" + ",".join(map(str, lat["s"])) + ")"
    st = r["interval_stats"]
    verdict = "PASS" if not r["violations"] else "FAIL"
    return (f"s={s} {lat['flavor']} elements={lat['elements']} edges={lat['edges']} "
            f"diamond={st['diamond']} pentagon={st['pentagon']} hexagon={st['hexagon']} "
            f"violations={len(r['violations'])} {verdict}")


def cmd_verify(args) -> tuple[str, int]:
    s, flavor = _composition(args), _flavor(args)
    r = verify_lattice(build_lattice(s, flavor), args.height_guard)
    code = 1 if r["violations"] else 0
    if (args.fmt or "json") == "text":
        return _text_summary(r) + "\n", code
    return _dump_json(r), code


def cmd_verify_all(args) -> tuple[str, int]:
    flavors = [args.flavor] if args.flavor else [f.value for f in Flavor]
    jobs = [
        (entries, f, args.height_guard)
        for n in range(1, args.max_n + 1)
        for entries in product(range(args.max_entry + 1), repeat=n)
        for f in flavors
    ]
    if args.jobs > 1:
        with Pool(args.jobs) as pool:
            reports = pool.map(_verify_one, jobs, chunksize=4)
    else:
        reports = [_verify_one(j) for j in jobs]
    failed = sum(1 for r in reports if r["violations"])
    code = 1 if failed else 0
    if (args.fmt or "text") == "json":
        return _dump_json({"lattices": len(reports), "failed": failed, "reports": reports}), code
    lines = [_text_summary(r) for r in reports]
    lines.append(f"{len(reports)} lattices, {failed} with violations")
    return "\n".join(lines) + "\n", code


def cmd_classify(args) -> tuple[str, int]:
    s = _composition(args)
    L = build_lattice(s, _flavor(args))
    ends = []
    for text in (args.bottom, args.top):
        I = _parse_inversions(s, text)
        if I not in L:
            raise DomainError(f"{I} is not an element of the {L.flavor.value} lattice for {s}")
        ends.append(L.index(I))
    i, j = ends
    rep = interval(L, i, j, args.height_guard)
    return _dump_json(rep.to_json(L)), 0


def cmd_stats(args) -> tuple[str, int]:
    s, flavor = _composition(args), _flavor(args)
    L = build_lattice(s, flavor)
    r = verify_lattice(L, args.height_guard, laws=False)
    out = {
        **r["lattice"],
        "tree_count_formula": tree_count(s),
        "max_antichain": max_antichain(L),
        "double_covers": r["double_covers"],
        "interval_stats": r["interval_stats"],
        "mobius_histogram": r["mobius_histogram"],
        "spheres_by_dim": r["spheres_by_dim"],
        "balls": r["balls"],
    }
    if (args.fmt or "json") == "text":
        return "".join(f"{k}: {v}\n" for k, v in out.items()), 0
    return _dump_json(out), 0


def cmd_oracle_check(args) -> tuple[str, int]:
    from . import oracles

    results: list[tuple[str, bool]] = []
    for n in range(3, min(args.max_n, 5) + 1):
        ones = WeakComposition((1,) * n)
        results.append((f"weak order S_{n}", oracles.weak_order_matches(build_lattice(ones), n)))
        results.append((f"classical Tamari n={n}",
                        oracles.tamari_matches(build_lattice(ones, Flavor.STAMARI), n)))
    if args.s is not None:
        s = _composition(args)
        L = build_lattice(s, _flavor(args))
        ok = True
        for i in range(len(L)):
            for j in range(i, len(L)):
                lub, glb = oracles.brute_bounds(L, i, j)
                ok &= lub == {L.join(i, j)} and glb == {L.meet(i, j)}
        results.append((f"bounds {s}", ok))
        results.append((f"tree count {s}", oracles.generate_and_filter_count(s.entries) == len(
            build_lattice(s, Flavor.SWEAK))))
        tail = s.entries[1:]
        results.append((f"first entry {s}", oracles.first_entry_irrelevant(
            build_lattice(WeakComposition((0,) + tail), _flavor(args)),
            build_lattice(WeakComposition((3,) + tail), _flavor(args)))))
    code = 0 if all(ok for _, ok in results) else 1
    if (args.fmt or "text") == "json":
        return _dump_json({name: ok for name, ok in results}), code
    return "".join(f"{'PASS' if ok else 'FAIL'} {name}\n" for name, ok in results), code


COMMANDS = {
    "enumerate": cmd_enumerate,
    "hasse": cmd_hasse,
    "verify": cmd_verify,
    "verify-all": cmd_verify_all,
    "classify": cmd_classify,
    "stats": cmd_stats,
    "oracle-check": cmd_oracle_check,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        text, code = COMMANDS[args.command](args)
    except DomainError as exc:
        print(f"streelat: error: {exc}", file=sys.stderr)
        return 2
    if args.output:
        try:
            with open(args.output, "w") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"streelat: error: {exc}", file=sys.stderr)
            return 2
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
