"""Command-line front end.

Inputs are file paths or ``corpus:<name>``. Exit codes: 0 success,
1 verification failure, 2 input error, 3 budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import corpus as corpus_mod
from . import diagram as dg
from . import oracles, pk, states as st, surface
from .corpus import CorpusEntry
from .diagram import DiagramError, LinkDiagram
from .states import BudgetExceeded, StateError
from .surface import EmbeddedGraph, GraphError, MatchedCubicGraph, ParseError
from .verify import SUITES, Budgets, run_suites

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


class InputError(Exception):
    pass


def _read(spec: str) -> tuple[str, str | None]:
    """Return (text, corpus kind or None)."""
    if spec.startswith("corpus:"):
        try:
            e = corpus_mod.get(spec[len("corpus:"):])
        except KeyError as exc:
            raise InputError(str(exc.args[0])) from None
        return e.payload, e.kind
    try:
        with open(spec, encoding="utf-8") as fh:
            return fh.read(), None
    except OSError as exc:
        raise InputError(f"cannot read {spec}: {exc.strerror}") from None


def _first_token(text: str) -> str | None:
    for _, toks in surface._tokens(text):
        return toks[0][0]
    return None


def load_any(spec: str):
    """LinkDiagram, MatchedCubicGraph or (plane) EmbeddedGraph."""
    text, _ = _read(spec)
    if _first_token(text) == "rsg":
        g, m = surface.parse_rsg(text)
        return g if m is None else MatchedCubicGraph(g, m)
    return dg.parse_lkd(text)


def load_diagram(spec: str) -> LinkDiagram:
    obj = load_any(spec)
    if isinstance(obj, EmbeddedGraph):
        return dg.medial(obj)
    return pk.as_diagram(obj)


def load_graph(spec: str) -> EmbeddedGraph:
    obj = load_any(spec)
    if not isinstance(obj, EmbeddedGraph):
        raise InputError("expected an RSG graph without matching lines")
    return obj


def load_matched(spec: str) -> MatchedCubicGraph:
    obj = load_any(spec)
    if isinstance(obj, MatchedCubicGraph):
        return obj
    if isinstance(obj, LinkDiagram):
        return dg.to_matched_graph(obj)
    return dg.blow_up(obj)


def parse_corpus_file(path: str) -> list[CorpusEntry]:
    """Blocks ``entry <name> <kind>``, optional ``expect <key> <value>`` lines, payload, ``end``."""
    text, _ = _read(path)
    entries = []
    cur = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        words = raw.split()
        if cur is None:
            if not words or words[0].startswith("#"):
                continue
            if words[0] != "entry" or len(words) != 3 or words[2] not in ("diagram", "matched", "graph"):
                raise ParseError("expected 'entry <name> diagram|matched|graph'", lineno, 1)
            cur = {"name": words[1], "kind": words[2], "expected": {}, "lines": []}
        elif words and words[0] == "end":
            entries.append(CorpusEntry(cur["name"], cur["kind"], "\n".join(cur["lines"]) + "\n", cur["expected"]))
            cur = None
        elif words and words[0] == "expect":
            if len(words) < 3:
                raise ParseError("expect line needs a key and a value", lineno, 1)
            value = " ".join(words[2:])
            try:
                cur["expected"][words[1]] = int(value)
            except ValueError:
                cur["expected"][words[1]] = value
        else:
            cur["lines"].append(raw)
    if cur is not None:
        raise ParseError(f"entry {cur['name']!r} is missing 'end'")
    return entries


# -- commands ---------------------------------------------------------------------


def cmd_compute(args, out):
    d = load_diagram(args.input)
    res = pk.pk_polynomial(d, args.budget_states, args.threads)
    if args.json:
        out.append(json.dumps({
            "polynomial": res.polynomial.to_line(),
            "colorable_states": res.colorable_state_count,
            "census": {str(k): v for k, v in res.census},
            "falling_factorial_e": list(res.falling.e),
            "input_hash": res.input_hash,
            "budget_states": args.budget_states,
        }, sort_keys=True))
    else:
        out.append(res.polynomial.to_line())
        out.append(f"colorable_states {res.colorable_state_count}")
        for k, v in res.census:
            out.append(f"census {k} {v}")
    return EXIT_OK


def cmd_oracle(args, out):
    gm = load_matched(args.input)
    count = oracles.tait_coloring_count(gm, args.n, args.budget_oracle)
    out.append(json.dumps({"n": args.n, "count": count}) if args.json else str(count))
    return EXIT_OK


def cmd_analyze(args, out):
    d = load_diagram(args.input)
    res = pk.pk_polynomial(d, args.budget_states, args.threads)
    rep = pk.analyze(res.polynomial, pk.diagram_context(d))
    if args.json:
        out.append(json.dumps(rep.to_json(), sort_keys=True))
    else:
        out.append(rep.to_text().rstrip("\n"))
    return EXIT_OK


def cmd_aigner(args, out):
    g = load_graph(args.input)
    if surface.genus(g) != 0:
        raise InputError("aigner needs a plane graph")
    p = oracles.aigner_penrose(g, args.budget_states)
    out.append(json.dumps({"polynomial": p.to_line()}) if args.json else p.to_line())
    return EXIT_OK


def cmd_reduce(args, out):
    d = load_diagram(args.input)
    reduced, r, steps = dg.reduce_all_bigons(d)
    if args.json:
        out.append(json.dumps({
            "lkd": reduced.to_lkd(),
            "r": r,
            "steps": [{"kind": s.kind, "removed": list(s.removed), "r": s.r} for s in steps],
        }, sort_keys=True))
    else:
        out.append(f"# r {r}")
        for s in steps:
            out.append(f"# step {s.kind} " + " ".join(map(str, s.removed or (s.r,))))
        out.append(reduced.to_lkd().rstrip("\n"))
    return EXIT_OK


def cmd_verify(args, out):
    entries = parse_corpus_file(args.corpus_file) if args.corpus_file else list(corpus_mod.entries())
    names = [args.suite] if args.suite else None
    if args.suite and args.suite not in SUITES:
        raise InputError(f"unknown suite {args.suite!r}; choose from {', '.join(SUITES)}")
    checks = run_suites(entries, names, Budgets(args.budget_states, args.budget_oracle, args.threads))
    failed = sum(not c.ok for c in checks)
    if args.json:
        out.append(json.dumps({
            "checks": [{"suite": c.suite, "name": c.name, "ok": c.ok, "detail": c.detail} for c in checks],
            "failed": failed,
            "total": len(checks),
        }, sort_keys=True))
    else:
        out.extend(c.line() for c in checks)
        out.append(f"{len(checks)} checks, {failed} failed")
    return EXIT_FAIL if failed else EXIT_OK


def cmd_corpus(args, out):
    if args.action == "list":
        for e in corpus_mod.entries():
            out.append(f"{e.name}\t{e.kind}\t{e.note}")
        return EXIT_OK
    if not args.name:
        raise InputError("corpus show needs an entry name")
    try:
        e = corpus_mod.get(args.name)
    except KeyError as exc:
        raise InputError(str(exc.args[0])) from None
    if args.json:
        out.append(json.dumps({"name": e.name, "kind": e.kind, "payload": e.payload,
                               "expected": e.expected, "note": e.note}, sort_keys=True))
    else:
        out.append(f"# {e.name}: {e.note}")
        for k, v in e.expected.items():
            out.append(f"# expect {k} {v}")
        out.append(e.payload.rstrip("\n"))
    return EXIT_OK


def cmd_export(args, out):
    d = load_diagram(args.input)
    if args.dot in ("tait", "dual"):
        tp = dg.checkerboard(d)
        g = tp.tait if args.dot == "tait" else tp.dual
        out.append(g.to_dot(args.dot).rstrip("\n"))
        return EXIT_OK
    ts = st.TransitionSystem.from_diagram(d)
    mask = args.state if args.state is not None else 0
    if not 0 <= mask < (1 << ts.site_count):
        raise InputError(f"state mask {mask} out of range")
    out.append(st.component_graph(ts, mask).to_dot("components").rstrip("\n"))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--threads", type=int, default=1, help="worker processes for state enumeration")
    common.add_argument("--budget-states", type=int, default=st.DEFAULT_STATE_BUDGET,
                        help="maximum number of sites for exhaustive enumeration")
    common.add_argument("--budget-oracle", type=int, default=oracles.DEFAULT_ORACLE_BUDGET,
                        help="maximum number of assignments tried by brute-force oracles")
    p = argparse.ArgumentParser(prog="pkpoly", description="Coloring polynomials of link diagrams and matched cubic graphs.")
    sub = p.add_subparsers(dest="command", required=True)
    s = sub.add_parser("compute", parents=[common], help="polynomial and state census")
    s.add_argument("input")
    s = sub.add_parser("oracle", parents=[common], help="brute-force Tait coloring count")
    s.add_argument("input")
    s.add_argument("--n", type=int, required=True)
    s = sub.add_parser("analyze", parents=[common], help="coefficient and evaluation report")
    s.add_argument("input")
    s = sub.add_parser("aigner", parents=[common], help="subset-sum polynomial of a plane graph")
    s.add_argument("input")
    s = sub.add_parser("reduce", parents=[common], help="bigon reduction; prints the reduced LKD")
    s.add_argument("input")
    s = sub.add_parser("verify", parents=[common], help="run invariant suites")
    s.add_argument("--suite")
    s.add_argument("--corpus-file")
    s = sub.add_parser("corpus", parents=[common], help="list or show built-in entries")
    s.add_argument("action", choices=["list", "show"])
    s.add_argument("name", nargs="?")
    s = sub.add_parser("export", parents=[common], help="DOT export")
    s.add_argument("--dot", required=True, choices=["tait", "dual", "component"])
    s.add_argument("--state", type=int, help="state bitmask for the component graph (default all-smoothed)")
    s.add_argument("input")
    return p


COMMANDS = {
    "compute": cmd_compute,
    "oracle": cmd_oracle,
    "analyze": cmd_analyze,
    "aigner": cmd_aigner,
    "reduce": cmd_reduce,
    "verify": cmd_verify,
    "corpus": cmd_corpus,
    "export": cmd_export,
}


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    for flag in ("threads", "budget_states", "budget_oracle"):
        if getattr(args, flag) < (1 if flag == "threads" else 0):
            stderr.write(f"error: --{flag.replace('_', '-')} must be positive\n")
            return EXIT_INPUT
    out: list[str] = []
    try:
        code = COMMANDS[args.command](args, out)
    except BudgetExceeded as exc:
        stderr.write(f"budget exceeded: {exc}\n")
        return EXIT_BUDGET
    except (InputError, ParseError, GraphError, DiagramError, StateError) as exc:
        stderr.write(f"input error: {exc}\n")
        return EXIT_INPUT
    if out:
        stdout.write("\n".join(out) + "\n")
    stdout.flush()
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
