"""Command-line front end.

Subcommands cover KB consistency, entailment under the four reasoning
modes, the ranking table, probabilistic range queries, query probability,
concept combination, and the enumeration oracle. Every subcommand accepts
--json for a single deterministic JSON object and --timeout for a wall
clock limit. Exit status: 0 entailed/consistent, 1 not, 2 error.
"""

from __future__ import annotations

import argparse
import json
import signal
import sys
from dataclasses import dataclass
from fractions import Fraction
from math import inf
from typing import Optional

from . import alc, encoding, oracle, probext, rc, sc, tcl
from .model import (
    BOT,
    Inclusion,
    KnowledgeBase,
    Plain,
    TOP,
    concept_to_str,
    format_probability,
)
from .parse import ParseError, parse_concept, parse_kb, parse_query, serialize_kb

MODES = ("mono", "rc", "sc", "oracle")


class CliError(Exception):
    """Reported on stderr with exit status 2."""


class CliTimeout(Exception):
    pass


@dataclass
class Verdict:
    command: str
    result: str  # entailed | not-entailed | vacuous | consistent |
    #             inconsistent | combined | error
    query: str = ""
    mode: str = ""
    probability: Optional[Fraction] = None
    trace: Optional[object] = None
    message: str = ""

    @property
    def exit_code(self) -> int:
        if self.result == "error":
            return 2
        return 0 if self.result in ("entailed", "consistent", "combined") else 1

    def to_json(self) -> str:
        payload = {
            "schema": 1,
            "command": self.command,
            "result": self.result,
        }
        if self.query:
            payload["query"] = self.query
        if self.mode:
            payload["mode"] = self.mode
        if self.probability is not None:
            payload["probability"] = {
                "fraction": f"{self.probability.numerator}"
                            f"/{self.probability.denominator}",
                "decimal": format_probability(self.probability),
            }
        if self.trace is not None:
            payload["trace"] = self.trace
        if self.message:
            payload["message"] = self.message
        return json.dumps(payload, sort_keys=True, separators=(", ", ": "))

    def human(self) -> str:
        if self.command in ("rank", "combine"):
            return self.message
        parts = [self.result]
        if self.probability is not None:
            parts.append(f"P = {self.probability.numerator}"
                         f"/{self.probability.denominator}"
                         f" = {format_probability(self.probability)}")
        if self.message:
            parts.append(self.message)
        return "; ".join(parts)


def _load_kb(path: str) -> KnowledgeBase:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise CliError(f"cannot read {path}: {e.strerror}")
    try:
        return parse_kb(text)
    except ParseError as e:
        raise CliError(f"{path}: {e}")


def _parse_query_arg(text: str):
    try:
        return parse_query(text)
    except ParseError as e:
        raise CliError(f"query: {e}")


def _parse_concept_arg(text: str, what: str):
    try:
        return parse_concept(text)
    except ParseError as e:
        raise CliError(f"{what}: {e}")


def _rank_str(r) -> str:
    return "inf" if r == inf else str(r)


# ---------------------------------------------------------------------------
# subcommands


def _cmd_check(args) -> Verdict:
    kb = _load_kb(args.kb)
    mode = args.mode or "rc"
    if mode == "mono":
        enc = encoding.encode(kb.stripped())
        ok = alc.abox_consistent(enc.strict, enc.abox)
        msg = ""
    elif mode == "oracle":
        res = oracle.oracle_entails(
            kb.stripped(), Inclusion(Plain(TOP), BOT), args.domain_bound)
        ok = not res.entailed_up_to_bound
        msg = "" if ok else f"no ranked model within bound {res.effective_bound}"
    elif mode == "rc":
        try:
            rc.minimal_assignments(kb.stripped())
            ok, msg = True, ""
        except rc.InconsistentKbError as e:
            ok, msg = False, str(e)
    else:
        raise CliError(f"check does not support mode {mode}")
    return Verdict("check", "consistent" if ok else "inconsistent",
                   mode=mode, message=msg)


def _sc_query(kb: KnowledgeBase, q, args, verdict: Verdict) -> bool:
    if isinstance(q, Inclusion) and not q.left.typical:
        return alc.entails(kb.strict, q.left.concept, q.right)
    if not isinstance(q, Inclusion):
        raise CliError("sc mode answers inclusion queries only")
    base = sc.build_base(kb, q.left.concept)
    if args.show_base or args.trace:
        verdict.trace = {
            "base": [{"rank": r, "accepted": [str(d) for d in ds]}
                     for r, ds in base.per_rank],
            "stop_rank": base.stop_rank,
        }
    from .model import And, materialization
    return alc.entails(kb.strict,
                       And(q.left.concept, materialization(base.defaults)),
                       q.right)


def _cmd_query(args) -> Verdict:
    kb = _load_kb(args.kb).stripped()
    q = _parse_query_arg(args.query)
    mode = args.mode or "rc"
    v = Verdict("query", "", query=args.query, mode=mode)
    if mode == "mono":
        if args.emit_encoding:
            enc = encoding.encode_for_query(kb, q)
            v.trace = {"encoding": serialize_kb(enc.to_kb())}
        ok = encoding.tr_entails(kb, q)
    elif mode == "rc":
        try:
            ok = rc.rc_abox_entails(kb, q)
        except rc.InconsistentKbError as e:
            raise CliError(f"inconsistent KB: {e}")
        except ValueError as e:
            raise CliError(str(e))
    elif mode == "sc":
        try:
            ok = _sc_query(kb, q, args, v)
        except sc.UnrankedTargetError as e:
            raise CliError(str(e))
    elif mode == "oracle":
        try:
            res = oracle.oracle_entails(kb, q, args.domain_bound)
        except oracle.OracleCapacityError as e:
            raise CliError(str(e))
        ok = res.entailed_up_to_bound
        if not ok:
            v.message = f"countermodel within bound {res.effective_bound}"
            if args.trace:
                v.trace = {"countermodel": res.countermodel.table()}
    else:
        raise CliError(f"unknown mode {mode}")
    v.result = "entailed" if ok else "not-entailed"
    return v


def _cmd_rank(args) -> Verdict:
    kb = _load_kb(args.kb).stripped()
    ranking = rc.compute_ranking(kb)
    rows = []
    seen = set()
    for d in kb.defeasible:
        c = d.left.concept
        key = concept_to_str(c)
        if key not in seen:
            seen.add(key)
            rows.append((key, ranking.concept_rank(c)))
    for extra in args.concept or ():
        c = _parse_concept_arg(extra, "concept")
        key = concept_to_str(c)
        if key not in seen:
            seen.add(key)
            rows.append((key, ranking.concept_rank(c)))
    v = Verdict("rank", "consistent")
    v.trace = {
        "ranks": [{"concept": k, "rank": _rank_str(r)} for k, r in rows],
        "defaults": [{"default": str(d), "rank": _rank_str(ranking.default_rank(d))}
                     for d in kb.defeasible],
        "levels": [[str(d) for d in level] for level in ranking.levels],
    }
    width = max((len(k) for k, _ in rows), default=0)
    v.message = "\n".join(f"{k.ljust(width)}  {_rank_str(r)}" for k, r in rows)
    return v


def _cmd_prob_query(args) -> Verdict:
    kb = _load_kb(args.kb)
    if kb.dialect != "alctp":
        raise CliError(f"prob-query needs an alctp KB, got {kb.dialect}")
    q = _parse_query_arg(args.query)
    v = Verdict("prob-query", "", query=args.query, mode="alctp")
    if args.prob:
        v.probability = probext.query_probability(kb, q)
        v.result = "entailed" if v.probability == 1 else "not-entailed"
        return v
    if args.min is None or args.max is None:
        raise CliError("prob-query needs --min and --max (or --prob)")
    try:
        ok = probext.prob_entails(kb, q, _fraction(args.min), _fraction(args.max))
    except probext.VacuousRangeError as e:
        v.result = "vacuous"
        v.message = str(e)
        return v
    v.result = "entailed" if ok else "not-entailed"
    return v


def _cmd_prob_of(args) -> Verdict:
    kb = _load_kb(args.kb)
    if kb.dialect != "alctp":
        raise CliError(f"prob-of needs an alctp KB, got {kb.dialect}")
    q = _parse_query_arg(args.query)
    p = probext.query_probability(kb, q)
    return Verdict("prob-of", "entailed" if p == 1 else "not-entailed",
                   query=args.query, mode="alctp", probability=p)


def _cmd_combine(args) -> Verdict:
    kb = _load_kb(args.kb)
    if kb.dialect != "tcl":
        raise CliError(f"combine needs a tcl KB, got {kb.dialect}")
    head = _parse_concept_arg(args.head, "--head")
    mod = _parse_concept_arg(args.modifier, "--modifier")
    saturate = not args.no_role_saturation
    try:
        res = tcl.revise(kb, head, mod, role_saturation=saturate)
    except (tcl.CombinationError, tcl.ScenarioGuardError) as e:
        raise CliError(str(e))
    v = Verdict("combine", "combined", mode="tcl")
    lines = [str(a) for a in res.additions]
    head_lines = [
        "scenario {} P = {}/{} ({})".format(
            "".join(str(k) for k in w.choices),
            w.probability.numerator, w.probability.denominator,
            format_probability(w.probability))
        for w in res.scenarios]
    v.message = "\n".join(head_lines + lines)
    trace = {
        "compound": concept_to_str(res.compound),
        "selected": [
            {"choices": list(w.choices),
             "probability": f"{w.probability.numerator}/{w.probability.denominator}"}
            for w in res.scenarios],
        "additions": lines,
    }
    if args.trace:
        report = tcl._walk(kb, head, mod, saturate, tcl.SCENARIO_GUARD)
        trace["blocks"] = [
            {"probability": f"{b.probability.numerator}/{b.probability.denominator}",
             "scenarios": [{"choices": list(w.choices), "verdict": verdict}
                           for w, verdict in zip(b.scenarios, b.verdicts)]}
            for b in report.blocks]
        trace["inconsistent"] = len(report.inconsistent)
    v.trace = trace
    if args.emit:
        text = serialize_kb(res.revised)
        if args.emit == "-":
            sys.stdout.write(text)
        else:
            with open(args.emit, "w", encoding="utf-8") as fh:
                fh.write(text)
    return v


def _cmd_oracle(args) -> Verdict:
    kb = _load_kb(args.kb).stripped()
    q = _parse_query_arg(args.query)
    v = Verdict("oracle", "", query=args.query,
                mode="min-canonical" if args.canonical else "oracle")
    try:
        if args.canonical:
            res = oracle.oracle_min_canonical_entails(kb, q, args.domain_bound)
            if res.verdict == oracle.NO_CANONICAL:
                raise CliError(res.verdict)
            v.result = ("entailed" if res.verdict == oracle.ENTAILED
                        else "not-entailed")
            v.message = f"{res.models_seen} minimal canonical models"
        else:
            res = oracle.oracle_entails(kb, q, args.domain_bound)
            v.result = "entailed" if res.entailed_up_to_bound else "not-entailed"
            if res.entailed_up_to_bound and not res.exhaustive:
                v.message = f"no countermodel up to bound {res.effective_bound}"
            if res.countermodel is not None:
                v.message = f"countermodel within bound {res.effective_bound}"
                v.trace = {"countermodel": res.countermodel.table()}
    except oracle.OracleCapacityError as e:
        raise CliError(str(e))
    return v


# ---------------------------------------------------------------------------
# argument plumbing


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise CliError(f"not a number: {text!r}")


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="typirank",
        description="Defeasible description-logic reasoning with typicality.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, query=True):
        p.add_argument("kb", help="knowledge-base file")
        if query:
            p.add_argument("query", help="query text")
        p.add_argument("--json", action="store_true",
                       help="one JSON object on stdout")
        p.add_argument("--trace", action="store_true",
                       help="include structured detail")
        p.add_argument("--timeout", type=float, metavar="S",
                       help="wall-clock limit in seconds")

    p = sub.add_parser("check", help="KB consistency")
    common(p, query=False)
    p.add_argument("--mode", choices=("mono", "rc", "oracle"))
    p.add_argument("--domain-bound", type=int, default=3)
    p.set_defaults(fn=_cmd_check)

    p = sub.add_parser("query", help="entailment under a reasoning mode")
    common(p)
    p.add_argument("--mode", choices=MODES)
    p.add_argument("--domain-bound", type=int, default=3)
    p.add_argument("--show-base", action="store_true",
                   help="sc: print the accepted defaults per rank")
    p.add_argument("--emit-encoding", action="store_true",
                   help="mono: include the plain-ALC translation")
    p.set_defaults(fn=_cmd_query)

    p = sub.add_parser("rank", help="rational-closure ranking table")
    common(p, query=False)
    p.add_argument("--concept", action="append", metavar="C",
                   help="additional concept to rank (repeatable)")
    p.set_defaults(fn=_cmd_rank)

    p = sub.add_parser("prob-query", help="range entailment over extensions")
    common(p)
    p.add_argument("--min", metavar="P")
    p.add_argument("--max", metavar="P")
    p.add_argument("--prob", action="store_true",
                   help="report the query probability instead")
    p.set_defaults(fn=_cmd_prob_query)

    p = sub.add_parser("prob-of", help="probability of a query")
    common(p)
    p.set_defaults(fn=_cmd_prob_of)

    p = sub.add_parser("combine", help="prototypical concept combination")
    common(p, query=False)
    p.add_argument("--head", required=True, metavar="C")
    p.add_argument("--modifier", required=True, metavar="C")
    p.add_argument("--emit", metavar="FILE",
                   help="write the revised KB ('-' for stdout)")
    p.add_argument("--no-role-saturation", action="store_true")
    p.set_defaults(fn=_cmd_combine)

    p = sub.add_parser("oracle", help="bounded model-enumeration check")
    common(p)
    p.add_argument("--domain-bound", type=int, default=3)
    p.add_argument("--canonical", action="store_true",
                   help="minimal-canonical-model entailment")
    p.set_defaults(fn=_cmd_oracle)

    return ap


def run(argv=None) -> int:
    try:
        args = _build_parser().parse_args(argv)
    except SystemExit as e:
        return 2 if e.code not in (0, None) else 0
    timeout = getattr(args, "timeout", None)
    old = None
    if timeout:
        def fire(signum, frame):
            raise CliTimeout

        old = signal.signal(signal.SIGALRM, fire)
        signal.setitimer(signal.ITIMER_REAL, timeout)
    try:
        v = args.fn(args)
    except CliTimeout:
        v = Verdict(args.command, "error",
                    message=f"timeout after {timeout:g} s")
    except CliError as e:
        v = Verdict(args.command, "error", message=str(e))
    finally:
        if timeout:
            signal.setitimer(signal.ITIMER_REAL, 0)
            signal.signal(signal.SIGALRM, old)
    if args.json:
        print(v.to_json())
    elif v.result == "error":
        print(f"error: {v.message}", file=sys.stderr)
    else:
        print(v.human())
        if isinstance(v.trace, dict):
            if "encoding" in v.trace:
                sys.stdout.write(v.trace["encoding"])
            if "countermodel" in v.trace:
                print(v.trace["countermodel"])
            if "base" in v.trace:
                for row in v.trace["base"]:
                    accepted = "; ".join(row["accepted"]) or "(none)"
                    print(f"rank {row['rank']}: {accepted}")
                if v.trace["stop_rank"] is not None:
                    print(f"stopped at rank {v.trace['stop_rank']}")
    return v.exit_code


def main() -> None:
    sys.exit(run())
