"""Command-line front end.

Exit codes: 0 holds / success, 1 fails, 2 unknown, 64 usage error.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys

from .decide import Budget, Status, Witness, decide
from .jforms import canonical_j, subword_of
from .lang import LangExpr, LevelError, enumerate_level, expr_to_dfa, marker_letters, show
from .levels import Level
from .monoid import enumerate_ordered_monoids, syntactic_ordered_monoid
from .proof import Proof, ProofError, check_proof
from .rewriting import normalize_a
from .terms import TermSyntaxError, decompositions, format_term, letters, mu, parse_term

EXIT_OK, EXIT_FAILS, EXIT_UNKNOWN, EXIT_USAGE = 0, 1, 2, 64
EXIT_CODES = {Status.HOLDS: EXIT_OK, Status.FAILS: EXIT_FAILS, Status.UNKNOWN: EXIT_UNKNOWN}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _emit(args, data, text):
    if args.format == "json":
        print(json.dumps(data, indent=2))
    else:
        print(text)


def _term(text):
    try:
        return parse_term(text)
    except TermSyntaxError as e:
        raise UsageError(str(e)) from None


def _level(text):
    try:
        return Level.parse(text)
    except ValueError as e:
        raise UsageError(str(e)) from None


def _load_json(source):
    """Inline JSON text, or the path of a file holding it."""
    if os.path.exists(source):
        with open(source, encoding="utf-8") as f:
            source = f.read()
    try:
        return json.loads(source)
    except json.JSONDecodeError as e:
        raise UsageError(f"invalid JSON: {e}") from None


def _budget(args) -> Budget:
    overrides = {}
    for f in dataclasses.fields(Budget):
        value = getattr(args, "budget_" + f.name)
        if value is not None:
            overrides[f.name] = value
    try:
        return Budget(**overrides)
    except ValueError as e:
        raise UsageError(str(e)) from None


def _witness_text(w: Witness) -> str:
    lines = [f"witness language [{w.language.level}]: {show(w.language.expr)}"]
    if w.subword is not None:
        lines.insert(0, f"witness subword: {w.subword}")
    phi = ", ".join(f"{a}->{x}" for a, x in sorted(w.assignment.items()))
    lines.append(f"assignment: {phi}; lhs = {w.lhs_value}, rhs = {w.rhs_value}, lhs not <= rhs")
    return "\n".join(lines)


def cmd_decide(args):
    u, v, level = _term(args.lhs), _term(args.rhs), _level(args.level)
    try:
        verdict = decide(u, v, level, _budget(args))
    except LevelError as e:
        raise UsageError(str(e)) from None
    text = [verdict.status.value]
    if isinstance(verdict.evidence, Witness):
        text.append(_witness_text(verdict.evidence))
    elif isinstance(verdict.evidence, Proof):
        text.append(str(verdict.evidence))
    elif verdict.unknown:
        text.append("budget exhausted: " + ", ".join(f"{k}={x}" for k, x in verdict.spent.items()))
    _emit(args, verdict.to_dict(), "\n".join(text))
    return EXIT_CODES[verdict.status]


def cmd_canonical_j(args):
    form = canonical_j(_term(args.term))
    _emit(args, {"term": args.term, "canonical": str(form)}, str(form))
    return EXIT_OK


def cmd_normalize(args):
    t = normalize_a(_term(args.term))
    _emit(args, {"term": args.term, "normal": format_term(t)}, format_term(t))
    return EXIT_OK


def cmd_mu(args):
    m = mu(_term(args.term))
    _emit(args, {"term": args.term, "mu": [m.omega, m.ell]}, f"({m.omega},{m.ell})")
    return EXIT_OK


def cmd_decomps(args):
    pairs = decompositions(_term(args.term), args.exp_bound)
    data = [[format_term(l), format_term(r)] for l, r in pairs]
    _emit(args, {"term": args.term, "decompositions": data},
          "\n".join(f"({l}, {r})" for l, r in data))
    return EXIT_OK


def cmd_subword(args):
    word = "" if args.word in ("1", "") else args.word
    if not all("a" <= c <= "z" for c in word):
        raise UsageError(f"not a word over a..z: {args.word!r}")
    found = subword_of(word, _term(args.term))
    _emit(args, {"word": word, "term": args.term, "subword": found}, str(found).lower())
    return EXIT_OK if found else EXIT_FAILS


def cmd_synt(args):
    data = _load_json(args.expr)
    try:
        expr = LangExpr.from_dict(data) if "expr" in data else None
    except (LevelError, KeyError, ValueError, TypeError) as e:
        raise UsageError(f"bad language expression: {e}") from None
    if expr is None:
        raise UsageError('expected {"level": ..., "expr": ...}')
    alphabet = sorted(set(args.alphabet or "") | marker_letters(expr.expr)) or ["a"]
    rec = syntactic_ordered_monoid(expr_to_dfa(expr.expr, alphabet))
    m = rec.monoid
    out = {
        "language": expr.to_dict(),
        "alphabet": "".join(alphabet),
        "monoid": m.to_dict(),
        "assignment": {a: m.names[x] for a, x in rec.assignment.items()},
        "filter": [m.names[x] for x in sorted(rec.accepting)],
    }
    lines = [f"language: {show(expr.expr)} over {''.join(alphabet)}",
             f"elements: {' '.join(m.names)}"]
    for i, row in enumerate(m.table):
        lines.append(f"  {m.names[i]:>6} * : " + " ".join(m.names[int(j)] for j in row))
    strict = [f"{m.names[x]} < {m.names[y]}" for x in range(len(m)) for y in range(len(m))
              if x != y and m.leq[x, y]]
    lines.append("order: " + (", ".join(strict) if strict else "discrete"))
    lines.append("assignment: " + ", ".join(f"{a}->{n}" for a, n in out["assignment"].items()))
    lines.append("filter: {" + ", ".join(out["filter"]) + "}")
    _emit(args, out, "\n".join(lines))
    return EXIT_OK


def cmd_check_proof(args):
    data = _load_json(args.file)
    try:
        proof = Proof.from_dict(data)
    except (ProofError, TermSyntaxError, KeyError, ValueError, TypeError) as e:
        raise UsageError(f"bad proof file: {e}") from None
    result = check_proof(proof, _budget(args))
    out = {"valid": result.valid, "step": result.step, "reason": result.reason,
           "conclusion": {"lhs": format_term(proof.conclusion.lhs),
                          "rhs": format_term(proof.conclusion.rhs)}}
    text = f"valid: {proof.conclusion}" if result else f"invalid at step {result.step}: {result.reason}"
    _emit(args, out, text)
    return EXIT_OK if result else EXIT_FAILS


def cmd_enum_langs(args):
    level = _level(args.level)
    try:
        exprs = list(enumerate_level(level, args.alphabet, args.count))
    except LevelError as e:
        raise UsageError(str(e)) from None
    _emit(args, [e.to_dict() for e in exprs], "\n".join(show(e.expr) for e in exprs))
    return EXIT_OK


def cmd_enum_monoids(args):
    if not 1 <= args.max_size <= 4:
        raise UsageError("--max-size must be between 1 and 4")
    monoids = list(enumerate_ordered_monoids(args.max_size, up_to_iso=args.up_to_iso))
    sizes = {}
    for m in monoids:
        sizes[len(m)] = sizes.get(len(m), 0) + 1
    text = [f"{len(monoids)} ordered monoids"] + [f"  size {k}: {n}" for k, n in sorted(sizes.items())]
    _emit(args, [m.to_dict() for m in monoids], "\n".join(text))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="omegaineq", description="Omega-inequalities across the levels of the hierarchy.")
    parser.add_argument("--format", choices=("text", "json"), default="text")
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS)
    budget = _Parser(add_help=False)
    for f in dataclasses.fields(Budget):
        budget.add_argument("--budget-" + f.name.replace("_", "-"), dest="budget_" + f.name,
                            type=int, default=None, metavar="N",
                            help=f"override the {f.name} budget (default {f.default})")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decide", parents=[common, budget], help="decide u <= v at a level")
    p.add_argument("lhs")
    p.add_argument("rhs")
    p.add_argument("--level", required=True)
    p.set_defaults(func=cmd_decide)

    for name, func, helptext in (("canonical-j", cmd_canonical_j, "canonical form over J"),
                                 ("normalize", cmd_normalize, "rewrite toward a normal form over A"),
                                 ("mu", cmd_mu, "the measure mu of a term")):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("term")
        p.set_defaults(func=func)

    p = sub.add_parser("decomps", parents=[common], help="decompositions of a term")
    p.add_argument("term")
    p.add_argument("--exp-bound", type=int, default=2)
    p.set_defaults(func=cmd_decomps)

    p = sub.add_parser("subword", parents=[common], help="is a word a subword of a term")
    p.add_argument("word")
    p.add_argument("term")
    p.set_defaults(func=cmd_subword)

    p = sub.add_parser("synt", parents=[common], help="syntactic ordered monoid of a language")
    p.add_argument("--expr", required=True, help="JSON expression, inline or in a file")
    p.add_argument("--alphabet", default=None)
    p.set_defaults(func=cmd_synt)

    p = sub.add_parser("check-proof", parents=[common, budget], help="verify a proof file")
    p.add_argument("file")
    p.set_defaults(func=cmd_check_proof)

    p = sub.add_parser("enum-langs", parents=[common], help="enumerate languages of a level")
    p.add_argument("--level", required=True)
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--alphabet", default="ab")
    p.set_defaults(func=cmd_enum_langs)

    p = sub.add_parser("enum-monoids", parents=[common], help="enumerate small ordered monoids")
    p.add_argument("--max-size", type=int, required=True)
    p.add_argument("--up-to-iso", action="store_true")
    p.set_defaults(func=cmd_enum_monoids)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as e:
        print(f"omegaineq: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
