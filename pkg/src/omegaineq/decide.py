"""Deciding omega-inequalities level by level.

Levels 0, 1/2 and 1 are decided exactly.  From 3/2 on, a budgeted prover and
a budgeted refuter are interleaved in fixed work slices; whichever succeeds
first settles the query, and exhausting both budgets gives UNKNOWN.
"""

from __future__ import annotations

import dataclasses
import enum
from dataclasses import dataclass, field
from functools import lru_cache

from .automata import dfa_included
from .jforms import canonical_j, subword_nfa
from .lang import (SUPPORTED_LEVELS, Complement, LangExpr, LevelError, check_level, enumerator,
                   expr_to_dfa, relevel, upset)
from .levels import Level
from .monoid import evaluate, find_violation, syntactic_ordered_monoid
from .proof import Inequality, Proof, ProofSearch
from .terms import OmegaTerm, as_term, format_term, letters


@dataclass(frozen=True)
class Budget:
    """Work limits for the semi-decision levels.

    ``proof_expansions`` goals visited by the prover; ``languages`` level
    expressions tried by the refuter; ``rewrite_factor`` rewrite steps per
    squared term size; ``monoid_cap`` largest syntactic monoid the refuter
    checks; ``refute_size`` largest monoid used to separate terms over A;
    ``exp_bound`` integer exponents in decompositions; the two slices set
    the work done by each side per round of the interleaving.
    """

    proof_expansions: int = 2000
    languages: int = 64
    rewrite_factor: int = 10
    monoid_cap: int = 64
    refute_size: int = 4
    exp_bound: int = 1
    prover_slice: int = 256
    refuter_slice: int = 8

    def __post_init__(self):
        for f in dataclasses.fields(self):
            if getattr(self, f.name) < 0:
                raise ValueError(f"budget {f.name} must be nonnegative")
        if self.prover_slice < 1 or self.refuter_slice < 1:
            raise ValueError("dovetail slices must be positive")

    def scaled(self, k: float) -> "Budget":
        """Multiply the prover and refuter allowances by ``k``."""
        return dataclasses.replace(
            self,
            proof_expansions=max(1, int(self.proof_expansions * k)),
            languages=max(1, int(self.languages * k)),
        )

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)


DEFAULT_BUDGET = Budget()


class Status(enum.Enum):
    HOLDS = "holds"
    FAILS = "fails"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class Witness:
    """A level-h language whose syntactic ordered monoid violates the inequality."""

    language: LangExpr
    alphabet: tuple
    assignment: dict  # letter -> element name
    lhs_value: str
    rhs_value: str
    subword: str | None = None

    def to_dict(self) -> dict:
        out = {
            "language": self.language.to_dict(),
            "alphabet": "".join(self.alphabet),
            "assignment": dict(self.assignment),
            "lhs_value": self.lhs_value,
            "rhs_value": self.rhs_value,
        }
        if self.subword is not None:
            out["subword"] = self.subword
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "Witness":
        return cls(LangExpr.from_dict(data["language"]), tuple(data["alphabet"]),
                   dict(data["assignment"]), data["lhs_value"], data["rhs_value"],
                   data.get("subword"))


def _witness_from(language: LangExpr, alphabet, u, v, prefer=None, subword=None):
    """Build a witness from ``language`` if its syntactic monoid violates ``u <= v``."""
    rec = syntactic_ordered_monoid(expr_to_dfa(language.expr, alphabet))
    m = rec.monoid
    bad = find_violation(m, u, v, alphabet, prefer=prefer)
    if bad is None:
        return None
    return Witness(language, tuple(alphabet), {a: m.names[x] for a, x in bad.items()},
                   m.names[evaluate(m, bad, u)], m.names[evaluate(m, bad, v)], subword)


def replay_witness(w: Witness, u, v, level) -> bool:
    """Re-validate a witness from its data alone."""
    u, v, level = as_term(u), as_term(v), Level.parse(level)
    if w.language.level != level or not check_level(w.language.expr, level):
        return False
    rec = syntactic_ordered_monoid(expr_to_dfa(w.language.expr, w.alphabet))
    m = rec.monoid
    try:
        phi = {a: m.index(name) for a, name in w.assignment.items()}
    except (KeyError, ValueError):
        return False
    if not (letters(u) | letters(v)) <= set(phi):
        return False
    x, y = evaluate(m, phi, u), evaluate(m, phi, v)
    return m.names[x] == w.lhs_value and m.names[y] == w.rhs_value and not m.leq[x, y]


@dataclass(frozen=True)
class Exact:
    """Evidence produced by an exact procedure."""

    procedure: str

    def to_dict(self):
        return {"type": "exact", "procedure": self.procedure}


@dataclass(frozen=True)
class Reduction:
    """An integer-level verdict obtained from both directions one half level down."""

    forward: "Verdict"
    backward: "Verdict"

    def to_dict(self):
        return {"type": "reduction", "forward": self.forward.to_dict(),
                "backward": self.backward.to_dict()}


@dataclass(frozen=True)
class Verdict:
    status: Status
    lhs: OmegaTerm
    rhs: OmegaTerm
    level: Level
    evidence: object = None
    spent: dict = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return self.status is Status.HOLDS

    @property
    def fails(self) -> bool:
        return self.status is Status.FAILS

    @property
    def unknown(self) -> bool:
        return self.status is Status.UNKNOWN

    def to_dict(self) -> dict:
        ev = self.evidence
        if isinstance(ev, Proof):
            evidence = {"type": "proof", **ev.to_dict()}
        elif isinstance(ev, Witness):
            evidence = {"type": "witness", **ev.to_dict()}
        elif ev is None:
            evidence = None
        else:
            evidence = ev.to_dict()
        return {
            "query": {"lhs": format_term(self.lhs), "rhs": format_term(self.rhs),
                      "level": str(self.level)},
            "verdict": self.status.value,
            "evidence": evidence,
            "budget_spent": dict(self.spent),
        }

    def __str__(self):
        return self.status.value


def decide(u, v, level, budget: Budget | None = None) -> Verdict:
    """Decide whether ``u <= v`` holds at ``level`` (exactly up to 1, budgeted above)."""
    u, v, level = as_term(u), as_term(v), Level.parse(level)
    budget = budget if budget is not None else DEFAULT_BUDGET
    if level not in SUPPORTED_LEVELS:
        raise LevelError(f"unsupported level {level}; levels 0 to 5/2 are available")
    if level.twice == 0:
        return Verdict(Status.HOLDS, u, v, level, Exact("trivial level"))
    if level.twice == 1:
        return _decide_half(u, v)
    if not level.is_half:
        return _decide_integer(u, v, level, budget)
    return _dovetail(u, v, level, budget)


@lru_cache(maxsize=1 << 14)
def _decide_half(u, v) -> Verdict:
    level = Level(1)
    alphabet = sorted(letters(u) | letters(v))
    if not alphabet:
        return Verdict(Status.HOLDS, u, v, level, Exact("subword inclusion"))
    ok, word = dfa_included(subword_nfa(u).determinize(alphabet),
                            subword_nfa(v).determinize(alphabet))
    if ok:
        return Verdict(Status.HOLDS, u, v, level, Exact("subword inclusion"))
    # the natural assignment always violates: u reaches the filter, v does not
    language = LangExpr(level, upset(word))
    rec = syntactic_ordered_monoid(expr_to_dfa(language.expr, alphabet))
    natural = {a: rec.assignment[a] for a in alphabet}
    witness = _witness_from(language, alphabet, u, v, prefer=natural, subword=word)
    return Verdict(Status.FAILS, u, v, level, witness)


def _decide_integer(u, v, level, budget) -> Verdict:
    below = level.below()
    forward = decide(u, v, below, budget)
    if forward.fails:
        w = forward.evidence
        lifted = dataclasses.replace(w, language=relevel(w.language, level))
        return Verdict(Status.FAILS, u, v, level, lifted, forward.spent)
    backward = decide(v, u, below, budget)
    spent = _add(forward.spent, backward.spent)
    if backward.fails:
        # v <= u fails in Synt(L), so u <= v fails in Synt(complement of L)
        w = backward.evidence
        language = LangExpr(level, Complement(w.language.expr))
        witness = _witness_from(language, w.alphabet, u, v,
                                prefer=_by_name(language, w.alphabet, w.assignment))
        return Verdict(Status.FAILS, u, v, level, witness, spent)
    if forward.holds and backward.holds:
        return Verdict(Status.HOLDS, u, v, level, Reduction(forward, backward), spent)
    return Verdict(Status.UNKNOWN, u, v, level, None, spent)


def _by_name(language, alphabet, names):
    m = syntactic_ordered_monoid(expr_to_dfa(language.expr, alphabet)).monoid
    try:
        return {a: m.index(n) for a, n in names.items()}
    except (KeyError, ValueError):
        return None


def _add(s1, s2):
    out = dict(s1)
    for k, x in s2.items():
        if isinstance(x, int):
            out[k] = out.get(k, 0) + x
    return out


# -- semi-decision from 3/2 on ------------------------------------------------------


def refuter(u, v, level, budget: Budget):
    """Generator: yields after each language tried, returns a Witness or None.

    A failure one level down is exact and lifts to ``level``; otherwise
    level expressions over the query alphabet are tried in order.
    """
    alphabet = tuple(sorted(letters(u) | letters(v)))
    if not alphabet or budget.languages == 0:
        return None
    base = decide(u, v, Level(2), budget)
    yield
    if base.fails:
        w = base.evidence
        return dataclasses.replace(w, language=relevel(w.language, level))
    source = enumerator(level, alphabet)
    for index, (node, dfa) in enumerate(source.stream(budget.languages - 1)):
        yield
        if dfa.n_states > budget.monoid_cap:
            continue
        rec = source.syntactic(index)
        m = rec.monoid
        if len(m) > budget.monoid_cap:
            continue
        bad = find_violation(m, u, v, alphabet)
        if bad is not None:
            return Witness(LangExpr(level, node), alphabet, {a: m.names[x] for a, x in bad.items()},
                           m.names[evaluate(m, bad, u)], m.names[evaluate(m, bad, v)])
    return None


def refute(u, v, level, budget: Budget | None = None):
    """Search for a witness that ``u <= v`` fails at ``level``; None is not a confirmation."""
    u, v, level = as_term(u), as_term(v), Level.parse(level)
    if level.twice < 2:
        raise LevelError("refute runs from level 1 on")
    return _drain(refuter(u, v, level, budget if budget is not None else DEFAULT_BUDGET))


def _drain(gen):
    try:
        while True:
            next(gen)
    except StopIteration as stop:
        return stop.value


def _dovetail(u, v, level, budget) -> Verdict:
    search = ProofSearch(level, budget)
    prover = search.run(Inequality(u, v))
    refute_gen = refuter(u, v, level, budget)
    languages = 0
    exhausted = []
    prover_live = refuter_live = True
    while prover_live or refuter_live:
        if prover_live:
            try:
                for _ in range(budget.prover_slice):
                    next(prover)
            except StopIteration as stop:
                prover_live = False
                if stop.value is not None:
                    spent = {"proof_expansions": search.expansions, "languages": languages}
                    return Verdict(Status.HOLDS, u, v, level, stop.value, spent)
                exhausted.append("prover")
        if refuter_live:
            try:
                for _ in range(budget.refuter_slice):
                    next(refute_gen)
                    languages += 1
            except StopIteration as stop:
                refuter_live = False
                if stop.value is not None:
                    spent = {"proof_expansions": search.expansions, "languages": languages}
                    return Verdict(Status.FAILS, u, v, level, stop.value, spent)
                exhausted.append("refuter")
    spent = {"proof_expansions": search.expansions, "languages": languages,
             "exhausted_first": exhausted[0]}
    return Verdict(Status.UNKNOWN, u, v, level, None, spent)
