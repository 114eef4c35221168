"""Formal proofs of omega-inequalities from the hypotheses Gamma.

A proof is a list of inequalities, each justified by one of four rules:

* a member of Gamma: either a trivial inequality (both sides equal over A)
  or an axiom ``u^w <= u^w v u^w`` whose side condition ``v <= u`` is valid
  one full level down;
* a product ``u_j u_k <= v_j v_k`` of two earlier steps;
* an omega-power ``u_j^w <= v_j^w`` of an earlier step;
* transitivity through two earlier steps.

All syntactic comparisons are made modulo equality over A as decided by
:func:`~omegaineq.rewriting.equal_over_a`, so only its EQUAL answer is ever
trusted.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .jforms import canonical_j
from .levels import Level
from .rewriting import Equality, equal_over_a, factors, from_factors, normal_factors
from .terms import Concat, Letter, Omega, OmegaTerm, as_term, decompositions, format_term, parse_term, product, size


class ProofError(ValueError):
    pass


@dataclass(frozen=True)
class Inequality:
    lhs: OmegaTerm
    rhs: OmegaTerm

    @classmethod
    def parse(cls, lhs, rhs) -> "Inequality":
        return cls(as_term(lhs), as_term(rhs))

    def __str__(self):
        return f"{format_term(self.lhs)} <= {format_term(self.rhs)}"


@dataclass(frozen=True)
class Trivial:
    pass


@dataclass(frozen=True)
class GammaAxiom:
    u: OmegaTerm
    v: OmegaTerm


@dataclass(frozen=True)
class Mul:
    left: int
    right: int


@dataclass(frozen=True)
class OmegaRule:
    source: int


@dataclass(frozen=True)
class Trans:
    first: int
    second: int


@dataclass(frozen=True)
class ProofStep:
    inequality: Inequality
    rule: object

    def cited(self) -> tuple:
        r = self.rule
        if isinstance(r, Mul):
            return (r.left, r.right)
        if isinstance(r, OmegaRule):
            return (r.source,)
        if isinstance(r, Trans):
            return (r.first, r.second)
        return ()


@dataclass(frozen=True)
class Proof:
    level: Level
    steps: tuple

    @property
    def conclusion(self) -> Inequality:
        return self.steps[-1].inequality

    def __len__(self):
        return len(self.steps)

    def to_dict(self) -> dict:
        return {"level": str(self.level), "steps": [_step_to_dict(s) for s in self.steps]}

    @classmethod
    def from_dict(cls, data: dict) -> "Proof":
        steps = tuple(_step_from_dict(s) for s in data["steps"])
        if not steps:
            raise ProofError("a proof needs at least one step")
        return cls(Level.parse(data["level"]), steps)

    def __str__(self):
        lines = [f"proof at level {self.level}:"]
        for i, s in enumerate(self.steps):
            lines.append(f"  {i}: {s.inequality}   [{_rule_text(s.rule)}]")
        return "\n".join(lines)


def _rule_text(rule) -> str:
    if isinstance(rule, Trivial):
        return "trivial"
    if isinstance(rule, GammaAxiom):
        return f"gamma u={format_term(rule.u)} v={format_term(rule.v)}"
    if isinstance(rule, Mul):
        return f"mul {rule.left} {rule.right}"
    if isinstance(rule, OmegaRule):
        return f"omega {rule.source}"
    if isinstance(rule, Trans):
        return f"trans {rule.first} {rule.second}"
    raise TypeError(rule)


def _step_to_dict(step: ProofStep) -> dict:
    r = step.rule
    if isinstance(r, Trivial):
        rule = {"type": "trivial"}
    elif isinstance(r, GammaAxiom):
        rule = {"type": "gamma", "u": format_term(r.u), "v": format_term(r.v)}
    elif isinstance(r, Mul):
        rule = {"type": "mul", "left": r.left, "right": r.right}
    elif isinstance(r, OmegaRule):
        rule = {"type": "omega", "from": r.source}
    elif isinstance(r, Trans):
        rule = {"type": "trans", "first": r.first, "second": r.second}
    else:
        raise TypeError(r)
    return {"lhs": format_term(step.inequality.lhs), "rhs": format_term(step.inequality.rhs),
            "rule": rule}


def _step_from_dict(data: dict) -> ProofStep:
    ineq = Inequality(parse_term(data["lhs"]), parse_term(data["rhs"]))
    r = data["rule"]
    kind = r.get("type")
    if kind == "trivial":
        rule = Trivial()
    elif kind == "gamma":
        rule = GammaAxiom(parse_term(r["u"]), parse_term(r["v"]))
    elif kind == "mul":
        rule = Mul(int(r["left"]), int(r["right"]))
    elif kind == "omega":
        rule = OmegaRule(int(r["from"]))
    elif kind == "trans":
        rule = Trans(int(r["first"]), int(r["second"]))
    else:
        raise ProofError(f"unknown rule type {kind!r}")
    return ProofStep(ineq, rule)


# -- the side condition of the axioms ----------------------------------------------


class Answer(enum.Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


def gamma_axiom_check(u, v, level, budget=None) -> Answer:
    """Is ``u^w <= u^w v u^w`` an axiom at ``level``, i.e. is ``v <= u`` valid at ``level - 1``?

    Half level ``h`` is the polynomial closure of the Boolean closure of
    half level ``h - 1``, so the side condition lives there.
    """
    from .decide import decide

    level = Level.parse(level)
    if not level.is_half or level.twice < 3:
        raise ProofError(f"axioms are defined for half levels from 3/2 on, not {level}")
    verdict = decide(as_term(v), as_term(u), level.below().below(), budget)
    if verdict.holds:
        return Answer.YES
    if verdict.fails:
        return Answer.NO
    return Answer.UNKNOWN


# -- checking ----------------------------------------------------------------------


@dataclass(frozen=True)
class ProofCheck:
    valid: bool
    step: int | None = None
    reason: str = ""

    def __bool__(self):
        return self.valid


def _same(t1, t2, budget) -> bool:
    factor = budget.rewrite_factor if budget is not None else 10
    refute = budget.refute_size if budget is not None else 4
    return equal_over_a(t1, t2, refute, factor).status is Equality.EQUAL


def _mismatch(t1, t2, budget) -> str:
    refute = budget.refute_size if budget is not None else 4
    status = equal_over_a(t1, t2, refute).status
    what = "distinct" if status is Equality.DISTINCT else "not known equal"
    return f"{format_term(t1)} and {format_term(t2)} are {what} over A"


def check_proof(proof: Proof, budget=None) -> ProofCheck:
    """Verify every step; the first failing step makes the proof invalid."""
    level = Level.parse(proof.level)
    if not proof.steps:
        return ProofCheck(False, None, "empty proof")
    gamma_cache = {}
    for i, step in enumerate(proof.steps):
        for j in step.cited():
            if not 0 <= j < i:
                return ProofCheck(False, i, f"cites step {j}, which is not an earlier step")
        reason = _check_step(proof.steps, i, level, budget, gamma_cache)
        if reason:
            return ProofCheck(False, i, reason)
    return ProofCheck(True)


def _check_step(steps, i, level, budget, gamma_cache) -> str:
    step = steps[i]
    lhs, rhs = step.inequality.lhs, step.inequality.rhs
    r = step.rule
    if isinstance(r, Trivial):
        if not _same(lhs, rhs, budget):
            return "trivial step: " + _mismatch(lhs, rhs, budget)
        return ""
    if isinstance(r, GammaAxiom):
        if not level.is_half or level.twice < 3:
            return f"axioms are only available at half levels >= 3/2, not {level}"
        power = Omega(r.u)
        if not _same(lhs, power, budget):
            return "axiom left side: " + _mismatch(lhs, power, budget)
        shape = product(power, r.v, power)
        if not _same(rhs, shape, budget):
            return "axiom right side: " + _mismatch(rhs, shape, budget)
        key = (r.u, r.v)
        if key not in gamma_cache:
            gamma_cache[key] = gamma_axiom_check(r.u, r.v, level, budget)
        answer = gamma_cache[key]
        if answer is Answer.NO:
            return f"side condition {format_term(r.v)} <= {format_term(r.u)} fails at level {level.below().below()}"
        if answer is Answer.UNKNOWN:
            return f"side condition {format_term(r.v)} <= {format_term(r.u)} undischarged at level {level.below().below()}"
        return ""
    if isinstance(r, Mul):
        a, b = steps[r.left].inequality, steps[r.right].inequality
        if not _same(lhs, Concat(a.lhs, b.lhs), budget):
            return "product left side: " + _mismatch(lhs, Concat(a.lhs, b.lhs), budget)
        if not _same(rhs, Concat(a.rhs, b.rhs), budget):
            return "product right side: " + _mismatch(rhs, Concat(a.rhs, b.rhs), budget)
        return ""
    if isinstance(r, OmegaRule):
        a = steps[r.source].inequality
        if not _same(lhs, Omega(a.lhs), budget):
            return "omega left side: " + _mismatch(lhs, Omega(a.lhs), budget)
        if not _same(rhs, Omega(a.rhs), budget):
            return "omega right side: " + _mismatch(rhs, Omega(a.rhs), budget)
        return ""
    if isinstance(r, Trans):
        a, b = steps[r.first].inequality, steps[r.second].inequality
        if not _same(lhs, a.lhs, budget):
            return "transitivity start: " + _mismatch(lhs, a.lhs, budget)
        if not _same(a.rhs, b.lhs, budget):
            return "transitivity middle: " + _mismatch(a.rhs, b.lhs, budget)
        if not _same(b.rhs, rhs, budget):
            return "transitivity end: " + _mismatch(b.rhs, rhs, budget)
        return ""
    return f"unknown rule {r!r}"


# -- search ------------------------------------------------------------------------


class _Exhausted(Exception):
    pass


@dataclass(eq=False)
class _Node:
    lhs: OmegaTerm
    rhs: OmegaTerm
    rule: object  # Trivial(), GammaAxiom, or one of "mul" / "omega" / "trans"
    premises: tuple = field(default=())


class ProofSearch:
    """Goal-directed, budgeted search for a proof at a fixed level.

    The search follows the structure of the completeness argument: a
    product on the left is split against every decomposition of the right;
    an omega-power ``s^w`` on the left peels factors above ``s`` off either
    end of the right side, and closes with an axiom ``s^w <= s^w m s^w``
    sandwiched between two omega-powers above ``s^w``.

    Every goal that is not J-equivalent is discarded at once: an inequality
    valid at a level >= 1 is an equality over J.  Each visited goal costs one
    expansion; the search is a deterministic depth-first traversal, so a
    proof found with some budget is found identically with any larger one.
    """

    def __init__(self, level, budget=None):
        from .decide import Budget

        self.level = Level.parse(level)
        if not self.level.is_half or self.level.twice < 3:
            raise ProofError(f"proof search runs at half levels from 3/2 on, not {self.level}")
        self.budget = budget if budget is not None else Budget()
        self.expansions = 0
        self.memo = {}
        self.active = set()
        self.gamma = {}

    # helpers

    def _nf(self, t) -> tuple:
        return normal_factors(t, factor=self.budget.rewrite_factor)

    def _same(self, t1, t2) -> bool:
        return t1 == t2 or self._nf(t1) == self._nf(t2)

    def _gamma_ok(self, u, v) -> bool:
        key = (u, v)
        if key not in self.gamma:
            from .decide import decide

            sub = self.budget.scaled(0.5) if self.level.twice > 3 else self.budget
            self.gamma[key] = decide(v, u, self.level.below().below(), sub).holds
        return self.gamma[key]

    def _decomps(self, v):
        """Decompositions of the rewritten ``v``, deduplicated, smallest first."""
        nv = from_factors(self._nf(v))
        seen = {}
        for left, right in decompositions(nv, self.budget.exp_bound):
            key = (self._nf(left), self._nf(right))
            if key not in seen:
                seen[key] = (from_factors(key[0]), from_factors(key[1]))
        return sorted(seen.values(), key=lambda p: (size(p[0]) + size(p[1]), format_term(p[0]), format_term(p[1])))

    # search

    def run(self, goal: Inequality):
        """Generator: yields once per expansion, returns a :class:`Proof` or None."""
        try:
            node = yield from self._prove(goal.lhs, goal.rhs)
        except _Exhausted:
            return None
        if node is None:
            return None
        return self._linearize(node, goal)

    def _prove(self, u, v):
        key = (self._nf(u), self._nf(v))
        if key in self.memo:
            return self.memo[key]
        if key in self.active:
            return None
        if self.expansions >= self.budget.proof_expansions:
            raise _Exhausted
        self.expansions += 1
        yield
        self.active.add(key)
        try:
            result = yield from self._expand(u, v, key)
        finally:
            self.active.discard(key)
        self.memo[key] = result
        return result

    def _expand(self, u, v, key):
        nu, nv = key
        if nu == nv:
            return _Node(u, v, Trivial())
        if canonical_j(u) != canonical_j(v):
            return None
        if len(nu) == 0 or (len(nu) == 1 and isinstance(nu[0], Letter)):
            return None
        if len(nu) >= 2:
            return (yield from self._product_case(u, v, nu))
        return (yield from self._omega_case(u, v, nu[0].base))

    def _product_case(self, u, v, nu):
        first, rest = nu[0], from_factors(nu[1:])
        for r1, r2 in self._decomps(v):
            if canonical_j(first) != canonical_j(r1) or canonical_j(rest) != canonical_j(r2):
                continue
            left = yield from self._prove(first, r1)
            if left is None:
                continue
            right = yield from self._prove(rest, r2)
            if right is None:
                continue
            return _Node(u, v, "mul", (left, right))
        return None

    def _omega_case(self, u, v, s):
        power = Omega(s)
        nv = self._nf(v)
        # v is itself an omega-power x^w: prove s <= x, or s^w <= x
        if len(nv) == 1 and isinstance(nv[0], Omega):
            x = nv[0].base
            for low in (s, power):
                below = yield from self._prove(low, x)
                if below is not None:
                    return _Node(u, v, "omega", (below,))
        decomps = self._decomps(v)
        # sandwich v = L m R with L, R omega-powers above s^w and an axiom on m
        for left, rest in decomps:
            nl = self._nf(left)
            if len(nl) != 1 or not isinstance(nl[0], Omega):
                continue
            for middle, right in self._decomps(rest):
                nr = self._nf(right)
                if len(nr) != 1 or not isinstance(nr[0], Omega):
                    continue
                if not self._same(v, product(left, middle, right)):
                    continue
                node = yield from self._sandwich(u, v, s, left, middle, right)
                if node is not None:
                    return node
        # peel a factor above s off the left or the right end
        for x, rest in decomps:
            if not self._nf(x) or self._same(rest, v):
                continue
            if canonical_j(rest) != canonical_j(u):
                continue
            head = yield from self._prove(s, x)
            if head is None:
                continue
            tail = yield from self._prove(power, rest)
            if tail is not None:
                return _Node(u, v, "mul", (head, tail), )
        for rest, y in decomps:
            if not self._nf(y) or self._same(rest, v):
                continue
            if canonical_j(rest) != canonical_j(u):
                continue
            tail = yield from self._prove(s, y)
            if tail is None:
                continue
            head = yield from self._prove(power, rest)
            if head is not None:
                return _Node(u, v, "mul", (head, tail))
        return None

    def _axiom(self, s, middle):
        """The axiom instance ``s^w <= s^w m s^w`` (or its ``(s^w)^w`` form), if available."""
        for base in (s, Omega(s)):
            if self._gamma_ok(base, middle):
                power = Omega(base)
                return _Node(power, product(power, middle, power), GammaAxiom(base, middle))
        return None

    def _sandwich(self, u, v, s, left, middle, right):
        power = Omega(s)
        axiom = self._axiom(s, middle)
        if axiom is None:
            return None
        nl, nr = self._nf(left), self._nf(right)
        if nl == nr == self._nf(power):
            return _Node(u, v, axiom.rule)
        lower = []
        for side, atoms in ((left, nl), (right, nr)):
            if atoms == self._nf(power):
                lower.append(_Node(power, side, Trivial()))
                continue
            below = yield from self._prove(s, atoms[0].base)
            if below is None:
                return None
            lower.append(_Node(power, side, "omega", (below,)))
        mid = _Node(middle, middle, Trivial())
        first = _Node(Concat(power, middle), Concat(left, middle), "mul", (lower[0], mid))
        both = _Node(product(power, middle, power), product(left, middle, right), "mul", (first, lower[1]))
        return _Node(u, v, "trans", (axiom, both))

    def _linearize(self, root: _Node, goal: Inequality) -> Proof:
        steps = []
        index = {}

        def emit(node):
            if id(node) in index:
                return index[id(node)]
            cited = [emit(p) for p in node.premises]
            rule = node.rule
            if rule == "mul":
                rule = Mul(*cited)
            elif rule == "omega":
                rule = OmegaRule(cited[0])
            elif rule == "trans":
                rule = Trans(*cited)
            steps.append(ProofStep(Inequality(node.lhs, node.rhs), rule))
            index[id(node)] = len(steps) - 1
            return index[id(node)]

        emit(root)
        return Proof(self.level, tuple(steps))


def search_proof(goal: Inequality, level, budget=None):
    """Run :class:`ProofSearch` to completion; None means no proof within budget."""
    search = ProofSearch(level, budget)
    gen = search.run(goal)
    try:
        while True:
            next(gen)
    except StopIteration as stop:
        return stop.value
