"""Finite ordered monoids, evaluation of omega-terms, and syntactic ordered monoids.

Elements are the integers ``0..n-1``; ``table[x, y]`` is the product ``xy``
and ``leq[x, y]`` holds when ``x <= y``.  Evaluation over *all* assignments
of a term's letters is vectorized with numpy, which is what makes exhaustive
satisfaction checks affordable.
"""

from __future__ import annotations

import itertools
import json
import math
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property, lru_cache

import numpy as np

from .automata import Dfa, state_inclusion
from .terms import Concat, Letter, Omega, One, OmegaTerm, letters


class MonoidError(ValueError):
    pass


@dataclass(frozen=True)
class Violation:
    """First failing invariant found by :func:`validate`."""

    kind: str
    elements: tuple = ()

    def __str__(self):
        return f"{self.kind} violated at {self.elements}"


@dataclass(frozen=True, eq=False)
class OrderedMonoid:
    names: tuple
    identity: int
    table: np.ndarray
    leq: np.ndarray

    def __post_init__(self):
        table = np.array(self.table, dtype=np.int64)
        leq = np.array(self.leq, dtype=bool)
        table.flags.writeable = False
        leq.flags.writeable = False
        object.__setattr__(self, "table", table)
        object.__setattr__(self, "leq", leq)
        object.__setattr__(self, "names", tuple(self.names))

    @classmethod
    def discrete(cls, table, identity=0, names=None):
        n = len(table)
        names = names or default_names(n, identity)
        return cls(names, identity, table, np.eye(n, dtype=bool))

    def __len__(self):
        return len(self.names)

    def __eq__(self, other):
        if not isinstance(other, OrderedMonoid):
            return NotImplemented
        return (self.names == other.names and self.identity == other.identity
                and np.array_equal(self.table, other.table)
                and np.array_equal(self.leq, other.leq))

    def __hash__(self):
        return hash((self.names, self.identity, self.table.tobytes(), self.leq.tobytes()))

    def __repr__(self):
        return f"<OrderedMonoid of size {len(self)}>"

    @cached_property
    def _rows(self):
        return tuple(tuple(int(x) for x in row) for row in self.table)

    def mul(self, x: int, y: int) -> int:
        return self._rows[x][y]

    def index(self, name: str) -> int:
        return self.names.index(name)

    @cached_property
    def omega_table(self) -> np.ndarray:
        out = np.array([omega_power(self, s) for s in range(len(self))], dtype=np.int64)
        out.flags.writeable = False
        return out

    def to_dict(self) -> dict:
        n = len(self)
        return {
            "elements": list(self.names),
            "identity": self.names[self.identity],
            "table": [[self.names[self._rows[x][y]] for y in range(n)] for x in range(n)],
            "order": [[self.names[x], self.names[y]]
                      for x in range(n) for y in range(n) if x != y and self.leq[x, y]],
        }

    @classmethod
    def from_dict(cls, data: dict, check: bool = True) -> "OrderedMonoid":
        """Load the JSON form; the order list is closed reflexively."""
        names = tuple(data["elements"])
        position = {name: i for i, name in enumerate(names)}
        if len(position) != len(names):
            raise MonoidError("duplicate element names")
        try:
            identity = position[data["identity"]]
        except KeyError:
            raise MonoidError(f"unknown identity {data['identity']!r}") from None
        # unknown names map to -1 so that validate reports a range violation
        table = [[position.get(name, -1) for name in row] for row in data["table"]]
        n = len(names)
        leq = np.eye(n, dtype=bool)
        for lesser, greater in data.get("order", []):
            if lesser not in position or greater not in position:
                raise MonoidError(f"order pair ({lesser}, {greater}) names an unknown element")
            leq[position[lesser], position[greater]] = True
        if any(len(row) != n for row in table) or len(table) != n:
            raise MonoidError("table must be square with one row per element")
        monoid = cls(names, identity, table, leq)
        if check:
            problem = validate(monoid)
            if problem is not None:
                raise MonoidError(str(problem))
        return monoid

    def dumps(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def loads(cls, text: str) -> "OrderedMonoid":
        return cls.from_dict(json.loads(text))


def default_names(n: int, identity: int = 0) -> tuple:
    names = []
    k = 1
    for i in range(n):
        if i == identity:
            names.append("1")
        else:
            names.append(f"m{k}")
            k += 1
    return tuple(names)


def validate(m: OrderedMonoid):
    """Return ``None`` when ``m`` is an ordered monoid, else the first :class:`Violation`."""
    n = len(m.names)
    table, leq = m.table, m.leq
    if table.shape != (n, n) or leq.shape != (n, n):
        return Violation("shape")
    if n == 0:
        return Violation("nonempty")
    for x in range(n):
        for y in range(n):
            if not 0 <= table[x, y] < n:
                return Violation("table range", (x, y))
    if not 0 <= m.identity < n:
        return Violation("identity range", (m.identity,))
    e = m.identity
    for x in range(n):
        if table[e, x] != x or table[x, e] != x:
            return Violation("identity", (x,))
    t = m._rows
    for x in range(n):
        for y in range(n):
            xy = t[x][y]
            for z in range(n):
                if t[xy][z] != t[x][t[y][z]]:
                    return Violation("associativity", (x, y, z))
    for x in range(n):
        if not leq[x, x]:
            return Violation("reflexivity", (x,))
    for x in range(n):
        for y in range(n):
            if x != y and leq[x, y] and leq[y, x]:
                return Violation("antisymmetry", (x, y))
    for x in range(n):
        for y in range(n):
            if leq[x, y]:
                for z in range(n):
                    if leq[y, z] and not leq[x, z]:
                        return Violation("transitivity", (x, y, z))
    for x in range(n):
        for y in range(n):
            if leq[x, y]:
                for u in range(n):
                    if not leq[t[u][x], t[u][y]]:
                        return Violation("compatibility", (u, x, y))
                    if not leq[t[x][u], t[y][u]]:
                        return Violation("compatibility", (x, y, u))
    return None


def omega_power(m: OrderedMonoid, s: int) -> int:
    """The unique idempotent among the powers of ``s``."""
    t = m._rows
    p = s
    while t[p][p] != p:
        p = t[p][s]
    return p


def power_of(m: OrderedMonoid, s: int, k: int) -> int:
    """``s^k`` by repeated squaring (``k`` may be huge, e.g. ``n!``)."""
    t = m._rows
    result = m.identity
    base = s
    while k:
        if k & 1:
            result = t[result][base]
        base = t[base][base]
        k >>= 1
    return result


def factorial_power(m: OrderedMonoid, s: int) -> int:
    return power_of(m, s, math.factorial(len(m)))


def evaluate(m: OrderedMonoid, assignment: dict, t: OmegaTerm) -> int:
    """Value of ``t`` under ``assignment`` (letter -> element index)."""
    if isinstance(t, One):
        return m.identity
    if isinstance(t, Letter):
        try:
            return assignment[t.symbol]
        except KeyError:
            raise KeyError(f"assignment has no image for letter {t.symbol!r}") from None
    if isinstance(t, Concat):
        return m.mul(evaluate(m, assignment, t.left), evaluate(m, assignment, t.right))
    if isinstance(t, Omega):
        return int(m.omega_table[evaluate(m, assignment, t.base)])
    raise TypeError(f"not an omega-term: {t!r}")


def _evaluate_vec(m, t, images):
    if isinstance(t, One):
        return m.identity
    if isinstance(t, Letter):
        return images[t.symbol]
    if isinstance(t, Concat):
        return m.table[_evaluate_vec(m, t.left, images), _evaluate_vec(m, t.right, images)]
    if isinstance(t, Omega):
        return m.omega_table[_evaluate_vec(m, t.base, images)]
    raise TypeError(f"not an omega-term: {t!r}")


_CHUNK = 1 << 16


def assignment_chunks(n: int, alphabet, chunk: int = _CHUNK):
    """Yield ``(start, images)`` covering all maps alphabet -> range(n).

    Assignments are numbered in ``itertools.product`` order; ``images`` maps
    each letter to an index array for the assignments of the chunk.
    """
    k = len(alphabet)
    total = n ** k
    for start in range(0, total, chunk):
        idx = np.arange(start, min(total, start + chunk))
        digits = np.unravel_index(idx, (n,) * k) if k else ()
        yield start, dict(zip(alphabet, digits))


def assignment_at(n: int, alphabet, number: int) -> dict:
    digits = np.unravel_index(number, (n,) * len(alphabet)) if alphabet else ()
    return {a: int(d) for a, d in zip(alphabet, digits)}


def evaluate_all(m: OrderedMonoid, t: OmegaTerm, alphabet) -> np.ndarray:
    """Values of ``t`` under every assignment of ``alphabet`` (product order)."""
    alphabet = tuple(alphabet)
    parts = []
    for _, images in assignment_chunks(len(m), alphabet):
        size = len(next(iter(images.values()))) if images else 1
        parts.append(np.broadcast_to(_evaluate_vec(m, t, images), (size,)))
    return np.concatenate(parts)


def find_violation(m: OrderedMonoid, u: OmegaTerm, v: OmegaTerm, alphabet=None, prefer=None):
    """First assignment with ``u`` not below ``v``, or ``None`` when ``m`` satisfies ``u <= v``.

    ``prefer`` is an assignment tried before the exhaustive sweep.
    """
    if alphabet is None:
        alphabet = sorted(letters(u) | letters(v))
    alphabet = tuple(alphabet)
    if prefer is not None and all(a in prefer for a in alphabet):
        x, y = evaluate(m, prefer, u), evaluate(m, prefer, v)
        if not m.leq[x, y]:
            return {a: prefer[a] for a in alphabet}
    for start, images in assignment_chunks(len(m), alphabet):
        x = _evaluate_vec(m, u, images)
        y = _evaluate_vec(m, v, images)
        bad = ~m.leq[x, y]
        if np.ndim(bad) == 0:
            if bad:
                return assignment_at(len(m), alphabet, start)
            continue
        hits = np.flatnonzero(bad)
        if hits.size:
            return assignment_at(len(m), alphabet, start + int(hits[0]))
    return None


def satisfies(m: OrderedMonoid, u: OmegaTerm, v: OmegaTerm) -> bool:
    """Whether ``u <= v`` holds in ``m`` under every assignment."""
    return find_violation(m, u, v) is None


def satisfies_equation(m: OrderedMonoid, u: OmegaTerm, v: OmegaTerm) -> bool:
    alphabet = sorted(letters(u) | letters(v))
    for _, images in assignment_chunks(len(m), alphabet):
        if np.any(_evaluate_vec(m, u, images) != _evaluate_vec(m, v, images)):
            return False
    return True


def is_aperiodic(m: OrderedMonoid) -> bool:
    om = m.omega_table
    return all(m.mul(int(om[s]), s) == om[s] for s in range(len(m)))


def is_j_trivial(m: OrderedMonoid) -> bool:
    """Distinct elements generate distinct two-sided ideals."""
    n = len(m)
    ideals = set()
    for s in range(n):
        ideal = frozenset(m.mul(m.mul(x, s), y) for x in range(n) for y in range(n))
        if ideal in ideals:
            return False
        ideals.add(ideal)
    return True


def dual(m: OrderedMonoid) -> OrderedMonoid:
    return OrderedMonoid(m.names, m.identity, m.table, m.leq.T)


# -- syntactic ordered monoids ------------------------------------------------------


@dataclass(frozen=True, eq=False)
class RecognizedLanguage:
    """A language ``phi^-1(F)`` for an up-closed filter ``F`` of an ordered monoid."""

    monoid: OrderedMonoid
    assignment: dict
    accepting: frozenset
    alphabet: tuple = field(default=())

    def image(self, word: str) -> int:
        m = self.monoid
        x = m.identity
        for a in word:
            x = m.mul(x, self.assignment[a])
        return x

    def accepts(self, word: str) -> bool:
        return self.image(word) in self.accepting

    def filter_is_up_closed(self) -> bool:
        leq = self.monoid.leq
        return all(y in self.accepting
                   for x in self.accepting for y in range(len(self.monoid)) if leq[x, y])


def syntactic_ordered_monoid(dfa: Dfa) -> RecognizedLanguage:
    """Transition monoid of the minimal automaton with the syntactic order.

    ``m <= n`` iff for every state ``q`` the language accepted from ``m(q)``
    is contained in the one accepted from ``n(q)``; this is the context order
    ``p m r in L => p n r in L`` since every state is reachable.
    """
    if not isinstance(dfa, Dfa):
        raise TypeError("syntactic_ordered_monoid needs a complete deterministic automaton")
    d = dfa.minimize()
    states = range(d.n_states)
    generators = [tuple(d.delta[q][i] for q in states) for i in range(len(d.alphabet))]
    identity = tuple(states)
    index = {identity: 0}
    elements = [identity]
    names = ["1"]
    queue = deque([0])
    while queue:
        i = queue.popleft()
        f = elements[i]
        for a, g in zip(d.alphabet, generators):
            h = tuple(g[f[q]] for q in states)
            if h not in index:
                index[h] = len(elements)
                elements.append(h)
                names.append(a if names[i] == "1" else names[i] + a)
                queue.append(index[h])
    n = len(elements)
    table = np.empty((n, n), dtype=np.int64)
    for i, f in enumerate(elements):
        for j, g in enumerate(elements):
            table[i, j] = index[tuple(g[f[q]] for q in states)]
    incl = state_inclusion(d)
    leq = np.array([[all(incl[f[q]][g[q]] for q in states) for g in elements] for f in elements],
                   dtype=bool)
    monoid = OrderedMonoid(tuple(names), 0, table, leq)
    assignment = {a: index[g] for a, g in zip(d.alphabet, generators)}
    accepting = frozenset(i for i, f in enumerate(elements) if f[d.initial] in d.accepting)
    return RecognizedLanguage(monoid, assignment, accepting, d.alphabet)


# -- enumeration of small ordered monoids ----------------------------------------


@lru_cache(maxsize=None)
def monoid_tables(n: int) -> tuple:
    """Every associative ``n x n`` table with identity 0, as an array stack."""
    if n < 1:
        return ()
    if n == 1:
        return (np.zeros((1, 1), dtype=np.int64),)
    m = n - 1
    free = np.indices((n,) * (m * m)).reshape(m * m, -1).T
    tables = np.empty((len(free), n, n), dtype=np.int64)
    tables[:, 0, :] = np.arange(n)
    tables[:, :, 0] = np.arange(n)
    tables[:, 1:, 1:] = free.reshape(-1, m, m)
    rows = np.arange(len(tables))
    ok = np.ones(len(tables), dtype=bool)
    for x in range(1, n):
        for y in range(1, n):
            xy = tables[:, x, y]
            for z in range(1, n):
                left = tables[rows, xy, z]
                right = tables[rows, x, tables[:, y, z]]
                ok &= left == right
    return tuple(tables[ok])


@lru_cache(maxsize=None)
def partial_orders(n: int) -> np.ndarray:
    """All partial orders on ``range(n)`` as boolean matrices."""
    off = [(i, j) for i in range(n) for j in range(n) if i != j]
    found = []
    for bits in itertools.product((False, True), repeat=len(off)):
        rel = np.eye(n, dtype=bool)
        for (i, j), b in zip(off, bits):
            rel[i, j] = b
        if np.any(rel & rel.T & ~np.eye(n, dtype=bool)):
            continue
        composed = (rel.astype(np.int64) @ rel.astype(np.int64)) > 0
        if np.any(composed & ~rel):
            continue
        found.append(rel)
    return np.array(found)


def _compatible_orders(table: np.ndarray, orders: np.ndarray) -> np.ndarray:
    # left[o, u, x, y] = orders[o, ux, uy]; right likewise for xu, yu
    left = orders[:, table[:, :, None], table[:, None, :]]
    right = orders[:, table.T[:, :, None], table.T[:, None, :]]
    need = orders[:, None, :, :]
    ok = np.all(~need | (left & right), axis=(1, 2, 3))
    return orders[ok]


def _canonical_key(table: np.ndarray, leq: np.ndarray) -> bytes:
    n = len(table)
    best = None
    for perm in itertools.permutations(range(1, n)):
        p = np.array((0,) + perm)
        inv = np.argsort(p)
        # relabel element i as p[i]
        t2 = p[table[np.ix_(inv, inv)]]
        l2 = leq[np.ix_(inv, inv)]
        key = t2.tobytes() + l2.tobytes()
        if best is None or key < best:
            best = key
    return best


@lru_cache(maxsize=None)
def _ordered_monoids(n: int, up_to_iso: bool, discrete_only: bool) -> tuple:
    result = []
    seen = set()
    orders = partial_orders(n)
    for table in monoid_tables(n):
        if discrete_only:
            candidates = [np.eye(n, dtype=bool)]
        else:
            candidates = _compatible_orders(table, orders)
        for leq in candidates:
            if up_to_iso:
                key = _canonical_key(table, leq)
                if key in seen:
                    continue
                seen.add(key)
            result.append(OrderedMonoid(default_names(n), 0, table, leq))
    return tuple(result)


def enumerate_ordered_monoids(max_size: int, up_to_iso: bool = False, discrete_only: bool = False):
    """Stream every ordered monoid of size ``<= max_size`` (at most 4).

    With ``up_to_iso`` one representative per isomorphism class of ordered
    monoid is kept; ``discrete_only`` restricts to the equality order.
    """
    if max_size > 4:
        raise ValueError("monoid enumeration is limited to size 4")
    for n in range(1, max_size + 1):
        yield from _ordered_monoids(n, up_to_iso, discrete_only)


@lru_cache(maxsize=None)
def aperiodic_monoids(max_size: int) -> tuple:
    """Aperiodic monoids up to isomorphism, equality order."""
    return tuple(m for m in enumerate_ordered_monoids(max_size, up_to_iso=True, discrete_only=True)
                 if is_aperiodic(m))


@lru_cache(maxsize=None)
def j_trivial_monoids(max_size: int) -> tuple:
    return tuple(m for m in enumerate_ordered_monoids(max_size, up_to_iso=True, discrete_only=True)
                 if is_j_trivial(m))
