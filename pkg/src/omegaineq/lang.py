"""Level-indexed language expressions of the Straubing-Therien hierarchy.

Level 0 holds the empty language and ``A*``.  A half level ``n + 1/2`` holds
finite unions of marked products ``L0 a1 L1 ... ak Lk`` of level-``n``
languages; an integer level ``n`` holds Boolean combinations of level
``n - 1/2`` languages.

JSON form of an expression node::

    "empty" | "all"
    {"product": [node, "a", node, "b", node, ...]}
    {"union": [node, ...]}   {"intersection": [node, ...]}
    {"complement": node}

and a leveled expression is ``{"level": "3/2", "expr": node}``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from functools import lru_cache
from itertools import product as _cartesian
from typing import Union as _Union

from .automata import (Dfa, concatenate, dfa_included, empty_dfa, product_dfa,
                       universal_dfa)
from .levels import Level
from .terms import ALPHABET


class LevelError(ValueError):
    pass


@dataclass(frozen=True)
class EmptyLang:
    pass


@dataclass(frozen=True)
class AllLang:
    pass


@dataclass(frozen=True)
class Product:
    """``parts[0] parts[1] ... `` alternating languages and marker letters."""

    parts: tuple

    def __post_init__(self):
        if len(self.parts) % 2 == 0:
            raise ValueError("a marked product alternates languages and letters, starting and ending with a language")
        for i, p in enumerate(self.parts):
            if i % 2 and not (isinstance(p, str) and len(p) == 1 and p in ALPHABET):
                raise ValueError(f"marker {p!r} is not a letter")

    @property
    def languages(self):
        return self.parts[0::2]

    @property
    def markers(self):
        return self.parts[1::2]


@dataclass(frozen=True)
class Union:
    items: tuple


@dataclass(frozen=True)
class Intersection:
    items: tuple


@dataclass(frozen=True)
class Complement:
    inner: "Node"


Node = _Union[EmptyLang, AllLang, Product, Union, Intersection, Complement]

EMPTY = EmptyLang()
ALL = AllLang()


@dataclass(frozen=True)
class LangExpr:
    """An expression node together with its declared level."""

    level: Level
    expr: Node

    def to_dict(self) -> dict:
        return {"level": str(self.level), "expr": node_to_json(self.expr)}

    @classmethod
    def from_dict(cls, data: dict, check: bool = True) -> "LangExpr":
        e = cls(Level.parse(data["level"]), node_from_json(data["expr"]))
        if check and not check_level(e.expr, e.level):
            raise LevelError(f"expression is not of level {e.level}")
        return e

    def __str__(self):
        return f"[{self.level}] {show(self.expr)}"


def upset(word: str) -> Product:
    """``A* a1 A* ... an A*``: the words having ``word`` as a subword."""
    parts = [ALL]
    for a in word:
        parts += [a, ALL]
    return Product(tuple(parts))


# -- serialization -------------------------------------------------------------


def node_to_json(e: Node):
    if isinstance(e, EmptyLang):
        return "empty"
    if isinstance(e, AllLang):
        return "all"
    if isinstance(e, Product):
        return {"product": [p if i % 2 else node_to_json(p) for i, p in enumerate(e.parts)]}
    if isinstance(e, Union):
        return {"union": [node_to_json(x) for x in e.items]}
    if isinstance(e, Intersection):
        return {"intersection": [node_to_json(x) for x in e.items]}
    if isinstance(e, Complement):
        return {"complement": node_to_json(e.inner)}
    raise TypeError(f"not a language expression: {e!r}")


def node_from_json(data) -> Node:
    if data == "empty":
        return EMPTY
    if data == "all":
        return ALL
    if isinstance(data, dict) and len(data) == 1:
        (kind, value), = data.items()
        if kind == "product":
            return Product(tuple(p if i % 2 else node_from_json(p) for i, p in enumerate(value)))
        if kind == "union":
            return Union(tuple(node_from_json(x) for x in value))
        if kind == "intersection":
            return Intersection(tuple(node_from_json(x) for x in value))
        if kind == "complement":
            return Complement(node_from_json(value))
    raise ValueError(f"malformed language expression: {data!r}")


def serialize(e: Node) -> str:
    return json.dumps(node_to_json(e), separators=(",", ":"))


def show(e: Node) -> str:
    """Compact human-readable rendering, e.g. ``A*aA*`` or ``~(A*aA*)``."""
    if isinstance(e, EmptyLang):
        return "0"
    if isinstance(e, AllLang):
        return "A*"
    if isinstance(e, Product):
        return "".join(p if i % 2 else _show_part(p) for i, p in enumerate(e.parts))
    if isinstance(e, Union):
        return " + ".join(_show_part(x) for x in e.items) if e.items else "0"
    if isinstance(e, Intersection):
        return " & ".join(_show_part(x) for x in e.items) if e.items else "A*"
    if isinstance(e, Complement):
        return f"~{_show_part(e.inner)}"
    raise TypeError(f"not a language expression: {e!r}")


def _show_part(e):
    text = show(e)
    return text if isinstance(e, (EmptyLang, AllLang, Complement)) else f"({text})"


def node_size(e: Node) -> int:
    if isinstance(e, (EmptyLang, AllLang)):
        return 1
    if isinstance(e, Product):
        return 1 + sum(1 if i % 2 else node_size(p) for i, p in enumerate(e.parts))
    if isinstance(e, (Union, Intersection)):
        return 1 + sum(node_size(x) for x in e.items)
    if isinstance(e, Complement):
        return 1 + node_size(e.inner)
    raise TypeError(f"not a language expression: {e!r}")


def marker_letters(e: Node) -> frozenset:
    if isinstance(e, Product):
        out = set(e.markers)
        for p in e.languages:
            out |= marker_letters(p)
        return frozenset(out)
    if isinstance(e, (Union, Intersection)):
        return frozenset().union(*(marker_letters(x) for x in e.items))
    if isinstance(e, Complement):
        return marker_letters(e.inner)
    return frozenset()


# -- levels ------------------------------------------------------------------------


def rename(e: Node, mapping: dict) -> Node:
    """Replace the marker letters of ``e`` according to ``mapping``."""
    if isinstance(e, Product):
        return Product(tuple(mapping.get(p, p) if i % 2 else rename(p, mapping) for i, p in enumerate(e.parts)))
    if isinstance(e, (Union, Intersection)):
        return type(e)(tuple(rename(x, mapping) for x in e.items))
    if isinstance(e, Complement):
        return Complement(rename(e.inner, mapping))
    return e


def check_level(e: Node, level: Level) -> bool:
    """Whether ``e`` is a well-leveled expression of ``level``."""
    if isinstance(e, (EmptyLang, AllLang)):
        return True
    if level.twice == 0:
        return False
    if level.is_half:
        if isinstance(e, Product):
            return all(check_level(p, level.below()) for p in e.languages)
        if isinstance(e, Union):
            return all(check_level(x, level) for x in e.items)
        return False
    if isinstance(e, (Union, Intersection)) and all(check_level(x, level) for x in e.items):
        return True
    if isinstance(e, Complement) and check_level(e.inner, level):
        return True
    return check_level(e, level.below())


def relevel(expr: LangExpr, level: Level) -> LangExpr:
    """View ``expr`` at a higher level (a single-part product at half levels)."""
    level = Level.parse(level)
    if level < expr.level:
        raise LevelError("cannot lower the level of an expression")
    node, current = expr.expr, expr.level
    while current < level:
        current = current.above()
        if not check_level(node, current):
            node = Product((node,))
    return LangExpr(level, node)


# -- semantics -----------------------------------------------------------------------


def matches(e: Node, word: str) -> bool:
    """Membership by direct recursive descent on the expression (no automata)."""
    return _matches(e, word)


@lru_cache(maxsize=1 << 15)
def _matches(e, word):
    if isinstance(e, EmptyLang):
        return False
    if isinstance(e, AllLang):
        return True
    if isinstance(e, Union):
        return any(_matches(x, word) for x in e.items)
    if isinstance(e, Intersection):
        return all(_matches(x, word) for x in e.items)
    if isinstance(e, Complement):
        return not _matches(e.inner, word)
    if isinstance(e, Product):
        return _match_product(e.parts, word)
    raise TypeError(f"not a language expression: {e!r}")


@lru_cache(maxsize=1 << 15)
def _match_product(parts, word):
    first = parts[0]
    if len(parts) == 1:
        return _matches(first, word)
    marker = parts[1]
    for i, c in enumerate(word):
        if c == marker and _matches(first, word[:i]) and _match_product(parts[2:], word[i + 1:]):
            return True
    return False


def expr_to_dfa(e: Node, alphabet) -> Dfa:
    """Minimal complete DFA for the expression over ``alphabet``."""
    alphabet = tuple(sorted(set(alphabet)))
    missing = marker_letters(e) - set(alphabet)
    if missing:
        raise ValueError(f"expression uses letters {sorted(missing)} outside the alphabet")
    return _expr_to_dfa(e, alphabet)


@lru_cache(maxsize=1 << 14)
def _expr_to_dfa(e, alphabet):
    if isinstance(e, EmptyLang):
        return empty_dfa(alphabet)
    if isinstance(e, AllLang):
        return universal_dfa(alphabet)
    if isinstance(e, Complement):
        return _expr_to_dfa(e.inner, alphabet).complement().minimize()
    if isinstance(e, (Union, Intersection)):
        if not e.items:
            return universal_dfa(alphabet) if isinstance(e, Intersection) else empty_dfa(alphabet)
        op = (lambda x, y: x or y) if isinstance(e, Union) else (lambda x, y: x and y)
        result = _expr_to_dfa(e.items[0], alphabet)
        for x in e.items[1:]:
            result = product_dfa(result, _expr_to_dfa(x, alphabet), op).minimize()
        return result
    if isinstance(e, Product):
        parts = [_expr_to_dfa(p, alphabet) for p in e.languages]
        if len(parts) == 1:
            return parts[0]
        return concatenate(parts, e.markers, alphabet)
    raise TypeError(f"not a language expression: {e!r}")


def languages_included(e1: Node, e2: Node, alphabet):
    return dfa_included(expr_to_dfa(e1, alphabet), expr_to_dfa(e2, alphabet))


# -- enumeration ---------------------------------------------------------------------

#: Expressions larger than this are never generated; the stream just ends.
MAX_EXPR_SIZE = 40
#: A size class with more raw candidates than this is not built and ends the
#: stream (one-letter alphabets yield few new languages per size).
MAX_CLASS_CANDIDATES = 20000


class _Enumerator:
    """Size-ordered, DFA-deduplicated expressions of one level over one alphabet.

    Size classes are materialized on demand and cached, so repeated and
    nested enumerations share all work.  Within a size class candidates are
    ordered by their canonical serialization.
    """

    def __init__(self, level: Level, alphabet: tuple):
        self.level = level
        self.alphabet = alphabet
        self.classes = {}  # size -> list of (node, dfa)
        self.seen = set()
        self.items = []  # (node, dfa) in stream order
        self.next_size = 1
        self.exhausted = False
        self.monoids = {}

    def lower(self) -> "_Enumerator":
        return enumerator(self.level.below(), self.alphabet)

    def size_class(self, s: int) -> list:
        while self.next_size <= s and not self.exhausted:
            self._build(self.next_size)
        return self.classes.get(s, [])

    def _build(self, s):
        candidates = {}
        for node in self._candidates(s):
            candidates.setdefault(serialize(node), node)
            if len(candidates) > MAX_CLASS_CANDIDATES:
                self.exhausted = True
                return
        fresh = []
        # size 1 is Empty then All; larger classes sort by serialization
        keys = list(candidates) if s == 1 else sorted(candidates)
        for key in keys:
            node = candidates[key]
            dfa = expr_to_dfa(node, self.alphabet)
            k = dfa.key()
            if k in self.seen:
                continue
            self.seen.add(k)
            fresh.append((node, dfa))
        self.classes[s] = fresh
        self.items.extend(fresh)
        self.next_size = s + 1

    def _candidates(self, s):
        level = self.level
        if s == 1:
            yield EMPTY
            yield ALL
            return
        if level.twice == 0:
            return
        if level.is_half:
            yield from self._products(s)
            yield from self._binary(s, Union)
        else:
            for node, _ in self.lower().size_class(s):
                yield node
            for node, _ in self.size_class(s - 1):
                yield Complement(node)
            yield from self._binary(s, Union)
            yield from self._binary(s, Intersection)

    def _products(self, s):
        lower = self.lower()
        # k markers and k + 1 language parts of total size s - 1 - k
        for k in range(0, (s - 1) // 2 + 1):
            budget = s - 1 - k
            if budget < k + 1:
                break
            pools_by_size = {}
            for x in range(1, budget + 1):
                pool = [n for n, _ in lower.size_class(x) if not isinstance(n, EmptyLang)]
                if pool:
                    pools_by_size[x] = pool
            for sizes in _compositions(budget, k + 1, tuple(pools_by_size)):
                pools = [pools_by_size[x] for x in sizes]
                for langs in _cartesian(*pools):
                    if k == 0:
                        yield Product(langs)
                        continue
                    for marks in _cartesian(self.alphabet, repeat=k):
                        parts = [langs[0]]
                        for a, lang in zip(marks, langs[1:]):
                            parts += [a, lang]
                        yield Product(tuple(parts))

    def _binary(self, s, kind):
        # kind(x, y) with |x| + |y| = s - 1 drawn from this level, flattened
        for s1 in range(1, s - 1):
            s2 = s - 1 - s1
            if s2 < s1:
                break
            left = self.size_class(s1)
            right = self.size_class(s2)
            for i, (x, _) in enumerate(left):
                for j, (y, _) in enumerate(right):
                    if s1 == s2 and j <= i:
                        continue
                    if isinstance(x, (EmptyLang, AllLang)) or isinstance(y, (EmptyLang, AllLang)):
                        continue
                    if kind is Union and self.level.is_half:
                        if not all(isinstance(z, (Product, Union)) for z in (x, y)):
                            continue
                    items = []
                    for z in (x, y):
                        items.extend(z.items if isinstance(z, kind) else (z,))
                    yield kind(tuple(items))

    def stream(self, budget: int | None = None):
        """Deterministic stream of ``(node, dfa)``; ``budget`` caps its length."""
        produced = 0
        i = 0
        s = 0
        while budget is None or produced < budget:
            while i >= len(self.items):
                s = self.next_size
                if s > MAX_EXPR_SIZE or self.exhausted or (self.level.twice == 0 and s > 1):
                    return
                self._build(s)
            yield self.items[i]
            i += 1
            produced += 1

    def syntactic(self, index: int):
        from .monoid import syntactic_ordered_monoid

        if index not in self.monoids:
            self.monoids[index] = syntactic_ordered_monoid(self.items[index][1])
        return self.monoids[index]


def _compositions(total, parts, allowed):
    """Ordered ways to write ``total`` as ``parts`` summands from ``allowed``."""
    if parts == 1:
        if total in allowed:
            yield (total,)
        return
    for first in allowed:
        if first > total - (parts - 1):
            break
        for rest in _compositions(total - first, parts - 1, allowed):
            yield (first,) + rest


class _Renamed:
    """The enumeration of an equally large alphabet, with letters renamed."""

    def __init__(self, base: _Enumerator, alphabet: tuple):
        self.base = base
        self.level = base.level
        self.alphabet = alphabet
        self.mapping = dict(zip(base.alphabet, alphabet))
        self.monoids = {}

    def _item(self, pair):
        node, dfa = pair
        return rename(node, self.mapping), replace(dfa, alphabet=self.alphabet)

    def stream(self, budget: int | None = None):
        for pair in self.base.stream(budget):
            yield self._item(pair)

    def syntactic(self, index: int):
        from .monoid import syntactic_ordered_monoid

        if index not in self.monoids:
            self.monoids[index] = syntactic_ordered_monoid(self._item(self.base.items[index])[1])
        return self.monoids[index]


@lru_cache(maxsize=None)
def enumerator(level: Level, alphabet: tuple):
    # transition tables are indexed by letter position, so alphabets of one
    # size share a single enumeration over a canonical alphabet
    canonical = tuple(ALPHABET[:len(alphabet)])
    if len(alphabet) > len(ALPHABET) or alphabet == canonical:
        return _Enumerator(level, alphabet)
    return _Renamed(enumerator(level, canonical), alphabet)


SUPPORTED_LEVELS = tuple(Level(k) for k in range(6))


def enumerate_level(level, alphabet, budget: int):
    """Yield at most ``budget`` distinct-language expressions of ``level``.

    Expressions come in nondecreasing size; two outputs never denote the
    same language over ``alphabet``.
    """
    level = Level.parse(level)
    if level not in SUPPORTED_LEVELS:
        raise LevelError(f"unsupported level {level}; enumeration covers 0 to 5/2")
    alphabet = tuple(sorted(set(alphabet)))
    for node, _ in enumerator(level, alphabet).stream(budget):
        yield LangExpr(level, node)
