"""Omega-terms: syntax trees over letters, 1, product and the omega-power.

Terms are immutable and compared structurally.  Structural equality is not
equality of the represented omega-words: the product of terms is kept
non-associative so that ``a (b c)`` and ``a b c`` are different trees.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import NamedTuple, Union

ALPHABET = "abcdefghijklmnopqrstuvwxyz"

#: The exponent omega.  Using infinity gives the required total order
#: (omega above every integer) and absorbing addition for free.
OMEGA = math.inf


class _Term:
    __slots__ = ()

    def __mul__(self, other):
        return Concat(self, other)

    def __str__(self):
        return format_term(self)


@dataclass(frozen=True, slots=True)
class One(_Term):
    def __repr__(self):
        return "ONE"


@dataclass(frozen=True, slots=True)
class Letter(_Term):
    symbol: str

    def __post_init__(self):
        if len(self.symbol) != 1 or self.symbol not in ALPHABET:
            raise ValueError(f"letters are single characters a..z, got {self.symbol!r}")

    def __repr__(self):
        return f"Letter({self.symbol!r})"


@dataclass(frozen=True, slots=True)
class Concat(_Term):
    left: "OmegaTerm"
    right: "OmegaTerm"

    def __repr__(self):
        return f"Concat({self.left!r}, {self.right!r})"


@dataclass(frozen=True, slots=True)
class Omega(_Term):
    base: "OmegaTerm"

    def __repr__(self):
        return f"Omega({self.base!r})"


OmegaTerm = Union[One, Letter, Concat, Omega]

ONE = One()


def letter(symbol: str) -> Letter:
    return Letter(symbol)


def size(t: OmegaTerm) -> int:
    """Number of nodes of the tree."""
    if isinstance(t, Concat):
        return 1 + size(t.left) + size(t.right)
    if isinstance(t, Omega):
        return 1 + size(t.base)
    return 1


def omega_depth(t: OmegaTerm) -> int:
    if isinstance(t, Concat):
        return max(omega_depth(t.left), omega_depth(t.right))
    if isinstance(t, Omega):
        return 1 + omega_depth(t.base)
    return 0


def letters(t: OmegaTerm) -> frozenset:
    """The content of ``t``: the set of letter symbols occurring in it."""
    if isinstance(t, Letter):
        return frozenset(t.symbol)
    if isinstance(t, Concat):
        return letters(t.left) | letters(t.right)
    if isinstance(t, Omega):
        return letters(t.base)
    return frozenset()


def product(*factors: OmegaTerm) -> OmegaTerm:
    """Left-associated product; the empty product is 1."""
    if not factors:
        return ONE
    result = factors[0]
    for f in factors[1:]:
        result = Concat(result, f)
    return result


def power(t: OmegaTerm, k: int) -> OmegaTerm:
    """``t^1 = t`` and ``t^(k+1) = t^k t`` (left nested)."""
    if not isinstance(k, int) or k < 1:
        raise ValueError(f"power exponent must be a positive integer, got {k!r}")
    result = t
    for _ in range(k - 1):
        result = Concat(result, t)
    return result


def _times(t: OmegaTerm, k) -> OmegaTerm | None:
    # t^k with exponent omega allowed; None stands for the omitted factor t^0
    if k == 0:
        return None
    if k == OMEGA:
        return Omega(t)
    return power(t, k)


# -- parsing -------------------------------------------------------------------


class TermSyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


_TOKEN = re.compile(r"\s*(?:(?P<letter>[a-z])|(?P<one>1)|(?P<lp>\()|(?P<rp>\))"
                    r"|\^\s*(?:(?P<omega>w|ω)|(?P<int>\d+)))")


def _tokenize(text: str):
    pos = 0
    tokens = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if m is None:
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise TermSyntaxError(f"unexpected character {text[start]!r}", start)
        start = m.start(m.lastgroup)
        tokens.append((m.lastgroup, m.group(m.lastgroup), start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


def parse_term(text: str) -> OmegaTerm:
    """Parse the textual term syntax.

    Juxtaposition is a left-associated product, ``^w`` is the omega-power and
    ``^k`` (k >= 1) expands through :func:`power`::

        >>> parse_term("(a b)^w a")
        Concat(Omega(Concat(Letter('a'), Letter('b'))), Letter('a'))
    """
    tokens = _tokenize(text)
    pos = 0

    def peek():
        return tokens[pos]

    def term():
        nonlocal pos
        result = factor()
        while peek()[0] in ("letter", "one", "lp"):
            result = Concat(result, factor())
        return result

    def factor():
        nonlocal pos
        base = atom()
        kind, value, where = peek()
        if kind == "omega":
            pos += 1
            return Omega(base)
        if kind == "int":
            pos += 1
            k = int(value)
            if k == 0:
                raise TermSyntaxError("exponent 0 is not allowed", where)
            return power(base, k)
        return base

    def atom():
        nonlocal pos
        kind, value, where = peek()
        if kind == "letter":
            pos += 1
            return Letter(value)
        if kind == "one":
            pos += 1
            return ONE
        if kind == "lp":
            pos += 1
            inner = term()
            kind2, _, where2 = peek()
            if kind2 != "rp":
                raise TermSyntaxError("expected ')'", where2)
            pos += 1
            return inner
        if kind == "end":
            raise TermSyntaxError("unexpected end of input", where)
        raise TermSyntaxError(f"unexpected token {value!r}", where)

    result = term()
    kind, value, where = peek()
    if kind != "end":
        raise TermSyntaxError(f"unexpected token {value!r}", where)
    return result


def format_term(t: OmegaTerm) -> str:
    """Inverse of :func:`parse_term` up to whitespace."""
    if isinstance(t, One):
        return "1"
    if isinstance(t, Letter):
        return t.symbol
    if isinstance(t, Concat):
        right = format_term(t.right)
        if isinstance(t.right, Concat):
            right = f"({right})"
        return f"{format_term(t.left)} {right}"
    if isinstance(t, Omega):
        if isinstance(t.base, (One, Letter)):
            return f"{format_term(t.base)}^w"
        return f"({format_term(t.base)})^w"
    raise TypeError(f"not an omega-term: {t!r}")


def as_term(t) -> OmegaTerm:
    return parse_term(t) if isinstance(t, str) else t


# -- decompositions --------------------------------------------------------------


class Decomposition(NamedTuple):
    left: OmegaTerm
    right: OmegaTerm


def _mul(first, second):
    # product in which a missing factor (an exponent 0 power) is dropped
    if first is None:
        return second
    if second is None:
        return first
    return Concat(first, second)


def decompositions(t: OmegaTerm, exp_bound: int = 2) -> list:
    """All decompositions of ``t`` with integer exponents at most ``exp_bound``.

    Pairs come out in a deterministic order with structural duplicates removed.
    """
    return list(dict.fromkeys(_decompositions(t, exp_bound)))


def _decompositions(t, bound):
    if isinstance(t, (One, Letter)):
        yield Decomposition(ONE, t)
        yield Decomposition(t, ONE)
    elif isinstance(t, Concat):
        for s1, s2 in _decompositions(t.left, bound):
            yield Decomposition(s1, Concat(s2, t.right))
        for s1, s2 in _decompositions(t.right, bound):
            yield Decomposition(Concat(t.left, s1), s2)
    elif isinstance(t, Omega):
        s = t.base
        exps = list(range(bound + 1)) + [OMEGA]
        inner = list(dict.fromkeys(_decompositions(s, bound)))
        for k in exps:
            for ell in exps:
                if OMEGA not in (k, ell):
                    continue
                for s1, s2 in inner:
                    yield Decomposition(_mul(_times(s, k), s1), _mul(s2, _times(s, ell)))
    else:
        raise TypeError(f"not an omega-term: {t!r}")


# -- the mu measure ------------------------------------------------------------------


class MuPair(NamedTuple):
    """(omega nesting along a branch, right descendants above its top omega).

    Tuples compare lexicographically, which is the order used for the measure.
    """

    omega: int
    ell: int

    def __add__(self, other):
        return MuPair(self.omega + other[0], self.ell + other[1])


def mu(t: OmegaTerm) -> MuPair:
    if isinstance(t, (One, Letter)):
        return MuPair(0, 0)
    if isinstance(t, Omega):
        return MuPair(mu(t.base).omega + 1, 0)
    if isinstance(t, Concat):
        if isinstance(t.right, Omega):
            return max(mu(t.left), mu(t.right))
        return max(mu(t.left), mu(t.right) + (0, 1))
    raise TypeError(f"not an omega-term: {t!r}")


# -- expansions ----------------------------------------------------------------------


def expand(t: OmegaTerm, k: int) -> str:
    """The word obtained by replacing every omega exponent by ``k``."""
    if isinstance(t, One):
        return ""
    if isinstance(t, Letter):
        return t.symbol
    if isinstance(t, Concat):
        return expand(t.left, k) + expand(t.right, k)
    if isinstance(t, Omega):
        return expand(t.base, k) * k
    raise TypeError(f"not an omega-term: {t!r}")
