"""Canonical forms over J and the subword languages they determine."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .automata import Nfa
from .terms import Concat, Letter, Omega, One, OmegaTerm, letters, product


@dataclass(frozen=True)
class Block:
    """An omega-power of the product of the letters of ``content`` in increasing order."""

    content: frozenset

    def __post_init__(self):
        if not self.content:
            raise ValueError("a block needs a nonempty content")

    def __str__(self):
        word = "".join(sorted(self.content))
        return f"{word}^w" if len(word) == 1 else f"({word})^w"


Atom = Union[Letter, Block]


@dataclass(frozen=True)
class JCanonicalForm:
    atoms: tuple

    def __str__(self):
        if not self.atoms:
            return "1"
        return " ".join(a.symbol if isinstance(a, Letter) else str(a) for a in self.atoms)

    def to_term(self) -> OmegaTerm:
        factors = []
        for a in self.atoms:
            if isinstance(a, Letter):
                factors.append(a)
            else:
                factors.append(Omega(product(*(Letter(c) for c in sorted(a.content)))))
        return product(*factors)

    def is_canonical(self) -> bool:
        for x, y in zip(self.atoms, self.atoms[1:]):
            if isinstance(x, Block) and isinstance(y, Block):
                if x.content <= y.content or y.content <= x.content:
                    return False
            elif isinstance(x, Block):
                if y.symbol in x.content:
                    return False
            elif isinstance(y, Block):
                if x.symbol in y.content:
                    return False
        return True


def _atoms(t: OmegaTerm, out: list):
    if isinstance(t, Letter):
        out.append(t)
    elif isinstance(t, Concat):
        _atoms(t.left, out)
        _atoms(t.right, out)
    elif isinstance(t, Omega):
        content = letters(t.base)
        if content:
            out.append(Block(content))
    elif not isinstance(t, One):
        raise TypeError(f"not an omega-term: {t!r}")


def _absorb(x: Atom, y: Atom):
    """The single atom that ``x y`` collapses to over J, or None."""
    if isinstance(x, Block) and isinstance(y, Block):
        if y.content <= x.content:
            return x
        if x.content <= y.content:
            return y
        return None
    if isinstance(x, Block):
        return x if y.symbol in x.content else None
    if isinstance(y, Block):
        return y if x.symbol in y.content else None
    return None


def canonical_j(t: OmegaTerm) -> JCanonicalForm:
    atoms = []
    _atoms(t, atoms)
    # one left-to-right pass with a stack reaches the fixpoint: merged atoms
    # only grow, so they are retried against the new top of the stack
    stack = []
    for atom in atoms:
        while stack:
            merged = _absorb(stack[-1], atom)
            if merged is None:
                break
            stack.pop()
            atom = merged
        stack.append(atom)
    return JCanonicalForm(tuple(stack))


def subword_nfa(t: OmegaTerm) -> Nfa:
    """NFA for the subwords of ``t``: letters become optional, blocks loop."""
    form = canonical_j(t)
    transitions = []
    for i, atom in enumerate(form.atoms):
        transitions.append((i, None, i + 1))
        if isinstance(atom, Letter):
            transitions.append((i, atom.symbol, i + 1))
        else:
            for c in sorted(atom.content):
                transitions.append((i, c, i))
    n = len(form.atoms)
    return Nfa(n + 1, frozenset({0}), frozenset({n}), tuple(transitions))


def subword_of(word: str, t: OmegaTerm) -> bool:
    """Whether ``word`` is a scattered subword of the omega-word ``t``."""
    # greedy matching along the canonical form: a block swallows every
    # letter of its content before moving on
    form = canonical_j(t)
    i = 0
    for atom in form.atoms:
        if i == len(word):
            break
        if isinstance(atom, Letter):
            if word[i] == atom.symbol:
                i += 1
        else:
            while i < len(word) and word[i] in atom.content:
                i += 1
    return i == len(word)


def is_subsequence(word: str, text: str) -> bool:
    it = iter(text)
    return all(c in it for c in word)
