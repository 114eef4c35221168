"""Small finite automata: epsilon-NFAs, complete DFAs, minimization, inclusion."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import product as _cartesian


@dataclass(frozen=True)
class Nfa:
    """Nondeterministic automaton; a transition label ``None`` is an epsilon move."""

    n_states: int
    initial: frozenset
    accepting: frozenset
    transitions: tuple  # of (source, label or None, target)

    def __post_init__(self):
        states = range(self.n_states)
        for q in self.initial | self.accepting:
            if q not in states:
                raise ValueError(f"state {q} out of range")
        for src, _, dst in self.transitions:
            if src not in states or dst not in states:
                raise ValueError(f"transition {src}->{dst} out of range")

    @property
    def alphabet(self) -> frozenset:
        return frozenset(label for _, label, _ in self.transitions if label is not None)

    def _moves(self):
        moves = {}
        for src, label, dst in self.transitions:
            moves.setdefault((src, label), set()).add(dst)
        return moves

    def closure(self, states, moves=None) -> frozenset:
        moves = self._moves() if moves is None else moves
        seen = set(states)
        stack = list(states)
        while stack:
            q = stack.pop()
            for r in moves.get((q, None), ()):
                if r not in seen:
                    seen.add(r)
                    stack.append(r)
        return frozenset(seen)

    def accepts(self, word) -> bool:
        moves = self._moves()
        current = self.closure(self.initial, moves)
        for a in word:
            step = set()
            for q in current:
                step |= moves.get((q, a), set())
            current = self.closure(step, moves)
            if not current:
                return False
        return bool(current & self.accepting)

    def determinize(self, alphabet=None) -> "Dfa":
        alphabet = tuple(sorted(set(alphabet if alphabet is not None else self.alphabet)))
        moves = self._moves()
        start = self.closure(self.initial, moves)
        index = {start: 0}
        order = [start]
        delta = []
        queue = deque([start])
        while queue:
            current = queue.popleft()
            row = []
            for a in alphabet:
                step = set()
                for q in current:
                    step |= moves.get((q, a), set())
                target = self.closure(step, moves)
                if target not in index:
                    index[target] = len(order)
                    order.append(target)
                    queue.append(target)
                row.append(index[target])
            delta.append(tuple(row))
        accepting = frozenset(i for i, s in enumerate(order) if s & self.accepting)
        return Dfa(alphabet, len(order), 0, accepting, tuple(delta))


@dataclass(frozen=True)
class Dfa:
    """Complete deterministic automaton; ``delta[q][i]`` reads ``alphabet[i]``."""

    alphabet: tuple
    n_states: int
    initial: int
    accepting: frozenset
    delta: tuple

    def __post_init__(self):
        if len(self.delta) != self.n_states:
            raise ValueError("transition table must have one row per state")
        for row in self.delta:
            if len(row) != len(self.alphabet):
                raise ValueError("DFA must be complete: one target per letter")
            for q in row:
                if not 0 <= q < self.n_states:
                    raise ValueError(f"target state {q} out of range")
        if not 0 <= self.initial < self.n_states:
            raise ValueError("initial state out of range")

    def index(self, a: str) -> int:
        return self.alphabet.index(a)

    def run(self, word, state=None) -> int:
        q = self.initial if state is None else state
        for a in word:
            q = self.delta[q][self.alphabet.index(a)]
        return q

    def accepts(self, word) -> bool:
        return self.run(word) in self.accepting

    def complement(self) -> "Dfa":
        return Dfa(self.alphabet, self.n_states, self.initial,
                   frozenset(range(self.n_states)) - self.accepting, self.delta)

    def reachable(self) -> "Dfa":
        return self.minimize(merge=False)

    def minimize(self, merge: bool = True) -> "Dfa":
        """Minimal complete DFA with states numbered in breadth-first order.

        Two automata accept the same language iff their minimized forms are
        equal, which is what the language enumeration deduplicates on.
        """
        # reachable part
        seen = {self.initial}
        queue = deque([self.initial])
        while queue:
            q = queue.popleft()
            for r in self.delta[q]:
                if r not in seen:
                    seen.add(r)
                    queue.append(r)
        states = sorted(seen)
        if merge:
            # Moore refinement
            block = {q: int(q in self.accepting) for q in states}
            while True:
                signature = {q: (block[q],) + tuple(block[r] for r in self.delta[q]) for q in states}
                numbering = {}
                new_block = {q: numbering.setdefault(signature[q], len(numbering)) for q in states}
                if len(numbering) == len(set(block.values())):
                    block = new_block
                    break
                block = new_block
        else:
            block = {q: q for q in states}
        # renumber blocks in BFS order from the initial block
        rep = {}
        for q in states:
            rep.setdefault(block[q], q)
        order = {block[self.initial]: 0}
        queue = deque([block[self.initial]])
        delta = []
        while queue:
            b = queue.popleft()
            row = []
            for r in self.delta[rep[b]]:
                target = block[r]
                if target not in order:
                    order[target] = len(order)
                    queue.append(target)
                row.append(order[target])
            delta.append(tuple(row))
        accepting = frozenset(order[block[q]] for q in states if q in self.accepting)
        return Dfa(self.alphabet, len(order), 0, accepting, tuple(delta))

    def key(self):
        return (self.alphabet, self.n_states, self.initial,
                tuple(sorted(self.accepting)), self.delta)

    def is_empty(self) -> bool:
        return self.shortest_accepted() is None

    def shortest_accepted(self):
        parent = {self.initial: None}
        queue = deque([self.initial])
        while queue:
            q = queue.popleft()
            if q in self.accepting:
                word = []
                while parent[q] is not None:
                    q, a = parent[q]
                    word.append(a)
                return "".join(reversed(word))
            for i, r in enumerate(self.delta[q]):
                if r not in parent:
                    parent[r] = (q, self.alphabet[i])
                    queue.append(r)
        return None

    def to_nfa(self, offset: int = 0) -> Nfa:
        transitions = tuple((q + offset, a, r + offset)
                            for q, row in enumerate(self.delta)
                            for a, r in zip(self.alphabet, row))
        return Nfa(self.n_states + offset, frozenset({self.initial + offset}),
                   frozenset(q + offset for q in self.accepting), transitions)

    def words(self, max_length: int):
        """Accepted words up to ``max_length``, shortlex order."""
        for n in range(max_length + 1):
            for letters in _cartesian(self.alphabet, repeat=n):
                word = "".join(letters)
                if self.accepts(word):
                    yield word


def empty_dfa(alphabet) -> Dfa:
    alphabet = tuple(sorted(alphabet))
    return Dfa(alphabet, 1, 0, frozenset(), ((0,) * len(alphabet),))


def universal_dfa(alphabet) -> Dfa:
    alphabet = tuple(sorted(alphabet))
    return Dfa(alphabet, 1, 0, frozenset({0}), ((0,) * len(alphabet),))


def product_dfa(first: Dfa, second: Dfa, accept) -> Dfa:
    """Synchronous product; ``accept(x, y)`` combines the two acceptance bits."""
    if first.alphabet != second.alphabet:
        raise ValueError("product of automata over different alphabets")
    start = (first.initial, second.initial)
    index = {start: 0}
    order = [start]
    delta = []
    queue = deque([start])
    while queue:
        p, q = queue.popleft()
        row = []
        for i in range(len(first.alphabet)):
            target = (first.delta[p][i], second.delta[q][i])
            if target not in index:
                index[target] = len(order)
                order.append(target)
                queue.append(target)
            row.append(index[target])
        delta.append(tuple(row))
    accepting = frozenset(i for i, (p, q) in enumerate(order)
                          if accept(p in first.accepting, q in second.accepting))
    return Dfa(first.alphabet, len(order), 0, accepting, tuple(delta))


def concatenate(parts, markers, alphabet) -> Dfa:
    """DFA for ``L0 a1 L1 ... an Ln`` given DFAs ``parts`` and letters ``markers``."""
    alphabet = tuple(sorted(alphabet))
    transitions = []
    offsets = []
    total = 0
    for d in parts:
        offsets.append(total)
        transitions.extend(d.to_nfa(total).transitions)
        total += d.n_states
    for i, a in enumerate(markers):
        left, right = parts[i], parts[i + 1]
        for q in left.accepting:
            transitions.append((q + offsets[i], a, right.initial + offsets[i + 1]))
    last = parts[-1]
    nfa = Nfa(total, frozenset({parts[0].initial}),
              frozenset(q + offsets[-1] for q in last.accepting), tuple(transitions))
    return nfa.determinize(alphabet).minimize()


def dfa_included(first: Dfa, second: Dfa):
    """Whether L(first) is a subset of L(second).

    Returns ``(True, None)`` or ``(False, w)`` with ``w`` a shortest word of
    L(first) missing from L(second).
    """
    if first.alphabet != second.alphabet:
        raise ValueError("inclusion test needs a common alphabet")
    start = (first.initial, second.initial)
    parent = {start: None}
    queue = deque([start])
    while queue:
        p, q = queue.popleft()
        if p in first.accepting and q not in second.accepting:
            word = []
            node = (p, q)
            while parent[node] is not None:
                node, a = parent[node]
                word.append(a)
            return False, "".join(reversed(word))
        for i, a in enumerate(first.alphabet):
            target = (first.delta[p][i], second.delta[q][i])
            if target not in parent:
                parent[target] = ((p, q), a)
                queue.append(target)
    return True, None


def state_inclusion(d: Dfa):
    """``incl[p][q]`` iff the language read from state p is contained in that from q."""
    n = d.n_states
    incl = [[(p not in d.accepting) or (q in d.accepting) for q in range(n)] for p in range(n)]
    changed = True
    while changed:
        changed = False
        for p in range(n):
            for q in range(n):
                if incl[p][q] and not all(incl[d.delta[p][i]][d.delta[q][i]]
                                          for i in range(len(d.alphabet))):
                    incl[p][q] = False
                    changed = True
    return incl
