"""Sound, bounded rewriting of omega-terms modulo the aperiodic identities.

Terms are flattened to sequences of atoms (letters and omega-powers whose
bases are themselves normalized) and rewritten with oriented forms of

    x(yz) = (xy)z          (flattening)
    (x^w)^w = (x^r)^w = x x^w = x^w x = x^w
    x^w x^w = x^w
    (pq)^w p = p (qp)^w    (omega-powers are pushed right)

Every rule is an identity of aperiodic monoids, so the result is always
equal to the input over A; it is not a complete normal form.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache

from .terms import Concat, Letter, Omega, One, OmegaTerm, letters, product, size


def factors(t: OmegaTerm) -> tuple:
    """Flatten products and drop 1: the sequence of letter and omega atoms."""
    out = []
    stack = [t]
    while stack:
        x = stack.pop()
        if isinstance(x, Concat):
            stack.append(x.right)
            stack.append(x.left)
        elif isinstance(x, (Letter, Omega)):
            out.append(x)
        elif not isinstance(x, One):
            raise TypeError(f"not an omega-term: {x!r}")
    return tuple(out)


def from_factors(seq) -> OmegaTerm:
    return product(*seq)


def primitive_root(seq: tuple) -> tuple:
    n = len(seq)
    for d in range(1, n):
        if n % d == 0 and seq[:d] * (n // d) == seq:
            return seq[:d]
    return seq


class _Budget:
    __slots__ = ("steps",)

    def __init__(self, steps):
        self.steps = steps

    def spend(self) -> bool:
        if self.steps <= 0:
            return False
        self.steps -= 1
        return True


def _omega_atom(base_seq: tuple, budget: _Budget) -> tuple:
    """Normalized atoms for ``(base)^w`` where ``base_seq`` is normalized."""
    if not base_seq:
        return ()  # 1^w = 1
    if len(base_seq) == 1 and isinstance(base_seq[0], Omega):
        return base_seq  # (x^w)^w = x^w
    return (Omega(from_factors(primitive_root(base_seq))),)  # (x^r)^w = x^w


def _normalize_atom(atom, budget: _Budget) -> tuple:
    if isinstance(atom, Letter):
        return (atom,)
    return _omega_atom(_normalize_seq(factors(atom.base), budget), budget)


def _rewrite_once(out: list, budget: _Budget) -> bool:
    for i, atom in enumerate(out):
        if not isinstance(atom, Omega):
            continue
        base = factors(atom.base)
        n = len(base)
        if i + 1 < len(out) and out[i + 1] == atom:
            del out[i + 1]
            return True
        if i >= n and tuple(out[i - n:i]) == base:
            del out[i - n:i]
            return True
        if tuple(out[i + 1:i + 1 + n]) == base:
            del out[i + 1:i + 1 + n]
            return True
        for k in range(n - 1, 0, -1):
            if tuple(out[i + 1:i + 1 + k]) == base[:k]:
                rotated = _normalize_seq(base[k:] + base[:k], budget)
                out[i:i + 1 + k] = list(base[:k]) + list(_omega_atom(rotated, budget))
                return True
    return False


def _normalize_seq(seq: tuple, budget: _Budget) -> tuple:
    out = []
    for atom in seq:
        out.extend(_normalize_atom(atom, budget))
    while budget.steps > 0 and _rewrite_once(out, budget):
        budget.spend()
    return tuple(out)


def normal_factors(t: OmegaTerm, max_steps: int | None = None, factor: int = 10) -> tuple:
    if max_steps is None:
        max_steps = factor * size(t) ** 2
    return _normal_factors(t, max_steps)


@lru_cache(maxsize=1 << 16)
def _normal_factors(t, max_steps):
    return _normalize_seq(factors(t), _Budget(max_steps))


def normalize_a(t: OmegaTerm, max_steps: int | None = None) -> OmegaTerm:
    """Rewrite ``t`` toward a normal form over A (left-associated result).

    ``max_steps`` caps the number of top-level rewrites (default ``10 n^2``
    for a term of ``n`` nodes); on exhaustion the last reduct is returned.
    """
    return from_factors(normal_factors(t, max_steps))


class Equality(enum.Enum):
    EQUAL = "equal"
    DISTINCT = "distinct"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class EqualityCheck:
    status: Equality
    monoid: object = None
    assignment: dict | None = None

    @property
    def equal(self) -> bool:
        return self.status is Equality.EQUAL

    @property
    def distinct(self) -> bool:
        return self.status is Equality.DISTINCT


def equal_over_a(t1: OmegaTerm, t2: OmegaTerm, refute_size: int = 4,
                 rewrite_factor: int = 10) -> EqualityCheck:
    """Three-valued equality of omega-terms over aperiodic monoids.

    EQUAL when the rewritten forms coincide; DISTINCT with a separating
    aperiodic monoid (size at most ``refute_size``) and assignment; UNKNOWN
    otherwise.  Both definite answers are sound.  ``rewrite_factor`` sets
    the rewrite budget to ``rewrite_factor * n^2`` steps per term.
    """
    return _equal_over_a(t1, t2, refute_size, rewrite_factor)


@lru_cache(maxsize=1 << 16)
def _equal_over_a(t1, t2, refute_size, rewrite_factor):
    if t1 == t2 or (normal_factors(t1, factor=rewrite_factor)
                    == normal_factors(t2, factor=rewrite_factor)):
        return EqualityCheck(Equality.EQUAL)
    witness = separate(t1, t2, refute_size)
    if witness is not None:
        return EqualityCheck(Equality.DISTINCT, *witness)
    return EqualityCheck(Equality.UNKNOWN)


def separate(t1: OmegaTerm, t2: OmegaTerm, max_size: int = 4):
    """An aperiodic monoid and assignment giving ``t1`` and ``t2`` different values."""
    from .monoid import aperiodic_monoids, find_violation

    if max_size < 1:
        return None
    alphabet = sorted(letters(t1) | letters(t2))
    for m in aperiodic_monoids(min(max_size, 4)):
        # equality order: a violation of t1 <= t2 is exactly t1 != t2
        bad = find_violation(m, t1, t2, alphabet)
        if bad is not None:
            return m, bad
    return None
