"""Reference implementations used only by the tests.

Each one is written from the definitions, avoiding the package's own
algorithms: exponent expansion instead of subword automata, literal
``s^(n!)`` instead of idempotent iteration, word contexts instead of state
inclusion.
"""

import itertools
import math

from hypothesis import strategies as st

from omegaineq.terms import ONE, Concat, Letter, Omega


def expand_word(t, k):
    """The word obtained by replacing every omega exponent with ``k``."""
    if isinstance(t, Letter):
        return t.symbol
    if isinstance(t, Concat):
        return expand_word(t.left, k) + expand_word(t.right, k)
    if isinstance(t, Omega):
        return expand_word(t.base, k) * k
    return ""


def subwords(word, max_len):
    out = set()
    for n in range(min(max_len, len(word)) + 1):
        for idx in itertools.combinations(range(len(word)), n):
            out.add("".join(word[i] for i in idx))
    return out


def _join(left, right, max_len):
    return {p + q for p in left for q in right if len(p) + len(q) <= max_len}


def expansion_subwords(t, k, max_len):
    """Subwords of length <= max_len of ``expand_word(t, k)``, without building the word."""
    if isinstance(t, Letter):
        return {"", t.symbol}
    if isinstance(t, Concat):
        return _join(expansion_subwords(t.left, k, max_len), expansion_subwords(t.right, k, max_len), max_len)
    if isinstance(t, Omega):
        base = expansion_subwords(t.base, k, max_len)
        out = {""}
        for _ in range(k):
            out = _join(out, base, max_len)
        return out
    return {""}


def half_level_oracle(u, v, max_len=5, exponent=6):
    """u <= v at level 1/2, judged on short subwords of the expansions."""
    return expansion_subwords(u, exponent, max_len) <= expansion_subwords(v, exponent, max_len)


def eval_oracle(table, identity, phi, t):
    """Evaluate with ``s^w`` computed literally as ``s^(n!)``."""
    n = len(table)
    if isinstance(t, Letter):
        return phi[t.symbol]
    if isinstance(t, Concat):
        return table[eval_oracle(table, identity, phi, t.left)][eval_oracle(table, identity, phi, t.right)]
    if isinstance(t, Omega):
        s = eval_oracle(table, identity, phi, t.base)
        x = identity
        for _ in range(math.factorial(n)):
            x = table[x][s]
        return x
    return identity


def all_words(alphabet, max_len):
    for n in range(max_len + 1):
        for w in itertools.product(alphabet, repeat=n):
            yield "".join(w)


def context_leq(accepts, alphabet, x, y, context_len=3):
    """x <= y in the syntactic order, with contexts of bounded length."""
    for p in all_words(alphabet, context_len):
        for q in all_words(alphabet, context_len):
            if accepts(p + x + q) and not accepts(p + y + q):
                return False
    return True


def terms(alphabet="ab", max_leaves=5, allow_one=True):
    leaves = st.sampled_from([Letter(c) for c in alphabet])
    if allow_one:
        leaves = st.one_of(leaves, st.just(ONE))
    return st.recursive(
        leaves,
        lambda inner: st.one_of(st.builds(Concat, inner, inner), st.builds(Omega, inner)),
        max_leaves=max_leaves,
    )
