import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from omegaineq.automata import (Dfa, Nfa, concatenate, dfa_included, empty_dfa, product_dfa,
                                state_inclusion, universal_dfa)
from omegaineq.jforms import subword_nfa
from omegaineq.terms import parse_term
from oracles import all_words


def subwords_dfa(text, alphabet):
    return subword_nfa(parse_term(text)).determinize(alphabet)


def test_included_examples():
    d = subwords_dfa("a b", "abc")
    assert dfa_included(d, d) == (True, None)
    assert dfa_included(subwords_dfa("a b", "abc"), subwords_dfa("a c b", "abc")) == (True, None)
    ok, word = dfa_included(subwords_dfa("(a b)^w", "ab"), subwords_dfa("a^w b^w", "ab"))
    assert not ok and word == "ba"


def test_included_needs_common_alphabet():
    with pytest.raises(ValueError):
        dfa_included(universal_dfa("a"), universal_dfa("ab"))


def test_dfa_must_be_complete():
    with pytest.raises(ValueError):
        Dfa(("a", "b"), 1, 0, frozenset(), ((0,),))
    with pytest.raises(ValueError):
        Nfa(1, frozenset({0}), frozenset({2}), ())


def test_empty_and_universal():
    assert list(empty_dfa("ab").words(3)) == []
    assert len(list(universal_dfa("ab").words(2))) == 7
    assert universal_dfa("ab").complement().minimize() == empty_dfa("ab")


def test_concatenate_marked_product():
    all_ = universal_dfa("ab")
    d = concatenate([all_, all_], ["a"], "ab")
    assert d.n_states == 2
    assert all(d.accepts(w) == ("a" in w) for w in all_words("ab", 5))


def random_dfa(draw, alphabet="ab", max_states=4):
    n = draw(st.integers(1, max_states))
    delta = tuple(tuple(draw(st.integers(0, n - 1)) for _ in alphabet) for _ in range(n))
    accepting = frozenset(q for q in range(n) if draw(st.booleans()))
    return Dfa(tuple(alphabet), n, 0, accepting, delta)


dfas = st.composite(random_dfa)


@settings(max_examples=150)
@given(dfas(), dfas())
def test_inclusion_against_word_enumeration(d1, d2):
    ok, word = dfa_included(d1, d2)
    bad = [w for w in all_words("ab", 6) if d1.accepts(w) and not d2.accepts(w)]
    if ok:
        assert not bad
    else:
        assert d1.accepts(word) and not d2.accepts(word)
        if bad:
            assert len(word) <= min(len(w) for w in bad)


@settings(max_examples=150)
@given(dfas(), dfas())
def test_minimization_is_canonical(d1, d2):
    m1, m2 = d1.minimize(), d2.minimize()
    same = all(d1.accepts(w) == d2.accepts(w) for w in all_words("ab", 7))
    assert (m1 == m2) == same
    assert all(m1.accepts(w) == d1.accepts(w) for w in all_words("ab", 5))


@settings(max_examples=100)
@given(dfas(), dfas())
def test_product_and_complement(d1, d2):
    both = product_dfa(d1, d2, lambda x, y: x and not y)
    diff = product_dfa(d1, d2.complement(), lambda x, y: x and y)
    assert both.minimize() == diff.minimize()


@settings(max_examples=100)
@given(dfas())
def test_state_inclusion_matches_inclusion(d):
    incl = state_inclusion(d)
    for p in range(d.n_states):
        for q in range(d.n_states):
            fp = Dfa(d.alphabet, d.n_states, p, d.accepting, d.delta)
            fq = Dfa(d.alphabet, d.n_states, q, d.accepting, d.delta)
            assert incl[p][q] == dfa_included(fp, fq)[0]
