import math

import numpy as np
import pytest
from hypothesis import given, settings

from omegaineq.automata import Dfa
from omegaineq.lang import ALL, Complement, expr_to_dfa, upset
from omegaineq.monoid import (MonoidError, OrderedMonoid, aperiodic_monoids, dual,
                              enumerate_ordered_monoids, evaluate, evaluate_all, find_violation,
                              is_aperiodic, is_j_trivial, j_trivial_monoids, monoid_tables,
                              omega_power, power_of, satisfies, syntactic_ordered_monoid, validate)
from omegaineq.terms import parse_term
from oracles import all_words, context_leq, eval_oracle, terms

P = parse_term
U1 = OrderedMonoid.discrete([[0, 1], [1, 1]], names=("1", "0"))
Z2 = OrderedMonoid.discrete([[0, 1], [1, 0]], names=("1", "g"))


def synt(expr, alphabet):
    return syntactic_ordered_monoid(expr_to_dfa(expr, alphabet))


def test_validate_examples():
    assert validate(OrderedMonoid.discrete([[0]])) is None
    bad = OrderedMonoid(("1", "s"), 0, [[0, 1], [1, 2]], np.eye(2, dtype=bool))
    assert validate(bad).kind == "table range"
    both = OrderedMonoid(("1", "0"), 0, U1.table, np.ones((2, 2), dtype=bool))
    assert validate(both).kind == "antisymmetry"


def test_validate_catches_each_invariant():
    not_assoc = OrderedMonoid.discrete([[0, 1, 2], [1, 2, 0], [2, 2, 2]])
    assert validate(not_assoc).kind == "associativity"
    no_identity = OrderedMonoid.discrete([[1, 1], [1, 1]])
    assert validate(no_identity).kind == "identity"
    # multiplying 1 <= g by g gives g <= 1
    up = OrderedMonoid(("1", "g"), 0, Z2.table, [[True, True], [False, True]])
    assert validate(up).kind == "compatibility"


def test_json_round_trip():
    for m in enumerate_ordered_monoids(3):
        assert OrderedMonoid.loads(m.dumps()) == m


def test_json_loader_checks():
    data = U1.to_dict()
    data["table"][1][1] = "nope"
    with pytest.raises(MonoidError):
        OrderedMonoid.from_dict(data)
    data = U1.to_dict()
    data["order"] = [["1", "0"], ["0", "1"]]
    with pytest.raises(MonoidError):
        OrderedMonoid.from_dict(data)


def test_omega_power_examples():
    assert [omega_power(U1, s) for s in range(2)] == [0, 1]
    assert omega_power(Z2, 1) == 0
    assert power_of(Z2, 1, math.factorial(2)) == 0


def test_omega_power_is_the_factorial_power():
    for m in enumerate_ordered_monoids(4, up_to_iso=True, discrete_only=True):
        n = len(m)
        for s in range(n):
            e = omega_power(m, s)
            assert m.mul(e, e) == e
            assert e == power_of(m, s, math.factorial(n))


def test_evaluate_examples():
    assert evaluate(U1, {}, P("1")) == 0
    assert evaluate(U1, {"a": 1}, P("a^w")) == 1
    assert evaluate(Z2, {"g": 1}, P("g^w g")) == 1
    with pytest.raises(KeyError):
        evaluate(U1, {}, P("a"))


@settings(max_examples=60, deadline=None)
@given(terms("ab", 5))
def test_evaluation_matches_factorial_oracle(t):
    for m in enumerate_ordered_monoids(3, up_to_iso=True, discrete_only=True):
        values = evaluate_all(m, t, "ab")
        rows = m.table.tolist()
        k = 0
        for x in range(len(m)):
            for y in range(len(m)):
                phi = {"a": x, "b": y}
                assert values[k] == eval_oracle(rows, m.identity, phi, t) == evaluate(m, phi, t)
                k += 1


def test_satisfies_examples():
    rec = synt(upset("x"), "x")
    m = rec.monoid
    assert satisfies(m, P("1"), P("x"))
    assert not satisfies(dual(m), P("1"), P("x"))
    assert satisfies(U1, P("a b"), P("a b"))
    assert find_violation(dual(m), P("1"), P("x")) == {"x": rec.assignment["x"]}


def test_aperiodicity():
    assert is_aperiodic(U1)
    assert not is_aperiodic(Z2)
    assert is_aperiodic(OrderedMonoid.discrete([[0]]))
    for m in enumerate_ordered_monoids(3, up_to_iso=True, discrete_only=True):
        law = satisfies(m, P("x^w x"), P("x^w")) and satisfies(m, P("x^w"), P("x^w x"))
        assert is_aperiodic(m) == law


def test_j_trivial_monoids_satisfy_the_j_identities():
    for m in j_trivial_monoids(4):
        assert is_j_trivial(m)
        assert satisfies(m, P("(x y)^w x"), P("(x y)^w"))
        assert satisfies(m, P("(x y)^w"), P("(y x)^w"))


def test_dual():
    for m in enumerate_ordered_monoids(3):
        assert dual(dual(m)) == m
        assert validate(dual(m)) is None
    assert dual(U1) == U1
    m = synt(upset("a"), "ab").monoid
    z = m.index("a")
    assert dual(m).leq[z, 0] and not dual(m).leq[0, z]


@settings(max_examples=30, deadline=None)
@given(terms("ab", 3), terms("ab", 3))
def test_satisfies_duality(u, v):
    for m in enumerate_ordered_monoids(3, up_to_iso=True):
        assert satisfies(m, u, v) == satisfies(dual(m), v, u)


def test_syntactic_examples():
    rec = synt(upset("a"), "ab")
    m = rec.monoid
    assert len(m) == 2
    z = m.index("a")
    assert m.mul(z, z) == z
    assert m.leq[0, z] and not m.leq[z, 0]
    assert rec.accepting == {z}
    assert rec.assignment == {"a": z, "b": 0}

    everything = synt(ALL, "ab")
    assert len(everything.monoid) == 1 and everything.accepting == {0}

    eps = synt(Complement(upset("a")), "a")
    m = eps.monoid
    z = m.index("a")
    assert eps.accepting == {0}
    assert m.mul(z, 0) == m.mul(0, z) == m.mul(z, z) == z
    assert m.leq[z, 0] and not m.leq[0, z]


def test_syntactic_rejects_nondeterministic_input():
    from omegaineq.jforms import subword_nfa

    with pytest.raises(TypeError):
        syntactic_ordered_monoid(subword_nfa(P("a")))


@settings(max_examples=80, deadline=None)
@given(terms("ab", 4))
def test_syntactic_order_matches_word_contexts(t):
    from omegaineq.jforms import subword_nfa

    dfa = subword_nfa(t).determinize("ab")
    rec = syntactic_ordered_monoid(dfa)
    m = rec.monoid
    assert validate(m) is None
    assert rec.filter_is_up_closed()
    for w in all_words("ab", 6):
        assert rec.accepts(w) == dfa.accepts(w)
    for x in range(len(m)):
        for y in range(len(m)):
            assert m.leq[x, y] == context_leq(dfa.accepts, "ab", m.names[x] if x else "",
                                             m.names[y] if y else "")


def test_enumeration_counts():
    assert [len(monoid_tables(n)) for n in range(1, 5)] == [1, 2, 11, 156]
    sizes = [sum(1 for m in enumerate_ordered_monoids(n) if len(m) == n) for n in range(1, 4)]
    assert sizes == [1, 4, 71]
    twos = [m for m in enumerate_ordered_monoids(2, discrete_only=True) if len(m) == 2]
    assert sorted(m.table[1, 1] for m in twos) == [0, 1]
    assert len(aperiodic_monoids(4)) == 25


def test_enumerated_monoids_validate():
    for m in enumerate_ordered_monoids(4, up_to_iso=True):
        assert validate(m) is None
    with pytest.raises(ValueError):
        next(enumerate_ordered_monoids(5))


def test_dfa_type():
    d = Dfa(("a",), 1, 0, frozenset({0}), ((0,),))
    assert len(syntactic_ordered_monoid(d).monoid) == 1
