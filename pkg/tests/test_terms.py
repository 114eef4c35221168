import pytest
from hypothesis import given, settings

from omegaineq.terms import (ONE, Concat, Letter, MuPair, Omega, TermSyntaxError, decompositions,
                             format_term, mu, parse_term, power, size)
from oracles import terms

a, b, c = Letter("a"), Letter("b"), Letter("c")


def nested_example():
    """A two-level term built node by node, products nested to the right."""
    return Concat(Omega(Concat(a, Concat(a, Omega(b)))), Concat(a, Omega(b)))


def test_parse_left_associates():
    t = parse_term("(a a b^w)^w a b^w")
    inner = Concat(Concat(a, a), Omega(b))
    assert t == Concat(Concat(Omega(inner), a), Omega(b))


def test_parse_identity_and_errors():
    assert parse_term("1") == ONE
    assert parse_term("  a   b ") == Concat(a, b)
    with pytest.raises(TermSyntaxError) as err:
        parse_term("((a b)^w")
    assert err.value.position == 8
    for bad in ["a^0", "", "A", "a^", ")", "a (b"]:
        with pytest.raises(TermSyntaxError):
            parse_term(bad)


def test_parse_exponents():
    assert parse_term("a^3") == power(a, 3)
    assert parse_term("a^ω") == parse_term("a^w") == Omega(a)
    assert parse_term("(a b)^2") == Concat(Concat(a, b), Concat(a, b))


def test_format_examples():
    assert format_term(ONE) == "1"
    assert format_term(Concat(a, Concat(b, c))) == "a (b c)"
    assert format_term(Omega(Concat(a, b))) == "(a b)^w"
    assert str(Omega(Omega(a))) == "(a^w)^w"


@given(terms("abc", 8))
def test_format_round_trip(t):
    assert parse_term(format_term(t)) == t


def test_power():
    assert power(a, 1) == a
    ab = Concat(a, b)
    assert power(ab, 2) == Concat(ab, ab)
    assert power(a, 3) == Concat(Concat(a, a), a)
    with pytest.raises(ValueError):
        power(a, 0)


def test_decompositions_of_letters_and_products():
    assert set(decompositions(a, 3)) == {(ONE, a), (a, ONE)}
    assert set(decompositions(ONE)) == {(ONE, ONE)}
    expected = {(ONE, Concat(a, b)), (a, Concat(ONE, b)), (Concat(a, ONE), b), (Concat(a, b), ONE)}
    assert set(decompositions(Concat(a, b), 0)) == expected


def test_decompositions_of_omega_power():
    s = Concat(a, b)
    got = set(decompositions(Omega(s), 1))
    assert (Omega(s), ONE) not in got
    assert (Concat(Omega(s), a), b) not in got
    assert (Omega(s), Omega(s)) not in got
    assert (Concat(Omega(s), ONE), s) in got
    assert (Concat(Omega(s), Concat(a, ONE)), b) in got
    # k and l range over {0, 1, w}, one of them w
    assert len(got) == 4 * 5


def test_decompositions_are_deduplicated():
    pairs = decompositions(Omega(a), 2)
    assert len(pairs) == len(set(pairs))


def test_mu_examples():
    assert mu(a) == mu(ONE) == MuPair(0, 0)
    assert mu(nested_example()) == (2, 0)
    variant = Concat(Omega(Concat(a, Concat(a, Omega(b)))), Concat(a, Omega(Omega(b))))
    assert mu(variant) == (2, 1)
    assert mu(parse_term("(a a b^w)^w a b^w")) == (2, 0)


def test_mu_clauses():
    assert mu(Omega(Omega(a))) == (2, 0)
    assert mu(Concat(a, b)) == (0, 1)
    assert mu(Concat(a, Concat(b, c))) == (0, 2)
    assert mu(Concat(Concat(a, b), c)) == (0, 1)
    assert mu(Concat(a, Omega(b))) == (1, 0)
    assert MuPair(1, 2) + MuPair(0, 1) == (1, 3)


@settings(max_examples=200)
@given(terms("ab", 6))
def test_mu_decreases_along_right_parts(t):
    for _, right in decompositions(t, 2):
        assert mu(right) <= mu(t)


@given(terms("ab", 6))
def test_size_counts_nodes(t):
    assert size(Omega(t)) == size(t) + 1
    assert size(Concat(t, t)) == 2 * size(t) + 1
