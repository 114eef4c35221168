"""Omega-inequalities over the levels of the Straubing-Therien hierarchy."""

from .automata import Dfa, Nfa, dfa_included
from .decide import Budget, Status, Verdict, Witness, decide, refute, replay_witness
from .jforms import Block, JCanonicalForm, canonical_j, subword_nfa, subword_of
from .lang import LangExpr, enumerate_level, expr_to_dfa
from .levels import Level
from .monoid import (OrderedMonoid, dual, enumerate_ordered_monoids, evaluate, is_aperiodic,
                     omega_power, satisfies, syntactic_ordered_monoid, validate)
from .proof import Inequality, Proof, ProofStep, check_proof, gamma_axiom_check, search_proof
from .rewriting import Equality, equal_over_a, normalize_a
from .terms import (Decomposition, MuPair, OmegaTerm, decompositions, format_term, mu, parse_term,
                    power)

__all__ = [
    "Block", "Budget", "Decomposition", "Dfa", "Equality", "Inequality", "JCanonicalForm",
    "LangExpr", "Level", "MuPair", "Nfa", "OmegaTerm", "OrderedMonoid", "Proof", "ProofStep",
    "Status", "Verdict", "Witness", "canonical_j", "check_proof", "decide", "decompositions",
    "dfa_included", "dual", "enumerate_level", "enumerate_ordered_monoids", "equal_over_a",
    "evaluate", "expr_to_dfa", "format_term", "gamma_axiom_check", "is_aperiodic", "mu",
    "normalize_a", "omega_power", "parse_term", "power", "refute", "replay_witness",
    "satisfies", "search_proof", "subword_nfa", "subword_of", "syntactic_ordered_monoid",
    "validate",
]
