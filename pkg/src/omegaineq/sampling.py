"""Seeded random omega-terms for tests, fuzzing and the tutorials."""

from __future__ import annotations

import random

from .terms import ONE, Concat, Letter, Omega, OmegaTerm


def random_term(rng: random.Random, max_nodes: int = 8, max_depth: int = 2,
                alphabet: str = "ab", identity_rate: float = 0.05) -> OmegaTerm:
    """A term with at most ``max_nodes`` nodes and omega-nesting at most ``max_depth``."""
    return _sized(rng, rng.randint(1, max_nodes), max_depth, alphabet, identity_rate)


def _sized(rng, n, depth, alphabet, identity_rate):
    if n == 1:
        if rng.random() < identity_rate:
            return ONE
        return Letter(rng.choice(alphabet))
    if depth > 0 and (n == 2 or rng.random() < 0.35):
        return Omega(_sized(rng, n - 1, depth - 1, alphabet, identity_rate))
    if n == 2:
        return _sized(rng, 1, depth, alphabet, identity_rate)
    k = rng.randint(1, n - 2)
    return Concat(_sized(rng, k, depth, alphabet, identity_rate),
                  _sized(rng, n - 1 - k, depth, alphabet, identity_rate))


def random_terms(seed: int, count: int, **kwargs) -> list:
    rng = random.Random(seed)
    return [random_term(rng, **kwargs) for _ in range(count)]


def random_pairs(seed: int, count: int, **kwargs) -> list:
    rng = random.Random(seed)
    return [(random_term(rng, **kwargs), random_term(rng, **kwargs)) for _ in range(count)]
