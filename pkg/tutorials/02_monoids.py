"""
Ordered monoids and inequalities
================================

Terms are evaluated in finite ordered monoids. An inequality u <= v holds
in a monoid when every assignment of letters sends u below v.
"""

import numpy as np

from omegaineq import OrderedMonoid, enumerate_ordered_monoids, evaluate, omega_power, parse_term, satisfies
from omegaineq.monoid import aperiodic_monoids, find_violation

# U1 = {1, 0} with 0 absorbing, ordered by 1 < 0
table = np.array([[0, 1], [1, 1]])
leq = np.array([[True, True], [False, True]])
u1 = OrderedMonoid(("1", "0"), 0, table, leq)
print(u1)

# omega picks the idempotent power
print("0^w =", u1.names[omega_power(u1, 1)])
print("value of (x y)^w at x=1, y=0:", u1.names[evaluate(u1, {"x": 0, "y": 1}, parse_term("(x y)^w"))])

# 1 <= x holds in U1, x <= 1 does not, and the search reports why
print("1 <= x:", satisfies(u1, parse_term("1"), parse_term("x")))
bad = find_violation(u1, parse_term("x"), parse_term("1"))
print("x <= 1 fails at", {k: u1.names[x] for k, x in bad.items()})

# Enumerations: all ordered monoids up to isomorphism, and the aperiodic ones
for n in (1, 2, 3):
    print(f"ordered monoids of size <= {n} up to iso:", sum(1 for _ in enumerate_ordered_monoids(n, up_to_iso=True)))
print("aperiodic monoids of size <= 3:", len(aperiodic_monoids(3)))

# An identity of aperiodic monoids: x^w x = x^w holds in all of them
lhs, rhs = parse_term("x^w x"), parse_term("x^w")
print("x^w x = x^w everywhere:", all(satisfies(m, lhs, rhs) and satisfies(m, rhs, lhs)
                                      for m in aperiodic_monoids(3)))
