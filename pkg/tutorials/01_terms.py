"""
Omega-terms, their measure and their decompositions
===================================================

Run with ``python3 tutorials/01_terms.py``.
"""

from omegaineq import decompositions, format_term, mu, parse_term
from omegaineq.terms import Concat, Letter, Omega

# Terms are binary trees. The parser reads juxtaposition left-associatively,
# and "^w" is the omega exponent.
t = parse_term("(a a b^w)^w a b^w")
print("parsed:", format_term(t))

# The measure depends on the tree shape, not only on the word. Replacing
# the last b by b^w raises the second component for the right-nested tree
# but not for the left-associated parse.
a, b = Letter("a"), Letter("b")
head = Omega(Concat(a, Concat(a, Omega(b))))
print("mu, right-nested:        ", tuple(mu(Concat(head, Concat(a, Omega(b))))))
print("mu, right-nested, b^w^w: ", tuple(mu(Concat(head, Concat(a, Omega(Omega(b)))))))
print("mu, parsed, b^w^w:       ", tuple(mu(parse_term("(a a b^w)^w a (b^w)^w"))))

# A decomposition splits a term into a left and a right part. Omega
# powers may be unrolled a few times first; exp_bound caps the unrolling.
for left, right in decompositions(parse_term("a b"), 2):
    print(f"  ({format_term(left)}, {format_term(right)})")

# (a b)^w has 20 decompositions when at most one copy is unrolled
# beyond the omega part.
print("count for (a b)^w:", len(decompositions(parse_term("(a b)^w"), 1)))

# The right part of a decomposition never has a larger measure.
for left, right in decompositions(t, 1)[:5]:
    print(f"  {tuple(mu(right))} <= {tuple(mu(t))} for right part {format_term(right)}")
