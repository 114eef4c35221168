"""
Languages by level and their syntactic monoids
==============================================

Level 1/2 languages are unions of products A* a1 A* ... an A*. Level 1
closes them under boolean operations, level 3/2 takes products of those,
and so on.
"""

from omegaineq import enumerate_level, expr_to_dfa, syntactic_ordered_monoid
from omegaineq.lang import show

for level in ("1/2", "1", "3/2"):
    print(f"first languages of level {level} over ab:")
    for e in enumerate_level(level, "ab", 6):
        print("   ", show(e.expr))

# The syntactic ordered monoid of A*aA*: two elements, 1 below a.
e = next(x for x in enumerate_level("1/2", "ab", 10) if show(x.expr) == "A*aA*")
rec = syntactic_ordered_monoid(expr_to_dfa(e.expr, "ab"))
print(rec.monoid)
print("accepts 'bab':", rec.accepts("bab"), " accepts 'bb':", rec.accepts("bb"))
