"""
Relative invariants of cubics
=============================

The Caporaso-Harris style recursion computes the relative broccoli
invariants N^d(alpha, beta, s).  For d = 3 the first row is the chain of
Welschinger invariants of plane cubics, 8, 6, 4, 2, 0.
"""

from tropicount.ch import ch_invariant, ch_terms, make_key
from tropicount.cli import format_table

print(format_table(3))

# a single value, and the terms of the recursion that produce it
key = make_key(3, (), (3,), 1)
print("N^3((),(3),1) =", ch_invariant(key))
for term in ch_terms(key):
    print(" ", term.case, term.coefficient, [tuple(c) for c in term.children])

# both formulas of the recursion agree wherever both apply
key = make_key(4, (), (4,), 2)
print(ch_invariant(key, "a"), ch_invariant(key, "b"))
