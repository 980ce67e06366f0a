"""
Welschinger counts can depend on the points
===========================================

For the degree with ends (-3,0), 3 x (0,-1) and 3 x (1,1) the Welschinger
count is 9 for one choice of four real and one complex point and 1 for
another.  The broccoli count is 1 in both cases.
"""

import os

from tropicount.cli import parse_problem
from tropicount.enumerate import Problem, count_invariant

here = os.path.dirname(os.path.abspath(__file__))
fixtures = os.path.join(here, "..", "tests", "fixtures")

for name in ("seven_w9.json", "seven_w1.json"):
    prob = parse_problem(os.path.join(fixtures, name))
    w = count_invariant(prob)
    b = count_invariant(Problem(prob.degree, "broccoli", prob.conditions))
    print(name, "welschinger", w.value, "broccoli", b.value)
    for c in w.curves:
        print("   ", c.multiplicity, dict(c.tags))

# the broccoli number is the same for any generic choice
from tropicount.curve import make_degree
from tropicount.enumerate import invariance_experiment

deg = make_degree([((-3, 0), 1), ((0, -1), 3), ((1, 1), 3)], 4, 1)
print(invariance_experiment(deg, "broccoli", trials=5, seed=2).values)
print(invariance_experiment(deg, "welschinger", trials=5, seed=2).values)
