"""
Lines and conics through points
===============================

There is exactly one line through two points and one conic through five.
We count tropical curves of these degrees through random integer points and
see the number 1 come out, whatever mix of real and complex points we use.
"""

from tropicount.curve import del_pezzo_degree
from tropicount.enumerate import count_generic

# a line has 3 ends, so one point (real or complex) and one more real point
# fix it; a complex point counts twice
for r, s in [(2, 0), (0, 1)]:
    deg = del_pezzo_degree("P2", 1).with_markings(r, s)
    rep = count_generic(deg, "broccoli", seed=1)
    print("line  r=%d s=%d:" % (r, s), rep.value, "from", len(rep.curves), "curve(s)")

# conics: r + 2s = 5
for s in range(3):
    deg = del_pezzo_degree("P2", 2).with_markings(5 - 2 * s, s)
    for mode in ("broccoli", "welschinger"):
        rep = count_generic(deg, mode, seed=7)
        print("conic r=%d s=%d %-11s" % (5 - 2 * s, s, mode), rep.value)

# each counted curve carries its canonical encoding
rep = count_generic(del_pezzo_degree("P2", 2).with_markings(1, 2), "broccoli", seed=7)
for c in rep.curves:
    print(c.multiplicity, c.encoding)
