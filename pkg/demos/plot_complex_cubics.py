"""
Complex counts
==============

Counting trivalent curves through 3d - 1 points with Mikhalkin's
multiplicity gives the number of complex rational curves: 1 line, 1 conic
and 12 cubics.  Cubics take a couple of minutes, so pass ``--cubics``.
"""

import sys

from tropicount.curve import del_pezzo_degree
from tropicount.enumerate import count_generic

degrees = [1, 2, 3] if "--cubics" in sys.argv else [1, 2]
for d in degrees:
    deg = del_pezzo_degree("P2", d).with_markings(3 * d - 1, 0)
    rep = count_generic(deg, "complex", seed=5)
    print("d=%d:" % d, rep.value, "from", len(rep.curves), "types")
