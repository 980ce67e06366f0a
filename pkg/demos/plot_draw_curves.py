"""
Drawing the curves
==================

Write an SVG with one panel per counted curve.  Even edges are drawn
thick, real points small and complex points large.
"""

import sys

from tropicount.cli import render_svg
from tropicount.curve import del_pezzo_degree
from tropicount.enumerate import count_generic

deg = del_pezzo_degree("P2", 2).with_markings(1, 2)
rep = count_generic(deg, "broccoli", seed=3, box=50)

out = sys.argv[1] if len(sys.argv) > 1 else "conics.svg"
with open(out, "w") as fh:
    fh.write(render_svg(rep))
print("wrote", out, "with", len(rep.curves), "panel(s)")
