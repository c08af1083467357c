"""Curvature of a short circular arc.

Sixteenth-of-a-circle arcs sampled with 32 to 256 points, curvature
measured on the middle quarter where end effects have died out. The Gauss
kernel is accurate already at 32 points; the (regularized) Laplace kernel
needs dense sampling before its level set stops being a chain of cones.
"""

from kernelsig.bench import sector_suite

print(sector_suite().to_markdown())
