"""Normal and curvature at the bottom of a graph.

The cloud samples y = -1 + x^2 + |x|^2.5 on [-0.25, 0.25]. At the origin the
true normal is vertical and the true curvature is 2. The implied normal is
robustly vertical, but its sign flips with alpha: the origin lies almost on
the ridge of ``u`` (|grad u| is about 1e-3), so which side of the ridge the
fitted surface tilts to is decided by tiny changes in the density. The
curvature is correspondingly fragile; noise makes it worse.
"""

from kernelsig.bench import graph_suite

print(graph_suite(seed=0).to_markdown())
