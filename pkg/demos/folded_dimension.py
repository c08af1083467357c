"""Telling a curve from a surface by the rank of nearby normals.

A closed curve folded like a paperclip lies in the xz-plane; extruding it
along y gives a surface. At the same base points, normals sampled in a
tiny ball rotate in two directions around the curve (rank 2, dimension
3 - 2 = 1) but only in one around the surface (rank 1, dimension 2).

The folds are only 0.5 apart, so a narrower Gauss bump (delta = 3) keeps
neighbouring folds out of each other's normals.
"""

from kernelsig.bench import DIMENSION_DELTA, dimension_case

print(f"Gauss kernel with delta = {DIMENSION_DELTA}")
for k, (p, ec, es) in enumerate(dimension_case(seed=0), start=1):
    sc = ", ".join(f"{s:.3g}" for s in ec.singular_values)
    ss = ", ".join(f"{s:.3g}" for s in es.singular_values)
    print(f"point {k} at {p}: curve sv ({sc}) -> dim {ec.estimated_dimension}; "
          f"surface sv ({ss}) -> dim {es.estimated_dimension}")
