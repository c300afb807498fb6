"""The projective plane around a vertex, and the local edge operator.

Run with ``python demos/01_local_geometry.py``.
"""

from pgl3zeta.projgeom import (
    build_plane,
    count_common_neighbors,
    local_right_inverse,
    local_T,
    local_Tprime,
)

# The neighbours of a vertex form PG(2, q): points on one side, lines on the other.
P = build_plane(3)
print(f"PG(2,3): {P.size} points, {P.size} lines, {len(P.lines_through[0])} lines per point")

# An incoming edge (a line) continues straight into every point off that line.
T = local_T(P)
print("row sums of the local operator:", sorted({int(s) for s in T.row_sums()}))

# Two candidate right inverses of the same two-valued shape.
for name, Tp in (("first candidate", local_Tprime(P)), ("second candidate", local_right_inverse(P))):
    prod = T @ Tp
    print(f"{name}: T T' is the identity -> {prod.is_identity()}  (diagonal entry {prod.matrix[0][0]})")

# Counting in the radius-1 star.
r = count_common_neighbors(P)
print(f"neighbours {r.neighbours}, common neighbours of an edge {r.common_neighbours}")
print(f"most common neighbours shared by three vertices: {r.max_triple_common} (e.g. vertices {r.triple_witness})")
