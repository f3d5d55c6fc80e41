#!/usr/bin/env python3
"""Distance normal pairs and the zigzags through a geodesic."""
from zigzags import cross_polytope
from zigzags.coxeter import coxeter_complex, named_matrix
from zigzags.geodesic import is_distance_normal_pair, zigzags_through_geodesic

b3 = cross_polytope(3)
x, y = b3.face(["1", "2", "3"]), b3.face(["-1", "-2", "-3"])
v = is_distance_normal_pair(b3, x, y)
print("octahedron, antipodal faces: d =", v.distance, "normal =", v.pair_normal)
for z in zigzags_through_geodesic(b3, list(v.witness_geodesic)):
    print("  unique extension, vertices", b3.label_seq(z.vertex_shadow))

# s1 s2 s1 has only one reduced word, so e and s1s2s1 are not distance normal in A3
for name in ("A3", "A2"):
    s = coxeter_complex(named_matrix(name))
    w = s.group.element([0, 1, 0])
    v = is_distance_normal_pair(s.complex, s.facet(0), s.facet(w))
    print(f"Sigma({name}): e vs s1s2s1  d = {v.distance}  normal = {v.pair_normal}  ({v.reason})")
