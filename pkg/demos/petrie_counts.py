#!/usr/bin/env python3
"""Zigzag counts for simplices, cross-polytopes and a few bipyramids."""
import math

from zigzags import bipyramid, cross_polytope, simplex, zigzag_predicates

print(f"{'complex':<14}{'flags':>9}{'zigzags':>9}{'length':>8}  simple")
rows = [(f"alpha_{n}", simplex(n)) for n in range(2, 7)]
rows += [(f"beta_{n}", cross_polytope(n)) for n in range(2, 6)]
rows += [(f"bipyramid({m})", bipyramid(m)) for m in (5, 6, 7)]
for name, cx in rows:
    s = zigzag_predicates(cx)
    lengths = sorted(set(s.lengths))
    print(f"{name:<14}{s.num_flags:>9}{s.count:>9}{str(lengths):>8}  {s.z_simple}")

# every flag sits in exactly one zigzag or its reverse
cx = bipyramid(6)
s = zigzag_predicates(cx)
print("\nbipyramid(6):", sum(2 * l for l in s.lengths), "flags in zigzags, n!N =",
      math.factorial(cx.rank) * cx.num_facets)
