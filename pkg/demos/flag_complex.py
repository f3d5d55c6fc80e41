#!/usr/bin/env python3
"""Generalized zigzags of regular polytopes and their flag complexes."""
import itertools

from zigzags.polytope import generalized_lengths, named_polytope, prop_3_6_check

for name in ["simplex:3", "cross:3", "cube:3", "icosahedron", "24-cell"]:
    p = named_polytope(name)
    lengths = generalized_lengths(p)
    rep = prop_3_6_check(p)
    print(f"{name:<12} f={p.f_vector}  delta-lengths={sorted(set(itertools.chain(*lengths.values())))}"
          f"  flag complex: {rep.flag_complex_zigzags} zigzags of length {rep.flag_complex_length}")
