#!/usr/bin/env python3
"""Coxeter complexes: zigzag length is n*h and the count is |W|(n-1)!/2h."""
from zigzags.coxeter import named_matrix, verify_prop_3_5

print(f"{'W':<8}{'|W|':>6}{'h':>4}{'zigzags':>9}{'expected':>10}{'length':>8}")
for name in ["A2", "A3", "A4", "B3", "B4", "D4", "F4", "H3", "I2(5)", "I2(8)", "A1"]:
    rep = verify_prop_3_5(named_matrix(name), strict=False)
    mark = "" if rep.passed else "   <- rank one: the only zigzag is its own reverse"
    print(f"{name:<8}{rep.order:>6}{rep.coxeter_number:>4}{rep.zigzag_count:>9}"
          f"{rep.expected_count:>10g}{rep.zigzag_lengths[0]:>8}{mark}")
