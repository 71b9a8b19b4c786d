#!/usr/bin/env python3
"""Systems whose left and right variables commute up to a rank-one term:
hyponormal-style shift pairs, Fock-space field pairs, moment completion by
the two-bands recursion, and convolution at the system level.
"""

from fractions import Fraction as F

from bifree import (
    LEFT,
    RIGHT,
    ProductState,
    biconvolve_rank1,
    extract_system,
    gaussian_pair_rep,
    mixed_moment,
    shift_pair_rep,
    sum_two_bands_table,
)
from bifree.io import to_json

print("== a pair built from the truncated unilateral shift ==")
omega = [[1, 2], [3, 1]]  # pair (S + 2 S*, 3 S + S*); det = -5
rep = shift_pair_rep(6, omega)
system = extract_system(rep, cap=6)
print("  commutation coefficient lambda =", system.coefficient(0, 0),
      "(minus the determinant of the mixing matrix)")

word = [(RIGHT, 0), (LEFT, 0)]  # the product b a
print("  phi(ab) =", system.phi((0,), (0,)))
print("  phi(ba) =", mixed_moment(system, word),
      "= phi(ab) - lambda, by one commutation")

word = [(LEFT, 0), (RIGHT, 0), (LEFT, 0)]
print("  phi(aba) =", mixed_moment(system, word),
      "= phi(a^2 b) - lambda phi(a) =",
      system.phi((0, 0), (0,)) - system.coefficient(0, 0) * system.phi((0,), ()))

print("\n  every mixed word reduces to two-bands moments; against the model:")
for sides in [(LEFT, RIGHT, LEFT, RIGHT), (RIGHT, RIGHT, LEFT, LEFT, RIGHT)]:
    word = [(s, 0) for s in sides]
    rendered = " ".join("a" if s == LEFT else "b" for s in sides)
    print(f"    phi({rendered}) recursion={mixed_moment(system, word)}",
          f"model={rep.moment(word)}")
    assert mixed_moment(system, word) == rep.moment(word)

print("\n== a field-operator pair on a truncated Fock space ==")
gauss = gaussian_pair_rep([1, 2], [1, 0], [0, 1], [2, 1], fock_cutoff=4)
gsystem = extract_system(gauss, cap=6)
print("  lambda =", gsystem.coefficient(0, 0),
      "(difference of the two creation/annihilation pairings)")
print("  phi(z_left) =", gsystem.phi((0,), ()), " phi(z_left z_right) =",
      gsystem.phi((0,), (0,)))

print("\n== convolution at the system level ==")
other = extract_system(shift_pair_rep(6, [[1, 1], [-1, 1]]), cap=6)
combined = biconvolve_rank1(system, other)
print("  lambdas add:", system.coefficient(0, 0), "+", other.coefficient(0, 0),
      "=", combined.coefficient(0, 0))
model_sum = ProductState([rep, shift_pair_rep(6, [[1, 1], [-1, 1]])], max_word_len=6)
assert combined.table((3, 3)) == sum_two_bands_table(model_sum, (3, 3))
print("  and the convolved two-bands table matches the free-product model")

print("\n== the same data as a JSON document (CLI input) ==")
small = extract_system(shift_pair_rep(4, omega), cap=3)
print("\n".join("  " + line for line in to_json(small).splitlines()[:14]))
print("  ...")
print("  try: bifree moment system.json --word 'b0 a0'")
