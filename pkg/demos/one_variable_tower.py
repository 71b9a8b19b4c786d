#!/usr/bin/env python3
"""Walk the one-variable tower: moments <-> free cumulants, free convolution,
and the subordination reparametrizations, all in exact rational arithmetic.
"""

from fractions import Fraction as F
from math import comb

from bifree import (
    Series1,
    free_convolve1,
    moments_to_r,
    r_to_moments,
    subordination_series,
)


def show(label, values):
    print(f"  {label}: {[str(v) for v in values]}")


print("== point mass at 3/2 ==")
c = F(3, 2)
moments = [c**n for n in range(7)]
show("moments", moments)
r = moments_to_r(moments)
show("cumulants (coefficient of z^n is the (n+1)-st)", r.coeffs)
print("  -> a point mass has exactly one nonzero free cumulant\n")

print("== semicircle ==")
catalan = lambda n: comb(2 * n, n) // (n + 1)
semi = [F(catalan(n // 2)) if n % 2 == 0 else F(0) for n in range(9)]
show("moments (Catalan numbers at even orders)", semi)
show("cumulants", moments_to_r(semi).coeffs)
print("  -> the semicircle law is the free analogue of the Gaussian:")
print("     its only nonzero free cumulant is the variance\n")

print("== symmetric Bernoulli, convolved with itself ==")
bern = [F(1 - n % 2) for n in range(9)]
show("moments of (delta_-1 + delta_1)/2", bern)
show("cumulants", moments_to_r(bern).coeffs)
arcsine = free_convolve1(bern, bern)
show("moments of the free additive convolution", arcsine)
print("  -> central binomial coefficients: the arcsine law, the free analogue")
print("     of adding two independent coin flips\n")

print("== roundtrip is exact ==")
mystery = (F(1), F(2, 3), F(-1, 5), F(4), F(0), F(7, 2))
back = r_to_moments(moments_to_r(mystery), 5)
show("moments in", mystery)
show("moments out", back)
assert back == mystery
print("  -> no tolerance needed: every arrow in the tower is an identity\n")

print("== subordination ==")
m1 = [F(1), F(1), F(2), F(4), F(9), F(20), F(48)]
m2 = bern[:7]
t1, t2 = subordination_series(m1, m2, 6)
show("t1(t)", t1.coeffs)
show("t2(t)", t2.coeffs)
h1, h2 = Series1(m1), Series1(m2)
hsum = Series1(free_convolve1(m1, m2))
assert hsum == h1.compose(t1) + h2.compose(t2) - 1
assert hsum.shift_up().truncate(6) == t1 * h1.compose(t1) == t2 * h2.compose(t2)
print("  -> the moment series of the sum is reassembled exactly from the")
print("     summands evaluated along their subordination reparametrizations")
