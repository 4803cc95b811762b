"""The trivial zero of L_p(phi*omega, s) at s = 0 and its derivative.

For phi = chi_{-4} and p = 5 the Euler factor 1 - phi(p) vanishes, so
L_p(phi*omega, 0) = 0.  The derivative there is governed by the
L-invariant built from a generator of a power of a prime above p in
Q(sqrt(-1)).

    python demos/gross_formula.py
"""
from eiscurve import (
    ferrero_greenberg_check,
    gross_check,
    l_invariant,
    lp_jet,
    parse_character,
    split_prime_power_generator,
)

phi = parse_character("kronecker:-4")
p, prec = 5, 30

jet = lp_jet(phi, p, ms=3, prec=prec)
print("L_p(phi*omega, 0)  =", jet.value)
print("L_p'(phi*omega, 0) =", jet.derivative)

# x^2 + 4y^2 = 4 p^h with h the class number
gen = split_prime_power_generator(-4, p)
print("\nclass number h =", gen.class_number, " generator (x, y) =", gen.generator)
L = l_invariant(phi, p, prec)
print("L(phi) =", L)

rep = gross_check(phi, p, prec)
print("\n-L(phi) L(phi, 0)  =", rep.rhs)
print(f"agreement: {rep.digits} digits (threshold {rep.threshold})")

fg = ferrero_greenberg_check(phi, p, prec)
print("\nzeta_phi has a zero of order", fg.ord_x, "at X = 0;"
      " ord_p zeta_phi'(0) =", fg.certified_valuation)
