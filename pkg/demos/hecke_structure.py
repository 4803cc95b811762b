"""Finite models of the Hecke algebras near the irregular point.

T is the triple fiber product of Lambda over Q_p, T' the subalgebra cut out
by the linear relation among first derivatives, and Tord the ordinary
quotient.  For each truncation X^Mx the fiber A/XA is computed with its
socle; a one-dimensional socle means Gorenstein.

    python demos/hecke_structure.py
"""
from eiscurve import (
    build_T,
    build_Tord,
    build_Tprime,
    congruence_module,
    fiber_and_socle,
    parse_character,
    zeta_series,
)
from eiscurve.overconvergent import l_invariants

phi = parse_character("kronecker:-4")
p, prec = 5, 30
L, Linv = l_invariants(phi, p, prec)

print(f"{'Mx':>3} {'model':>5} {'dim':>4} {'fiber':>6} {'socle':>6}  Gorenstein")
for mx in range(3, 7):
    for model in (build_T(mx, p), build_Tprime(L, Linv, mx), build_Tord(mx, p)):
        r = fiber_and_socle(model)
        print(f"{mx:>3} {r.label:>5} {r.dim:>4} {r.fiber_dim:>6} {r.socle_dim:>6}  {r.gorenstein}")

zeta = zeta_series(phi, p, mx=6, prec=prec)
cong = congruence_module(zeta)
print("\ncongruence module: length", cong.length_quotient,
      "= ord_X zeta_phi" if cong.lengths_match else "!= ord_X zeta_phi")
print("unit part of zeta_phi/X at 0:", cong.unit_at_zero)
