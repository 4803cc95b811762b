"""The weight-one generalized eigenspace at an irregular point.

Builds f, f_dag(phi,1) and f_dag(1,phi) for phi = chi_{-3}, p = 7 and
checks the action of U_p on them, the decomposition of the classical
Eisenstein series, and the second construction of the f_dag series.

    python demos/eigenspace.py
"""
from eiscurve import build_basis, eigenspace_checks, parse_character
from eiscurve.overconvergent import (
    classical_decomposition,
    cuspidal_kernel_dimension,
    dual_construction_check,
    l_invariants,
)

phi = parse_character("kronecker:-3")
p, prec, nmax = 7, 30, 400

L, Linv = l_invariants(phi, p, prec)
B = build_basis(phi, p, nmax, prec, L, Linv)

print("first q-coefficients")
for n in range(1, 9):
    print(f"  n={n}:  f={B.f[n]}  f_dag(phi,1)={B.f_phi_one[n]}")

for title, rep in (
    ("U_p action", eigenspace_checks(B, threshold=20)),
    ("classical decomposition", classical_decomposition(B, threshold=20)),
    ("dual construction", dual_construction_check(B, threshold=20)),
):
    status = "ok" if rep.passed else "FAILED " + ", ".join(rep.failures())
    print(f"\n{title}: {status} (min {rep.min_digits} digits)")

print("\ndimension of the cuspidal part:", cuspidal_kernel_dimension(B))
