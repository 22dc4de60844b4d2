"""Odd connections on line bundles: curvature as an obstruction to descent.

Run with ``python3 demos/connections.py``.
"""
from superquot.atlas import (build_projective_superspace, pi_action_field, product_atlas, product_field,
                             quotient_atlas)
from superquot.linebundle import (Obstructed, VConnection, connection_solve, curvature, external_product,
                                  flat_connection, flat_descend, standard_cocycles)

X = build_projective_superspace(1, 2)
v = pi_action_field(X)

n = connection_solve(standard_cocycles(X, -1), v, D=1)
print("O(-1) on P^{1|2}: phi =", [str(p) for p in n.phi], " curvature", curvature(n).constant)
for k in (-3, -2, 1, 2, 3):
    print(f"  O({k}): curvature {curvature(connection_solve(standard_cocycles(X, k), v)).constant}")

# a bundle descends to the quotient exactly when some connection is flat
Q = quotient_atlas(X, v)
for k in (0, 1):
    r = flat_descend(standard_cocycles(X, k), v, Q)
    print(f"descent of O({k}):", "obstructed" if isinstance(r, Obstructed) else "descends")

P = product_atlas(X, X)
w = product_field(P, v, v)
print("\nflat connections for the diagonal action on P^{1|2} x P^{1|2}:")
for n1 in range(-2, 3):
    row = []
    for n2 in range(-2, 3):
        r = flat_connection(external_product(P, standard_cocycles(X, n1), standard_cocycles(X, n2)), w)
        row.append("flat" if isinstance(r, VConnection) else str(r.curvature))
    print(f"  n1={n1:+d}: " + "  ".join(f"{c:>4}" for c in row))
