"""The Π-projective plane as a quotient of P^{2|3} by a free odd action.

Run with ``python3 demos/pi_projective_plane.py``.
"""
from superquot.atlas import (Iso, build_CY_truncation, build_projective_superspace, global_freeness, iso_check,
                             pi_action_field, pi_weights, quotient_atlas, truncate_atlas)
from superquot.cohomology import cech_cohomology

X = pi_weights(build_projective_superspace(2, 3))
v = pi_action_field(X)
print(f"{X.name}: {len(X)} charts, odd field induced by the Π-symmetry")
for i, c in enumerate(X.charts):
    print(f"  chart {c.label}: v =", ", ".join(f"{g} -> {f}" for g, f in sorted(v.fields[i].images.items())))

# a witness theta with v(theta) = 1 on every chart makes the action free
free = global_freeness(X, v)
for i, w in enumerate(free.witnesses):
    print(f"  chart {X.charts[i].label}: theta = {w}")

Q = quotient_atlas(X, v)
print(f"\nquotient: {len(Q)} charts, generators per chart:")
for i, q in enumerate(Q.quotients):
    print(f"  chart {i}: {q.ring.even} | {q.ring.odd}")

t = cech_cohomology(Q, "O", 1)
print(f"\nCech on the quotient: dim H^0(O)^+ = {t.get(0, 0)}, dim H^1(O)^- = {t.get(1, 1)}")
up = cech_cohomology(X, "O", 1)
print(f"Cech upstairs:        dim H^1(O) = {up.get(1, 0)}|{up.get(1, 1)}")

# the third infinitesimal neighbourhood is the CY truncation built from the cotangent bundle
r = iso_check(truncate_atlas(Q, 3), build_CY_truncation(2), D=3)
print(f"\ntruncate(P²_Π, 3) vs CY(2): {type(r).__name__}")
if isinstance(r, Iso):
    print(f"  chart order {r.order}")
