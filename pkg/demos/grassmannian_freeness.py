"""Freeness of the odd symmetry on supergrassmannians, and H^1 of the graded pieces.

Run with ``python3 demos/grassmannian_freeness.py``.
"""
from superquot.atlas import GlobalFree, build_supergrassmannian, global_freeness, pi_action_field
from superquot.cohomology import h1_vanishing_report

for a, b, m, n in [(1, 0, 2, 2), (1, 0, 3, 3), (1, 1, 2, 2), (2, 1, 3, 3)]:
    G = build_supergrassmannian(a, b, m, n)
    r = global_freeness(G, pi_action_field(G))
    if isinstance(r, GlobalFree):
        print(f"G({a}|{b},{m}|{n}): free, theta on chart 0 = {r.witnesses[0]}")
    else:
        pt = ", ".join(f"{g}={x}" for g, x in sorted(getattr(r, "point", {}).items())) or "origin"
        print(f"G({a}|{b},{m}|{n}): {type(r).__name__} on chart {r.chart} at {pt}")

# when a = b the action has a fixed point; the next question is whether H^1(O)^- vanishes
print()
print(h1_vanishing_report(2).render())
print()
print("twisted by O(-1) x O(1) on the reduced space:")
print(h1_vanishing_report(2, (-1, 1)).render())
