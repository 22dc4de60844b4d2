"""Derive projectivity and embeddability verdicts from computed and cited facts.

Run with ``python3 demos/verdicts.py``.
"""
from superquot import criteria as cr

db = cr.load_catalog()
print(f"{len(db)} facts after closure\n")

for space, claim in [(cr.G1122, "not-Pi-projective"), (cr.PROD, "not-1|1-embeddable"),
                     (cr.XP2, "Pi-projective"), ("P^{5|5}", "Pi-projective")]:
    v = cr.verdict(db, space, claim)
    print(v.render())
    if v:
        print(f"rules {', '.join(v.rules_used)}; replay {'ok' if cr.replay(v) else 'FAILED'}")
    print()

# every computed leaf reruns its check
for name in ("cohomology.cech:G(1|1,2|2):O", "linebundle.flat_connection:P^{2|3}:O(n)"):
    ok, detail = cr.CHECKS[name].run()
    print(f"{name}: {'ok' if ok else 'FAILED'} ({detail})")
