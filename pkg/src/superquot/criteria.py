"""Forward-chaining over provenance-tagged facts about projectivity and embeddability.

A fact is a per-space atom.  Each one is either *computed* (a registered
check in this package recomputes it), *asserted* (a citation string is kept
verbatim) or *derived* (a rule fired on earlier facts).  Verdicts carry the
rule applications that produced them and can be replayed.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

PREDICATES = (
    "projective", "non-projective", "Pic-trivial", "H1-O-minus-zero", "H1-O-minus-dim≤1",
    "H0-O-plus-is-k", "H1-L-minus-zero-for-all-L", "exists-torsor-projective-total",
    "exists-torsor-H1-map-zero", "closed-subscheme-of", "Pi-projective", "not-Pi-projective",
    "1|1-embeddable", "not-1|1-embeddable", "grassmannian-embeddable",
    "torsor-total-non-projective", "all-torsors-total-non-projective",
    "exists-fibration-projective-total",
)

NEGATIONS = (
    ("projective", "non-projective"),
    ("Pi-projective", "not-Pi-projective"),
    ("1|1-embeddable", "not-1|1-embeddable"),
    ("exists-torsor-projective-total", "all-torsors-total-non-projective"),
)

# results that cannot be reached at desk scale; they may only enter as assertions
ASSERT_ONLY = ("grassmannian-non-projectivity", "grassmannian-Pic", "flag-fibration", "serre-duality")


class InconsistentFacts(ValueError):
    def __init__(self, a: "Fact", b: "Fact"):
        super().__init__(f"conflicting facts:\n  {a.render()}\n  {b.render()}")
        self.facts = (a, b)


@dataclass(frozen=True)
class Fact:
    space: str
    predicate: str
    provenance: str                 # computed | asserted | derived
    ref: str                        # check name, citation, or rule name
    other: str | None = None        # ambient space for closed-subscheme-of
    premises: tuple = ()            # keys of premise facts (derived only)
    scale: str = "full"             # full | reduced | stretch
    supports: tuple = ()            # citations a computed fact also leans on
    category: str = ""
    support_category: str = ""      # topic of those citations

    def __post_init__(self):
        if self.predicate not in PREDICATES:
            raise ValueError(f"unknown predicate {self.predicate!r}")
        if self.provenance not in ("computed", "asserted", "derived"):
            raise ValueError(f"unknown provenance {self.provenance!r}")
        if (self.predicate == "closed-subscheme-of") != (self.other is not None):
            raise ValueError("closed-subscheme-of needs exactly one ambient space")
        if self.provenance == "asserted" and not self.ref:
            raise ValueError("asserted facts need a citation")
        if self.provenance == "computed" and self.category in ASSERT_ONLY:
            raise ValueError(f"{self.category} results enter only as assertions")

    @property
    def key(self) -> tuple:
        return (self.space, self.predicate, self.other)

    def render(self) -> str:
        head = f"{self.predicate}({self.space}" + (f", {self.other})" if self.other else ")")
        if self.provenance == "asserted":
            return f"{head}  [asserted: {self.ref}]"
        if self.provenance == "computed":
            tail = f"  [computed: {self.ref}" + (f", {self.scale} scale" if self.scale != "full" else "") + "]"
            for s in self.supports:
                tail += f"\n      with asserted: {s}"
            return head + tail
        return f"{head}  [derived by {self.ref}]"

    def to_doc(self) -> dict:
        d = {"space": self.space, "predicate": self.predicate, "provenance": self.provenance, "ref": self.ref}
        if self.other is not None:
            d["other"] = self.other
        if self.premises:
            d["premises"] = [list(k) for k in self.premises]
        if self.scale != "full":
            d["scale"] = self.scale
        if self.supports:
            d["supports"] = list(self.supports)
        if self.category:
            d["category"] = self.category
        if self.support_category:
            d["support_category"] = self.support_category
        return d

    @classmethod
    def from_doc(cls, d: dict) -> "Fact":
        return cls(d["space"], d["predicate"], d["provenance"], d["ref"], d.get("other"),
                   tuple(tuple(k) for k in d.get("premises", ())), d.get("scale", "full"),
                   tuple(d.get("supports", ())), d.get("category", ""), d.get("support_category", ""))


def asserted(space, predicate, citation, other=None, category="") -> Fact:
    return Fact(space, predicate, "asserted", citation, other, category=category)


def computed(space, predicate, check, other=None, scale="full", supports=(), support_category="") -> Fact:
    if check not in CHECKS:
        raise KeyError(f"no registered check {check!r}")
    return Fact(space, predicate, "computed", check, other, scale=scale, supports=tuple(supports),
                support_category=support_category)


@dataclass(frozen=True)
class Rule:
    """``scope`` is ``local`` (all on one space), ``up`` (premises on a closed
    subscheme, conclusion on the ambient space) or ``down`` (the reverse)."""

    name: str
    premises: tuple
    conclusion: str
    citation: str
    scope: str = "local"

    def render(self) -> str:
        arrow = {"local": "", "up": " on X, X closed in Y => Y:", "down": " on Y, X closed in Y => X:"}[self.scope]
        return f"{self.name}: {{{', '.join(self.premises)}}}{arrow} => {self.conclusion}"


def builtin_rules() -> list[Rule]:
    return [
        Rule("R1", ("projective",), "Pi-projective",
             "every projective superscheme is Π-projective"),
        Rule("R2", ("H0-O-plus-is-k", "exists-torsor-projective-total", "exists-torsor-H1-map-zero"),
             "Pi-projective", "Then X is Π-projective"),
        Rule("R3", ("non-projective", "H1-O-minus-zero"), "not-Pi-projective",
             "then X is not Π-projective"),
        Rule("R4", ("Pic-trivial", "H1-O-minus-zero"), "not-1|1-embeddable",
             "Then X is not 1|1-embeddable"),
        Rule("R5", ("H1-L-minus-zero-for-all-L", "non-projective"), "not-1|1-embeddable",
             "Then X is not 1|1-embeddable"),
        Rule("R6", ("Pic-trivial", "H0-O-plus-is-k", "H1-O-minus-dim≤1", "torsor-total-non-projective"),
             "not-1|1-embeddable", "has dimension ≤ 1"),
        Rule("R7", ("not-1|1-embeddable",), "not-1|1-embeddable",
             "This embedding induces a closed embedding of the quotients", scope="up"),
        Rule("R8", ("Pi-projective",), "exists-torsor-projective-total",
             "there exists an A^{0|1}-torsor over X whose total space is projective"),
        Rule("R9", ("1|1-embeddable",), "exists-fibration-projective-total",
             "an A^{0|1}-fibration over X whose total space is projective"),
    ]


def supplementary_rules() -> list[Rule]:
    """Implications used inside the proofs that the nine headline rules do not cover."""
    return [
        Rule("S1", ("Pic-trivial", "all-torsors-total-non-projective"), "not-1|1-embeddable",
             "it remains to check that A^{0|1}-torsors over Y are not projective"),
        Rule("S2", ("not-Pi-projective",), "not-Pi-projective",
             "Hence, G(1|1,n|n) is not Π-projective for n>1", scope="up"),
        Rule("S3", ("non-projective",), "non-projective",
             "which implies that the quotient contains P²_Π as a sub-superscheme", scope="up"),
        Rule("S4", ("Pi-projective",), "Pi-projective",
             "Furthermore, if f is a closed embedding then so is f~", scope="down"),
    ]


def all_rules() -> list[Rule]:
    return builtin_rules() + supplementary_rules()


class FactsDB:
    def __init__(self, facts=(), rules: list[Rule] | None = None):
        self.facts: dict = {}
        self.rules = all_rules() if rules is None else list(rules)
        for f in facts:
            self.add_fact(f)

    def __contains__(self, key) -> bool:
        return key in self.facts

    def __len__(self):
        return len(self.facts)

    def get(self, space, predicate, other=None) -> Fact | None:
        return self.facts.get((space, predicate, other))

    def add_fact(self, fact: Fact) -> "FactsDB":
        """Add a fact; an existing fact with the same key is kept (monotone)."""
        if fact.key in self.facts:
            return self
        for a, b in NEGATIONS:
            for p, q in ((a, b), (b, a)):
                if fact.predicate == p:
                    clash = self.get(fact.space, q)
                    if clash is not None:
                        raise InconsistentFacts(clash, fact)
        self.facts[fact.key] = fact
        return self

    def sorted_facts(self) -> list[Fact]:
        return [self.facts[k] for k in sorted(self.facts, key=lambda k: (k[0], k[1], k[2] or ""))]

    def spaces(self) -> list[str]:
        return sorted({f.space for f in self.facts.values()} | {f.other for f in self.facts.values() if f.other})

    def _closed_pairs(self):
        return sorted((f.space, f.other) for f in self.facts.values() if f.predicate == "closed-subscheme-of")

    def _fire(self, rule: Rule) -> list[Fact]:
        out = []
        if rule.scope == "local":
            for s in self.spaces():
                if all((s, p, None) in self.facts for p in rule.premises):
                    out.append((s, [(s, p, None) for p in rule.premises]))
        else:
            for x, y in self._closed_pairs():
                src, dst = (x, y) if rule.scope == "up" else (y, x)
                if all((src, p, None) in self.facts for p in rule.premises):
                    out.append((dst, [(src, p, None) for p in rule.premises] + [(x, "closed-subscheme-of", y)]))
        return [Fact(s, rule.conclusion, "derived", rule.name, premises=tuple(prem)) for s, prem in out]

    def apply_rules(self) -> "FactsDB":
        """Forward chaining to a fixpoint; the consistency check runs on every addition."""
        bound = len(PREDICATES) * max(1, len(self.spaces())) + 1
        for _ in range(bound):
            new = []
            for rule in self.rules:
                for f in self._fire(rule):
                    if f.key not in self.facts:
                        new.append(f)
            if not new:
                return self
            for f in new:
                self.add_fact(f)
        raise RuntimeError("closure did not reach a fixpoint")

    def trace(self, key) -> list[Fact]:
        """Derived facts needed for ``key``, premises before conclusions."""
        seen, order = set(), []

        def visit(k):
            if k in seen:
                return
            seen.add(k)
            f = self.facts[k]
            for p in f.premises:
                visit(p)
            order.append(f)
        visit(key)
        return order

    def to_doc(self) -> dict:
        return {"facts": [f.to_doc() for f in self.sorted_facts()]}

    @classmethod
    def from_doc(cls, doc: dict) -> "FactsDB":
        return cls(Fact.from_doc(d) for d in doc["facts"])

    def dumps(self) -> str:
        return json.dumps(self.to_doc(), ensure_ascii=False, sort_keys=True, indent=1)


@dataclass
class Verdict:
    space: str
    claim: str
    steps: list          # facts in dependency order; leaves are computed or asserted

    @property
    def leaves(self) -> list[Fact]:
        return [f for f in self.steps if f.provenance != "derived"]

    @property
    def rules_used(self) -> list[str]:
        return [f.ref for f in self.steps if f.provenance == "derived"]

    def render(self) -> str:
        by_key = {f.key: f for f in self.steps}
        lines = []

        def show(f: Fact, depth: int):
            pad = "  " * depth
            text = f.render().replace("\n", "\n" + pad)
            lines.append(pad + text)
            for p in f.premises:
                show(by_key[p], depth + 1)
        show(self.steps[-1], 0)
        return "\n".join(lines)


@dataclass
class Undetermined:
    space: str
    claim: str

    def __bool__(self):
        return False

    def render(self) -> str:
        return f"{self.claim}({self.space}): undetermined"


def verdict(db: FactsDB, space: str, claim: str):
    f = db.get(space, claim)
    if f is None:
        return Undetermined(space, claim)
    return Verdict(space, claim, db.trace(f.key))


def replay(v: Verdict, rules: list[Rule] | None = None) -> bool:
    """Re-derive the claim from the leaves only, step by step."""
    rules = {r.name: r for r in (all_rules() if rules is None else rules)}
    have = {f.key for f in v.leaves}
    for f in v.steps:
        if f.provenance != "derived":
            continue
        rule = rules.get(f.ref)
        if rule is None or rule.conclusion != f.predicate:
            return False
        fresh = FactsDB([g for g in v.steps if g.key in have], rules=[rule])
        if f not in rule_outputs(fresh, rule):
            return False
        have.add(f.key)
    return (v.space, v.claim, None) in have


def rule_outputs(db: FactsDB, rule: Rule) -> list[Fact]:
    return db._fire(rule)


# ---------------------------------------------------------------- computed checks

@dataclass(frozen=True)
class Check:
    name: str
    description: str
    run: Callable[[], tuple]
    stretch: bool = False


CHECKS: dict[str, Check] = {}


def _register(name, description, stretch=False):
    def deco(fn):
        CHECKS[name] = Check(name, description, fn, stretch)
        return fn
    return deco


@lru_cache(maxsize=None)
def _p23():
    from .atlas import build_projective_superspace, pi_action_field, pi_weights
    X = pi_weights(build_projective_superspace(2, 3))
    return X, pi_action_field(X)


@lru_cache(maxsize=None)
def _p2pi():
    from .atlas import quotient_atlas
    X, v = _p23()
    return quotient_atlas(X, v)


@_register("cohomology.cech:G(1|1,2|2):O", "Cech H^1(O)^- = 0 on the full G(1|1,2|2) atlas, cross-checked on gr pieces")
def _h1_g1122():
    from .atlas import build_supergrassmannian
    from .cohomology import cech_cohomology, h1_vanishing_report
    t = cech_cohomology(build_supergrassmannian(1, 1, 2, 2), "O", 1)
    rep = h1_vanishing_report(2)
    ok = t.get(1, 1) == 0 and t.is_stable(1, 1) and rep.vanishes
    return ok, f"Cech dim H^1(O)^- = {t.get(1, 1)} (stable: {t.is_stable(1, 1)}); gr pieces vanish: {rep.vanishes}"


@_register("cohomology.cech:P2Pi:O", "Cech on the quotient atlas of P^{2|3}: H^0(O)^+ = 1, H^1(O)^- = 1")
def _p2pi_cech():
    from .cohomology import cech_cohomology
    t = cech_cohomology(_p2pi(), "O", 1)
    ok = t.get(0, 0) == 1 and t.get(1, 1) == 1 and t.fully_stable
    return ok, f"H^0(O)^+ = {t.get(0, 0)}, H^1(O)^- = {t.get(1, 1)}, stable: {t.fully_stable}"


@_register("cohomology.cech:P^{2|3}:O", "Cech on P^{2|3}: H^1(O) = 0, so the map from H^1 of the quotient is zero")
def _p23_cech():
    from .cohomology import cech_cohomology
    X, _ = _p23()
    t = cech_cohomology(X, "O", 1)
    ok = t.get(1, 0) == 0 and t.get(1, 1) == 0 and t.get(0, 0) == 1 and t.fully_stable
    return ok, f"H^0(O)^+ = {t.get(0, 0)}, H^1(O) = {t.get(1, 0)}|{t.get(1, 1)}, stable: {t.fully_stable}"


@_register("cohomology.kunneth:P^{2|3}xP^{2|3}:O", "H^1(O) of P^{2|3} x P^{2|3} vanishes by Kunneth from the factor")
def _p23sq():
    ok, detail = _p23_cech()
    return ok, "factor: " + detail


@_register("cohomology.kunneth:P^{2|3}xP^{2|3}:H0", "H^0(O) of P^{2|3} x P^{2|3} is k by Kunneth, so the quotient's is too")
def _p23sq_h0():
    ok, detail = _p23_cech()
    return ok, "factor: " + detail


@_register("cohomology.cech:(P^{2|3}xP^{2|3})/diag:O", "H^0(O)^+ = 1 on the diagonal quotient via ker(v1+v2) upstairs",
           stretch=True)
def _diag_h0():
    from .atlas import product_atlas, product_field
    from .cohomology import cech_cohomology
    X, v = _p23()
    P = product_atlas(X, X)
    w = product_field(P, v, v)
    t = cech_cohomology(P, "ker", 0, v=w, degrees=(0,))
    return t.get(0, 0) == 1 and t.is_stable(0, 0), f"H^0(ker v)^+ = {t.get(0, 0)}"


@_register("cohomology.cech:G(1|0,3|3)/v:O", "H^0(O)^+ = 1 on the quotient atlas of G(1|0,3|3)")
def _g1033_h0():
    from .atlas import build_supergrassmannian, pi_action_field, pi_weights, quotient_atlas
    from .cohomology import cech_cohomology
    G = pi_weights(build_supergrassmannian(1, 0, 3, 3))
    t = cech_cohomology(quotient_atlas(G, pi_action_field(G)), "O", 1)
    return t.get(0, 0) == 1 and t.is_stable(0, 0), f"H^0(O)^+ = {t.get(0, 0)}"


@_register("linebundle.flat_connection:P^{2|3}:O(n)", "O(n), 0 < |n| <= 2, on P^{2|3} has no flat v-connection (curvature -n)")
def _p23_pic():
    from .linebundle import Obstructed, flat_connection, standard_cocycles
    X, v = _p23()
    out = {n: flat_connection(standard_cocycles(X, n), v) for n in (-2, -1, 1, 2)}
    ok = all(isinstance(r, Obstructed) and r.curvature == -n for n, r in out.items())
    return ok, "curvatures " + ", ".join(f"O({n}): {r.curvature}" for n, r in out.items() if isinstance(r, Obstructed))


@_register("linebundle.flat_connection:P^{1|2}:O(n)", "Ber^n on P^{1|2}, 0 < |n| <= 3, has no flat v-connection")
def _p12_pic():
    from .atlas import build_projective_superspace, pi_action_field, pi_weights
    from .linebundle import Obstructed, flat_connection, standard_cocycles
    X = pi_weights(build_projective_superspace(1, 2))
    v = pi_action_field(X)
    out = {n: flat_connection(standard_cocycles(X, n), v) for n in (-3, -2, -1, 1, 2, 3)}
    ok = all(isinstance(r, Obstructed) and r.curvature != 0 for r in out.values())
    return ok, "obstructed for all 0 < |n| <= 3"


@_register("linebundle.flat_connection:P^{1|2}xP^{1|2}:O(n1,n2)",
           "O(n1) x O(n2) has a flat (v1+v2)-connection iff n1 + n2 = 0, |n_i| <= 2")
def _prod_flat():
    from .atlas import build_projective_superspace, pi_action_field, pi_weights, product_atlas, product_field
    from .linebundle import VConnection, external_product, flat_connection, standard_cocycles
    X = pi_weights(build_projective_superspace(1, 2))
    v = pi_action_field(X)
    P = product_atlas(X, X)
    w = product_field(P, v, v)
    bad = []
    for a in range(-2, 3):
        for b in range(-2, 3):
            r = flat_connection(external_product(P, standard_cocycles(X, a), standard_cocycles(X, b)), w)
            if isinstance(r, VConnection) != (a + b == 0):
                bad.append((a, b))
    return not bad, "flat exactly on n1 + n2 = 0" if not bad else f"mismatch at {bad}"


@_register("atlas.iso_check:truncate(P2Pi,3)~CY(2)", "the CY truncation is isomorphic to truncate(P²_Π, 3), a closed subscheme of P²_Π")
def _cy_iso():
    from .atlas import Iso, build_CY_truncation, iso_check, truncate_atlas
    r = iso_check(truncate_atlas(_p2pi(), 3), build_CY_truncation(2), D=3)
    return isinstance(r, Iso), f"{type(r).__name__}"


@_register("homological.freeness:G(2|1,4|4)", "the odd symmetry field on G(2|1,4|4) is free chart by chart", stretch=True)
def _g2144_free():
    from .atlas import GlobalFree, build_supergrassmannian, global_freeness, pi_action_field
    X = build_supergrassmannian(2, 1, 4, 4, overlaps=False, certify=False)
    r = global_freeness(X, pi_action_field(X, check=False), 3)
    return isinstance(r, GlobalFree), type(r).__name__


def recompute(fact: Fact) -> tuple:
    if fact.provenance != "computed":
        raise ValueError("only computed facts recompute")
    return CHECKS[fact.ref].run()


# ---------------------------------------------------------------- catalog

@dataclass
class CatalogEntry:
    space: str
    claim: str
    anchor: str
    facts: list
    notes: str = ""
    extra: list = field(default_factory=list)    # computed checks that back notes only

    @property
    def stretch(self) -> bool:
        return any(CHECKS[f.ref].stretch for f in self.facts if f.provenance == "computed") or \
            any(CHECKS[c].stretch for c in self.extra)


G1122 = "G(1|1,2|2)"
G1133 = "G(1|1,3|3)"
P2PI = "P²_Π"
P23 = "P^{2|3}"
PROD = "P²_Π×P²_Π"
DIAG = "(P^{2|3}×P^{2|3})/A^{0|1}"
G1033Q = "G(1|0,3|3)/A^{0|1}"
G2144Q = "G(2|1,4|4)/A^{0|1}"
G3255Q = "G(3|2,5|5)/A^{0|1}"
GG = "G(1|1,3|3)×G(1|1,3|3)"
XS = "X(S,V,c₁(L))"
XP2 = "X(P²,Ω¹,c₁(O(1)))"
XSO = "X(S,Ω¹_S,c₁(L))"
XPN = "X(Pᴺ,Ω¹,c₁(O(1)))"
PNPI = "Pᴺ_Π"
XSE = "X(S,V,e), H¹(S,V)≠0"


def _p2pi_facts() -> list[Fact]:
    """P²_Π is Π-projective through its standard torsor, with every cohomological premise computed."""
    return [
        computed(P2PI, "H0-O-plus-is-k", "cohomology.cech:P2Pi:O"),
        asserted(P2PI, "exists-torsor-projective-total",
                 "the standard A^{0|1}-torsor P^{2|3}→P²_Π has projective total space P^{2|3}"),
        computed(P2PI, "exists-torsor-H1-map-zero", "cohomology.cech:P^{2|3}:O"),
    ]


def catalog() -> list[CatalogEntry]:
    return [
        CatalogEntry(G1122, "not-Pi-projective", "G(1|1,2|2) is not Π-projective", [
            asserted(G1122, "non-projective", "We know that X is not projective",
                     category="grassmannian-non-projectivity"),
            computed(G1122, "H1-O-minus-zero", "cohomology.cech:G(1|1,2|2):O"),
        ]),
        CatalogEntry(G1133, "not-Pi-projective", "G(1|1,n|n) is not Π-projective for n>1", [
            asserted(G1122, "non-projective", "We know that X is not projective",
                     category="grassmannian-non-projectivity"),
            computed(G1122, "H1-O-minus-zero", "cohomology.cech:G(1|1,2|2):O"),
            asserted(G1122, "closed-subscheme-of", "a p-invariant summand V = V₁⊕V₂ embeds G(1|1,V₁) in G(1|1,V)",
                     other=G1133),
        ], notes="n = 3 stands for the family n > 1"),
        CatalogEntry(DIAG, "Pi-projective", "the quotient is Π-projective", [
            computed(DIAG, "H0-O-plus-is-k", "cohomology.kunneth:P^{2|3}xP^{2|3}:H0"),
            asserted(DIAG, "exists-torsor-projective-total",
                     "P^{2|3}×P^{2|3} is projective (Segre) and is a torsor over the diagonal quotient"),
            computed(DIAG, "exists-torsor-H1-map-zero", "cohomology.kunneth:P^{2|3}xP^{2|3}:O"),
        ], notes="m = n = 3"),
        CatalogEntry(DIAG, "non-projective", "contains P²_Π as a sub-superscheme", [
            asserted(P2PI, "non-projective", "Since P²_Π is not projective"),
            asserted(P2PI, "closed-subscheme-of",
                     "we can find an embedding P^{2|3}→P^{m−1|m}×P^{n−1|n} compatible with A^{0|1}-actions",
                     other=DIAG),
        ], notes="m = n = 3"),
        CatalogEntry(G1033Q, "Pi-projective", "the quotient G(a|0,n|n)/A^{0|1} is Π-projective", [
            computed(G1033Q, "H0-O-plus-is-k", "cohomology.cech:G(1|0,3|3)/v:O"),
            asserted(G1033Q, "exists-torsor-projective-total",
                     "G(a|0,n|n) is projective since the restriction of Ber(U) to the reduced space G(a,n) is ample"),
            asserted(G1033Q, "exists-torsor-H1-map-zero",
                     "It is easy to check H¹(G(a|0,n|n),O)=0 for n≥a+2"),
        ], notes="a = 1, n = 3; the vanishing of H^1 upstairs is asserted for the whole family"),
        CatalogEntry(XS, "not-1|1-embeddable", "is not 1|1-embeddable", [
            asserted(XS, "Pic-trivial", "no line bundle on S extends to O_X^+"),
            asserted(XS, "H1-O-minus-zero", "by assumption we have H¹(X,O_X^−)=0"),
        ], notes="hypotheses: Pic(S) = Z, H^1(S,V) = 0, char 0, L ample"),
        CatalogEntry(G2144Q, "not-1|1-embeddable",
                     "the quotient Y=G(2|1,4|4)/A^{0|1} is not 1|1-embeddable", [
            computed(G2144Q, "Pic-trivial", "linebundle.flat_connection:P^{1|2}:O(n)", scale="reduced",
                     supports=("every line bundle on X=G(2|1,4|4) is isomorphic to Ber(S)^n",
                               "a natural GQ(1)-equivariant structure on Ber(S) of weight 2−1=1"),
                     support_category="grassmannian-Pic"),
            asserted(G2144Q, "H0-O-plus-is-k", "H⁰(X,O)=k for the supergrassmannian X, hence for Y"),
            asserted(G2144Q, "H1-O-minus-dim≤1",
                     "H¹(X,O)=0 via the fibrations F(1|1,2|1,n|n)→G(2|1,n|n) and F→G(1|1,n|n)",
                     category="flag-fibration"),
            asserted(G2144Q, "torsor-total-non-projective", "X is not projective",
                     category="grassmannian-non-projectivity"),
        ], notes="Pic(X) = Z·Ber(S) is asserted; the curvature obstruction is computed on P^{1|2}",
            extra=["homological.freeness:G(2|1,4|4)"]),
        CatalogEntry(G3255Q, "not-1|1-embeddable", "is not 1|1-embeddable", [
            computed(G2144Q, "Pic-trivial", "linebundle.flat_connection:P^{1|2}:O(n)", scale="reduced",
                     supports=("every line bundle on X=G(2|1,4|4) is isomorphic to Ber(S)^n",),
                     support_category="grassmannian-Pic"),
            asserted(G2144Q, "H0-O-plus-is-k", "H⁰(X,O)=k for the supergrassmannian X, hence for Y"),
            asserted(G2144Q, "H1-O-minus-dim≤1", "H¹(X,O)=0 via the flag fibrations over G(2|1,n|n) and G(1|1,n|n)", category="flag-fibration"),
            asserted(G2144Q, "torsor-total-non-projective", "X is not projective",
                     category="grassmannian-non-projectivity"),
            asserted(G2144Q, "closed-subscheme-of", "This embedding induces a closed embedding of the quotients",
                     other=G3255Q),
        ], notes="a = 3, n = 5 stands for n > a > 1, n ≥ 4"),
        CatalogEntry(PROD, "not-1|1-embeddable", "P²_Π×P²_Π is not 1|1-embeddable", [
            computed(PROD, "Pic-trivial", "linebundle.flat_connection:P^{2|3}:O(n)",
                     supports=("Pic(X)×Pic(Y)→Pic(X×Y) is an isomorphism", "Pic(P²_Π)=0")),
            computed(PROD, "all-torsors-total-non-projective", "linebundle.flat_connection:P^{1|2}xP^{1|2}:O(n1,n2)",
                     scale="reduced",
                     supports=("isomorphic to either P^{2|3}×P²_Π", "Since P²_Π is not projective")),
        ], notes="H^1(O)^- is 2-dimensional here, so the dimension ≤ 1 criterion does not apply",
            extra=["cohomology.cech:P2Pi:O"]),
        CatalogEntry(GG, "not-1|1-embeddable", "is not 1|1-embeddable for m≥3, n≥3", [
            computed(PROD, "Pic-trivial", "linebundle.flat_connection:P^{2|3}:O(n)",
                     supports=("Pic(X)×Pic(Y)→Pic(X×Y) is an isomorphism", "Pic(P²_Π)=0")),
            computed(PROD, "all-torsors-total-non-projective", "linebundle.flat_connection:P^{1|2}xP^{1|2}:O(n1,n2)",
                     scale="reduced",
                     supports=("isomorphic to either P^{2|3}×P²_Π", "Since P²_Π is not projective")),
            asserted(PROD, "closed-subscheme-of", "the closed embedding of P²_Π into G(1|1,3|3)", other=GG),
        ], notes="m = n = 3"),
        CatalogEntry(XP2, "Pi-projective", "is Π-projective", _p2pi_facts() + [
            computed(XP2, "closed-subscheme-of", "atlas.iso_check:truncate(P2Pi,3)~CY(2)", other=P2PI),
        ], notes="S = P², L = O(1): the truncation of P²_Π"),
        CatalogEntry(XSO, "Pi-projective", "is Π-projective", [
            asserted(PNPI, "Pi-projective", "Pᴺ_Π is the Π-projective space"),
            asserted(XPN, "closed-subscheme-of", "X(Pⁿ,c₁(O(1))) is the truncation of the Π-projective space Pⁿ_Π",
                     other=PNPI),
            asserted(XSO, "closed-subscheme-of", "Furthermore, if f is a closed embedding then so is f~",
                     other=XPN),
        ], notes="S embedded by a power of L"),
        CatalogEntry(XSE, "exists-torsor-projective-total", "the total space X~ is projective", [
            asserted(XSE, "exists-torsor-projective-total",
                     "For any nontrivial A^{0|1}-torsor X~→X(S,V,e), the total space X~ is projective",
                     category="serre-duality"),
        ], notes="recorded for audit; the Serre-duality step is not computed"),
    ]


@dataclass
class EntryResult:
    entry: CatalogEntry
    verdict: object
    replayed: bool
    checks: list          # (check name, ok, detail)
    skipped: bool = False

    @property
    def ok(self) -> bool:
        return self.skipped or (bool(self.verdict) and self.replayed and all(ok for _, ok, _ in self.checks))

    def render(self) -> str:
        e = self.entry
        head = f"{'PASS' if self.ok else 'FAIL'}  {e.claim}({e.space})"
        if self.skipped:
            return head + "  [stretch, skipped]"
        lines = [head, f"  anchor: \"{e.anchor}\""]
        if e.notes:
            lines.append(f"  note: {e.notes}")
        for name, ok, detail in self.checks:
            lines.append(f"  recomputed {name}: {'ok' if ok else 'FAILED'} ({detail})")
        if self.verdict:
            lines.append("  trace:")
            lines += ["    " + ln for ln in self.verdict.render().splitlines()]
        return "\n".join(lines)


def load_catalog(entries=None) -> FactsDB:
    """All catalog facts in one database (a computed fact wins over an asserted duplicate)."""
    entries = catalog() if entries is None else entries
    db = FactsDB()
    for e in entries:
        for f in sorted(e.facts, key=lambda f: f.provenance != "computed"):
            db.add_fact(f)
    return db.apply_rules()


def run_entry(e: CatalogEntry, stretch: bool = False, cache: dict | None = None) -> EntryResult:
    cache = {} if cache is None else cache
    if e.stretch and not stretch:
        return EntryResult(e, None, False, [], skipped=True)
    checks = []
    names = [f.ref for f in e.facts if f.provenance == "computed"] + list(e.extra)
    for name in dict.fromkeys(names):
        if name not in cache:
            cache[name] = CHECKS[name].run()
        ok, detail = cache[name]
        checks.append((name, ok, detail))
    db = FactsDB()
    for f in sorted(e.facts, key=lambda f: f.provenance != "computed"):
        db.add_fact(f)
    db.apply_rules()
    v = verdict(db, e.space, e.claim)
    return EntryResult(e, v, bool(v) and replay(v), checks)


def run_catalog(stretch: bool = False) -> list[EntryResult]:
    cache: dict = {}
    return [run_entry(e, stretch, cache) for e in catalog()]


def hygiene(entries=None) -> list[str]:
    """Problems with provenance: assert-only topics computed, or computed routes left unused."""
    entries = catalog() if entries is None else entries
    out = []
    computed_topics = {(f.space, f.predicate) for e in entries for f in e.facts if f.provenance == "computed"}
    for e in entries:
        for f in e.facts:
            if f.provenance == "computed" and f.category in ASSERT_ONLY:
                out.append(f"{e.space}: {f.predicate} is computed but belongs to {f.category}")
            if f.provenance == "asserted" and (f.space, f.predicate) in computed_topics and not f.category:
                out.append(f"{e.space}: {f.predicate} is asserted although a computed route exists")
    return out
