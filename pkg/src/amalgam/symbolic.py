"""Forward-chaining inference over tri-state ring attributes.

A case describes one amalgamation setting through entities (R, S, A, J,
f, M, B) carrying boolean-or-unknown attributes.  Axioms carry citation
strings; every derived value records the rule and premises it came from.
Rules transcribe the amalgamation results directionally, plus
contrapositives of single-antecedent directions; they never fire on an
unknown premise.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources

from .errors import InconsistencyError, InputError, QueryError, ResourceCapError

RING_ATTRS = ("is_domain", "is_field", "is_local", "is_valuation_domain", "is_prufer",
              "is_gaussian", "is_arithmetical", "is_chain", "is_total_quotient",
              "Z_subset_Jac")

VOCABULARY = {
    "R": RING_ATTRS,
    "S": RING_ATTRS,
    "A": RING_ATTRS + ("condition_star", "is_trivial_extension"),
    "J": ("J_proper", "J_nonzero", "J_subset_Jac_S", "J_subset_fR", "J_square_zero",
          "J_uniserial", "J_locally_divisible", "J_distributive",
          "J_stable_under_regular_scaling", "J_gauss_scaling", "J_gauss_scaling_local",
          "J_unit_shift_scaling", "J_scaled_by_f", "J_locally_zero_at_V",
          "R_domain_on_support", "S_chain_off_V"),
    "f": ("f_reg_to_reg", "f_surjective", "f_identity"),
    "M": ("ZM_subset_ZR",),
    "B": ("domain_extension", "K_subset_B"),
}


def check_attribute(entity, attr):
    if entity not in VOCABULARY or attr not in VOCABULARY[entity]:
        raise QueryError(f"unknown attribute {entity}.{attr}")


Key = tuple  # (entity, attribute)


@dataclass(frozen=True)
class Fact:
    value: bool
    source: str                 # "axiom" or "rule"
    ref: str                    # citation (axiom) or rule id
    premises: tuple = ()        # keys the rule fired on
    external: bool = False


@dataclass(frozen=True)
class Rule:
    id: str
    premises: tuple             # ((entity, attr, value), ...)
    consequences: tuple
    citation: str = ""
    external: bool = False

    def to_dict(self):
        return {"id": self.id, "premises": [list(p) for p in self.premises],
                "consequences": [list(c) for c in self.consequences],
                "citation": self.citation, "external": self.external}

    @classmethod
    def from_dict(cls, d):
        return cls(d["id"], tuple(tuple(p) for p in d["premises"]),
                   tuple(tuple(c) for c in d["consequences"]),
                   d.get("citation", ""), d.get("external", False))


# --- rule base --------------------------------------------------------------------------


def _lit(spec):
    """'A.is_prufer' -> ('A', 'is_prufer', True); '!J.J_nonzero' -> (..., False)."""
    value = not spec.startswith("!")
    ent, attr = spec.lstrip("!").split(".", 1)
    check_attribute(ent, attr)
    return ent, attr, value


def _neg(lit):
    return lit[0], lit[1], not lit[2]


def _implication(rule_id, hyps, lhs, rhs):
    """hyps & lhs => each rhs literal; with one lhs literal also add contrapositives."""
    H = tuple(_lit(h) for h in hyps)
    L = tuple(_lit(x) for x in lhs)
    out = [Rule(rule_id, H + L, tuple(_lit(x) for x in rhs))]
    if len(L) == 1:
        for x in rhs:
            out.append(Rule(f"{rule_id}/contra", H + (_neg(_lit(x)),), (_neg(L[0]),)))
    return out


def _equivalence(rule_id, hyps, lhs, rhs):
    return _implication(rule_id, hyps, lhs, rhs) + _implication(rule_id, hyps, rhs, lhs)


def _ring_rules():
    out = []
    for E in ("R", "S", "A"):
        out += _implication("D-vd", [], [f"{E}.is_valuation_domain"],
                            [f"{E}.is_domain", f"{E}.is_chain"])
        out += _implication("D-vd", [], [f"{E}.is_domain", f"{E}.is_chain"],
                            [f"{E}.is_valuation_domain"])
        out += _implication("D-field", [], [f"{E}.is_field"],
                            [f"{E}.is_domain", f"{E}.is_valuation_domain", f"{E}.is_local"])
        out += _implication("D-chain-local", [], [f"{E}.is_chain"], [f"{E}.is_local"])
        out += _implication("D-chain-arith", [], [f"{E}.is_chain"], [f"{E}.is_arithmetical"])
        out += _implication("D-local-arith", [f"{E}.is_local"], [f"{E}.is_arithmetical"],
                            [f"{E}.is_chain"])
        out += _implication("D-arith-gauss", [], [f"{E}.is_arithmetical"], [f"{E}.is_gaussian"])
        out += _implication("D-gauss-prufer", [], [f"{E}.is_gaussian"], [f"{E}.is_prufer"])
        out += _implication("D-tqr-prufer", [], [f"{E}.is_total_quotient"], [f"{E}.is_prufer"])
    return out


def _claim_rules():
    out = []
    imp, eqv = _implication, _equivalence
    stable = "J.J_stable_under_regular_scaling"
    out += imp("T-main-1", ["f.f_reg_to_reg"], ["A.is_prufer"], ["R.is_prufer", stable])
    out += imp("T-main-2", ["f.f_reg_to_reg", "A.condition_star", "A.Z_subset_Jac"],
               ["R.is_prufer", stable], ["A.is_prufer"])
    local = ["R.is_local", "J.J_subset_Jac_S", "f.f_reg_to_reg"]
    out += imp("C-local-1", local, ["A.is_prufer"], ["R.is_prufer", stable])
    out += imp("C-local-2", local + ["A.condition_star"], ["R.is_prufer", stable],
               ["A.is_prufer"])
    out += imp("C-dup-1", ["f.f_identity"], ["A.is_prufer"], ["R.is_prufer", stable])
    out += imp("C-dup-2", ["f.f_identity", "R.Z_subset_Jac", "J.J_subset_Jac_S"],
               ["R.is_prufer", stable], ["A.is_prufer"])
    out += eqv("C-dup-local", ["f.f_identity", "R.is_local"], ["A.is_prufer"],
               ["R.is_prufer", stable])
    triv = ["A.is_trivial_extension", "M.ZM_subset_ZR"]
    out += imp("C-trivext-1", triv, ["A.is_prufer"], ["R.is_prufer", stable])
    out += imp("C-trivext-2", triv + ["R.Z_subset_Jac"], ["R.is_prufer", stable],
               ["A.is_prufer"])
    ext = ["A.is_trivial_extension", "B.domain_extension"]
    out += eqv("C-domain-ext", ext, ["A.is_prufer"],
               ["R.is_prufer", "R.is_domain", "B.K_subset_B"])
    out += imp("P-tqr-1", ["J.J_subset_Jac_S", "A.condition_star"], ["R.is_total_quotient"],
               ["A.is_total_quotient"])
    out += imp("P-tqr-2", ["f.f_reg_to_reg"], ["A.is_total_quotient"], ["R.is_total_quotient"])
    gauss = ["R.is_local", "J.J_subset_fR", "J.J_subset_Jac_S"]
    out += imp("T-gauss-fwd", gauss, ["A.is_gaussian"],
               ["R.is_gaussian", "J.J_square_zero", "J.J_gauss_scaling"])
    out += imp("T-gauss-bwd", gauss, ["R.is_gaussian", "J.J_square_zero", "J.J_gauss_scaling"],
               ["A.is_gaussian"])
    out += eqv("C-gauss-loc", ["J.J_subset_fR", "J.J_subset_Jac_S"], ["A.is_gaussian"],
               ["R.is_gaussian", "J.J_gauss_scaling_local"])
    out += imp("T-chain-fwd", ["J.J_nonzero"], ["A.is_chain"],
               ["R.is_valuation_domain", "J.J_unit_shift_scaling"])
    out += imp("T-chain-bwd", ["J.J_nonzero", "J.J_uniserial"],
               ["R.is_valuation_domain", "J.J_unit_shift_scaling"], ["A.is_chain"])
    out += eqv("C-chain-sq0", ["J.J_nonzero", "J.J_square_zero"], ["A.is_chain"],
               ["R.is_valuation_domain", "J.J_uniserial", "J.J_scaled_by_f"])
    out += eqv("C-chain-fR", ["J.J_subset_fR"], ["A.is_chain"], ["R.is_chain", "!J.J_nonzero"])
    out += eqv("C-dup-chain", ["f.f_identity"], ["A.is_chain"], ["R.is_chain", "!J.J_nonzero"])
    out += eqv("C-arith-1", ["J.J_nonzero", "J.J_square_zero"], ["A.is_arithmetical"],
               ["R.is_arithmetical", "J.R_domain_on_support", "J.J_locally_divisible",
                "J.J_distributive"])
    out += eqv("C-arith-2", ["J.J_subset_fR"], ["A.is_arithmetical"],
               ["R.is_arithmetical", "J.J_locally_zero_at_V", "J.S_chain_off_V"])
    return out


RULES = tuple(_ring_rules() + _claim_rules())


# --- cases and the engine ---------------------------------------------------------------


@dataclass
class Case:
    """One knowledge-base entry: axioms, entry-local (cited) rules, derived facts."""
    name: str
    description: str = ""
    axioms: dict = field(default_factory=dict)      # key -> Fact
    rules: tuple = ()                               # entry-local rules
    facts: dict = field(default_factory=dict)       # key -> Fact (axioms + derived)
    recipe: tuple | None = None                     # finite instance recipe, if any

    def value(self, entity, attr):
        check_attribute(entity, attr)
        f = self.facts.get((entity, attr))
        return None if f is None else f.value

    def add_axiom(self, entity, attr, value, citation, external=False):
        check_attribute(entity, attr)
        key = (entity, attr)
        if key in self.axioms and self.axioms[key].value != value:
            raise InconsistencyError(f"axioms disagree on {entity}.{attr}")
        fact = Fact(bool(value), "axiom", citation, (), external)
        self.axioms[key] = fact
        self.facts[key] = fact

    def all_rules(self):
        return RULES + tuple(self.rules)


def apply_rules(case, max_rounds=None):
    """Least fixed point of rule application; returns a new Case.

    Each round reads a frozen snapshot of the facts.  A rule fires when all
    premises are known and match; a conclusion contradicting a known value
    raises InconsistencyError carrying both derivation chains.
    """
    facts = dict(case.axioms)
    for k, f in case.facts.items():
        facts.setdefault(k, f)
    rules = case.all_rules()
    n_attrs = sum(len(v) for v in VOCABULARY.values())
    limit = max_rounds or n_attrs + 1
    for _ in range(limit):
        snapshot = dict(facts)
        new = {}
        for rule in rules:
            if not all((e, a) in snapshot and snapshot[(e, a)].value == v
                       for e, a, v in rule.premises):
                continue
            prem = tuple((e, a) for e, a, _ in rule.premises)
            for e, a, v in rule.consequences:
                key = (e, a)
                have = snapshot.get(key) or new.get(key)
                if have is None:
                    new[key] = Fact(v, "rule", rule.id, prem, rule.external)
                elif have.value != v:
                    tmp = dict(snapshot)
                    tmp.update(new)
                    other = Fact(v, "rule", rule.id, prem, rule.external)
                    tmp_other = dict(tmp)
                    tmp_other[key] = other
                    chains = (render(_explain_tree(tmp, key)),
                              render(_explain_tree(tmp_other, key)))
                    raise InconsistencyError(
                        f"{case.name}: {e}.{a} derived both true and false", chains)
        if not new:
            break
        facts.update(new)
    return Case(case.name, case.description, dict(case.axioms), case.rules, facts,
                case.recipe)


# --- explanations -------------------------------------------------------------------------


@dataclass
class Node:
    entity: str
    attribute: str
    value: bool
    source: str
    ref: str
    external: bool
    children: list = field(default_factory=list)


def _explain_tree(facts, key, seen=None):
    seen = set() if seen is None else seen
    f = facts[key]
    node = Node(key[0], key[1], f.value, f.source, f.ref, f.external)
    if key in seen:
        return node
    seen = seen | {key}
    for p in f.premises:
        node.children.append(_explain_tree(facts, p, seen))
    return node


def explain(case, entity, attribute):
    """Derivation tree from axioms (leaves) to the queried attribute."""
    check_attribute(entity, attribute)
    key = (entity, attribute)
    if key not in case.facts:
        raise QueryError(f"{entity}.{attribute} is unknown in {case.name}")
    return _explain_tree(case.facts, key)


def render(node, indent=0):
    tag = "axiom" if node.source == "axiom" else "rule"
    ext = " (external)" if node.external else ""
    line = f"{'  ' * indent}{node.entity}.{node.attribute} = {node.value}  [{tag} {node.ref}{ext}]"
    return "\n".join([line] + [render(c, indent + 1) for c in node.children])


def chain(node):
    """Leaf-to-root list of (source, ref) along the first branch."""
    out = []
    while node is not None:
        out.append((node.source, node.ref))
        node = node.children[0] if node.children else None
    return list(reversed(out))


def applicability(case, prefix=None):
    """Status of each rule: fired, blocked (a premise is false), pending (unknown)."""
    out = []
    for rule in case.all_rules():
        if prefix is not None and not rule.id.startswith(prefix):
            continue
        false, unknown = [], []
        for e, a, v in rule.premises:
            have = case.value(e, a)
            if have is None:
                unknown.append(f"{e}.{a}")
            elif have != v:
                false.append(f"{e}.{a}")
        status = "blocked" if false else "pending" if unknown else "fired"
        out.append({"rule": rule.id, "status": status, "false_premises": false,
                    "unknown_premises": unknown})
    return out


# --- serialization ---------------------------------------------------------------------------


def _tuplify(x):
    return tuple(_tuplify(v) for v in x) if isinstance(x, list) else x


def _listify(x):
    return [_listify(v) for v in x] if isinstance(x, tuple) else x


def case_to_dict(case):
    d = {
        "name": case.name,
        "description": case.description,
        "axioms": [{"entity": e, "attribute": a, "value": f.value, "citation": f.ref,
                    "external": f.external} for (e, a), f in case.axioms.items()],
        "rules": [r.to_dict() for r in case.rules],
    }
    if case.recipe is not None:
        d["recipe"] = _listify(case.recipe)
    return d


def case_from_dict(d):
    case = Case(d["name"], d.get("description", ""))
    for ax in d.get("axioms", []):
        case.add_axiom(ax["entity"], ax["attribute"], ax["value"], ax.get("citation", ""),
                       ax.get("external", False))
    rules = tuple(Rule.from_dict(r) for r in d.get("rules", []))
    for r in rules:
        for e, a, _ in r.premises + r.consequences:
            check_attribute(e, a)
    case.rules = rules
    if d.get("recipe") is not None:
        case.recipe = _tuplify(d["recipe"])
    return case


def load_kb(source=None):
    """Cases from a JSON file path, a JSON string, or the shipped knowledge base."""
    if source is None:
        text = resources.files("amalgam").joinpath("knowledge_base.json").read_text("utf-8")
    elif isinstance(source, str) and source.lstrip().startswith("{"):
        text = source
    else:
        with open(source, encoding="utf-8") as fh:
            text = fh.read()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"knowledge base is not valid JSON: {e}") from None
    return {d["name"]: case_from_dict(d) for d in data["entries"]}


def dump_kb(cases):
    return json.dumps({"entries": [case_to_dict(c) for c in cases.values()]}, indent=2,
                      ensure_ascii=False)


# --- bridge to computed predicates -------------------------------------------------------


def facts_from_instance(inst):
    """Computed attribute values for a finite instance, keyed (entity, attribute)."""
    from . import predicates as pr
    from .constructions import has_condition_star
    from .verifier import claims as cl

    def ring_facts(X):
        return {"is_domain": pr.is_domain(X), "is_field": pr.is_field(X),
                "is_local": pr.is_local(X), "is_valuation_domain": pr.is_valuation_domain(X),
                "is_prufer": pr.is_prufer(X), "is_gaussian": pr.is_gaussian(X),
                "is_arithmetical": pr.is_arithmetical(X), "is_chain": pr.is_chain_ring(X),
                "is_total_quotient": pr.is_total_quotient_ring(X),
                "Z_subset_Jac": pr.z_subset_jac(X)}

    if inst.kind == "ring":
        return {("A", a): bool(v) for a, v in ring_facts(inst.A).items()}
    out = {}
    for E, X in (("R", inst.R), ("S", inst.S), ("A", inst.A)):
        out.update({(E, a): bool(v) for a, v in ring_facts(X).items()})
    out[("A", "condition_star")] = has_condition_star(inst)
    out[("A", "is_trivial_extension")] = inst.kind == "trivext"
    J = {"J_proper": lambda i: (True, None), "J_nonzero": cl.J_nonzero,
         "J_subset_Jac_S": cl.J_subset_jac_S, "J_subset_fR": cl.J_subset_fR,
         "J_square_zero": cl.J_square_zero, "J_uniserial": cl.J_uniserial,
         "J_locally_divisible": cl.J_locally_divisible, "J_distributive": cl.J_distributive,
         "J_stable_under_regular_scaling": cl.J_stable_T,
         "J_gauss_scaling_local": cl.gauss_local_parts,
         "J_unit_shift_scaling": cl.J_scaled_by_unit_shift, "J_scaled_by_f": cl.J_scaled_by_f,
         "J_locally_zero_at_V": cl.J_locally_zero_on_V,
         "R_domain_on_support": cl.R_p_domain_on_support, "S_chain_off_V": cl.S_chain_off_V}
    if pr.is_local(inst.R):
        J["J_gauss_scaling"] = cl.gauss_scaling
    for a, fn in J.items():
        try:
            out[("J", a)] = bool(fn(inst)[0])
        except ResourceCapError:
            pass        # left unknown
    out[("f", "f_reg_to_reg")] = pr.hom_regular_to_regular(inst.f)
    out[("f", "f_surjective")] = inst.f.is_surjective()
    out[("f", "f_identity")] = inst.is_duplication()
    if inst.kind == "trivext":
        out[("M", "ZM_subset_ZR")] = cl.zM_in_zR(inst)[0]
        if inst.module.meta.get("domain_extension") is not None:
            out[("B", "domain_extension")] = cl.is_domain_extension(inst)[0]
            out[("B", "K_subset_B")] = cl.fraction_field_in_B(inst)[0]
    return out


def case_from_instance(inst, include=None):
    """A case seeded with computed facts (optionally only the keys in ``include``)."""
    case = Case(inst.digest(), "computed from a finite instance")
    for (e, a), v in facts_from_instance(inst).items():
        if include is None or (e, a) in include or e in include:
            case.add_axiom(e, a, v, "computed")
    return case


def consistency_bridge(inst, seed_entities=("R", "S", "J", "f", "M", "B")):
    """Derive A-attributes from computed hypothesis-side facts and compare.

    Returns a list of disagreements (empty when consistent).  Also checks
    that the fully seeded case is free of contradictions.
    """
    computed = facts_from_instance(inst)
    seeded = Case(inst.digest())
    for (e, a), v in computed.items():
        if e in seed_entities or a in ("condition_star", "is_trivial_extension",
                                       "Z_subset_Jac"):
            seeded.add_axiom(e, a, v, "computed")
    derived = apply_rules(seeded)
    bad = []
    for key, fact in derived.facts.items():
        if fact.source == "rule" and computed.get(key, fact.value) != fact.value:
            bad.append({"attribute": f"{key[0]}.{key[1]}", "derived": fact.value,
                        "computed": computed[key], "rule": fact.ref})
    full = Case(inst.digest())
    for (e, a), v in computed.items():
        full.add_axiom(e, a, v, "computed")
    apply_rules(full)
    return bad
