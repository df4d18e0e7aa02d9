import json
from importlib import resources

import pytest
from hypothesis import given, strategies as st

from amalgam.errors import InconsistencyError, InputError, QueryError
from amalgam.symbolic import (
    RULES, VOCABULARY, Case, Rule, applicability, apply_rules, case_from_dict,
    case_from_instance, case_to_dict, chain, consistency_bridge, dump_kb, explain,
    facts_from_instance, load_kb, render,
)
from amalgam.verifier import Builder

EX_PADIC = "Zp+XQ[[X]]"
EX_INTEGERS = "Z+XQ[[X]]"
EX_POLY = "k[X] with J=(X)/(X^2)"
EX_LOCAL_TRIVEXT = "R |x R/m, R local non-valuation domain"


@pytest.fixture(scope="module")
def kb():
    return {name: apply_rules(c) for name, c in load_kb().items()}


def status_of(case, prefix):
    return {r["rule"]: r for r in applicability(case, prefix)}


def test_padic_entry_gaussian(kb):
    c = kb[EX_PADIC]
    assert c.value("A", "is_gaussian") is True
    assert c.value("J", "J_square_zero") is False
    node = explain(c, "A", "is_gaussian")
    assert chain(node) == [("axiom", "ht07 Theorem 1.3"), ("rule", "prufer-domain⇒gaussian")]
    assert node.external and node.children[0].external
    text = render(node)
    assert "g72 Corollary 28.5" in json.dumps([r.to_dict() for r in c.rules], ensure_ascii=False)
    assert text.splitlines()[0].startswith("A.is_gaussian = True  [rule prufer-domain⇒gaussian")


def test_padic_entry_blocks_gauss_rules(kb):
    rules = status_of(kb[EX_PADIC], "T-gauss")
    assert rules
    for r in rules.values():
        assert r["status"] == "blocked"
        assert "J.J_subset_fR" in r["false_premises"] or "J.J_square_zero" in r["false_premises"]
    assert "J.J_subset_fR" in rules["T-gauss-fwd"]["false_premises"]


def test_integers_entry(kb):
    c = kb[EX_INTEGERS]
    assert c.value("A", "is_arithmetical") is True
    assert c.value("J", "J_locally_divisible") is False
    arith1 = [r for r in applicability(c, "C-arith-1") if r["rule"] == "C-arith-1"]
    assert all(r["status"] == "blocked" for r in arith1)
    assert any("J.J_square_zero" in r["false_premises"] for r in arith1)


def test_polynomial_entry(kb):
    c = kb[EX_POLY]
    assert c.value("A", "is_gaussian") is True
    assert c.value("A", "is_arithmetical") is False
    node = explain(c, "A", "is_arithmetical")
    assert node.ref == "C-arith-2/contra"
    premises = {(ch.entity, ch.attribute, ch.value) for ch in node.children}
    assert ("J", "J_locally_zero_at_V", False) in premises


def test_local_trivext_entry(kb):
    c = kb[EX_LOCAL_TRIVEXT]
    assert c.value("A", "is_prufer") is True
    assert c.value("R", "is_prufer") is False
    ax = c.axioms[("A", "is_total_quotient")]
    assert ax.external and ax.ref.startswith("L86")
    assert status_of(c, "C-trivext-1")["C-trivext-1"]["status"] == "blocked"


def test_domain_extension_entries(kb):
    assert kb["Z |x Q"].value("A", "is_prufer") is True
    assert kb["Z |x Z[X]"].value("A", "is_prufer") is False
    assert any(r.id == "C-domain-ext" for r in RULES)


def test_trivial_kb_derives_nothing():
    out = apply_rules(Case("empty"))
    assert out.facts == {}


def test_explain_axiom_and_errors(kb):
    c = kb[EX_PADIC]
    node = explain(c, "A", "is_prufer")
    assert node.source == "axiom" and node.children == []
    with pytest.raises(QueryError):
        explain(c, "A", "is_sparkly")
    with pytest.raises(QueryError):
        explain(c, "S", "is_chain")


def test_contradiction_reports_both_chains():
    c = Case("bad")
    c.add_axiom("A", "is_chain", True, "test")
    c.add_axiom("A", "is_prufer", False, "test")
    with pytest.raises(InconsistencyError) as exc:
        apply_rules(c)
    chains = exc.value.chains
    assert len(chains) == 2 and chains[0] != chains[1]


def test_conflicting_axioms_rejected():
    c = Case("bad")
    c.add_axiom("A", "is_chain", True, "x")
    with pytest.raises(InconsistencyError):
        c.add_axiom("A", "is_chain", False, "y")


def test_kb_round_trip_is_lossless():
    shipped = json.loads(resources.files("amalgam").joinpath("knowledge_base.json")
                         .read_text("utf-8"))
    assert json.loads(dump_kb(load_kb())) == shipped
    assert json.loads(dump_kb(load_kb(dump_kb(load_kb())))) == shipped


def test_load_kb_errors(tmp_path):
    with pytest.raises(InputError):
        load_kb("{not json")
    bad = {"entries": [{"name": "x", "axioms": [{"entity": "A", "attribute": "nope",
                                                 "value": True}]}]}
    p = tmp_path / "kb.json"
    p.write_text(json.dumps(bad))
    with pytest.raises(QueryError):
        load_kb(str(p))


def test_bridge_on_instances(builder):
    for rec in [("amalgam", ("canon", ("zmod", 48), (24,)), (6,)),
                ("amalgam", ("canon", ("polyx", 2, 4), (4,)), (2,)),
                ("dup", ("zmod", 12), (2,)),
                ("trivext", ("gf", 2), ("free", ("gf", 2), 2)),
                ("trivext", ("gf", 2), ("ext", ("gf", 2), ("gf", 2, 2))),
                ("ring", ("zmod", 12))]:
        assert consistency_bridge(builder.instance(rec)) == []


def test_bridge_on_corpus_sample(corpus):
    for inst in corpus[::7]:
        assert consistency_bridge(inst) == [], inst.digest()


def test_instance_case_restriction(builder):
    inst = builder.instance(("dup", ("zmod", 4), (2,)))
    case = case_from_instance(inst, include=("R",))
    assert {e for e, _ in case.axioms} == {"R"}
    facts = facts_from_instance(inst)
    assert facts[("f", "f_identity")] is True


# --- properties -------------------------------------------------------------------------

ALL_KEYS = [(e, a) for e, attrs in VOCABULARY.items() for a in attrs]


@st.composite
def cases(draw):
    keys = draw(st.lists(st.sampled_from(ALL_KEYS), unique=True, max_size=12))
    c = Case("random")
    for e, a in keys:
        c.add_axiom(e, a, draw(st.booleans()), "drawn")
    return c


def _derive(c):
    try:
        return apply_rules(c)
    except InconsistencyError:
        return None


@given(cases())
def test_fixed_point_is_idempotent(c):
    out = _derive(c)
    if out is not None:
        again = apply_rules(out)
        assert again.facts == out.facts


@given(cases())
def test_rules_fire_only_on_known_premises(c):
    out = _derive(c)
    if out is None:
        return
    by_id = {}
    for r in out.all_rules():
        by_id.setdefault(r.id, []).append(r)
    for key, fact in out.facts.items():
        if fact.source != "rule":
            continue
        for p in fact.premises:
            assert p in out.facts
        assert any(tuple((e, a) for e, a, _ in r.premises) == fact.premises
                   and all(out.facts[(e, a)].value == v for e, a, v in r.premises)
                   for r in by_id[fact.ref])


@given(cases())
def test_rounds_bounded(c):
    n = sum(len(v) for v in VOCABULARY.values())
    try:
        full = apply_rules(c)
        assert apply_rules(c, max_rounds=n).facts == full.facts
    except InconsistencyError:
        pass


@given(cases(), st.lists(st.sampled_from(["T-gauss-fwd", "C-arith-2", "D-vd"]), max_size=3))
def test_case_serialization_round_trip(c, ids):
    c.rules = tuple(r for r in RULES if r.id in ids)
    d = case_to_dict(c)
    back = case_from_dict(json.loads(json.dumps(d)))
    assert case_to_dict(back) == d
    assert back.axioms == c.axioms
