"""Walk the shipped knowledge base: derived facts and derivation trees."""

from amalgam.symbolic import applicability, apply_rules, explain, load_kb, render

kb = load_kb()
for name, case in kb.items():
    done = apply_rules(case)
    derived = sorted(f"{e}.{a}={f.value}" for (e, a), f in done.facts.items()
                     if f.source == "rule" and e == "A")
    print(f"{name}\n  derived: {', '.join(derived) or '-'}")

case = apply_rules(kb["Zp+XQ[[X]]"])
print()
print(render(explain(case, "A", "is_gaussian")))
for r in applicability(case, "T-gauss"):
    print(f"  {r['rule']}: {r['status']} {r['false_premises']}")
