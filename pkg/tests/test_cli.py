import io
import json

import pytest
from hypothesis import given, settings, strategies as st

from amalgam.cli import (
    KEYWORDS, SIGNATURES, Call, Command, ElemList, Int, Let, MapSpec, Name, Options,
    ParseError, Poly, Session, main, parse, parse_expr, print_expr, print_program, typecheck,
)

Z48_PROGRAM = ("let R = zmod(48)  let S = quot(R, ideal(R,[24]))  let f = canon(R,S)  "
               "let J = ideal(S,[6])  let A = amalgam(f,J)  ")
X8_PROGRAM = ("let F = gf(2); let P = polyquot(F, X^8); let Q = quot(P, ideal(P, [X^4]))\n"
              "let B = amalgam(canon(P, Q), ideal(Q, [X^2]))\n")

# exercises every production of the grammar
GRAMMAR_CORPUS = [
    Z48_PROGRAM + "check gaussian A",
    X8_PROGRAM + "verify T-gauss-fwd B",
    "let R = zmod(12)  # a comment\ncheck chain R; check arithmetical R",
    "check chain zmod(12)",
    "let T = product(zmod(2), zmod(3))  spec T",
    "let F = gf(2)  let E = polyquot(F, X^2 + X + 1)  check field E",
    "let Z = zmod(4)  let D = dup(Z, ideal(Z, [2]))  zsets D  spec D",
    "let Z = zmod(4)  let D = dup(Z, ideal(Z, []))  check star D",
    "let F = gf(2)  let M = free(F, 2)  let T = trivext(F, M)  check gaussian T",
    "let Z = zmod(4)  let T = trivext(Z, quotmod(Z, ideal(Z, [2])))  check prufer T",
    "let Z = zmod(4)  let T = trivext(Z, idealmod(ideal(Z, [2])))  check local T",
    "let Z = zmod(3)  let T = trivext(Z, ringmod(Z))  check chain T",
    "let F = gf(2)  let K = polyquot(F, X^2 + X + 1)  let T = trivext(F, extmod(F, K))  "
    "verify C-domain-ext T",
    "let F = gf(2)  let P = polyquot(F, X^3)  let g = hom(F, P, 1 -> 1)  "
    "let A = amalgam(g, ideal(P, [X]))  verify T-chain-bwd A",
    "let P = polyquot(zmod(4), X^2 - 2*X + 3)  let g = hom(P, P, X -> X)  spec P",
    "let R = zmod(9)  let Q = quot(R, ideal(R, [3]))  verify P-tqr-1 amalgam(canon(R, Q), "
    "ideal(Q, [0])) dup(R, ideal(R, [3]))",
    'infer "Zp+XQ[[X]]" A.is_gaussian',
    'infer "k[X] with J=(X)/(X^2)"',
    "search prufer,!gaussian --max-size 100 --limit 3",
    "search ~chain, local --max-size 20",
    "suite L-rto-fast P-tqr-1",
    "check gaussian-direct zmod(8)",
]


def run(argv, stdin=None):
    out, err = io.StringIO(), io.StringIO()
    code = main(argv, out, err)
    return code, out.getvalue(), err.getvalue()


def session_run(source, corpus=None, **opts):
    out = io.StringIO()
    s = Session(Options(**opts), out)
    if corpus is not None:
        s._corpus = corpus
    code = s.run(parse(source))
    return code, out.getvalue()


def test_let_binding():
    (stmt,) = parse("let R = zmod(48)")
    assert stmt == Let("R", Call("zmod", (Int(48),)))


def test_paper_transcription_not_gaussian():
    code, out, _ = run([Z48_PROGRAM + "check gaussian A"])
    assert code == 0
    assert "gaussian A: false" in out


def test_syntax_error_points_at_paren():
    code, _, err = run(["check field polyquot(gf(2), X^)"])
    assert code == 2
    assert "column 31" in err and "')'" in err
    with pytest.raises(ParseError) as exc:
        parse_expr("polyquot(gf(2), X^)")
    assert exc.value.col == len("polyquot(gf(2), X^)")


def test_verify_gauss_forward_exit_zero():
    code, out, _ = run(["--format", "structured", X8_PROGRAM + "verify T-gauss-fwd B"])
    assert code == 0
    rec = json.loads(out.strip().splitlines()[-1])
    assert rec["claim"] == "T-gauss-fwd" and rec["status"] == "verified"


def test_assert_flag():
    assert run(["check chain zmod(12)"])[0] == 0
    assert run(["--assert", "check chain zmod(12)"])[0] == 1
    assert run(["--assert", "check chain zmod(8)"])[0] == 0


def test_exit_codes():
    assert run(["--max-ring-size", "100", "check chain zmod(1000)"])[0] == 3
    assert run(["check chain R"])[0] == 2
    assert run(["let R = zmod(4)  check chain ideal(R, [2])"])[0] == 2
    assert run([])[0] == 2
    assert run(["--format", "xml", "check chain zmod(4)"])[0] == 2
    assert run(["-f", "/nonexistent/session.am"])[0] == 2


def test_structured_error_record():
    code, out, err = run(["--format", "structured", "check chain zmod(4"])
    assert code == 2
    rec = json.loads(out)
    assert rec["error"] == "input" and rec["line"] == 1
    assert err.startswith("error (input)")


def test_inconsistent_kb_exit(tmp_path):
    kb = {"entries": [{"name": "bad", "axioms": [
        {"entity": "A", "attribute": "is_chain", "value": True, "citation": "x"},
        {"entity": "A", "attribute": "is_prufer", "value": False, "citation": "y"}]}]}
    p = tmp_path / "kb.json"
    p.write_text(json.dumps(kb))
    assert run(["--kb", str(p), 'infer "bad"'])[0] == 1


def test_session_file(tmp_path):
    p = tmp_path / "s.am"
    p.write_text(Z48_PROGRAM + "\ncheck prufer A\nzsets A\n")
    code, out, _ = run(["-f", str(p)])
    assert code == 0
    assert "prufer A: true" in out
    assert "condition star: True" in out


def test_canon_requires_construction():
    code, _, err = run(["let R = zmod(4)  let S = zmod(6)  let f = canon(R, S)"])
    assert code == 2


def test_search_examples(corpus):
    code, out = session_run("search prufer,!gaussian --max-size 1100", corpus=corpus)
    assert code == 0
    assert "Z/48 >< ^f (6)" in out and "F2[X]/(X^8) >< ^f (X^2)" in out
    _, out = session_run("search chain,!chain", corpus=corpus)
    assert out.startswith("0 instances")
    _, out = session_run("search gaussian,!arithmetical --limit 1", corpus=corpus,
                         fmt="structured")
    (hit,) = json.loads(out)["matches"]
    assert hit["size"] == 8


def test_infer_output():
    code, out, _ = run(['infer "Zp+XQ[[X]]" A.is_gaussian'])
    assert code == 0
    assert "ht07 Theorem 1.3" in out and "prufer-domain⇒gaussian" in out
    code, out, _ = run(["--format", "structured", 'infer "Zp+XQ[[X]]"'])
    rec = json.loads(out)
    assert "T-gauss-fwd" in rec["blocked_rules"]
    assert run(['infer "nope"'])[0] == 2


def test_deterministic_structured_output():
    prog = Z48_PROGRAM + "check gaussian-direct A  verify C-gauss-loc A  spec A"
    first = run(["--format", "structured", "--seed", "3", "--samples", "2000", prog])
    second = run(["--format", "structured", "--seed", "3", "--samples", "2000", prog])
    assert first == second


def _walk(node, seen):
    seen.add(type(node).__name__)
    if isinstance(node, Call):
        seen.add("call:" + node.fn)
    if isinstance(node, Command):
        seen.add("cmd:" + node.name)
    if isinstance(node, Poly):
        for e, c in node.terms:
            seen.add("poly:const" if e == 0 else "poly:coef" if abs(c) > 1 else "poly:x")
            if c < 0:
                seen.add("poly:neg")
    for child in getattr(node, "args", ()) + getattr(node, "items", ()):
        if isinstance(child, tuple):
            continue
        if not isinstance(child, str):
            _walk(child, seen)
    for attr in ("expr", "source", "image"):
        if hasattr(node, attr):
            _walk(getattr(node, attr), seen)


def test_grammar_corpus_covers_every_production(corpus):
    seen = set()
    for src in GRAMMAR_CORPUS:
        stmts = parse(src)
        typecheck(stmts)
        for s in stmts:
            _walk(s, seen)
    wanted = ({"Let", "Int", "Name", "Poly", "ElemList", "MapSpec", "Call",
               "poly:const", "poly:coef", "poly:x", "poly:neg"}
              | {"call:" + fn for fn in SIGNATURES}
              | {"cmd:" + c for c in KEYWORDS - {"let"}})
    assert wanted <= seen, wanted - seen


@pytest.mark.parametrize("src", GRAMMAR_CORPUS)
def test_grammar_corpus_runs(src, corpus):
    code, out = session_run(src, corpus=corpus, samples=2000)
    assert code == 0
    assert out.strip()


# --- round trip --------------------------------------------------------------------------

names = st.from_regex(r"[a-wYZ][a-z0-9_]{0,4}", fullmatch=True).filter(
    lambda s: s not in KEYWORDS and s not in SIGNATURES)

polys = st.dictionaries(st.integers(0, 9), st.integers(-9, 9).filter(bool), max_size=4).map(
    lambda d: Poly(tuple(sorted(d.items(), reverse=True))))


def exprs(kind, depth=2):
    leaves = [names.map(Name)]
    if kind == "n":
        return st.one_of(st.integers(0, 500).map(Int), names.map(Name))
    want = {"r": "ring", "i": "ideal", "h": "hom", "m": "module"}[kind]
    calls = []
    if depth > 0:
        for fn, (kinds, result) in SIGNATURES.items():
            if result == want:
                calls.append(st.tuples(*[arg(k, depth - 1) for k in kinds]).map(
                    lambda args, fn=fn: Call(fn, args)))
    return st.one_of(leaves + calls)


def arg(kind, depth):
    if kind == "p":
        return polys
    if kind == "l":
        return st.lists(polys, max_size=3).map(lambda xs: ElemList(tuple(xs)))
    if kind == "s":
        return st.tuples(polys, polys).map(lambda t: MapSpec(*t))
    return exprs(kind, depth)


targets = st.one_of(exprs("r"), names.map(Name),
                    st.tuples(arg("h", 1), arg("i", 1)).map(lambda a: Call("amalgam", a)))
dashed = st.from_regex(r"[a-zA-Z][a-z]{0,3}(-([a-zA-Z][a-z0-9]{0,3}|[0-9]{1,2})){0,2}", fullmatch=True)
dashed = dashed.filter(lambda s: s.split("-")[0] not in KEYWORDS)
entries = st.from_regex(r'[A-Za-z0-9 +\[\]()/|=]{1,12}', fullmatch=True)
attrs = st.tuples(st.sampled_from("RSAJfMB"), st.from_regex(r"[a-z_]{1,8}", fullmatch=True))

statements = st.one_of(
    st.tuples(names, targets).map(lambda t: Let(*t)),
    st.tuples(dashed, targets).map(lambda t: Command("check", t)),
    targets.map(lambda t: Command("zsets", (t,))),
    targets.map(lambda t: Command("spec", (t,))),
    st.tuples(dashed, st.lists(targets, min_size=1, max_size=3)).map(
        lambda t: Command("verify", (t[0],) + tuple(t[1]))),
    st.tuples(st.lists(st.tuples(dashed, st.booleans()), min_size=1, max_size=3),
              st.lists(st.tuples(st.sampled_from(["--max-size", "--limit"]),
                                 st.integers(0, 2000)), max_size=2)).map(
        lambda t: Command("search", (tuple(t[0]), tuple(t[1])))),
    st.tuples(entries, st.none() | attrs).map(lambda t: Command("infer", t)),
    st.lists(dashed, max_size=3).map(lambda xs: Command("suite", tuple(xs))),
)


@settings(max_examples=200)
@given(st.lists(statements, min_size=1, max_size=4))
def test_print_parse_round_trip(stmts):
    text = print_program(stmts)
    again = parse(text)
    assert again == stmts
    assert print_program(again) == text


@settings(max_examples=200)
@given(exprs("r", 3))
def test_expression_round_trip(e):
    assert parse_expr(print_expr(e)) == e
