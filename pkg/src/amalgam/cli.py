"""Command-line driver: a small ring-expression language plus report emission.

Statements (newlines and ``;`` are optional separators, ``#`` starts a
comment)::

    let R = zmod(48)
    let S = quot(R, ideal(R, [24]))
    let f = canon(R, S)
    let J = ideal(S, [6])
    let A = amalgam(f, J)
    check gaussian A
    verify T-gauss-fwd A
    search prufer,!gaussian --max-size 1100
    infer "Zp+XQ[[X]]" A.is_gaussian

Exit codes: 0 success, 1 falsified claim (or a false check under
``--assert``), 2 input error, 3 resource cap.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass, field

from .constructions import (AmalgamInstance, amalgam_max_expected, amalgam_spec_expected,
                            amalgamation, classify_lift, duplication, has_condition_star,
                            identity_hom, lemma_conditions, prime_lifts, star_sets,
                            trivial_extension)
from .errors import InconsistencyError, InputError, QueryError, ResourceCapError
from .ideals import all_ideals, ideal_generated, max_spec, spec, zero_divisor_mask
from .modules import (free_module, module_from_ideal, module_from_ring,
                      module_quotient, module_via_hom)
from .predicates import PREDICATES, chain_witness, gaussian_direct_check, gaussian_witness
from .rings import (SIZE_CAP, FiniteRing, Polynomial, hom_from_generator,
                    make_gf, make_poly_quotient, make_product, make_quotient, make_zmod)

KEYWORDS = {"let", "check", "zsets", "spec", "verify", "search", "infer", "suite"}
COMMANDS = KEYWORDS - {"let"}


class ParseError(InputError):
    def __init__(self, message, line, col):
        super().__init__(f"line {line}, column {col}: {message}")
        self.line, self.col = line, col


# --- lexer ------------------------------------------------------------------------

_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r]+) | (?P<nl>\n|;) | (?P<comment>\#[^\n]*)
  | (?P<option>--[A-Za-z][A-Za-z0-9-]*)
  | (?P<int>\d+)
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<string>"[^"\n]*")
  | (?P<arrow>->)
  | (?P<punct>[()\[\],=^+\-*!~.])
""", re.VERBOSE)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    col: int
    end: int        # offset just past the token, for adjacency tests
    start: int


def tokenize(source):
    out = []
    line, line_start, pos = 1, 0, 0
    while pos < len(source):
        m = _TOKEN.match(source, pos)
        if m is None:
            raise ParseError(f"unexpected character {source[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind == "nl" and m.group() == "\n":
            line, line_start = line + 1, m.end()
        elif kind not in ("ws", "nl", "comment"):
            out.append(Token(kind, m.group(), line, m.start() - line_start + 1, m.end(),
                             m.start()))
        pos = m.end()
    out.append(Token("eof", "", line, pos - line_start + 1, pos, pos))
    return out


# --- AST --------------------------------------------------------------------------

Pos = tuple


@dataclass(frozen=True)
class Int:
    value: int
    pos: Pos = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Name:
    id: str
    pos: Pos = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Poly:
    terms: tuple            # ((exponent, coefficient), ...) descending, nonzero
    pos: Pos = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class ElemList:
    items: tuple
    pos: Pos = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class MapSpec:
    source: Poly
    image: Poly
    pos: Pos = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Call:
    fn: str
    args: tuple
    pos: Pos = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Let:
    name: str
    expr: object
    pos: Pos = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Command:
    name: str
    args: tuple
    pos: Pos = field(default=(0, 0), compare=False)


# argument kinds per constructor: r ring, i ideal, h hom, m module, n int,
# p poly, l element list, s map spec
SIGNATURES = {
    "zmod": ("n", "ring"), "gf": ("n", "ring"), "polyquot": ("rp", "ring"),
    "product": ("rr", "ring"), "quot": ("ri", "ring"), "ideal": ("rl", "ideal"),
    "canon": ("rr", "hom"), "hom": ("rrs", "hom"), "amalgam": ("hi", "instance"),
    "dup": ("ri", "instance"), "trivext": ("rm", "instance"),
    "ringmod": ("r", "module"), "free": ("rn", "module"), "quotmod": ("ri", "module"),
    "idealmod": ("i", "module"), "extmod": ("rr", "module"),
}
KIND_NAMES = {"r": "ring", "i": "ideal", "h": "hom", "m": "module", "n": "integer",
              "p": "polynomial", "l": "element list", "s": "map X -> element"}


# --- parser -----------------------------------------------------------------------


class Parser:
    def __init__(self, source):
        self.toks = tokenize(source)
        self.i = 0

    @property
    def tok(self):
        return self.toks[self.i]

    def error(self, msg, tok=None):
        tok = tok or self.tok
        shown = tok.text or "end of input"
        raise ParseError(f"{msg} (found {shown!r})", tok.line, tok.col)

    def advance(self):
        t = self.tok
        self.i += 1
        return t

    def accept(self, text):
        if self.tok.text == text and self.tok.kind != "string":
            return self.advance()
        return None

    def expect(self, text):
        if self.tok.text != text or self.tok.kind == "string":
            self.error(f"expected {text!r}")
        return self.advance()

    def expect_kind(self, kind, what):
        if self.tok.kind != kind:
            self.error(f"expected {what}")
        return self.advance()

    def at_stmt_end(self):
        return self.tok.kind == "eof" or (self.tok.kind == "name" and self.tok.text in KEYWORDS)

    # programs

    def program(self):
        out = []
        while self.tok.kind != "eof":
            out.append(self.statement())
        return out

    def statement(self):
        t = self.tok
        if t.kind != "name" or t.text not in KEYWORDS:
            self.error("expected 'let' or a command")
        self.advance()
        pos = (t.line, t.col)
        if t.text == "let":
            name = self.expect_kind("name", "a name")
            if name.text in KEYWORDS or name.text in SIGNATURES:
                self.error("reserved word cannot be bound", name)
            self.expect("=")
            return Let(name.text, self.expr(), pos)
        return getattr(self, "cmd_" + t.text)(pos)

    def dashed(self, what):
        """NAME(-NAME|-INT)* with no whitespace, for claim ids and predicates."""
        t = self.tok
        if t.kind not in ("name", "int"):
            self.error(f"expected {what}")
        self.advance()
        parts, end = [t.text], t.end
        while (self.tok.text == "-" and self.tok.start == end
               and self.toks[self.i + 1].kind in ("name", "int")
               and self.toks[self.i + 1].start == self.tok.end):
            self.advance()
            nt = self.advance()
            parts.append(nt.text)
            end = nt.end
        return "-".join(parts), t

    def cmd_check(self, pos):
        pred, _ = self.dashed("a predicate name")
        return Command("check", (pred, self.expr()), pos)

    def cmd_zsets(self, pos):
        return Command("zsets", (self.expr(),), pos)

    def cmd_spec(self, pos):
        return Command("spec", (self.expr(),), pos)

    def cmd_verify(self, pos):
        claim, _ = self.dashed("a claim id")
        targets = []
        while not self.at_stmt_end():
            targets.append(self.expr())
        if not targets:
            self.error("verify needs at least one target")
        return Command("verify", (claim,) + tuple(targets), pos)

    def cmd_search(self, pos):
        lits = []
        while True:
            want = True
            while self.tok.text in ("!", "~"):
                self.advance()
                want = not want
            name, _ = self.dashed("a predicate name")
            lits.append((name, want))
            if not self.accept(","):
                break
        bounds = []
        while self.tok.kind == "option":
            opt = self.advance().text
            val = self.expect_kind("int", "an integer bound")
            bounds.append((opt, int(val.text)))
        return Command("search", (tuple(lits), tuple(bounds)), pos)

    def cmd_infer(self, pos):
        entry = self.expect_kind("string", "a quoted knowledge-base entry name").text[1:-1]
        query = None
        if self.tok.kind == "name" and self.tok.text not in KEYWORDS:
            ent = self.advance().text
            self.expect(".")
            attr = self.expect_kind("name", "an attribute").text
            query = (ent, attr)
        return Command("infer", (entry, query), pos)

    def cmd_suite(self, pos):
        claims = []
        while not self.at_stmt_end():
            claims.append(self.dashed("a claim id")[0])
        return Command("suite", tuple(claims), pos)

    # expressions

    def expr(self):
        t = self.tok
        pos = (t.line, t.col)
        if t.kind == "int":
            self.advance()
            return Int(int(t.text), pos)
        if t.kind == "name" and t.text not in KEYWORDS:
            self.advance()
            if self.tok.text == "(":
                if t.text not in SIGNATURES:
                    self.error(f"unknown constructor {t.text!r}", t)
                return self.call(t.text, pos)
            return Name(t.text, pos)
        self.error("expected an expression")

    def call(self, fn, pos):
        self.expect("(")
        kinds = SIGNATURES[fn][0]
        args = []
        for k, kind in enumerate(kinds):
            if k:
                self.expect(",")
            if kind == "p":
                args.append(self.poly())
            elif kind == "l":
                args.append(self.elem_list())
            elif kind == "s":
                args.append(self.mapspec())
            else:
                args.append(self.expr())
        self.expect(")")
        return Call(fn, tuple(args), pos)

    def elem_list(self):
        t = self.expect("[")
        items = []
        if not self.accept("]"):
            items.append(self.poly())
            while self.accept(","):
                items.append(self.poly())
            self.expect("]")
        return ElemList(tuple(items), (t.line, t.col))

    def mapspec(self):
        t = self.tok
        src = self.poly()
        self.expect("->")
        return MapSpec(src, self.poly(), (t.line, t.col))

    def poly(self):
        t = self.tok
        acc = {}
        sign = -1 if self.accept("-") else 1
        while True:
            e, c = self.term()
            acc[e] = acc.get(e, 0) + sign * c
            if self.accept("+"):
                sign = 1
            elif self.accept("-"):
                sign = -1
            else:
                break
        terms = tuple((e, c) for e, c in sorted(acc.items(), reverse=True) if c != 0)
        return Poly(terms, (t.line, t.col))

    def term(self):
        coef = 1
        if self.tok.kind == "int":
            coef = int(self.advance().text)
            if not self.accept("*") and not (self.tok.kind == "name" and self.tok.text == "X"):
                return 0, coef
        if self.tok.kind != "name" or self.tok.text != "X":
            self.error("expected X or an integer")
        self.advance()
        exp = 1
        if self.accept("^"):
            exp = int(self.expect_kind("int", "an exponent").text)
        return exp, coef


def parse(source):
    """Parse a program into a list of Let / Command statements."""
    return Parser(source).program()


def parse_expr(source):
    p = Parser(source)
    e = p.expr()
    if p.tok.kind != "eof":
        p.error("trailing input")
    return e


# --- printer --------------------------------------------------------------------------


def print_poly(p):
    if not p.terms:
        return "0"
    out = []
    for k, (e, c) in enumerate(p.terms):
        neg = c < 0
        a = abs(c)
        if e == 0:
            body = str(a)
        else:
            x = "X" if e == 1 else f"X^{e}"
            body = x if a == 1 else f"{a}*{x}"
        if k == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


def print_expr(e):
    if isinstance(e, Int):
        return str(e.value)
    if isinstance(e, Name):
        return e.id
    if isinstance(e, Poly):
        return print_poly(e)
    if isinstance(e, ElemList):
        return "[" + ", ".join(print_poly(p) for p in e.items) + "]"
    if isinstance(e, MapSpec):
        return f"{print_poly(e.source)} -> {print_poly(e.image)}"
    if isinstance(e, Call):
        return f"{e.fn}(" + ", ".join(print_expr(a) for a in e.args) + ")"
    raise TypeError(f"not an expression: {e!r}")


def print_stmt(s):
    if isinstance(s, Let):
        return f"let {s.name} = {print_expr(s.expr)}"
    a = s.args
    if s.name == "check":
        return f"check {a[0]} {print_expr(a[1])}"
    if s.name in ("zsets", "spec"):
        return f"{s.name} {print_expr(a[0])}"
    if s.name == "verify":
        return " ".join(["verify", a[0]] + [print_expr(t) for t in a[1:]])
    if s.name == "search":
        prof = ",".join(("" if want else "!") + n for n, want in a[0])
        return " ".join([f"search {prof}"] + [f"{o} {v}" for o, v in a[1]])
    if s.name == "infer":
        q = f" {a[1][0]}.{a[1][1]}" if a[1] else ""
        return f'infer "{a[0]}"{q}'
    if s.name == "suite":
        return " ".join(("suite",) + a)
    raise TypeError(f"unknown command {s.name!r}")


def print_program(stmts):
    return "\n".join(print_stmt(s) for s in stmts) + "\n"


# --- static types ----------------------------------------------------------------------


def _type_error(pos, msg):
    raise ParseError(f"type error: {msg}", *pos)


def infer_type(e, env):
    if isinstance(e, Int):
        return "integer"
    if isinstance(e, Name):
        if e.id not in env:
            raise ParseError(f"unbound name {e.id!r}", *e.pos)
        return env[e.id]
    if isinstance(e, Call):
        kinds, result = SIGNATURES[e.fn]
        for k, (kind, arg) in enumerate(zip(kinds, e.args)):
            if kind in "psl":
                continue
            want = KIND_NAMES[kind]
            got = infer_type(arg, env)
            if got != want:
                _type_error(arg.pos, f"argument {k + 1} of {e.fn} must be a {want}, got {got}")
        return result
    raise TypeError(e)


def typecheck(stmts, env=None):
    """Check argument kinds and bindings; returns the final type environment."""
    env = dict(env or {})
    for s in stmts:
        if isinstance(s, Let):
            env[s.name] = infer_type(s.expr, env)
            continue
        targets = {"check": s.args[1:2], "zsets": s.args[:1], "spec": s.args[:1],
                   "verify": s.args[1:]}.get(s.name, ())
        for t in targets:
            got = infer_type(t, env)
            allowed = ("instance",) if s.name == "zsets" else ("ring", "instance")
            if got not in allowed:
                _type_error(t.pos, f"{s.name} needs a {' or '.join(allowed)}, got {got}")
    return env


# --- evaluation -------------------------------------------------------------------------


@dataclass
class Options:
    fmt: str = "text"
    assert_true: bool = False
    seed: int = 0
    max_ring_size: int | None = None
    max_ideals: int | None = None
    degree: int = 3
    samples: int = 100_000
    jobs: int = 1
    kb: str | None = None


class Session:
    """Sequential evaluator with a named environment."""

    def __init__(self, options=None, out=None):
        self.opt = options or Options()
        self.env = {}
        self.types = {}
        self.out = out if out is not None else sys.stdout
        self.status = 0
        self._corpus = None
        self._kb = None

    # output

    def emit(self, record, text):
        if self.opt.fmt == "structured":
            self.out.write(json.dumps(record, ensure_ascii=False) + "\n")
        else:
            self.out.write(text.rstrip("\n") + "\n")

    def fail(self):
        self.status = max(self.status, 1)

    # value construction

    @property
    def size_cap(self):
        return self.opt.max_ring_size or SIZE_CAP

    def _cap(self, n, what):
        if n > self.size_cap:
            raise ResourceCapError(f"{what} of size {n} exceeds --max-ring-size {self.size_cap}")

    def value(self, e):
        if isinstance(e, Int):
            return e.value
        if isinstance(e, Name):
            return self.env[e.id]
        return getattr(self, "make_" + e.fn)(e, *e.args)

    def element(self, R, p):
        acc = R.zero
        for e, c in p.terms:
            if e > 0:
                if R.generator is None:
                    raise ParseError(f"type error: {R.name} has no generator X", *p.pos)
                x = int(R.mul(R.from_int(c), R.pow(R.generator, e)))
            else:
                x = R.from_int(c)
            acc = int(R.add(acc, x))
        return acc

    def make_zmod(self, e, n):
        n = self.value(n)
        self._cap(n, "Z/n")
        return make_zmod(n)

    def make_gf(self, e, p):
        return make_gf(self.value(p))

    def make_polyquot(self, e, base, poly):
        base = self.value(base)
        if base.tag[0] != "zmod":
            raise ParseError("type error: polyquot needs a Z/n base ring", *e.args[0].pos)
        if not poly.terms:
            raise ParseError("modulus must be nonzero", *poly.pos)
        deg = poly.terms[0][0]
        self._cap(base.size ** deg, "polynomial quotient")
        coeffs = [0] * (deg + 1)
        for k, c in poly.terms:
            coeffs[k] = c
        return make_poly_quotient(base, Polynomial.from_ints(base, coeffs), size_cap=self.size_cap)

    def make_product(self, e, a, b):
        return make_product(self.value(a), self.value(b), size_cap=self.size_cap)

    def make_quot(self, e, R, I):
        R, I = self.value(R), self.value(I)
        self._same_ring(I.ring, R, e.args[1].pos)
        return make_quotient(R, I)[0]

    def make_ideal(self, e, R, elems):
        R = self.value(R)
        return ideal_generated(R, [self.element(R, p) for p in elems.items])

    def _same_ring(self, a, b, pos):
        if a is not b:
            raise ParseError(f"type error: {a.name} is not {b.name}", *pos)

    def make_canon(self, e, R, S):
        R, S = self.value(R), self.value(S)
        if S is R:
            return identity_hom(R)
        chain, Q = [], S
        while Q.meta.get("parent") is not None:
            chain.append(Q.meta["projection"])
            if Q.meta["parent"] is R:
                f = chain.pop()
                while chain:
                    f = chain.pop().compose(f)
                return f
            Q = Q.meta["parent"]
        if R.tag[0] == "zmod" and S.characteristic == R.size:
            return hom_from_generator(R, S)
        raise ParseError(f"no canonical map {R.name} -> {S.name}", *e.pos)

    def make_hom(self, e, R, S, spec):
        R, S = self.value(R), self.value(S)
        src = spec.source.terms
        if R.generator is None:
            if src != ((0, 1),) or self.element(S, spec.image) != S.one:
                raise ParseError("a map out of Z/n is fixed by 1 -> 1", *spec.pos)
            return hom_from_generator(R, S)
        if src != ((1, 1),):
            raise ParseError("map spec must send X to an element", *spec.pos)
        return hom_from_generator(R, S, self.element(S, spec.image))

    def make_amalgam(self, e, f, J):
        f, J = self.value(f), self.value(J)
        self._same_ring(J.ring, f.codomain, e.args[1].pos)
        self._cap(f.domain.size * J.size, "amalgamation")
        return amalgamation(f, J)

    def make_dup(self, e, R, I):
        R, I = self.value(R), self.value(I)
        self._same_ring(I.ring, R, e.args[1].pos)
        self._cap(R.size * I.size, "duplication")
        return duplication(R, I)

    def make_trivext(self, e, R, M):
        R, M = self.value(R), self.value(M)
        self._same_ring(M.base, R, e.args[1].pos)
        self._cap(R.size * M.size, "trivial extension")
        return trivial_extension(R, M)[1]

    def make_ringmod(self, e, R):
        return module_from_ring(self.value(R))

    def make_free(self, e, R, n):
        R, n = self.value(R), self.value(n)
        self._cap(R.size ** n, "free module")
        return free_module(R, n)

    def make_quotmod(self, e, R, I):
        R, I = self.value(R), self.value(I)
        self._same_ring(I.ring, R, e.args[1].pos)
        return module_quotient(R, I)

    def make_idealmod(self, e, I):
        I = self.value(I)
        return module_from_ideal(I.ring, I)

    def make_extmod(self, e, R, B):
        f = self.make_canon(e, R, B)
        M = module_via_hom(f, module_from_ring(f.codomain))
        M.meta["domain_extension"] = f
        return M

    # commands

    def run(self, stmts):
        self.types = typecheck(stmts, self.types)
        for s in stmts:
            if isinstance(s, Let):
                self.env[s.name] = self.value(s.expr)
            else:
                getattr(self, "do_" + s.name)(s)
        return self.status

    def _instance(self, e):
        from .verifier.instances import RingInstance
        v = self.value(e)
        if isinstance(v, FiniteRing):
            return RingInstance(v, label=print_expr(e) if not isinstance(e, Name) else e.id)
        return v

    def _ring_of(self, v):
        return v.A if isinstance(v, AmalgamInstance) else v

    def do_check(self, s):
        pred, target = s.args
        v = self.value(target)
        R = self._ring_of(v)
        witness = None
        if pred == "star":
            if not isinstance(v, AmalgamInstance):
                raise ParseError("type error: star needs an amalgamation", *target.pos)
            val = has_condition_star(v)
        elif pred == "gaussian-direct":
            res = gaussian_direct_check(R, max_degree=self.opt.degree,
                                        sample_budget=self.opt.samples, seed=self.opt.seed,
                                        lattice_cap=self.opt.max_ideals or 400)
            val = res.passed
            witness = {"mode": res.mode, "exhaustive_degree": res.exhaustive_degree,
                       "pairs_checked": res.pairs_checked, "seed": res.seed,
                       "counterexample": None if res.witness is None else str(res.witness)}
        elif pred in PREDICATES:
            val = bool(PREDICATES[pred](R))
            if not val and pred == "gaussian":
                m, w = gaussian_witness(R)
                witness = w.describe()
            elif not val and pred == "chain":
                a, b = chain_witness(R)
                witness = f"({R.format(a)}) and ({R.format(b)}) are incomparable"
        else:
            raise ParseError(f"unknown predicate {pred!r}", *s.pos)
        if not val and self.opt.assert_true:
            self.fail()
        label = print_expr(target)
        rec = {"command": "check", "predicate": pred, "target": label, "value": bool(val),
               "witness": witness}
        text = f"{pred} {label}: {str(bool(val)).lower()}"
        if witness is not None and not isinstance(witness, dict):
            text += f"\n  witness: {witness}"
        self.emit(rec, text)

    def do_zsets(self, s):
        inst = self.value(s.args[0])
        S1, S2 = star_sets(inst)
        Z = zero_divisor_mask(inst.A)
        union = S1 | S2
        conds = lemma_conditions(inst).as_tuple()
        A = inst.A

        def listing(mask):
            idx = [int(i) for i in mask.nonzero()[0]]
            return [A.format(i) for i in idx] if A.size <= 64 else len(idx)

        rec = {"command": "zsets", "target": print_expr(s.args[0]),
               "S1": listing(S1), "S2": listing(S2), "Z": listing(Z),
               "Z_in_union": bool((~Z | union).all()), "Z_equals_union": bool((Z == union).all()),
               "condition_star": bool(has_condition_star(inst)),
               "lemma_conditions": [bool(c) for c in conds]}
        lines = [f"zero-divisor sets of {rec['target']} (|A| = {A.size})"]
        for k in ("S1", "S2", "Z"):
            lines.append(f"  {k}: {rec[k]}")
        lines.append(f"  Z in S1 u S2: {rec['Z_in_union']}; equal: {rec['Z_equals_union']}")
        lines.append(f"  condition star: {rec['condition_star']}; "
                     f"conditions (1)-(4): {rec['lemma_conditions']}")
        self.emit(rec, "\n".join(lines))

    def do_spec(self, s):
        v = self.value(s.args[0])
        R = self._ring_of(v)

        def fmt(I):
            return "(" + ", ".join(R.format(g) for g in I.generators) + ")"

        primes, maxes = spec(R), max_spec(R)
        rec = {"command": "spec", "target": print_expr(s.args[0]), "size": R.size,
               "primes": [fmt(P) for P in primes], "maximal": [fmt(M) for M in maxes]}
        if isinstance(v, AmalgamInstance):
            exp = amalgam_spec_expected(v)
            rec["matches_description"] = (
                {P.key for P in primes} == {P.key for P in exp}
                and {M.key for M in maxes} == {M.key for M in amalgam_max_expected(v)})
            rec["lifts"] = [classify_lift(v, L) for L in prime_lifts(v)]
        if self.opt.max_ideals is not None:
            rec["ideals"] = len(all_ideals(R, cap=self.opt.max_ideals))
        lines = [f"Spec of {rec['target']} (|R| = {R.size})",
                 "  primes: " + ", ".join(rec["primes"]),
                 "  maximal: " + ", ".join(rec["maximal"])]
        if "matches_description" in rec:
            lines.append(f"  agrees with the lift description: {rec['matches_description']}")
        if "ideals" in rec:
            lines.append(f"  ideals: {rec['ideals']}")
        self.emit(rec, "\n".join(lines))

    def do_verify(self, s):
        from .verifier.report import FALSIFIED, to_json, to_text
        from .verifier.suite import verify
        claim = s.args[0]
        for t in s.args[1:]:
            report = verify(claim, self._instance(t), strict=False)
            if report.status == FALSIFIED:
                self.fail()
            self.emit(json.loads(to_json(report)), to_text(report))

    def corpus(self):
        if self._corpus is None:
            from .verifier.corpus import CorpusBounds, generate_corpus
            b = CorpusBounds()
            if self.opt.max_ring_size is not None:
                n = self.opt.max_ring_size
                b = CorpusBounds(zmod_max=min(b.zmod_max, n), polyx_max=min(b.polyx_max, n),
                                 max_amalgam_size=min(b.max_amalgam_size, n),
                                 trivext_max=min(b.trivext_max, n))
            self._corpus = generate_corpus(b)
        return self._corpus

    def do_search(self, s):
        from .verifier.suite import search
        lits, bounds = s.args
        max_size = limit = None
        for opt, val in bounds:
            if opt == "--max-size":
                max_size = val
            elif opt == "--limit":
                limit = val
            else:
                raise ParseError(f"unknown search bound {opt!r}", *s.pos)
        hits = search(list(lits), self.corpus(), max_size=max_size)
        if limit is not None:
            hits = hits[:limit]
        prof = ",".join(("" if w else "!") + n for n, w in lits)
        rec = {"command": "search", "profile": prof, "max_size": max_size,
               "matches": [{"instance": h.digest(), "size": h.A.size} for h in hits]}
        lines = [f"{len(hits)} instances match {prof}"]
        lines += [f"  |A| = {h.A.size}  {h.digest()}" for h in hits]
        self.emit(rec, "\n".join(lines))

    def kb(self):
        if self._kb is None:
            from .symbolic import load_kb
            self._kb = load_kb(self.opt.kb)
        return self._kb

    def do_infer(self, s):
        from .symbolic import applicability, apply_rules, explain, render
        name, query = s.args
        kb = self.kb()
        if name not in kb:
            raise QueryError(f"no knowledge-base entry {name!r}")
        case = apply_rules(kb[name])
        if query is not None:
            node = explain(case, *query)
            rec = {"command": "infer", "entry": name, "query": f"{query[0]}.{query[1]}",
                   "value": node.value, "derivation": render(node).splitlines()}
            self.emit(rec, render(node))
            return
        facts = [{"attribute": f"{e}.{a}", "value": f.value, "source": f.source, "ref": f.ref}
                 for (e, a), f in sorted(case.facts.items())]
        # a result counts as blocked when every rule transcribing it has a false premise
        status = {}
        for r in applicability(case):
            rid = r["rule"].split("/")[0]
            status.setdefault(rid, set()).add(r["status"])
        blocked = sorted(rid for rid, st in status.items()
                         if st == {"blocked"} and not rid.startswith("D-"))
        rec = {"command": "infer", "entry": name, "facts": facts, "blocked_rules": blocked}
        lines = [f"{name}"]
        lines += [f"  {x['attribute']} = {x['value']}  [{x['source']} {x['ref']}]" for x in facts]
        lines.append("  blocked: " + ", ".join(blocked))
        self.emit(rec, "\n".join(lines))

    def do_suite(self, s):
        from .verifier.suite import run_suite
        summary = run_suite(self.corpus(), claims=list(s.args) or None, jobs=self.opt.jobs)
        if not summary.ok:
            self.fail()
        self.emit(json.loads(summary.to_json()), summary.to_text())


# --- entry point ------------------------------------------------------------------------


def build_parser():
    p = argparse.ArgumentParser(prog="amalgam", description=__doc__.split("\n\n")[0])
    p.add_argument("-f", "--file", help="session file to run ('-' for stdin)")
    p.add_argument("--format", choices=("text", "structured"), default="text")
    p.add_argument("--assert", dest="assert_true", action="store_true",
                   help="exit 1 when a check evaluates to false")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-ring-size", type=int, default=None)
    p.add_argument("--max-ideals", type=int, default=None)
    p.add_argument("--degree", type=int, default=3)
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--kb", default=None, help="knowledge-base JSON file")
    p.add_argument("program", nargs=argparse.REMAINDER,
                   help="statements to run, e.g. check chain 'zmod(12)'")
    return p


def main(argv=None, out=None, err=None):
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    opts = Options(args.format, args.assert_true, args.seed, args.max_ring_size,
                   args.max_ideals, args.degree, args.samples, args.jobs, args.kb)
    try:
        if args.file:
            if args.file == "-":
                source = sys.stdin.read()
            else:
                with open(args.file, encoding="utf-8") as fh:
                    source = fh.read()
        else:
            source = " ".join(args.program)
        if not source.strip():
            raise InputError("nothing to run: give statements or --file")
        session = Session(opts, out)
        return session.run(parse(source))
    except ResourceCapError as e:
        return _report_error(err, out, opts, "resource-cap", e, 3)
    except InconsistencyError as e:
        return _report_error(err, out, opts, "inconsistency", e, 1)
    except (InputError, QueryError, OSError) as e:
        return _report_error(err, out, opts, "input", e, 2)


def _report_error(err, out, opts, kind, e, code):
    err.write(f"error ({kind}): {e}\n")
    if opts.fmt == "structured":
        rec = {"error": kind, "message": str(e)}
        if isinstance(e, ParseError):
            rec.update(line=e.line, column=e.col)
        out.write(json.dumps(rec) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
