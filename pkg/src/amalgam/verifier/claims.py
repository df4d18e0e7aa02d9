"""Registry of the amalgamation results as executable claims.

Each claim has a shape (which instances it talks about), a list of
standing hypotheses, and a conclusion.  Directional results are
evaluated as implications inside the conclusion, recording the values of
both sides; two-sided results are evaluated as equivalences.  All
hypotheses are evaluated even after one fails.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from ..constructions import (J_in_image, amalgam_max_expected, amalgam_spec_expected,
                             classify_lift, has_condition_star, lemma_conditions,
                             localization_iso, mult_set_T, prime_lifts, star_sets,
                             trivext_zero_divisor_formula)
from ..errors import InvariantError
from ..ideals import jacobson, max_spec, spec, zero_divisor_mask
from ..modules import (MultiplicativeSet, complement_set, has_distributive_lattice,
                       is_locally_divisible, is_uniserial, localization_kernel,
                       localize_module, localize_ring, module_is_zero_at, support,
                       zero_divisors_on)
from ..predicates import (hom_regular_to_regular, is_arithmetical, is_chain_ring, is_domain,
                          is_gaussian, is_local, is_prufer, is_total_quotient_ring,
                          is_valuation_domain, localizations_at_maximals, regular_total_order,
                          regular_total_order_fast, z_subset_jac)
from .instances import is_amalgam


# --- witness formatting ---------------------------------------------------------


def el(R, x):
    return R.format(int(x))


def ideal_info(I):
    return {"generators": [el(I.ring, g) for g in I.generators], "size": I.size}


def a_el(inst, a):
    r, s = inst.pair(int(a))
    return f"({el(inst.R, r)}, {el(inst.S, s)})"


def _first(mask):
    idx = np.flatnonzero(mask)
    return int(idx[0]) if len(idx) else None


# --- shapes ---------------------------------------------------------------------------


def shape_amalgam(inst):
    return is_amalgam(inst)


def shape_duplication(inst):
    return is_amalgam(inst) and inst.is_duplication()


def shape_trivext(inst):
    return is_amalgam(inst) and inst.kind == "trivext"


def shape_any(inst):
    return True


SHAPES = {
    "amalgam": shape_amalgam,
    "duplication": shape_duplication,
    "trivial-extension": shape_trivext,
    "ring": shape_any,
}


# --- atomic computations (each returns (holds, witness-or-None)) ----------------------


def _cached(inst, key, fn):
    if key not in inst.cache:
        inst.cache[key] = fn()
    return inst.cache[key]


def f_reg_to_reg(inst):
    def compute():
        if hom_regular_to_regular(inst.f):
            return True, None
        regR = ~zero_divisor_mask(inst.R)
        bad = regR & zero_divisor_mask(inst.S)[inst.f.map]
        r = _first(bad)
        return False, {"r": el(inst.R, r), "f(r)": el(inst.S, inst.f.map[r])}
    return _cached(inst, "c:f_reg", compute)


def J_subset_jac_S(inst):
    bad = inst.J.mask & ~jacobson(inst.S).mask
    x = _first(bad)
    return x is None, None if x is None else {"j": el(inst.S, x)}


def J_subset_fR(inst):
    if J_in_image(inst):
        return True, None
    x = _first(inst.J.mask & ~inst.f.image_mask())
    return False, {"j": el(inst.S, x)}


def J_subset_fR_jac(inst):
    h1, w1 = J_subset_fR(inst)
    h2, w2 = J_subset_jac_S(inst)
    return h1 and h2, w1 or w2


def R_local(inst):
    n = len(max_spec(inst.R))
    return n == 1, None if n == 1 else {"maximal_ideals": n}


def J_nonzero(inst):
    return not inst.J.is_zero(), None


def J_square_zero(inst):
    jm = inst.J.members
    prods = inst.S.mul_table[np.ix_(jm, jm)]
    bad = np.argwhere(prods != inst.S.zero)
    if not len(bad):
        return True, None
    i, k = bad[0]
    return False, {"j1": el(inst.S, jm[i]), "j2": el(inst.S, jm[k]),
                   "product": el(inst.S, prods[i, k])}


def star(inst):
    if has_condition_star(inst):
        return True, None
    s1, s2 = star_sets(inst)
    a = _first(zero_divisor_mask(inst.A) != (s1 | s2))
    return False, {"element": a_el(inst, a)}


def zd_inclusion(inst):
    s1, s2 = star_sets(inst)
    a = _first(zero_divisor_mask(inst.A) & ~(s1 | s2))
    return a is None, None if a is None else {"element": a_el(inst, a)}


def zd_equality(inst):
    return star(inst)


def lemma_condition(k):
    def check(inst):
        return lemma_conditions(inst).as_tuple()[k - 1], None
    check.__name__ = f"lemma_condition_{k}"
    return check


def z_in_jac_ring(X):
    if z_subset_jac(X):
        return True, None
    x = _first(zero_divisor_mask(X) & ~jacobson(X).mask)
    return False, {"zero_divisor_outside_jac": el(X, x)}


def z_in_jac_A(inst):
    return _cached(inst, "c:zjacA", lambda: z_in_jac_ring(inst.A))


def z_in_jac_R(inst):
    return z_in_jac_ring(inst.R)


def I_in_jac_R(inst):
    x = _first(inst.J.mask & ~jacobson(inst.R).mask)
    return x is None, None if x is None else {"i": el(inst.R, x)}


def _covers(S, x, members):
    """x * members == members as sets (x * members is always inside)."""
    return len(np.unique(S.mul(int(x), members))) == len(members)


def J_stable_T(inst):
    """J_{T_m} = f(r) J_{T_m} for every maximal m of R and regular r."""
    def compute():
        regs = np.flatnonzero(~zero_divisor_mask(inst.R))
        for m in max_spec(inst.R):
            T = mult_set_T(inst, m)
            if localization_kernel(inst.S, T).is_unit():
                continue  # 0 in T: S_T and J_T are zero
            ST, rho = localize_ring(inst.S, T)
            JT = np.unique(rho.map[inst.J.members])
            for r in regs:
                if not _covers(ST, rho.map[inst.f.map[r]], JT):
                    return False, {"m": ideal_info(m), "r": el(inst.R, r)}
        return True, None
    return _cached(inst, "c:Jstable", compute)


def J_stable_global(inst):
    """J = f(r) J for every regular r."""
    S, jm = inst.S, inst.J.members
    for r in np.flatnonzero(~zero_divisor_mask(inst.R)):
        if not _covers(S, inst.f.map[r], jm):
            return False, {"r": el(inst.R, r)}
    return True, None


def module_stable_local(M):
    """M_m = r M_m for every maximal m of the base and regular r."""
    R = M.base
    regs = np.flatnonzero(~zero_divisor_mask(R))
    for m in max_spec(R):
        Mm = localize_module(M, complement_set(m))
        _, pi = localize_ring(R, complement_set(m))
        for r in regs:
            if len(np.unique(Mm.action[pi.map[r]])) != Mm.size:
                return False, {"m": ideal_info(m), "r": el(R, r)}
    return True, None


def dup_I_stable(inst):
    return module_stable_local(inst.J_module)


def trivext_M_stable(inst):
    return module_stable_local(inst.module)


def zM_in_zR(inst):
    zm = zero_divisors_on(inst.module)
    zr = set(np.flatnonzero(zero_divisor_mask(inst.R)).tolist())
    bad = sorted(zm - zr)
    return not bad, None if not bad else {"r": el(inst.R, bad[0])}


def pred(fn, ring_of):
    def check(inst):
        return bool(fn(ring_of(inst))), None
    return check


def A_of(inst):
    return inst.A


def R_of(inst):
    return inst.R


def trivext_ring(inst):
    return inst.cache["trivext_ring"]


def gauss_scaling(inst):
    """f(r) J = f(r)^2 J for every r in the maximal ideal of a local R."""
    S, jm = inst.S, inst.J.members
    for m in max_spec(inst.R):
        for r in m.members:
            x = int(inst.f.map[r])
            lhs = np.unique(S.mul(x, jm))
            rhs = np.unique(S.mul(int(S.mul(x, x)), jm))
            if not np.array_equal(lhs, rhs):
                return False, {"r": el(inst.R, r), "f(r)J_size": len(lhs),
                               "f(r)^2J_size": len(rhs)}
    return True, None


def _local_J(inst, m):
    """(S_U, rho, image of J) with U = f(R minus m), i.e. J localized at m."""
    U = MultiplicativeSet(inst.S, np.unique(inst.f.map[~m.mask]))
    SU, rho = localize_ring(inst.S, U)
    return SU, rho, np.unique(rho.map[inst.J.members])


def gauss_local_parts(inst):
    """For m in Max(R) containing f^-1(J): J_m^2 = 0 and f(r)J_m = f(r)^2 J_m, r in m."""
    finv = inst.f_inverse_J
    for m in max_spec(inst.R):
        if not finv <= m:
            continue
        SU, rho, Jm = _local_J(inst, m)
        prods = SU.mul_table[np.ix_(Jm, Jm)]
        bad = np.argwhere(prods != SU.zero)
        if len(bad):
            i, k = bad[0]
            # name an element of J lying over each localized factor
            lift = {int(rho.map[j]): int(j) for j in inst.J.members[::-1]}
            return False, {"m": ideal_info(m), "reason": "J_m^2 != 0",
                           "j1": el(inst.S, lift[int(Jm[i])]), "j2": el(inst.S, lift[int(Jm[k])]),
                           "product_class": el(SU, prods[i, k])}
        for r in m.members:
            x = int(rho.map[inst.f.map[r]])
            lhs = np.unique(SU.mul(x, Jm))
            rhs = np.unique(SU.mul(int(SU.mul(x, x)), Jm))
            if not np.array_equal(lhs, rhs):
                return False, {"m": ideal_info(m), "reason": "f(r)J_m != f(r)^2 J_m",
                               "r": el(inst.R, r)}
    return True, None


def J_uniserial(inst):
    return bool(is_uniserial(inst.J_module)), None


def J_scaled_by_unit_shift(inst):
    """J = (f(a) + j) J for every nonzero a in R and j in J."""
    S, jm = inst.S, inst.J.members
    for a in range(inst.R.size):
        if a == inst.R.zero:
            continue
        xs = S.add(int(inst.f.map[a]), jm)
        for x in np.unique(xs):
            if not _covers(S, x, jm):
                return False, {"a": el(inst.R, a), "f(a)+j": el(S, x)}
    return True, None


def J_scaled_by_f(inst):
    """J = f(a) J for every nonzero a in R."""
    S, jm = inst.S, inst.J.members
    for a in range(inst.R.size):
        if a != inst.R.zero and not _covers(S, inst.f.map[a], jm):
            return False, {"a": el(inst.R, a)}
    return True, None


def J_zero(inst):
    return inst.J.is_zero(), None


def R_p_domain_on_support(inst):
    for p in support(inst.J_module):
        L, _ = localize_ring(inst.R, complement_set(p))
        if not is_domain(L):
            return False, {"p": ideal_info(p)}
    return True, None


def J_locally_divisible(inst):
    return bool(is_locally_divisible(inst.J_module)), None


def J_distributive(inst):
    return bool(has_distributive_lattice(inst.J_module)), None


def J_locally_zero_on_V(inst):
    finv = inst.f_inverse_J
    for m in max_spec(inst.R):
        if finv <= m and not module_is_zero_at(inst.J_module, m):
            return False, {"m": ideal_info(m)}
    return True, None


def S_chain_off_V(inst):
    from ..modules import localize_at_prime
    for q in max_spec(inst.S):
        if inst.J <= q:
            continue
        L, _ = localize_at_prime(inst.S, q)
        if not is_chain_ring(L):
            return False, {"q": ideal_info(q)}
    return True, None


def q_lifts_exist(inst):
    return any(classify_lift(inst, L) == "a" for L in prime_lifts(inst)), None


def b_lifts_exist(inst):
    return any(classify_lift(inst, L) == "b" for L in prime_lifts(inst)), None


def c_lifts_exist(inst):
    return any(classify_lift(inst, L) == "c" for L in prime_lifts(inst)), None


def isos_of_case(case):
    def check(inst):
        for L in prime_lifts(inst):
            if classify_lift(inst, L) != case:
                continue
            try:
                localization_iso(inst, L)
            except InvariantError as e:
                return False, {"prime": ideal_info(L.source), "error": str(e)}
        return True, None
    check.__name__ = f"isos_{case}"
    return check


def spec_matches(inst):
    got = set(spec(inst.A))
    want = amalgam_spec_expected(inst)
    if got == want:
        return True, None
    return False, {"enumerated": sorted(I.size for I in got),
                   "described": sorted(I.size for I in want)}


def max_matches(inst):
    got = set(max_spec(inst.A))
    want = amalgam_max_expected(inst)
    if got == want:
        return True, None
    return False, {"enumerated": sorted(I.size for I in got),
                   "described": sorted(I.size for I in want)}


def trivext_formula(inst):
    T = trivext_ring(inst)
    formula = trivext_zero_divisor_formula(inst.R, inst.module)
    x = _first(zero_divisor_mask(T) != formula)
    return x is None, None if x is None else {"element": el(T, x)}


def loc_reg_equivalence(inst):
    """For every maximal m: r regular in R iff r/1 regular in R_m."""
    X = inst.A
    reg = ~zero_divisor_mask(X)
    for m, L, pi in localizations_at_maximals(X):
        loc_reg = ~zero_divisor_mask(L)[pi.map]
        bad = reg != loc_reg
        if bad.any():
            r = _first(bad)
            return False, {"m": ideal_info(m), "r": el(X, r), "regular": bool(reg[r])}
    return True, None


def rto_agreement(inst):
    X = inst.A
    for m in max_spec(X):
        slow, fast = regular_total_order(X, m), regular_total_order_fast(X, m)
        if slow != fast:
            return False, {"m": ideal_info(m), "definition": slow, "principal": fast}
    return True, None


def is_domain_extension(inst):
    f = inst.module.meta.get("domain_extension") if inst.module is not None else None
    if f is None:
        return False, {"reason": "module is not a ring extension of R"}
    return bool(f.is_injective() and is_domain(f.codomain)), None


def R_prufer_domain(inst):
    return bool(is_prufer(inst.R) and is_domain(inst.R)), None


def fraction_field_in_B(inst):
    """B = aB for every nonzero a of R (K inside B)."""
    f = inst.module.meta["domain_extension"]
    B = f.codomain
    for a in range(inst.R.size):
        if a != inst.R.zero and not _covers(B, f.map[a], B.arange()):
            return False, {"a": el(inst.R, a)}
    return True, None


# --- claim objects --------------------------------------------------------------------


Check = Callable[[object], tuple]


@dataclass(frozen=True)
class Part:
    name: str
    fn: Check


@dataclass(frozen=True)
class Claim:
    id: str
    shape: str
    statement: str
    hypotheses: tuple = ()
    # form: "statement" (conjunction of parts), "implies" or "iff"
    form: str = "statement"
    lhs: tuple = ()
    rhs: tuple = ()
    parts: tuple = ()
    notes: dict = field(default_factory=dict)


def P(name, fn):
    return Part(name, fn)


def _p(name, fn, ring_of):
    return Part(name, pred(fn, ring_of))


A_PRUFER = _p("A Prufer", is_prufer, A_of)
R_PRUFER = _p("R Prufer", is_prufer, R_of)
T_PRUFER = _p("R |x M Prufer", is_prufer, trivext_ring)
A_GAUSS = _p("A Gaussian", is_gaussian, A_of)
R_GAUSS = _p("R Gaussian", is_gaussian, R_of)
A_CHAIN = _p("A chain", is_chain_ring, A_of)
R_CHAIN = _p("R chain", is_chain_ring, R_of)
R_VD = _p("R valuation domain", is_valuation_domain, R_of)
A_ARITH = _p("A arithmetical", is_arithmetical, A_of)
R_ARITH = _p("R arithmetical", is_arithmetical, R_of)
A_TQR = _p("A total quotient ring", is_total_quotient_ring, A_of)
R_TQR = _p("R total quotient ring", is_total_quotient_ring, R_of)

H_FREG = P("f(Reg R) in Reg S", f_reg_to_reg)
H_STAR = P("condition star", star)
H_ZJAC_A = P("Z(A) in Jac(A)", z_in_jac_A)
H_RLOCAL = P("R local", R_local)
H_JJAC = P("J in Jac(S)", J_subset_jac_S)
H_JFR_JAC = P("J in f(R) & Jac(S)", J_subset_fR_jac)
H_JFR = P("J in f(R)", J_subset_fR)
H_JNZ = P("J nonzero", J_nonzero)
H_JSQ0 = P("J^2 = 0", J_square_zero)
J_STABLE = P("J_{T_m} = f(r) J_{T_m} (m max, r regular)", J_stable_T)


CLAIMS = [
    Claim("L-zd-inc", "amalgam", "Z(A) is contained in S1 u S2",
          parts=(P("Z(A) in S1 u S2", zd_inclusion),)),
    *[Claim(f"L-zd-eq{k}", "amalgam", f"Z(A) = S1 u S2 under condition ({k})",
            hypotheses=(P(f"condition ({k})", lemma_condition(k)),),
            parts=(P("Z(A) = S1 u S2", zd_equality),)) for k in (1, 2, 3, 4)],
    Claim("R-trivext", "trivial-extension",
          "R |x M has condition star and Z(R |x M) = {(r, m) : r in Z(R) u Z(M)}",
          parts=(P("condition star", star), P("zero-divisor formula", trivext_formula))),
    Claim("L-loc-reg", "ring", "with Z in Jac: r regular iff r/1 regular in every R_m",
          hypotheses=(P("Z in Jac", z_in_jac_A),),
          parts=(P("Reg(R) = Reg(R_m) pullback", loc_reg_equivalence),)),
    Claim("L-rto-fast", "ring",
          "with Z in Jac: regular total order property iff principal pairs comparable",
          hypotheses=(P("Z in Jac", z_in_jac_A),),
          parts=(P("definition and principal tests agree", rto_agreement),)),
    Claim("R-spec", "amalgam", "primes of A are the lifts p' and q-bar",
          parts=(P("Spec(A) described", spec_matches),)),
    Claim("R-max", "amalgam", "maximal ideals of A are the lifts of maximal ideals",
          parts=(P("Max(A) described", max_matches),)),
    Claim("R-loc-a", "amalgam", "A localized at q-bar is S_q",
          hypotheses=(P("some q in Spec(S) outside V(J)", q_lifts_exist),),
          parts=(P("isomorphisms (a) verify", isos_of_case("a")),)),
    Claim("R-loc-b", "amalgam", "A localized at p' is R_p when f^-1(J) is not in p",
          hypotheses=(P("some p not containing f^-1(J)", b_lifts_exist),),
          parts=(P("isomorphisms (b) verify", isos_of_case("b")),)),
    Claim("R-loc-c", "amalgam", "A localized at p' is R_p >< J_{T_p} when f^-1(J) is in p",
          hypotheses=(P("some p containing f^-1(J)", c_lifts_exist),),
          parts=(P("isomorphisms (c) verify", isos_of_case("c")),)),
    Claim("T-main-1", "amalgam", "A Prufer implies R Prufer and J_{T_m} = f(r)J_{T_m}",
          hypotheses=(H_FREG,), form="implies",
          lhs=(A_PRUFER,), rhs=(R_PRUFER, J_STABLE)),
    Claim("T-main-2", "amalgam", "R Prufer and J_{T_m} = f(r)J_{T_m} imply A Prufer",
          hypotheses=(H_FREG, H_STAR, H_ZJAC_A), form="implies",
          lhs=(R_PRUFER, J_STABLE), rhs=(A_PRUFER,)),
    Claim("C-local-1", "amalgam", "local case: A Prufer implies R Prufer and J = f(r)J",
          hypotheses=(H_RLOCAL, H_JJAC, H_FREG), form="implies",
          lhs=(A_PRUFER,), rhs=(R_PRUFER, P("J = f(r)J (r regular)", J_stable_global))),
    Claim("C-local-2", "amalgam", "local case: R Prufer and J = f(r)J imply A Prufer",
          hypotheses=(H_RLOCAL, H_JJAC, H_FREG, H_STAR), form="implies",
          lhs=(R_PRUFER, P("J = f(r)J (r regular)", J_stable_global)), rhs=(A_PRUFER,)),
    Claim("C-dup-1", "duplication", "R >< I Prufer implies R Prufer and I_m = rI_m",
          form="implies", lhs=(A_PRUFER,),
          rhs=(R_PRUFER, P("I_m = r I_m (m max, r regular)", dup_I_stable))),
    Claim("C-dup-2", "duplication", "R Prufer and I_m = rI_m imply R >< I Prufer",
          hypotheses=(P("Z(R) in Jac(R)", z_in_jac_R), P("I in Jac(R)", I_in_jac_R)),
          form="implies",
          lhs=(R_PRUFER, P("I_m = r I_m (m max, r regular)", dup_I_stable)), rhs=(A_PRUFER,)),
    Claim("C-dup-local", "duplication", "local R: R >< I Prufer iff R Prufer and I = rI",
          hypotheses=(H_RLOCAL,), form="iff",
          lhs=(A_PRUFER,), rhs=(R_PRUFER, P("I = rI (r regular)", J_stable_global))),
    Claim("C-trivext-1", "trivial-extension", "R |x M Prufer implies R Prufer and M_m = rM_m",
          hypotheses=(P("Z(M) in Z(R)", zM_in_zR),), form="implies",
          lhs=(T_PRUFER,), rhs=(R_PRUFER, P("M_m = r M_m", trivext_M_stable))),
    Claim("C-trivext-2", "trivial-extension", "R Prufer and M_m = rM_m imply R |x M Prufer",
          hypotheses=(P("Z(M) in Z(R)", zM_in_zR), P("Z(R) in Jac(R)", z_in_jac_R)),
          form="implies",
          lhs=(R_PRUFER, P("M_m = r M_m", trivext_M_stable)), rhs=(T_PRUFER,)),
    Claim("C-domain-ext", "trivial-extension",
          "A |x B Prufer iff A Prufer domain and K in B (domain extension A in B)",
          hypotheses=(P("M is a domain extension B of R", is_domain_extension),),
          form="iff", lhs=(T_PRUFER,),
          rhs=(P("R Prufer domain", R_prufer_domain), P("K in B", fraction_field_in_B)),
          notes={"delegated": "symbolic",
                 "reason": "infinite domain extensions are handled by the rule engine"}),
    Claim("P-tqr-1", "amalgam", "R total quotient ring implies A total quotient ring",
          hypotheses=(H_JJAC, H_STAR), form="implies", lhs=(R_TQR,), rhs=(A_TQR,)),
    Claim("P-tqr-2", "amalgam", "A total quotient ring implies R total quotient ring",
          hypotheses=(H_FREG,), form="implies", lhs=(A_TQR,), rhs=(R_TQR,)),
    Claim("T-gauss-fwd", "amalgam",
          "local R, J in f(R) & Jac(S): A Gaussian implies R Gaussian, J^2 = 0, f(r)J = f(r)^2J",
          hypotheses=(H_RLOCAL, H_JFR_JAC), form="implies", lhs=(A_GAUSS,),
          rhs=(R_GAUSS, P("J^2 = 0", J_square_zero),
               P("f(r)J = f(r)^2 J (r in m)", gauss_scaling))),
    Claim("T-gauss-bwd", "amalgam",
          "local R, J in f(R) & Jac(S): R Gaussian, J^2 = 0, f(r)J = f(r)^2J imply A Gaussian",
          hypotheses=(H_RLOCAL, H_JFR_JAC), form="implies",
          lhs=(R_GAUSS, P("J^2 = 0", J_square_zero),
               P("f(r)J = f(r)^2 J (r in m)", gauss_scaling)), rhs=(A_GAUSS,)),
    Claim("C-gauss-loc", "amalgam",
          "J in f(R) & Jac(S): A Gaussian iff R Gaussian and J_m^2 = 0, "
          "f(r)J_m = f(r)^2 J_m on Max(R) & V(f^-1(J))",
          hypotheses=(H_JFR_JAC,), form="iff", lhs=(A_GAUSS,),
          rhs=(R_GAUSS, P("local conditions on J_m", gauss_local_parts))),
    Claim("T-chain-fwd", "amalgam",
          "J nonzero: A chain implies R valuation domain and J = (f(a)+j)J",
          hypotheses=(H_JNZ,), form="implies", lhs=(A_CHAIN,),
          rhs=(R_VD, P("J = (f(a)+j)J", J_scaled_by_unit_shift))),
    Claim("T-chain-bwd", "amalgam",
          "J nonzero uniserial: R valuation domain and J = (f(a)+j)J imply A chain",
          hypotheses=(H_JNZ, P("J uniserial", J_uniserial)), form="implies",
          lhs=(R_VD, P("J = (f(a)+j)J", J_scaled_by_unit_shift)), rhs=(A_CHAIN,)),
    Claim("C-chain-sq0", "amalgam",
          "J nonzero, J^2 = 0: A chain iff R valuation domain, J uniserial, J = f(a)J",
          hypotheses=(H_JNZ, H_JSQ0), form="iff", lhs=(A_CHAIN,),
          rhs=(R_VD, P("J uniserial", J_uniserial), P("J = f(a)J", J_scaled_by_f))),
    Claim("C-chain-fR", "amalgam", "J in f(R): A chain iff R chain and J = 0",
          hypotheses=(H_JFR,), form="iff", lhs=(A_CHAIN,),
          rhs=(R_CHAIN, P("J = 0", J_zero))),
    Claim("C-dup-chain", "duplication", "R >< I chain iff R chain and I = 0",
          form="iff", lhs=(A_CHAIN,), rhs=(R_CHAIN, P("I = 0", J_zero))),
    Claim("C-arith-1", "amalgam",
          "J nonzero, J^2 = 0: A arithmetical iff R arithmetical, R_p domain on Supp(J), "
          "J locally divisible with distributive submodule lattice",
          hypotheses=(H_JNZ, H_JSQ0), form="iff", lhs=(A_ARITH,),
          rhs=(R_ARITH, P("R_p domain on Supp(J)", R_p_domain_on_support),
               P("J locally divisible", J_locally_divisible),
               P("J distributive", J_distributive))),
    Claim("C-arith-2", "amalgam",
          "J in f(R): A arithmetical iff R arithmetical, J_m = 0 on Max(R) & V(f^-1(J)), "
          "S_q chain off V(J)",
          hypotheses=(H_JFR,), form="iff", lhs=(A_ARITH,),
          rhs=(R_ARITH, P("J_m = 0 on V(f^-1(J))", J_locally_zero_on_V),
               P("S_q chain off V(J)", S_chain_off_V))),
]

REGISTRY = {c.id: c for c in CLAIMS}
CLAIM_IDS = tuple(REGISTRY)
