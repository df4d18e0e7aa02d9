"""Amalgamated algebras R >< ^f J and their special cases.

The amalgamation is the subring {(r, f(r) + j)} of R x S.  Elements are
stored as full pairs (index into the product) so that both projections
are coordinate maps.  Duplications (S = R, f = id) and trivial
extensions R |x M (realized through S = R |x M, J = 0 |x M) are
amalgamations tagged with their ``kind``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InputError, InvariantError
from .ideals import (Ideal, ideal_generated, ideal_preimage, is_prime, max_spec, spec,
                     zero_divisor_mask)
from .modules import (MultiplicativeSet, complement_set, is_torsion, localize_at_prime,
                      localize_ring, module_from_ideal, module_via_hom)
from .rings import FiniteRing, RingHom, make_hom, make_product, make_subring, unit_mask


class AmalgamInstance:
    """An amalgamation A = R >< ^f J with its projections.

    ``r_of[a]`` / ``s_of[a]`` give the R- and S-coordinates of element a.
    """

    def __init__(self, f, J, kind="amalgam", module=None, label=None):
        R, S = f.domain, f.codomain
        if J.ring is not S:
            raise InputError("J must be an ideal of the codomain of f")
        if not J.is_proper():
            raise InputError("J must be a proper ideal")
        nS = S.size
        P = make_product(R, S)
        jm = J.members
        members = (np.arange(R.size)[:, None] * nS
                   + S.add(f.map[:, None], jm[None, :])).ravel()
        kind_name = {"amalgam": "amalgam", "duplication": "dup", "trivext": "trivext"}[kind]
        A = make_subring(P, members, ("amalgam", f.domain.tag, S.tag, tuple(jm.tolist())),
                         name=label or f"{R.name} >< {_ideal_label(J)}",
                         meta={"kind": kind_name})
        self.R, self.S, self.f, self.J, self.A = R, S, f, J, A
        self.kind = kind
        self.module = module
        self.label = label or _default_label(f, J, kind, module)
        self.A.name = self.label
        self.r_of = A.meta["members"] // nS
        self.s_of = A.meta["members"] % nS
        self.r_of.flags.writeable = False
        self.s_of.flags.writeable = False
        self.cache = {}
        if A.size != R.size * J.size:
            raise InvariantError(f"|A| = {A.size} != |R||J| = {R.size * J.size}")

    def __repr__(self):
        return f"<AmalgamInstance {self.label} |A|={self.A.size}>"

    def digest(self):
        return self.label

    def element(self, r, s):
        """Index in A of the pair (r, s); raises if s - f(r) is not in J."""
        target = r * self.S.size + s
        members = self.A.meta["members"]
        pos = int(np.searchsorted(members, target))
        if pos >= len(members) or members[pos] != target:
            raise InputError("pair is not in the amalgamation")
        return pos

    def pair(self, a):
        return int(self.r_of[a]), int(self.s_of[a])

    @property
    def proj_R(self):
        if "proj_R" not in self.cache:
            self.cache["proj_R"] = RingHom(self.A, self.R, self.r_of)
        return self.cache["proj_R"]

    @property
    def proj_S(self):
        if "proj_S" not in self.cache:
            self.cache["proj_S"] = RingHom(self.A, self.S, self.s_of)
        return self.cache["proj_S"]

    @property
    def embed(self):
        if "embed" not in self.cache:
            images = [self.element(r, int(self.f.map[r])) for r in range(self.R.size)]
            self.cache["embed"] = RingHom(self.R, self.A, images)
        return self.cache["embed"]

    @property
    def J_module(self):
        """J viewed as an R-module through f."""
        if "J_module" not in self.cache:
            self.cache["J_module"] = module_via_hom(self.f, module_from_ideal(self.S, self.J))
        return self.cache["J_module"]

    @property
    def f_inverse_J(self):
        if "finvJ" not in self.cache:
            self.cache["finvJ"] = ideal_preimage(self.f, self.J)
        return self.cache["finvJ"]

    def is_duplication(self):
        return self.S is self.R and self.f.is_identity()


def _ideal_label(J):
    R = J.ring
    return "(" + ",".join(R.format(g) for g in J.generators) + ")" if J.generators else "(0)"


def _default_label(f, J, kind, module):
    if kind == "duplication":
        return f"{f.domain.name} >< {_ideal_label(J)}"
    if kind == "trivext":
        return f"{f.domain.name} |x {module.name}"
    return f"{f.domain.name} >< ^f {_ideal_label(J)} [f: -> {f.codomain.name}]"


def amalgamation(f, J, label=None):
    return AmalgamInstance(f, J, label=label)


def identity_hom(R):
    return RingHom(R, R, R.arange(), _verified=True)


def duplication(R, I, label=None):
    """R >< I: the amalgamation with S = R and f the identity."""
    return AmalgamInstance(identity_hom(R), I, kind="duplication", label=label)


def make_trivial_extension_ring(R, M):
    """The ring R |x M on pairs (r, m) with (r, m)(r', m') = (rr', rm' + r'm)."""
    if M.base is not R:
        raise InputError("module must be over R")
    nM = M.size
    Madd, Mact, Mneg = M.add, M.action, M.neg

    def split(i):
        return i // nM, i % nM

    def add_fn(i, j):
        (a, m), (b, n) = split(i), split(j)
        return np.asarray(R.add(a, b), dtype=np.intp) * nM + Madd[m, n]

    def mul_fn(i, j):
        (a, m), (b, n) = split(i), split(j)
        return (np.asarray(R.mul(a, b), dtype=np.intp) * nM
                + Madd[Mact[a, n], Mact[b, m]])

    def neg_fn(i):
        a, m = split(i)
        return np.asarray(R.neg(a), dtype=np.intp) * nM + Mneg[m]

    elements = [(r, m) for r in R.elements for m in M.elements]
    return FiniteRing(
        elements, add_fn, mul_fn, neg_fn, R.zero * nM + M.zero, R.one * nM + M.zero,
        ("trivext", R.tag, M.name), name=f"{R.name} |x {M.name}",
        formatter=lambda i: f"({R.format(i // nM)}, {M.format(i % nM)})",
        meta={"base": R, "module": M},
    )


def trivial_extension(R, M, label=None):
    """(R |x M, amalgamation realization R >< ^iota (0 |x M)).

    The isomorphism (r, iota(r) + (0, m)) -> (r, m) is the S-projection of
    the realization; it is verified to be a bijective hom.
    """
    T = make_trivial_extension_ring(R, M)
    nM = M.size
    iota = make_hom(R, T, np.arange(R.size) * nM + M.zero)
    Jmask = np.zeros(T.size, dtype=bool)
    Jmask[R.zero * nM + np.arange(nM)] = True
    J = Ideal(T, Jmask)
    inst = AmalgamInstance(iota, J, kind="trivext", module=M, label=label)
    iso = inst.proj_S
    if not (iso.is_injective() and iso.is_surjective()):
        raise InvariantError("trivial-extension isomorphism is not bijective")
    inst.cache["trivext_ring"] = T
    return T, inst


# --- zero-divisors and condition star --------------------------------------


def star_sets(inst):
    """(S1, S2) as boolean masks over A.

    S1 = {(r, f(r)+j) : r in Z(R)};
    S2 = {(r, f(r)+j) : j'(f(r)+j) = 0 for some nonzero j' in J}.
    """
    if "star_sets" not in inst.cache:
        S = inst.S
        s1 = zero_divisor_mask(inst.R)[inst.r_of]
        jnz = inst.J.members[inst.J.members != S.zero]
        if len(jnz):
            s2 = (S.mul_table[np.ix_(jnz, inst.s_of)] == S.zero).any(axis=0)
        else:
            s2 = np.zeros(inst.A.size, dtype=bool)
        inst.cache["star_sets"] = (s1, s2)
    return inst.cache["star_sets"]


def has_condition_star(inst):
    s1, s2 = star_sets(inst)
    return bool(np.array_equal(zero_divisor_mask(inst.A), s1 | s2))


@dataclass(frozen=True)
class LemmaConditions:
    zr_in_J: bool          # (1) f(Z(R)) in J and f^-1(J) != 0
    zr_kills_J: bool       # (2) f(Z(R)) J = 0 and f^-1(J) != 0
    J_in_image: bool       # (3) J in f(R)
    J_torsion: bool        # (4) J torsion R-module

    def any(self):
        return self.zr_in_J or self.zr_kills_J or self.J_in_image or self.J_torsion

    def as_tuple(self):
        return (self.zr_in_J, self.zr_kills_J, self.J_in_image, self.J_torsion)


def lemma_conditions(inst):
    if "lemma_conditions" not in inst.cache:
        R, S, f, J = inst.R, inst.S, inst.f, inst.J
        zr = np.flatnonzero(zero_divisor_mask(R))
        finv_nonzero = inst.f_inverse_J.size > 1
        c1 = bool(J.mask[f.map[zr]].all()) and finv_nonzero
        c2 = bool((S.mul_table[np.ix_(f.map[zr], J.members)] == S.zero).all()) and finv_nonzero
        c3 = J_in_image(inst)
        c4 = is_torsion(inst.J_module)
        inst.cache["lemma_conditions"] = LemmaConditions(c1, c2, c3, c4)
    return inst.cache["lemma_conditions"]


def J_in_image(inst):
    return not bool((inst.J.mask & ~inst.f.image_mask()).any())


def trivext_zero_divisor_formula(R, M):
    """Mask over R |x M of {(r, m) : r in Z(R) or Z(M)} (index r*|M| + m)."""
    zr = zero_divisor_mask(R).copy()
    nz = np.arange(M.size) != M.zero
    zm = (M.action[:, nz] == M.zero).any(axis=1)
    return np.repeat(zr | zm, M.size)


# --- primes of the amalgamation ---------------------------------------------


@dataclass(frozen=True)
class PrimeLift:
    kind: str            # "p" or "q"
    source: Ideal        # prime of R ("p") or of S outside V(J) ("q")
    lifted: Ideal        # the prime of A

    def __repr__(self):
        return f"PrimeLift({self.kind}, {self.source!r})"


def prime_lift_p(inst, p):
    """p' = p >< J = {(r, f(r)+j) : r in p}."""
    if p.ring is not inst.R or not is_prime(p):
        raise InputError("prime_lift_p needs a prime of R")
    return PrimeLift("p", p, Ideal(inst.A, p.mask[inst.r_of]))


def prime_lift_q(inst, q):
    """q-bar = {(r, f(r)+j) : f(r)+j in q}, for q not containing J."""
    if q.ring is not inst.S or not is_prime(q):
        raise InputError("prime_lift_q needs a prime of S")
    if inst.J <= q:
        raise InputError("q contains J (q in V(J)); no q-type lift")
    return PrimeLift("q", q, Ideal(inst.A, q.mask[inst.s_of]))


def prime_lifts(inst):
    if "prime_lifts" not in inst.cache:
        lifts = [prime_lift_p(inst, p) for p in spec(inst.R)]
        lifts += [prime_lift_q(inst, q) for q in spec(inst.S) if not inst.J <= q]
        inst.cache["prime_lifts"] = lifts
    return inst.cache["prime_lifts"]


def amalgam_spec_expected(inst):
    return {L.lifted for L in prime_lifts(inst)}


def amalgam_max_expected(inst):
    out = {prime_lift_p(inst, m).lifted for m in max_spec(inst.R)}
    out |= {prime_lift_q(inst, q).lifted for q in max_spec(inst.S) if not inst.J <= q}
    return out


def classify_lift(inst, lift):
    """'a' (q-type), 'b' (p-type, f^-1(J) not in p) or 'c' (p-type, f^-1(J) in p)."""
    if lift.kind == "q":
        return "a"
    return "c" if inst.f_inverse_J <= lift.source else "b"


# --- localizations -------------------------------------------------------------


def mult_set_T(inst, p):
    """T_p = f(R minus p) + J, closed multiplicatively, as a subset of S."""
    S = inst.S
    outside = inst.f.map[~p.mask]
    members = S.add(outside[:, None], inst.J.members[None, :]).ravel()
    return MultiplicativeSet(S, np.unique(members))


@dataclass
class LocalizationIso:
    case: str
    prime: PrimeLift
    source: FiniteRing           # A localized at the lifted prime
    target: FiniteRing
    map: RingHom
    target_instance: AmalgamInstance | None = None
    notes: dict = field(default_factory=dict)


def _induced_map(pi_src, images_of_A, src_ring, tgt_ring):
    """Map on src_ring = A/K given by images of A-elements; checks well-definedness."""
    reps = src_ring.meta["reps"] if src_ring is not pi_src.domain else src_ring.arange()
    phi = images_of_A[reps]
    if not np.array_equal(phi[pi_src.map], images_of_A):
        raise InvariantError("localization map is not constant on classes")
    return RingHom(src_ring, tgt_ring, phi)


def localization_iso(inst, lift):
    """Build and verify the explicit isomorphism for A localized at a lifted prime.

    (a) q-type:          A_{q-bar} -> S_q,      (r, s)/(r', s') -> s/s'
    (b) p-type, f^-1(J) not in p:  A_{p'} -> R_p,  (r, s)/(r', s') -> r/r'
    (c) p-type, f^-1(J) in p:      A_{p'} -> R_p >< ^{f_p} J_{T_p},
                                  (r, s)/(r', s') -> (r/r', s/s')
    """
    A = inst.A
    case = classify_lift(inst, lift)
    src, pi = localize_at_prime(A, lift.lifted)
    tinst = None
    if case == "a":
        tgt, rho = localize_at_prime(inst.S, lift.source)
        images = rho.map[inst.s_of]
    elif case == "b":
        tgt, rho = localize_at_prime(inst.R, lift.source)
        images = rho.map[inst.r_of]
    else:
        Rp, pi_R = localize_at_prime(inst.R, lift.source)
        T = mult_set_T(inst, lift.source)
        ST, rho = localize_ring(inst.S, T)
        f_comp = rho.map[inst.f.map]
        reps = Rp.meta["reps"] if Rp is not inst.R else inst.R.arange()
        fp_map = f_comp[reps]
        if not np.array_equal(fp_map[pi_R.map], f_comp):
            raise InvariantError("f_p is not well defined on R_p")
        f_p = RingHom(Rp, ST, fp_map)
        JT = ideal_generated(ST, np.unique(rho.map[inst.J.members]))
        tinst = AmalgamInstance(f_p, JT, label=f"({inst.label})_{{p'}}")
        tgt = tinst.A
        images = np.array([tinst.element(int(pi_R.map[r]), int(rho.map[s]))
                           for r, s in zip(inst.r_of, inst.s_of)], dtype=np.intp)
    phi = _induced_map(pi, images, src, tgt)
    if not (phi.is_injective() and phi.is_surjective()):
        raise InvariantError(f"localization map (case {case}) is not bijective")
    _check_fraction_formula(src, pi, tgt, images, lift)
    return LocalizationIso(case, lift, src, tgt, phi, tinst)


def _check_fraction_formula(src, pi, tgt, images, lift):
    """x/u maps to image(x) * image(u)^-1 for every x in A, u outside the prime."""
    U = np.flatnonzero(~lift.lifted.mask)
    inv_src = _inverse_table(src)
    inv_tgt = _inverse_table(tgt)
    phi_rep = np.empty(src.size, dtype=np.intp)
    phi_rep[pi.map] = images
    x = pi.map[:, None]
    u = pi.map[U][None, :]
    lhs = phi_rep[src.mul(x, inv_src[u])]
    rhs = tgt.mul(images[:, None], inv_tgt[images[U]][None, :])
    if not np.array_equal(lhs, rhs):
        raise InvariantError("fraction-level formula disagrees with the induced map")


def _inverse_table(R):
    inv = np.full(R.size, -1, dtype=np.intp)
    um = unit_mask(R)
    rows, cols = np.nonzero(R.mul_table[um] == R.one)
    inv[np.flatnonzero(um)[rows]] = cols
    return inv


def all_localization_isos(inst):
    return [localization_iso(inst, L) for L in prime_lifts(inst)]


def complement_of(I):
    return complement_set(I)
