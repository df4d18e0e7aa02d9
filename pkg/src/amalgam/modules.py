"""Finite modules over finite rings, submodule lattices, localization.

Localization at a multiplicative set U of a finite ring is realized as a
quotient: R_U = R/K with K = {r : ur = 0 for some u in U}.  This is
exact for finite rings because the image of every u in U becomes a unit
in R/K (checked on every call).  Modules are localized the same way.
"""

from __future__ import annotations

import heapq

import numpy as np

from .errors import InputError, InvariantError, ResourceCapError
from .ideals import Ideal, is_prime, max_spec, spec, zero_divisor_mask
from .rings import make_quotient, unit_mask

SUBMODULE_CAP = 10_000


class FiniteModule:
    """A finite module over ``base`` given by addition and action tables.

    ``action[r, m]`` is the index of r.m; ``add[m, n]`` of m+n.
    """

    def __init__(self, base, elements, add, action, zero, name, formatter=None, meta=None):
        self.base = base
        self.elements = tuple(elements)
        self.add = np.asarray(add, dtype=np.intp)
        self.action = np.asarray(action, dtype=np.intp)
        self.zero = int(zero)
        self.name = name
        self._formatter = formatter
        self.meta = dict(meta or {})
        self.cache = {}
        n = len(self.elements)
        if self.add.shape != (n, n) or self.action.shape != (base.size, n):
            raise InputError("module table shapes do not match carrier sizes")

    @property
    def size(self):
        return len(self.elements)

    def __len__(self):
        return self.size

    def __repr__(self):
        return f"<FiniteModule {self.name} over {self.base.name} |{self.size}|>"

    def format(self, m):
        if self._formatter is not None:
            return self._formatter(int(m))
        return str(self.elements[int(m)])

    def is_zero(self):
        return self.size == 1

    def cyclic_mask(self, m):
        mask = np.zeros(self.size, dtype=bool)
        mask[self.action[:, int(m)]] = True
        return mask

    @property
    def neg(self):
        return np.argmax(self.add == self.zero, axis=1)


def check_module_axioms(M):
    """Exhaustive module-axiom check; returns None or ``(axiom, witness)``."""
    R, A, T = M.base, M.add, M.action
    n = M.size
    ar = np.arange(n)
    if not np.array_equal(A, A.T):
        return "add-commutative", tuple(np.argwhere(A != A.T)[0].tolist())
    if not np.array_equal(A[M.zero], ar):
        return "additive-identity", ()
    if not (A == M.zero).any(axis=1).all():
        return "additive-inverse", (int(np.argmin((A == M.zero).any(axis=1))),)
    for a in range(n):
        if not np.array_equal(A[A[a]], A[a][A]):
            return "add-associative", (a,)
    if not np.array_equal(T[R.one], ar):
        return "unital", ()
    Rm, Ra = R.mul_table, R.add_table
    for r in range(R.size):
        # r(m+n) = rm + rn
        if not np.array_equal(T[r][A], A[T[r][:, None], T[r][None, :]]):
            return "action-additive", (r,)
        # (r+s)m = rm + sm ; (rs)m = r(sm)
        if not np.array_equal(T[Ra[r]], A[T[r][None, :], T]):
            return "ring-additive", (r,)
        if not np.array_equal(T[Rm[r]], T[r][T]):
            return "action-associative", (r,)
    return None


# --- constructors ------------------------------------------------------------


def _positions(members, n):
    pos = np.full(n, -1, dtype=np.intp)
    pos[members] = np.arange(len(members))
    return pos


def module_from_ring(R):
    """R as a module over itself."""
    return FiniteModule(R, R.elements, R.add_table, R.mul_table, R.zero, R.name,
                        formatter=R.format)


def module_from_ideal(R, I):
    """The ideal I as an R-module."""
    if I.ring is not R:
        raise InputError("ideal does not belong to the base ring")
    mem = I.members
    pos = _positions(mem, R.size)
    add = pos[R.add_table[np.ix_(mem, mem)]]
    act = pos[R.mul_table[:, mem]]
    return FiniteModule(R, [R.elements[x] for x in mem], add, act, pos[R.zero],
                        name=f"{I!r}", formatter=lambda m: R.format(mem[m]),
                        meta={"ambient": R, "members": mem})


def module_quotient(R, I):
    """R/I as an R-module."""
    Q, pi = make_quotient(R, I)
    act = Q.mul_table[pi.map][:, :]
    return FiniteModule(R, Q.elements, Q.add_table, act, Q.zero,
                        name=f"{Q.name} (as {R.name}-module)", formatter=Q.format,
                        meta={"ring": Q, "projection": pi})


def module_product(M, N):
    """Direct sum M (+) N over a common base ring."""
    if M.base is not N.base:
        raise InputError("module product needs a common base ring")
    nN = N.size
    add = (M.add[:, None, :, None] * nN + N.add[None, :, None, :]).reshape(M.size * nN, -1)
    act = (M.action[:, :, None] * nN + N.action[:, None, :]).reshape(M.base.size, -1)
    elements = [(a, b) for a in M.elements for b in N.elements]
    return FiniteModule(M.base, elements, add, act, M.zero * nN + N.zero,
                        name=f"({M.name} + {N.name})",
                        formatter=lambda i: f"({M.format(i // nN)}, {N.format(i % nN)})")


def module_via_hom(f, M):
    """Restriction of scalars: an f.codomain-module viewed over f.domain."""
    if M.base is not f.codomain:
        raise InputError("module must be over the codomain of the hom")
    return FiniteModule(f.domain, M.elements, M.add, M.action[f.map], M.zero,
                        name=f"{M.name} via {f.domain.name}", formatter=M.format,
                        meta=dict(M.meta, hom=f, restricted_from=M))


def free_module(R, rank):
    """R^rank (rank >= 1)."""
    if rank < 1:
        raise InputError("rank must be >= 1")
    M = module_from_ring(R)
    for _ in range(rank - 1):
        M = module_product(M, module_from_ring(R))
    return M


def zero_module(R):
    return FiniteModule(R, [0], [[0]], np.zeros((R.size, 1), dtype=np.intp), 0,
                        name="0")


# --- basic predicates ---------------------------------------------------------


def zero_divisors_on(M):
    """Z(M) = {r : r.m = 0 for some nonzero m}."""
    nz = np.arange(M.size) != M.zero
    mask = (M.action[:, nz] == M.zero).any(axis=1)
    return frozenset(np.flatnonzero(mask).tolist())


def is_torsion(M):
    """Every element is killed by some regular element of the base ring."""
    reg = np.flatnonzero(~zero_divisor_mask(M.base))
    killed = (M.action[reg] == M.zero).any(axis=0)
    return bool(killed.all())


# --- submodules ---------------------------------------------------------------


class Submodule:
    __slots__ = ("module", "mask", "key")

    def __init__(self, module, mask):
        mask = np.asarray(mask, dtype=bool)
        mask.flags.writeable = False
        self.module = module
        self.mask = mask
        self.key = np.packbits(mask).tobytes()

    @property
    def size(self):
        return int(self.mask.sum())

    @property
    def members(self):
        return np.flatnonzero(self.mask)

    def __eq__(self, other):
        return isinstance(other, Submodule) and other.key == self.key

    def __hash__(self):
        return hash(self.key)

    def __le__(self, other):
        return bool(not (self.mask & ~other.mask).any())

    def __repr__(self):
        return f"Submodule({self.size} of {self.module.size})"


def _msum(M, a, b):
    out = a.copy()
    am = np.flatnonzero(a)
    for y in np.flatnonzero(b & ~a):
        if not out[y]:
            out[M.add[y, am]] = True
    return out


def cyclic_submodules(M):
    seen = {}
    for m in range(M.size):
        S = Submodule(M, M.cyclic_mask(m))
        seen.setdefault(S.key, S)
    return list(seen.values())


def submodules(M, cap=SUBMODULE_CAP):
    """All submodules, closure of the cyclic ones under sums, ordered by size."""
    key = ("submodules", cap)
    if key in M.cache:
        return M.cache[key]
    cyc = cyclic_submodules(M)
    found = {C.key: C for C in cyc}
    heap = [(C.size, C.key) for C in cyc]
    heapq.heapify(heap)
    while heap:
        _, k = heapq.heappop(heap)
        N = found[k]
        for C in cyc:
            if (C.mask & ~N.mask).any():
                S = Submodule(M, _msum(M, N.mask, C.mask))
                if S.key not in found:
                    if len(found) >= cap:
                        raise ResourceCapError(f"{M.name} has more than {cap} submodules")
                    found[S.key] = S
                    heapq.heappush(heap, (S.size, S.key))
    out = sorted(found.values(), key=lambda S: (S.size, tuple(S.members.tolist())))
    M.cache[key] = out
    return out


def is_uniserial(M):
    """Submodules totally ordered; enough to compare the cyclic ones."""
    cyc = cyclic_submodules(M)
    masks = np.array([C.mask for C in cyc])
    # sub[i, j]: cyc[i] <= cyc[j]
    sub = ~(masks[:, None, :] & ~masks[None, :, :]).any(axis=2)
    return bool((sub | sub.T).all())


def distributivity_witness(M, cap=SUBMODULE_CAP):
    """A triple (N, L, K) with (N+L)&K != (N&K)+(L&K), or None."""
    subs = submodules(M, cap)
    ids = {S.key: i for i, S in enumerate(subs)}
    n = len(subs)
    masks = np.array([S.mask for S in subs])
    meet = np.empty((n, n), dtype=np.intp)
    join = np.empty((n, n), dtype=np.intp)
    for i in range(n):
        for j in range(i, n):
            mk = np.packbits(masks[i] & masks[j]).tobytes()
            jk = np.packbits(_msum(M, masks[i], masks[j])).tobytes()
            meet[i, j] = meet[j, i] = ids[mk]
            join[i, j] = join[j, i] = ids[jk]
    for k in range(n):
        lhs = meet[join, k]                                  # (N+L) & K
        rhs = join[meet[:, k][:, None], meet[:, k][None, :]]  # (N&K) + (L&K)
        bad = lhs != rhs
        if bad.any():
            a, b = np.argwhere(bad)[0]
            return subs[a], subs[b], subs[k]
    return None


def has_distributive_lattice(M, cap=SUBMODULE_CAP):
    """(N+L) & K == (N&K) + (L&K) for every triple of submodules."""
    key = ("distributive", cap)
    if key not in M.cache:
        M.cache[key] = distributivity_witness(M, cap) is None
    return M.cache[key]


def distributive_by_localization(M):
    """Criterion: M_m is uniserial for every maximal ideal m of the base."""
    return all(is_uniserial(localize_module(M, complement_set(m)))
               for m in max_spec(M.base))


# --- multiplicative sets and localization -------------------------------------------


class MultiplicativeSet:
    """A multiplicatively closed subset containing 1 (closed on construction)."""

    def __init__(self, ring, members):
        R = ring
        mask = np.zeros(R.size, dtype=bool)
        mask[np.asarray(list(members), dtype=np.intp)] = True
        mask[R.one] = True
        M = R.mul_table
        while True:
            mem = np.flatnonzero(mask)
            new = mask.copy()
            new[M[np.ix_(mem, mem)].ravel()] = True
            if (new == mask).all():
                break
            mask = new
        mask.flags.writeable = False
        self.ring = R
        self.mask = mask

    @property
    def members(self):
        return np.flatnonzero(self.mask)

    def __contains__(self, x):
        return bool(self.mask[int(x)])

    def __len__(self):
        return int(self.mask.sum())

    def meets_zero_divisors(self):
        return bool((self.mask & zero_divisor_mask(self.ring)).any())


def complement_set(p):
    """U = R minus the prime p."""
    return MultiplicativeSet(p.ring, np.flatnonzero(~p.mask))


def localization_kernel(R, U):
    """K = {r : u r = 0 for some u in U}."""
    return Ideal(R, (R.mul_table[U.members] == R.zero).any(axis=0))


def localize_ring(R, U):
    """(R_U, canonical map R -> R_U), realized as R/K."""
    if U.ring is not R:
        raise InputError("multiplicative set belongs to another ring")
    key = ("localize", U.mask.tobytes())
    if key in R.cache:
        return R.cache[key]
    K = localization_kernel(R, U)
    if K.is_unit():
        raise InvariantError("localization kernel is the unit ideal (0 in U)")
    L, pi = make_quotient(R, K)
    if not unit_mask(L)[pi.map[U.members]].all():
        raise InvariantError("image of U is not invertible in R/K")
    L.meta.setdefault("localized_from", (R, U))
    R.cache[key] = (L, pi)
    return L, pi


def localize_at_prime(R, p):
    if p.ring is not R:
        raise InputError("prime belongs to another ring")
    if not is_prime(p):
        raise InputError(f"{p!r} is not prime")
    return localize_ring(R, complement_set(p))


def _quotient_module_classes(M, K_mask):
    cls = np.full(M.size, -1, dtype=np.intp)
    reps = []
    kmem = np.flatnonzero(K_mask)
    for x in range(M.size):
        if cls[x] < 0:
            cls[M.add[x, kmem]] = len(reps)
            reps.append(x)
    return cls, np.array(reps, dtype=np.intp)


def localize_module(M, U):
    """M_U = M/K with K = {m : u.m = 0 for some u in U}, as an R_U-module."""
    R = M.base
    if U.ring is not R:
        raise InputError("multiplicative set belongs to another ring")
    key = ("localize", U.mask.tobytes())
    if key in M.cache:
        return M.cache[key]
    K_mask = (M.action[U.members] == M.zero).any(axis=0)
    L, pi = localize_ring(R, U)
    cls, reps = _quotient_module_classes(M, K_mask)
    add = cls[M.add[np.ix_(reps, reps)]]
    # [r].[m] = [r.m], using the minimal representative of each ring class
    ring_reps = L.meta["reps"] if L is not R else R.arange()
    act = cls[M.action[np.ix_(ring_reps, reps)]]
    full = cls[M.action[:, reps]]
    if not np.array_equal(full, act[pi.map]):
        raise InvariantError("localized action is not well defined")
    out = FiniteModule(L, [M.elements[r] for r in reps], add, act, cls[M.zero],
                       name=f"{M.name}_U", formatter=lambda i: M.format(reps[i]),
                       meta={"classes": cls, "reps": reps, "source": M})
    M.cache[key] = out
    return out


def support(M):
    """Primes p of the base ring with M_p != 0."""
    return [p for p in spec(M.base) if not localize_module(M, complement_set(p)).is_zero()]


def is_locally_divisible(M):
    """r.M_m = M_m for every maximal m in Supp(M) and every nonzero r of R_m."""
    supp = {p.key for p in support(M)}
    for m in max_spec(M.base):
        if m.key not in supp:
            continue
        Mm = localize_module(M, complement_set(m))
        L = Mm.base
        for r in range(L.size):
            if r == L.zero:
                continue
            if len(np.unique(Mm.action[r])) != Mm.size:
                return False
    return True


def module_is_zero_at(M, p):
    return localize_module(M, complement_set(p)).is_zero()
