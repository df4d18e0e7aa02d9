"""Ideals of a finite ring: generation, arithmetic, enumeration, spectra.

An ideal is stored as a boolean membership mask over the ring's
carrier; equality and hashing go through the mask, never through the
generators (which are not canonical).
"""

from __future__ import annotations

import heapq

import numpy as np

from .errors import InputError, InvariantError, ResourceCapError
from .rings import make_quotient, unit_mask

IDEAL_CAP = 100_000


class Ideal:
    __slots__ = ("ring", "mask", "_gens", "_key")

    def __init__(self, ring, mask, generators=None):
        mask = np.array(mask, dtype=bool)
        if mask.shape != (ring.size,):
            raise InputError("mask length does not match ring size")
        mask.flags.writeable = False
        self.ring = ring
        self.mask = mask
        self._gens = None if generators is None else tuple(int(g) for g in generators)
        self._key = None

    @property
    def key(self):
        if self._key is None:
            self._key = np.packbits(self.mask).tobytes()
        return self._key

    @property
    def members(self):
        return np.flatnonzero(self.mask)

    @property
    def size(self):
        return int(self.mask.sum())

    def __len__(self):
        return self.size

    @property
    def generators(self):
        if self._gens is None:
            self._gens = _greedy_generators(self.ring, self.mask)
        return self._gens

    def __contains__(self, x):
        return bool(self.mask[int(x)])

    def __eq__(self, other):
        return (isinstance(other, Ideal) and other.ring is self.ring
                and other.key == self.key)

    def __hash__(self):
        return hash(self.key)

    def __le__(self, other):
        _same_ring(self, other)
        return bool(not (self.mask & ~other.mask).any())

    def __lt__(self, other):
        return self <= other and self != other

    def is_zero(self):
        return self.size == 1

    def is_unit(self):
        return bool(self.mask.all())

    def is_proper(self):
        return not self.mask[self.ring.one]

    def sort_key(self):
        return (self.size, tuple(self.members.tolist()))

    def __repr__(self):
        R = self.ring
        gens = ", ".join(R.format(g) for g in self.generators) or "0"
        return f"Ideal(({gens}) in {R.name}, {self.size} elts)"


def _same_ring(a, b):
    if a.ring is not b.ring:
        raise InputError("ideals live in different rings")


def sum_masks(R, a, b):
    """Mask of the additive subgroup a + b, for subgroups a and b."""
    out = a.copy()
    am = np.flatnonzero(a)
    for y in np.flatnonzero(b & ~a):
        if not out[y]:
            out[R.add(y, am)] = True
    return out


def _greedy_generators(R, mask):
    gens = []
    cur = np.zeros(R.size, dtype=bool)
    cur[R.zero] = True
    for x in np.flatnonzero(mask):
        if not cur[x]:
            gens.append(int(x))
            cur = sum_masks(R, cur, R.principal_mask(x))
    return tuple(gens)


def zero_ideal(R):
    m = np.zeros(R.size, dtype=bool)
    m[R.zero] = True
    return Ideal(R, m, ())


def unit_ideal(R):
    return Ideal(R, np.ones(R.size, dtype=bool), (R.one,))


def principal_ideal(R, x):
    return Ideal(R, R.principal_mask(int(x)), (int(x),))


def ideal_generated(R, gens):
    """Smallest ideal containing ``gens`` (element indices)."""
    gens = [int(g) for g in gens]
    mask = np.zeros(R.size, dtype=bool)
    mask[R.zero] = True
    for g in gens:
        if not 0 <= g < R.size:
            raise InputError(f"generator {g} is not an element of {R.name}")
        if not mask[g]:
            mask = sum_masks(R, mask, R.principal_mask(g))
    return Ideal(R, mask, [g for g in gens if g != R.zero])


def ideal_from_mask(R, mask):
    return Ideal(R, mask)


def ideal_sum(a, b):
    _same_ring(a, b)
    return Ideal(a.ring, sum_masks(a.ring, a.mask, b.mask), a.generators + b.generators)


def ideal_intersection(a, b):
    _same_ring(a, b)
    return Ideal(a.ring, a.mask & b.mask)


def ideal_product(a, b):
    """Ideal generated by the pairwise products of generators."""
    _same_ring(a, b)
    R = a.ring
    ga, gb = np.array(a.generators, dtype=np.intp), np.array(b.generators, dtype=np.intp)
    if not len(ga) or not len(gb):
        return zero_ideal(R)
    prods = np.unique(R.mul(ga[:, None], gb[None, :]))
    return ideal_generated(R, prods)


def ideal_power(a, k):
    out = unit_ideal(a.ring)
    for _ in range(k):
        out = ideal_product(out, a)
    return out


def element_times_ideal(x, a):
    """The ideal x*a = {x*y : y in a}."""
    R = a.ring
    mask = np.zeros(R.size, dtype=bool)
    mask[R.mul(int(x), a.members)] = True
    return Ideal(R, mask)


def distinct_principal_ideals(R):
    """Distinct principal ideals, deduplicated by member set."""
    key = "principal_ideals"
    if key not in R.cache:
        seen = {}
        for x in range(R.size):
            m = R.principal_mask(x)
            k = np.packbits(m).tobytes()
            if k not in seen:
                seen[k] = Ideal(R, m, (x,))
        R.cache[key] = list(seen.values())
    return R.cache[key]


def all_ideals(R, cap=IDEAL_CAP):
    """Every ideal of R exactly once, ordered by (size, members).

    Worklist closure of the principal ideals under sums, processed in
    order of increasing size.
    """
    key = ("all_ideals", cap)
    if key in R.cache:
        return R.cache[key]
    principals = distinct_principal_ideals(R)
    if len(principals) > cap:
        raise ResourceCapError(f"{R.name} has more than {cap} ideals")
    found = {}
    heap = []
    for P in principals:
        found[P.key] = P
        heapq.heappush(heap, (P.size, P.key))
    while heap:
        _, k = heapq.heappop(heap)
        I = found[k]
        for P in principals:
            if (P.mask & ~I.mask).any():
                m = sum_masks(R, I.mask, P.mask)
                J = Ideal(R, m)
                if J.key not in found:
                    if len(found) >= cap:
                        raise ResourceCapError(f"{R.name} has more than {cap} ideals")
                    J._gens = I.generators + P.generators
                    found[J.key] = J
                    heapq.heappush(heap, (J.size, J.key))
    out = sorted(found.values(), key=Ideal.sort_key)
    R.cache[key] = out
    return out


# --- primes --------------------------------------------------------------


def _quotient_nonzero_zero_divisor(I):
    Q, _ = make_quotient(I.ring, I)
    M = Q.mul_table
    nz = np.arange(Q.size) != Q.zero
    return Q, (M[np.ix_(nz, nz)] == Q.zero).any()


def is_prime(I):
    """I proper and R/I has no zero-divisors besides 0."""
    if not I.is_proper():
        return False
    _, has_zd = _quotient_nonzero_zero_divisor(I)
    return not bool(has_zd)


def is_maximal(I):
    """R/I is a field."""
    if not I.is_proper():
        return False
    Q, _ = make_quotient(I.ring, I)
    nonzero = np.arange(Q.size) != Q.zero
    return bool(unit_mask(Q)[nonzero].all())


def idempotents(R):
    M = R.mul_table
    ar = R.arange()
    return np.flatnonzero(M[ar, ar] == ar)


def primitive_idempotents(R):
    E = idempotents(R)
    M = R.mul_table
    nonzero = [int(e) for e in E if e != R.zero]
    out = []
    for e in nonzero:
        if all(f == e or M[f, e] != f for f in nonzero):
            out.append(e)
    return out


def max_spec(R):
    """Maximal ideals, one per primitive idempotent e: {x : ex not a unit of eR}."""
    key = "max_spec"
    if key in R.cache:
        return R.cache[key]
    P = R.principal_matrix
    M = R.mul_table
    out = []
    for e in primitive_idempotents(R):
        mask = ~P[M[e], e]
        I = Ideal(R, mask)
        if not is_maximal(I):
            raise InvariantError(f"idempotent decomposition produced non-maximal {I!r}")
        out.append(I)
    out.sort(key=Ideal.sort_key)
    R.cache[key] = out
    return out


def spec(R):
    """Prime ideals.  In a finite ring every prime is maximal."""
    key = "spec"
    if key in R.cache:
        return R.cache[key]
    out = list(max_spec(R))
    for p in out:
        if not is_prime(p):
            raise InvariantError(f"maximal ideal {p!r} failed the primality test")
    R.cache[key] = out
    return out


def jacobson(R):
    key = "jacobson"
    if key not in R.cache:
        mask = np.ones(R.size, dtype=bool)
        for m in max_spec(R):
            mask &= m.mask
        R.cache[key] = Ideal(R, mask)
    return R.cache[key]


def variety(I):
    """Primes containing I."""
    return [p for p in spec(I.ring) if I <= p]


def zero_divisor_mask(R):
    key = "zero_divisor_mask"
    if key not in R.cache:
        M = R.mul_table
        nz = np.arange(R.size) != R.zero
        m = (M[:, nz] == R.zero).any(axis=1)
        m.flags.writeable = False
        R.cache[key] = m
    return R.cache[key]


def is_regular_ideal(I):
    return bool((I.mask & ~zero_divisor_mask(I.ring)).any())


def annihilator(R, x):
    return Ideal(R, R.mul_table[int(x)] == R.zero)


def ideal_image(hom, I):
    """f(I) generates an ideal of the codomain; for surjections this is f(I) itself."""
    return ideal_generated(hom.codomain, np.unique(hom.map[I.members]))


def ideal_preimage(hom, I):
    return Ideal(hom.domain, hom.preimage_mask(I.mask))
