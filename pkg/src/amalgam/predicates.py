"""Ring-theoretic property checkers: zero-divisors, Pruefer, Gaussian,
arithmetical, chain, valuation domain.

Prüfer is decided with Griffin's criterion (regular total order property
at every maximal ideal).  Gaussian is decided locally with Tsang's pair
conditions; ``gaussian_direct_check`` is an independent falsifier that
multiplies polynomials and compares content ideals.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field

import numpy as np

from .errors import PreconditionError, ResourceCapError
from .ideals import (IDEAL_CAP, Ideal, all_ideals, distinct_principal_ideals, ideal_generated,
                     ideal_product, jacobson, max_spec, principal_ideal, sum_masks,
                     zero_divisor_mask)
from .modules import localize_at_prime
from .rings import TABLE_LIMIT, Polynomial, unit_mask


def _memo(R, key, fn):
    if key not in R.cache:
        R.cache[key] = fn()
    return R.cache[key]


def zero_divisors(R):
    return frozenset(np.flatnonzero(zero_divisor_mask(R)).tolist())


def regular_elements(R):
    return frozenset(np.flatnonzero(~zero_divisor_mask(R)).tolist())


def is_total_quotient_ring(R):
    """Every element is a unit or a zero-divisor."""
    return bool((unit_mask(R) | zero_divisor_mask(R)).all())


def is_domain(R):
    return int(zero_divisor_mask(R).sum()) == 1


def is_field(R):
    nz = np.arange(R.size) != R.zero
    return bool(unit_mask(R)[nz].all())


def is_local(R):
    return len(max_spec(R)) == 1


def require_local(R):
    ms = max_spec(R)
    if len(ms) != 1:
        raise PreconditionError(f"{R.name} is not local ({len(ms)} maximal ideals)")
    return ms[0]


def z_subset_jac(R):
    return bool(not (zero_divisor_mask(R) & ~jacobson(R).mask).any())


def hom_regular_to_regular(f):
    """f(Reg R) is contained in Reg S."""
    regR = ~zero_divisor_mask(f.domain)
    regS = ~zero_divisor_mask(f.codomain)
    return bool(regS[f.map[regR]].all())


# --- regular total order / Pruefer ---------------------------------------------


def _image_masks(pi, masks, target_size):
    out = np.zeros((len(masks), target_size), dtype=bool)
    for k, m in enumerate(masks):
        out[k, pi.map[m]] = True
    return np.unique(out, axis=0)


def regular_ideals(R, cap=IDEAL_CAP):
    """Ideals containing a regular element: the up-closure of the regular principals."""
    def compute():
        principals = distinct_principal_ideals(R)
        reg = ~zero_divisor_mask(R)
        found = {P.key: P for P in principals if (P.mask & reg).any()}
        heap = [(P.size, P.key) for P in found.values()]
        heapq.heapify(heap)
        while heap:
            _, k = heapq.heappop(heap)
            I = found[k]
            for P in principals:
                if (P.mask & ~I.mask).any():
                    J = Ideal(R, sum_masks(R, I.mask, P.mask))
                    if J.key not in found:
                        if len(found) >= cap:
                            raise ResourceCapError(f"{R.name} has more than {cap} regular ideals")
                        found[J.key] = J
                        heapq.heappush(heap, (J.size, J.key))
        return sorted(found.values(), key=Ideal.sort_key)
    return _memo(R, ("regular_ideals", cap), compute)


def regular_total_order(R, m):
    """Definition-level test: aR_m and bR_m comparable whenever a is regular.

    Every ideal b is a sum of principal ideals, and a_m is comparable with
    a sum as soon as it is comparable with each summand, so b ranges over
    principal ideals while a ranges over all regular ideals.
    """
    def compute():
        regular = [I.mask for I in regular_ideals(R)]
        if not regular:
            return True
        L, pi = localize_at_prime(R, m)
        a = _image_masks(pi, regular, L.size)
        b = _image_masks(pi, [P.mask for P in distinct_principal_ideals(R)], L.size)
        a_in_b = ~(a[:, None, :] & ~b[None, :, :]).any(axis=2)
        b_in_a = ~(b[None, :, :] & ~a[:, None, :]).any(axis=2)
        return bool((a_in_b | b_in_a).all())
    return _memo(R, ("rto", m.key), compute)


def regular_total_order_fast(R, m):
    """Principal-ideal test, valid when Z(R) is inside Jac(R).

    xR_m and yR_m comparable for all x regular, y arbitrary.
    """
    if not z_subset_jac(R):
        raise PreconditionError("regular_total_order_fast requires Z(R) in Jac(R)")

    def compute():
        L, pi = localize_at_prime(R, m)
        P = L.principal_matrix
        x = pi.map[np.flatnonzero(~zero_divisor_mask(R))]
        y = pi.map
        xs, ys = np.unique(x), np.unique(y)
        # P[u, v]: v in uL
        comparable = P[np.ix_(ys, xs)] | P[np.ix_(xs, ys)].T
        return bool(comparable.all())
    return _memo(R, ("rto_fast", m.key), compute)


def is_prufer(R, method="auto"):
    """Every maximal ideal has the regular total order property.

    ``method``: "definition" enumerates ideal pairs; "fast" uses principal
    pairs (needs Z(R) in Jac(R)); "auto" picks fast when it applies.
    """
    if method == "auto":
        method = "fast" if z_subset_jac(R) else "definition"
    check = regular_total_order_fast if method == "fast" else regular_total_order
    return _memo(R, ("prufer", method), lambda: all(check(R, m) for m in max_spec(R)))


# --- chain / arithmetical ---------------------------------------------------------


def is_chain_ring(R):
    """Principal ideals pairwise comparable (every ideal is a sum of principals)."""
    def compute():
        P = R.principal_matrix
        return bool((P | P.T).all())
    return _memo(R, "chain", compute)


def chain_witness(R):
    P = R.principal_matrix
    bad = ~(P | P.T)
    if not bad.any():
        return None
    x, y = np.argwhere(bad)[0]
    return int(x), int(y)


def localizations_at_maximals(R):
    return _memo(R, "local_factors",
                 lambda: [(m, *localize_at_prime(R, m)) for m in max_spec(R)])


def is_arithmetical(R):
    """R_m is a chain ring for every maximal m."""
    return _memo(R, "arithmetical",
                 lambda: all(is_chain_ring(L) for _, L, _ in localizations_at_maximals(R)))


def is_valuation_domain(R):
    return is_chain_ring(R) and is_domain(R)


# --- Gaussian -------------------------------------------------------------------------


@dataclass
class GaussianWitness:
    """Evidence that a ring is not Gaussian.

    ``kind == "pair-violation"``: data = (ring, a, b, (a,b)^2, (a^2), (b^2), failed) with
    failed in {"i", "ii"}.
    ``kind == "content-violation"``: data = (f, g, c(fg), c(f)c(g)).
    """
    kind: str
    data: tuple
    notes: dict = field(default_factory=dict)

    def recheck(self):
        if self.kind == "pair-violation":
            R, a, b = self.data[0], self.data[1], self.data[2]
            return not _tsang_pair_ok(R, a, b)
        f, g = self.data[0], self.data[1]
        return content(f * g) != ideal_product(content(f), content(g))

    def describe(self):
        if self.kind == "pair-violation":
            R, a, b = self.data[:3]
            return (f"pair ({R.format(a)}, {R.format(b)}) in {R.name} violates "
                    f"condition ({self.data[6]})")
        f, g = self.data[:2]
        return f"c(fg) != c(f)c(g) for f={f!r}, g={g!r}"


def _tsang_pair_ok(R, a, b):
    a2, b2, ab = int(R.mul(a, a)), int(R.mul(b, b)), int(R.mul(a, b))
    sq = ideal_generated(R, [a2, ab, b2])
    A2, B2 = principal_ideal(R, a2), principal_ideal(R, b2)
    if sq != A2 and sq != B2:
        return False
    if sq == A2 and ab == R.zero and b2 != R.zero:
        return False
    return True


def gaussian_local_test(R):
    """Tsang's criterion on a local ring: True, or a GaussianWitness.

    For all a, b: (i) (a,b)^2 = (a^2) or (b^2); (ii) if (a,b)^2 = (a^2)
    and ab = 0 then b^2 = 0.
    """
    require_local(R)

    def compute():
        M, P = R.mul_table, R.principal_matrix
        sq = np.diagonal(M).astype(np.intp)
        A2 = sq[:, None]
        B2 = sq[None, :]
        AB = M
        # (a,b)^2 = (a^2, ab, b^2) equals (a^2) iff ab, b^2 in (a^2)
        eq_a = P[A2, AB] & P[A2, B2]
        eq_b = P[B2, AB] & P[B2, A2]
        cond_i = eq_a | eq_b
        cond_ii = ~(eq_a & (AB == R.zero)) | (B2 == R.zero)
        bad = ~(cond_i & cond_ii)
        if not bad.any():
            return True
        a, b = (int(v) for v in np.argwhere(bad)[0])
        failed = "i" if not cond_i[a, b] else "ii"
        a2, b2, ab = int(sq[a]), int(sq[b]), int(M[a, b])
        return GaussianWitness("pair-violation", (
            R, a, b, ideal_generated(R, [a2, ab, b2]), principal_ideal(R, a2),
            principal_ideal(R, b2), failed))
    return _memo(R, "gaussian_local", compute)


def gaussian_witness(R):
    """(maximal ideal, witness in R_m) for the first failing localization, or None."""
    for m, L, _ in localizations_at_maximals(R):
        res = gaussian_local_test(L)
        if res is not True:
            return m, res
    return None


def is_gaussian(R):
    """Tsang's local test at every localization R_m."""
    return _memo(R, "gaussian", lambda: gaussian_witness(R) is None)


# --- content ideals and the direct check -------------------------------------------------


def content(p):
    """Ideal generated by the coefficients of a polynomial."""
    return ideal_generated(p.base, p.coeffs)


class _LatticeTables:
    """Ideal ids with join and product tables, for vectorized content arithmetic."""

    def __init__(self, R, cap):
        ideals = all_ideals(R, cap)
        n = len(ideals)
        self.ideals = ideals
        self.ids = {I.key: k for k, I in enumerate(ideals)}
        masks = np.array([I.mask for I in ideals])
        # contains[k, i]: ideal i <= ideal k
        contains = ~(masks[None, :, :] & ~masks[:, None, :]).any(axis=2)
        # ideals are sorted by size, so the first common upper bound is the join
        join = np.empty((n, n), dtype=np.intp)
        for i in range(n):
            common = contains[:, i][:, None] & contains
            join[i] = np.argmax(common, axis=0)
        self.join = join
        self.principal = np.array(
            [self.ids[np.packbits(R.principal_mask(x)).tobytes()] for x in range(R.size)],
            dtype=np.intp)
        gens = [np.array(I.generators or (R.zero,), dtype=np.intp) for I in ideals]
        prod = np.empty((n, n), dtype=np.intp)
        M = R.mul_table
        zero_id = self.principal[R.zero]
        for i in range(n):
            for j in range(i, n):
                acc = zero_id
                for x in self.principal[M[np.ix_(gens[i], gens[j])].ravel()]:
                    acc = join[acc, x]
                prod[i, j] = prod[j, i] = acc
        self.prod = prod

    def content_ids(self, coeffs):
        """coeffs: (N, k) array of element indices -> (N,) ideal ids."""
        acc = self.principal[coeffs[:, 0]]
        for t in range(1, coeffs.shape[1]):
            acc = self.join[acc, self.principal[coeffs[:, t]]]
        return acc


def _poly_products(R, F, G):
    """Coefficient arrays of f*g for rows of F, G (shape (N, d+1))."""
    N, k = F.shape
    out = np.full((N, 2 * k - 1), R.zero, dtype=np.intp)
    M, A = R.mul_table, R.add_table
    for s in range(k):
        for t in range(k):
            out[:, s + t] = A[out[:, s + t], M[F[:, s], G[:, t]]]
    return out


@dataclass
class DirectCheckResult:
    passed: bool
    witness: GaussianWitness | None
    mode: str
    exhaustive_degree: int
    pairs_checked: int
    seed: int

    def __bool__(self):
        return self.passed


def _decode(idx, n, k):
    digits = np.empty((len(idx), k), dtype=np.intp)
    rest = np.asarray(idx, dtype=np.int64).copy()
    for t in range(k):
        digits[:, t] = rest % n
        rest //= n
    return digits


def _unit_orbit_reps(R, k, enum_cap=1 << 22, chunk=1 << 18):
    """Codes of the polynomials of length k that are minimal in their orbit
    under multiplication by units; None when n^k exceeds ``enum_cap``.

    Contents are unchanged by unit scaling, so c(fg) = c(f)c(g) needs
    testing on orbit representatives only (for f and g independently).
    """
    n = R.size
    total = n ** k
    if total > enum_cap:
        return None
    M = R.mul_table
    us = [int(u) for u in np.flatnonzero(unit_mask(R)) if u != R.one]
    weights = n ** np.arange(k, dtype=np.int64)
    out = []
    for lo in range(0, total, chunk):
        idx = np.arange(lo, min(total, lo + chunk), dtype=np.int64)
        C = _decode(idx, n, k)
        best = idx.copy()
        for u in us:
            np.minimum(best, M[u][C] @ weights, out=best)
        out.append(idx[best == idx])
    return np.concatenate(out)


def gaussian_direct_check(R, max_degree=3, sample_budget=100_000, seed=0,
                          exhaustive_limit=10**6, lattice_cap=400, chunk=1 << 18):
    """Search for f, g in R[X] with c(fg) != c(f)c(g).

    Pairs of polynomials of degree <= d are enumerated exhaustively (up to
    unit scaling of each factor) for the largest d <= max_degree whose
    representative pairs number at most ``exhaustive_limit``; if that
    falls short of max_degree, ``sample_budget`` uniformly random pairs of
    degree <= max_degree follow (seeded, reproducible).
    """
    if max_degree < 1:
        raise PreconditionError("max_degree must be >= 1")
    n = R.size
    try:
        lat = _LatticeTables(R, lattice_cap)
    except ResourceCapError:
        lat = None
    checked = 0

    def test(F, G):
        if lat is not None:
            FG = _poly_products(R, F, G)
            c_fg = lat.content_ids(FG)
            c_prod = lat.prod[lat.content_ids(F), lat.content_ids(G)]
            bad = np.flatnonzero(c_fg != c_prod)
            return int(bad[0]) if len(bad) else None
        for row in range(len(F)):
            f, g = Polynomial(R, F[row]), Polynomial(R, G[row])
            if content(f * g) != ideal_product(content(f), content(g)):
                return row
        return None

    def witness_for(F, G, row):
        f, g = Polynomial(R, F[row]), Polynomial(R, G[row])
        return GaussianWitness("content-violation", (
            f, g, content(f * g), ideal_product(content(f), content(g))))

    # degree-0 pairs always satisfy c(fg) = c(f)c(g)
    exh, reps = 0, None
    if n <= TABLE_LIMIT and exhaustive_limit >= 1:
        n_units = int(unit_mask(R).sum())
        for d in range(1, max_degree + 1):
            # each orbit has at most n_units members
            if (n ** (d + 1) / n_units) ** 2 > exhaustive_limit:
                break
            r = _unit_orbit_reps(R, d + 1)
            if r is None or len(r) ** 2 > exhaustive_limit:
                break
            exh, reps = d, r
    if exh >= 1:
        k, m = exh + 1, len(reps)
        total = m * m
        for lo in range(0, total, chunk):
            idx = np.arange(lo, min(total, lo + chunk), dtype=np.int64)
            F = _decode(reps[idx // m], n, k)
            G = _decode(reps[idx % m], n, k)
            row = test(F, G)
            checked += len(idx)
            if row is not None:
                return DirectCheckResult(False, witness_for(F, G, row), "exhaustive",
                                         exh, checked, seed)
    if exh >= max_degree:
        return DirectCheckResult(True, None, "exhaustive", exh, checked, seed)
    rng = np.random.default_rng(seed)
    k = max_degree + 1
    remaining = sample_budget
    while remaining > 0:
        m = min(remaining, chunk if lat is not None else 512)
        F = rng.integers(0, n, size=(m, k))
        G = rng.integers(0, n, size=(m, k))
        row = test(F, G)
        checked += m
        remaining -= m
        if row is not None:
            return DirectCheckResult(False, witness_for(F, G, row), "sampled", exh, checked, seed)
    return DirectCheckResult(True, None, "sampled", exh, checked, seed)


PREDICATES = {
    "prufer": is_prufer,
    "gaussian": is_gaussian,
    "arithmetical": is_arithmetical,
    "chain": is_chain_ring,
    "valuation-domain": is_valuation_domain,
    "total-quotient": is_total_quotient_ring,
    "domain": is_domain,
    "field": is_field,
    "local": is_local,
    "z-in-jac": z_subset_jac,
}
