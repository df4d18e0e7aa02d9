"""Finite commutative rings with identity, represented by element indices.

Every ring enumerates its carrier once; an element is addressed by its
position ``i`` in that enumeration and carries a canonical *encoding*
(an int for residues, a coefficient tuple for polynomial quotients, a
pair for products, the minimal coset representative for quotients).
Two elements are equal iff their indices (equivalently, encodings) are.

Arithmetic is vectorized: ``R.add(i, j)`` and ``R.mul(i, j)`` accept
ints or numpy integer arrays.  Rings with at most ``TABLE_LIMIT``
elements cache full operation tables on first use; larger rings compute
on demand from their construction.
"""

from __future__ import annotations

import itertools
from functools import cached_property

import numpy as np

from .errors import InputError, ResourceCapError, ValidationError

TABLE_LIMIT = 4096
SIZE_CAP = 65536


def _ix(a):
    return np.asarray(a, dtype=np.intp)


def _table_dtype(n):
    return np.int16 if n < 2**15 else np.int32


class FiniteRing:
    """A finite commutative ring with identity.

    Instances are immutable after construction.  Construction helpers
    (``make_zmod`` and friends) are the intended entry points; the
    constructor takes vectorized index-level operations.
    """

    def __init__(self, elements, add_fn, mul_fn, neg_fn, zero, one, tag,
                 name=None, formatter=None, meta=None, size_cap=SIZE_CAP):
        n = len(elements)
        if n > size_cap:
            raise ResourceCapError(f"ring of size {n} exceeds size cap {size_cap}")
        if n < 1:
            raise InputError("empty carrier")
        if zero == one:
            raise InputError("zero ring rejected (1 == 0)")
        self.elements = tuple(elements)
        self._index = {e: i for i, e in enumerate(self.elements)}
        if len(self._index) != n:
            raise InputError("carrier enumeration has duplicates")
        self._add_fn = add_fn
        self._mul_fn = mul_fn
        self._neg_fn = neg_fn
        self.zero = int(zero)
        self.one = int(one)
        self.tag = tag
        self.name = name or repr(tag)
        self._formatter = formatter
        self.meta = dict(meta or {})
        # memo for predicates computed on this (immutable) ring
        self.cache = {}

    def __len__(self):
        return len(self.elements)

    @property
    def size(self):
        return len(self.elements)

    def __repr__(self):
        return f"<FiniteRing {self.name} |{self.size}|>"

    def __str__(self):
        return self.name

    # element access -----------------------------------------------------

    def index(self, encoding):
        try:
            return self._index[encoding]
        except KeyError:
            raise InputError(f"{encoding!r} is not an element of {self.name}") from None

    def element(self, i):
        return self.elements[int(i)]

    def format(self, i):
        if self._formatter is not None:
            return self._formatter(int(i))
        return str(self.elements[int(i)])

    def from_int(self, n):
        """Index of ``n * 1``."""
        mult = self._int_multiples
        return int(mult[n % len(mult)])

    @cached_property
    def _int_multiples(self):
        out = [self.zero]
        x = self.one
        while x != self.zero:
            out.append(x)
            x = int(self.add(x, self.one))
        return np.array(out, dtype=np.intp)

    @property
    def characteristic(self):
        return len(self._int_multiples)

    @property
    def generator(self):
        """Index of the class of X for polynomial-quotient rings, else None."""
        return self.meta.get("gen")

    def coerce(self, x):
        if isinstance(x, (int, np.integer)) and not isinstance(x, bool):
            return self.from_int(int(x))
        return self.index(x)

    # arithmetic ---------------------------------------------------------

    def _small(self):
        return self.size <= TABLE_LIMIT

    def add(self, i, j):
        if self._small():
            return self.add_table[i, j]
        return self._add_fn(_ix(i), _ix(j))

    def mul(self, i, j):
        if self._small():
            return self.mul_table[i, j]
        return self._mul_fn(_ix(i), _ix(j))

    def neg(self, i):
        if self._small():
            return self.neg_table[i]
        return self._neg_fn(_ix(i))

    def sub(self, i, j):
        return self.add(i, self.neg(j))

    def pow(self, i, k):
        r = self.one
        for _ in range(k):
            r = int(self.mul(r, i))
        return r

    def _full(self, fn):
        if not self._small():
            raise ResourceCapError(
                f"operation table for ring of size {self.size} exceeds {TABLE_LIMIT}")
        ar = np.arange(self.size, dtype=np.intp)
        t = fn(ar[:, None], ar[None, :])
        return np.ascontiguousarray(t, dtype=_table_dtype(self.size))

    @cached_property
    def add_table(self):
        t = self._full(self._add_fn)
        t.flags.writeable = False
        return t

    @cached_property
    def mul_table(self):
        t = self._full(self._mul_fn)
        t.flags.writeable = False
        return t

    @cached_property
    def neg_table(self):
        t = np.asarray(self._neg_fn(np.arange(self.size, dtype=np.intp)), dtype=np.intp)
        t.flags.writeable = False
        return t

    def arange(self):
        return np.arange(self.size, dtype=np.intp)

    def principal_mask(self, x):
        """Boolean mask of the principal ideal xR."""
        mask = np.zeros(self.size, dtype=bool)
        mask[self.mul(x, self.arange())] = True
        return mask

    @cached_property
    def principal_matrix(self):
        """``P[y, x]`` is True iff ``x`` lies in the principal ideal ``yR``."""
        n = self.size
        P = np.zeros((n, n), dtype=bool)
        rows = np.repeat(np.arange(n), n)
        P[rows, self.mul_table.ravel()] = True
        P.flags.writeable = False
        return P


def check_ring_axioms(R, exhaustive_limit=256):
    """Exhaustively check the commutative-ring axioms on R.

    Returns None if all hold, else a ``(axiom, witness)`` tuple.
    Associativity and distributivity are cubic; they are checked only
    when ``|R| <= exhaustive_limit``.
    """
    n = R.size
    A, M, N = R.add_table, R.mul_table, R.neg_table
    ar = R.arange()
    if not np.array_equal(A, A.T):
        i, j = np.argwhere(A != A.T)[0]
        return "add-commutative", (int(i), int(j))
    if not np.array_equal(M, M.T):
        i, j = np.argwhere(M != M.T)[0]
        return "mul-commutative", (int(i), int(j))
    if not np.array_equal(A[R.zero], ar):
        return "additive-identity", (int(np.argmax(A[R.zero] != ar)),)
    if not np.array_equal(M[R.one], ar):
        return "multiplicative-identity", (int(np.argmax(M[R.one] != ar)),)
    bad = A[ar, N] != R.zero
    if bad.any():
        return "additive-inverse", (int(np.argmax(bad)),)
    if n > exhaustive_limit:
        return None
    for a in range(n):
        lhs = A[A[a]]            # (a+b)+c, indexed [b, c]
        rhs = A[a][A]            # a+(b+c)
        if not np.array_equal(lhs, rhs):
            b, c = np.argwhere(lhs != rhs)[0]
            return "add-associative", (a, int(b), int(c))
        lhs = M[M[a]]
        rhs = M[a][M]
        if not np.array_equal(lhs, rhs):
            b, c = np.argwhere(lhs != rhs)[0]
            return "mul-associative", (a, int(b), int(c))
        lhs = M[a][A]                          # a(b+c)
        rhs = A[M[a][:, None], M[a][None, :]]  # ab+ac
        if not np.array_equal(lhs, rhs):
            b, c = np.argwhere(lhs != rhs)[0]
            return "distributive", (a, int(b), int(c))
    return None


# --- constructions -------------------------------------------------------


def make_zmod(n, size_cap=SIZE_CAP):
    """The ring Z/nZ on residues 0..n-1."""
    if not isinstance(n, (int, np.integer)) or n < 2:
        raise InputError(f"make_zmod needs n >= 2, got {n!r}")
    n = int(n)
    return FiniteRing(
        list(range(n)),
        lambda i, j: (i + j) % n,
        lambda i, j: (i * j) % n,
        lambda i: (-i) % n,
        0, 1, ("zmod", n), name=f"Z/{n}", size_cap=size_cap,
        meta={"modulus": n},
    )


class Polynomial:
    """Polynomial over a finite ring, coefficients as element indices.

    ``coeffs[k]`` is the coefficient of X^k; trailing zeros are trimmed,
    so the zero polynomial has ``coeffs == ()``.
    """

    __slots__ = ("base", "coeffs")

    def __init__(self, base, coeffs):
        coeffs = [int(c) for c in coeffs]
        while coeffs and coeffs[-1] == base.zero:
            coeffs.pop()
        self.base = base
        self.coeffs = tuple(coeffs)

    @classmethod
    def from_ints(cls, base, ints):
        return cls(base, [base.from_int(c) for c in ints])

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def is_monic(self):
        return bool(self.coeffs) and self.coeffs[-1] == self.base.one

    def __eq__(self, other):
        return (isinstance(other, Polynomial) and other.base is self.base
                and other.coeffs == self.coeffs)

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        B = self.base
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (B.zero,) * (n - len(self.coeffs))
        b = other.coeffs + (B.zero,) * (n - len(other.coeffs))
        return Polynomial(B, [int(B.add(x, y)) for x, y in zip(a, b)])

    def __mul__(self, other):
        B = self.base
        if not self.coeffs or not other.coeffs:
            return Polynomial(B, ())
        out = [B.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            for j, y in enumerate(other.coeffs):
                out[i + j] = int(B.add(out[i + j], B.mul(x, y)))
        return Polynomial(B, out)

    def __repr__(self):
        return f"Polynomial({format_poly(self.base, self.coeffs)} over {self.base.name})"


def format_poly(base, coeffs, var="X"):
    terms = []
    for k, c in enumerate(coeffs):
        if c == base.zero:
            continue
        cs = base.format(c)
        if any(ch in cs for ch in "+ "):
            cs = f"({cs})"
        if k == 0:
            terms.append(cs)
        else:
            mon = var if k == 1 else f"{var}^{k}"
            terms.append(mon if c == base.one else f"{cs}*{mon}")
    return "+".join(terms) if terms else "0"


def make_poly_quotient(base, modulus, size_cap=SIZE_CAP):
    """base[X] / (modulus) for a monic modulus of degree d >= 1.

    Elements are coefficient tuples of length d (index k <-> X^k), the
    carrier is enumerated in mixed radix with the constant term least
    significant.
    """
    if not isinstance(modulus, Polynomial) or modulus.base is not base:
        raise InputError("modulus must be a Polynomial over the base ring")
    if modulus.degree < 1:
        raise InputError("modulus must have degree >= 1")
    if not modulus.is_monic():
        raise InputError("modulus must be monic")
    q, d = base.size, modulus.degree
    n = q ** d
    if n > size_cap:
        raise ResourceCapError(f"polynomial quotient of size {n} exceeds size cap {size_cap}")
    low = [_ix(c) for c in modulus.coeffs[:d]]
    powers = [q ** k for k in range(d)]

    def decode(i):
        return [(i // powers[k]) % q for k in range(d)]

    def encode(cs):
        out = cs[0] * 1
        for k in range(1, d):
            out = out + cs[k] * powers[k]
        return out

    def add_fn(i, j):
        a, b = decode(i), decode(j)
        return encode([_ix(base.add(x, y)) for x, y in zip(a, b)])

    def neg_fn(i):
        return encode([_ix(base.neg(x)) for x in decode(i)])

    def mul_fn(i, j):
        a, b = decode(i), decode(j)
        shape = np.broadcast(i, j).shape
        c = [np.full(shape, base.zero, dtype=np.intp) for _ in range(2 * d - 1)]
        for s in range(d):
            for t in range(d):
                c[s + t] = _ix(base.add(c[s + t], base.mul(a[s], b[t])))
        for k in range(2 * d - 2, d - 1, -1):
            top = c[k]
            for s in range(d):
                c[k - d + s] = _ix(base.sub(c[k - d + s], base.mul(top, low[s])))
        return encode(c[:d])

    elements = [tuple(base.elements[c] for c in digits)
                for digits in (
                    tuple(reversed(t)) for t in itertools.product(range(q), repeat=d))]

    def formatter(i):
        return format_poly(base, [int(x) for x in decode(i)])

    gen = q if d > 1 else int(encode([_ix(base.neg(low[0]))]))
    mod_text = format_poly(base, modulus.coeffs)
    return FiniteRing(
        elements, add_fn, mul_fn, neg_fn, 0, encode([_ix(base.one)] + [0] * (d - 1)),
        ("polyquot", base.tag, modulus.coeffs),
        name=f"{base.name}[X]/({mod_text})", formatter=formatter,
        meta={"base": base, "modulus": modulus, "gen": int(gen), "degree": d},
        size_cap=size_cap,
    )


def make_gf(p):
    """Prime field F_p (as Z/p); extension fields come from make_poly_quotient."""
    if p < 2 or any(p % k == 0 for k in range(2, int(p ** 0.5) + 1)):
        raise InputError(f"{p} is not prime")
    R = make_zmod(p)
    R.name = f"F{p}"
    return R


def make_product(R, S, size_cap=SIZE_CAP):
    """Componentwise product R x S on pairs (r, s)."""
    nS = S.size
    n = R.size * nS
    if n > size_cap:
        raise ResourceCapError(f"product of size {n} exceeds size cap {size_cap}")

    def split(i):
        return i // nS, i % nS

    def add_fn(i, j):
        (a, b), (c, d) = split(i), split(j)
        return _ix(R.add(a, c)) * nS + _ix(S.add(b, d))

    def mul_fn(i, j):
        (a, b), (c, d) = split(i), split(j)
        return _ix(R.mul(a, c)) * nS + _ix(S.mul(b, d))

    def neg_fn(i):
        a, b = split(i)
        return _ix(R.neg(a)) * nS + _ix(S.neg(b))

    elements = [(r, s) for r in R.elements for s in S.elements]
    return FiniteRing(
        elements, add_fn, mul_fn, neg_fn, R.zero * nS + S.zero, R.one * nS + S.one,
        ("product", R.tag, S.tag), name=f"({R.name} x {S.name})",
        formatter=lambda i: f"({R.format(i // nS)}, {S.format(i % nS)})",
        meta={"factors": (R, S)}, size_cap=size_cap,
    )


def make_subring(P, members, tag, name=None, formatter=None, meta=None):
    """The subring of P on the given member indices (closure is verified)."""
    members = np.unique(_ix(members))
    if P.one not in members or P.zero not in members:
        raise InputError("subring must contain 0 and 1")

    def locate(x):
        pos = np.searchsorted(members, x)
        pos = np.minimum(pos, len(members) - 1)
        if not np.all(members[pos] == x):
            raise ValidationError("subset not closed under the ring operations")
        return pos

    def add_fn(i, j):
        return locate(_ix(P.add(members[i], members[j])))

    def mul_fn(i, j):
        return locate(_ix(P.mul(members[i], members[j])))

    def neg_fn(i):
        return locate(_ix(P.neg(members[i])))

    m = dict(meta or {})
    m.update(parent=P, members=members)
    S = FiniteRing(
        [P.elements[k] for k in members], add_fn, mul_fn, neg_fn,
        int(np.searchsorted(members, P.zero)), int(np.searchsorted(members, P.one)),
        tag, name=name, formatter=formatter or (lambda i: P.format(members[i])), meta=m,
    )
    if S.size <= TABLE_LIMIT:
        S.add_table, S.mul_table  # noqa: B018  closure check happens here
    return S


class RingHom:
    """A verified ring homomorphism, stored as an index array."""

    def __init__(self, domain, codomain, images, _verified=False):
        self.domain = domain
        self.codomain = codomain
        self.map = np.asarray(images, dtype=np.intp)
        self.map.flags.writeable = False
        if not _verified:
            _verify_hom(domain, codomain, self.map)

    def __call__(self, i):
        return self.map[i]

    def __repr__(self):
        return f"<RingHom {self.domain.name} -> {self.codomain.name}>"

    def image_mask(self):
        m = np.zeros(self.codomain.size, dtype=bool)
        m[self.map] = True
        return m

    def preimage_mask(self, mask):
        return np.asarray(mask, dtype=bool)[self.map]

    def kernel_mask(self):
        return self.map == self.codomain.zero

    def is_surjective(self):
        return bool(self.image_mask().all())

    def is_injective(self):
        return len(np.unique(self.map)) == self.domain.size

    def is_identity(self):
        return self.domain is self.codomain and np.array_equal(self.map, self.domain.arange())

    def compose(self, other):
        """``self o other`` (apply ``other`` first)."""
        if other.codomain is not self.domain:
            raise InputError("hom composition: codomain/domain mismatch")
        return RingHom(other.domain, self.codomain, self.map[other.map], _verified=True)


def _verify_hom(R, S, f, chunk=256):
    if f.shape != (R.size,):
        raise ValidationError("map is not total on the domain carrier")
    if f.min() < 0 or f.max() >= S.size:
        raise ValidationError("map leaves the codomain carrier")
    if f[R.one] != S.one:
        raise ValidationError("map(1) != 1", witness=(R.one,))
    ar = R.arange()
    for lo in range(0, R.size, chunk):
        a = ar[lo:lo + chunk, None]
        b = ar[None, :]
        for name, op_r, op_s in (("additive", R.add, S.add), ("multiplicative", R.mul, S.mul)):
            lhs = f[_ix(op_r(a, b))]
            rhs = _ix(op_s(f[a], f[b]))
            bad = lhs != rhs
            if bad.any():
                i, j = np.argwhere(bad)[0]
                x, y = int(a[i, 0]), int(ar[j])
                raise ValidationError(
                    f"{name} violation at ({R.format(x)}, {R.format(y)})", witness=(x, y))


def make_hom(R, S, images):
    """Verified hom R -> S.  ``images`` is an index array, dict or callable."""
    if callable(images):
        arr = [images(i) for i in range(R.size)]
    elif isinstance(images, dict):
        try:
            arr = [images[i] for i in range(R.size)]
        except KeyError as e:
            raise ValidationError(f"map not total: missing {e.args[0]}") from None
    else:
        arr = images
    return RingHom(R, S, arr)


def hom_from_generator(R, S, gen_image=None):
    """Hom determined by 1 -> 1 (Z/n or F_p domains) or X -> gen_image.

    For a polynomial quotient domain over Z/n the hom sends
    sum c_k X^k to sum c_k * gen_image^k.
    """
    if R.tag[0] == "zmod":
        return make_hom(R, S, [S.from_int(k) for k in range(R.size)])
    if R.tag[0] == "polyquot" and R.meta["base"].tag[0] == "zmod":
        base, d = R.meta["base"], R.meta["degree"]
        if gen_image is None:
            raise InputError("hom from a polynomial quotient needs the image of X")
        pw = [S.one]
        for _ in range(1, d):
            pw.append(int(S.mul(pw[-1], gen_image)))
        q = base.size
        images = []
        for i in range(R.size):
            acc = S.zero
            for k in range(d):
                c = (i // q ** k) % q
                acc = int(S.add(acc, S.mul(S.from_int(base.elements[c]), pw[k])))
            images.append(acc)
        return make_hom(R, S, images)
    raise InputError(f"no generator description for hom out of {R.name}")


def make_quotient(R, ideal):
    """Coset ring R/I with minimal coset representatives, plus the surjection."""
    mask = np.asarray(getattr(ideal, "mask", ideal), dtype=bool)
    if mask.shape != (R.size,):
        raise InputError("ideal does not belong to this ring")
    if mask.all():
        raise InputError("cannot form the quotient by the unit ideal")
    members = np.flatnonzero(mask)
    cls = np.full(R.size, -1, dtype=np.intp)
    reps = []
    for x in range(R.size):
        if cls[x] < 0:
            cls[_ix(R.add(x, members))] = len(reps)
            reps.append(x)
    reps = np.array(reps, dtype=np.intp)
    if len(reps) == R.size:
        # quotient by (0): keep R itself, identity surjection
        return R, RingHom(R, R, R.arange(), _verified=True)

    def add_fn(i, j):
        return cls[_ix(R.add(reps[i], reps[j]))]

    def mul_fn(i, j):
        return cls[_ix(R.mul(reps[i], reps[j]))]

    def neg_fn(i):
        return cls[_ix(R.neg(reps[i]))]

    gens = getattr(ideal, "generators", None)
    label = ",".join(R.format(g) for g in gens) if gens is not None else f"{len(members)} elts"
    meta = {"parent": R, "classes": cls, "reps": reps}
    if R.generator is not None:
        meta["gen"] = int(cls[R.generator])
    Q = FiniteRing(
        [R.elements[r] for r in reps], add_fn, mul_fn, neg_fn,
        int(cls[R.zero]), int(cls[R.one]), ("quotient", R.tag, tuple(members.tolist())),
        name=f"{R.name}/({label})", formatter=lambda i: R.format(reps[i]), meta=meta,
    )
    pi = RingHom(R, Q, cls)
    Q.meta["projection"] = pi
    return Q, pi


def unit_mask(R):
    key = "unit_mask"
    if key not in R.cache:
        m = (R.mul_table == R.one).any(axis=1)
        m.flags.writeable = False
        R.cache[key] = m
    return R.cache[key]


def units(R):
    """Set of indices of the invertible elements."""
    return frozenset(np.flatnonzero(unit_mask(R)).tolist())


def inverse(R, x):
    row = np.flatnonzero(R.mul_table[x] == R.one)
    if not len(row):
        raise InputError(f"{R.format(x)} is not a unit of {R.name}")
    return int(row[0])


def is_local_ring(R):
    """Exactly one maximal ideal, i.e. the non-units are closed under addition."""
    nonunits = np.flatnonzero(~unit_mask(R))
    sums = R.add_table[np.ix_(nonunits, nonunits)]
    return bool((~unit_mask(R))[sums].all())
