"""Reproducible instance recipes.

A recipe is a nested tuple naming how a ring, hom, module or instance is
built.  ``Builder`` memoizes recipes so that corpus instances share ring
objects (and their cached tables); ``Builder(fresh=True)`` rebuilds
everything from scratch for independent re-checks.
"""

from __future__ import annotations

import numpy as np

from ..constructions import AmalgamInstance, amalgamation, duplication, trivial_extension
from ..errors import InputError
from ..ideals import ideal_generated
from ..modules import free_module, module_from_ideal, module_from_ring, module_quotient, \
    module_via_hom
from ..rings import Polynomial, make_gf, make_hom, make_poly_quotient, make_quotient, make_zmod

# irreducible moduli for the small extension fields (constant term first)
EXTENSION_MODULI = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (3, 2): (1, 0, 1),
    (5, 2): (2, 0, 1),
}


class RingInstance:
    """A bare ring treated as a corpus instance."""

    kind = "ring"

    def __init__(self, ring, label=None):
        self.ring = ring
        self.A = ring
        self.label = label or ring.name
        self.cache = {}
        self.recipe = None

    def digest(self):
        return self.label

    def __repr__(self):
        return f"<RingInstance {self.label} |R|={self.ring.size}>"


def main_ring(inst):
    """The ring a predicate profile is evaluated on: A for amalgams, R otherwise."""
    return inst.A


class Builder:
    def __init__(self, fresh=False):
        self.fresh = fresh
        self.memo = {}

    def _get(self, recipe, fn):
        if recipe not in self.memo:
            self.memo[recipe] = fn()
        return self.memo[recipe]

    # rings ---------------------------------------------------------------

    def ring(self, rec):
        return self._get(("ring",) + rec, lambda: self._ring(rec))

    def _ring(self, rec):
        tag = rec[0]
        if tag == "zmod":
            return make_zmod(rec[1])
        if tag == "gf":
            p, k = rec[1], rec[2] if len(rec) > 2 else 1
            if k == 1:
                return make_gf(p)
            if (p, k) not in EXTENSION_MODULI:
                raise InputError(f"no stored modulus for F{p ** k}")
            base = self.ring(("gf", p))
            R = make_poly_quotient(base, Polynomial.from_ints(base, EXTENSION_MODULI[(p, k)]))
            R.name = f"F{p ** k}"
            return R
        if tag == "polyx":
            p, k = rec[1], rec[2]
            base = self.ring(("gf", p))
            return make_poly_quotient(base, Polynomial.from_ints(base, [0] * k + [1]))
        if tag == "quot":
            return self.quotient(rec[1], rec[2])[0]
        raise InputError(f"unknown ring recipe {rec!r}")

    def quotient(self, parent_rec, gens):
        def build():
            R = self.ring(parent_rec)
            return make_quotient(R, ideal_generated(R, gens))
        return self._get(("quotient", parent_rec, gens), build)

    # homs ----------------------------------------------------------------

    def hom(self, rec):
        return self._get(("hom",) + rec, lambda: self._hom(rec))

    def _hom(self, rec):
        tag = rec[0]
        if tag == "canon":
            return self.quotient(rec[1], rec[2])[1]
        if tag == "identity":
            from ..constructions import identity_hom
            return identity_hom(self.ring(rec[1]))
        if tag == "prime-incl":
            R, S = self.ring(rec[1]), self.ring(rec[2])
            if R.tag[0] != "zmod":
                raise InputError("prime inclusion needs a Z/n domain")
            return make_hom(R, S, np.array([S.from_int(k) for k in range(R.size)]))
        raise InputError(f"unknown hom recipe {rec!r}")

    # modules -------------------------------------------------------------

    def module(self, rec):
        return self._get(("module",) + rec, lambda: self._module(rec))

    def _module(self, rec):
        tag, R = rec[0], self.ring(rec[1])
        if tag == "ring":
            return module_from_ring(R)
        if tag == "quot":
            return module_quotient(R, ideal_generated(R, rec[2]))
        if tag == "ideal":
            return module_from_ideal(R, ideal_generated(R, rec[2]))
        if tag == "free":
            return free_module(R, rec[2])
        if tag == "ext":
            # B viewed as an R-module along the prime inclusion R -> B
            B = self.ring(rec[2])
            f = self.hom(("prime-incl", rec[1], rec[2]))
            M = module_via_hom(f, module_from_ring(B))
            M.meta["domain_extension"] = f
            return M
        raise InputError(f"unknown module recipe {rec!r}")

    # instances -----------------------------------------------------------

    def instance(self, rec):
        return self._get(("instance",) + rec, lambda: self._instance(rec))

    def _instance(self, rec):
        tag = rec[0]
        if tag == "ring":
            inst = RingInstance(self.ring(rec[1]))
        elif tag == "amalgam":
            f = self.hom(rec[1])
            inst = amalgamation(f, ideal_generated(f.codomain, rec[2]))
        elif tag == "dup":
            R = self.ring(rec[1])
            inst = duplication(R, ideal_generated(R, rec[2]))
        elif tag == "trivext":
            _, inst = trivial_extension(self.ring(rec[1]), self.module(rec[2]))
        else:
            raise InputError(f"unknown instance recipe {rec!r}")
        inst.recipe = rec
        return inst


def rebuild(inst):
    """Fresh copy of a corpus instance (no shared caches)."""
    if getattr(inst, "recipe", None) is None:
        raise InputError("instance has no recipe; cannot rebuild")
    return Builder(fresh=True).instance(inst.recipe)


def is_amalgam(inst):
    return isinstance(inst, AmalgamInstance)
