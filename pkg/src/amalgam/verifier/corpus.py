"""Deterministic enumeration of small instances.

Families: Z/n, F_p[X]/(X^k), a few extension fields; canonical
surjections onto every quotient, duplications, prime-subring inclusions;
every proper ideal J of each codomain; trivial extensions over small
modules; and the bare rings themselves.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import ResourceCapError
from ..ideals import all_ideals
from ..rings import SIZE_CAP, TABLE_LIMIT
from .instances import EXTENSION_MODULI, Builder


def _primes(n):
    return [p for p in range(2, n + 1) if all(p % d for d in range(2, int(p ** 0.5) + 1))]


@dataclass(frozen=True)
class CorpusBounds:
    zmod_max: int = 48
    polyx_max: int = 256
    extension_fields: tuple = ((2, 2), (2, 3), (3, 2))
    max_amalgam_size: int = 1024
    trivext_base_max: int = 16
    trivext_max: int = 128
    include_rings: bool = True
    include_amalgams: bool = True
    include_trivexts: bool = True

    def check(self):
        if self.max_amalgam_size > TABLE_LIMIT or self.trivext_max > TABLE_LIMIT:
            raise ResourceCapError(f"instance size bound exceeds table limit {TABLE_LIMIT}")
        if max(self.zmod_max, self.polyx_max) > SIZE_CAP:
            raise ResourceCapError("ring family bound exceeds size cap")
        for pk in self.extension_fields:
            if tuple(pk) not in EXTENSION_MODULI:
                raise ResourceCapError(f"no stored modulus for F{pk[0]}^{pk[1]}")


def base_ring_recipes(bounds):
    out = [("zmod", n) for n in range(2, bounds.zmod_max + 1)]
    for p in _primes(bounds.polyx_max):
        k = 2
        while p ** k <= bounds.polyx_max:
            out.append(("polyx", p, k))
            k += 1
    out += [("gf", p, k) for p, k in bounds.extension_fields]
    return out


def _proper_ideals(R):
    return [I for I in all_ideals(R) if I.is_proper()]


def corpus_recipes(bounds=None, builder=None):
    bounds = bounds or CorpusBounds()
    bounds.check()
    b = builder or Builder()
    recipes = []
    bases = base_ring_recipes(bounds)
    for r in bases:
        R = b.ring(r)
        if bounds.include_rings:
            recipes.append(("ring", r))
        if not bounds.include_amalgams:
            continue
        for I in _proper_ideals(R):
            if I.is_zero():
                for J in _proper_ideals(R):
                    if R.size * J.size <= bounds.max_amalgam_size:
                        recipes.append(("dup", r, J.generators))
                continue
            gens = I.generators
            S = b.quotient(r, gens)[0]
            for J in _proper_ideals(S):
                if R.size * J.size <= bounds.max_amalgam_size:
                    recipes.append(("amalgam", ("canon", r, gens), J.generators))
    if bounds.include_amalgams:
        for target in bases:
            if target[0] == "zmod":
                continue
            p = target[1]
            src = ("gf", p)
            S = b.ring(target)
            for J in _proper_ideals(S):
                if p * J.size <= bounds.max_amalgam_size:
                    recipes.append(("amalgam", ("prime-incl", src, target), J.generators))
    if bounds.include_trivexts:
        for r in bases:
            R = b.ring(r)
            if R.size > bounds.trivext_base_max:
                continue
            mods = [("ring", r), ("free", r, 2)]
            for I in _proper_ideals(R):
                if not I.is_zero():
                    mods.append(("quot", r, I.generators))
                    mods.append(("ideal", r, I.generators))
            if r[0] == "zmod" and r[1] in {p for p, _ in bounds.extension_fields}:
                mods += [("ext", ("gf", r[1]), ("gf", p, k))
                         for p, k in bounds.extension_fields if p == r[1]]
            for m in mods:
                if R.size * b.module(m).size <= bounds.trivext_max:
                    recipes.append(("trivext", m[1], m))
    return recipes


def generate_corpus(bounds=None, builder=None):
    """Instances in a fixed order; identical bounds give identical corpora."""
    b = builder or Builder()
    return [b.instance(rec) for rec in corpus_recipes(bounds, b)]
