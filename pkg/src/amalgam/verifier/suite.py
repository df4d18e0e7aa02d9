"""Claim evaluation, corpus campaigns and profile search."""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor

from ..constructions import has_condition_star
from ..errors import InputError, ResourceCapError
from ..predicates import PREDICATES
from .claims import REGISTRY, SHAPES
from .instances import is_amalgam, rebuild
from .report import FALSIFIED, NOT_MET, VERIFIED, ClaimReport, Conclusion, Hypothesis, \
    SuiteSummary


def get_claim(claim_id):
    try:
        return REGISTRY[claim_id]
    except KeyError:
        raise InputError(f"unknown claim {claim_id!r}") from None


def _eval_parts(parts, inst):
    """Evaluate a conjunction, stopping at the first false part."""
    out = []
    for p in parts:
        holds, wit = p.fn(inst)
        out.append({"name": p.name, "holds": bool(holds), "witness": wit})
        if not holds:
            return False, out
    return True, out


def _conclusion(claim, inst):
    if claim.form == "statement":
        holds, parts = _eval_parts(claim.parts, inst)
        failed = [p for p in parts if not p["holds"]]
        wit = failed[0] if failed else None
    else:
        lv, lparts = _eval_parts(claim.lhs, inst)
        rv, rparts = _eval_parts(claim.rhs, inst)
        holds = (not lv or rv) if claim.form == "implies" else lv == rv
        wit = {"form": claim.form,
               "lhs": {"holds": lv, "parts": lparts},
               "rhs": {"holds": rv, "parts": rparts}}
    if claim.notes:
        wit = {"notes": dict(claim.notes), "detail": wit}
    return Conclusion(bool(holds), wit)


def verify(claim_id, instance, strict=True, timing=False):
    """Evaluate one claim on one instance.

    With ``strict`` a shape mismatch raises InputError; otherwise it is
    reported as an unmet hypothesis.
    """
    claim = get_claim(claim_id)
    t0 = time.perf_counter()
    shape_ok = SHAPES[claim.shape](instance)
    if not shape_ok and strict:
        raise InputError(f"{claim_id} needs a {claim.shape} instance, got {instance.kind}")
    hyps = [Hypothesis(f"shape: {claim.shape}", shape_ok)]
    if shape_ok:
        for h in claim.hypotheses:
            holds, wit = h.fn(instance)
            hyps.append(Hypothesis(h.name, bool(holds), wit))
    if all(h.holds for h in hyps):
        concl = _conclusion(claim, instance)
        status = VERIFIED if concl.holds else FALSIFIED
    else:
        concl = Conclusion(None, None)
        status = NOT_MET
    ms = (time.perf_counter() - t0) * 1000 if timing else None
    return ClaimReport(claim_id, instance.digest(), hyps, concl, status, ms)


def recheck(report, instance):
    """Re-evaluate a report on a freshly rebuilt copy of the instance.

    True when the fresh evaluation reproduces the recorded status and
    conclusion value.
    """
    fresh = rebuild(instance) if getattr(instance, "recipe", None) is not None else instance
    again = verify(report.claim, fresh, strict=False)
    same_c = (again.conclusion.holds == report.conclusion.holds
              if report.conclusion is not None else again.conclusion is None)
    return again.status == report.status and same_c


def run_suite(corpus, claims=None, jobs=1, timing=False):
    """Evaluate every (claim, instance) pair; reports ordered by (claim, instance)."""
    claims = list(claims) if claims is not None else list(REGISTRY)
    for c in claims:
        get_claim(c)
    pairs = [(ci, ii) for ci in range(len(claims)) for ii in range(len(corpus))]
    capped = []

    def task(pair):
        ci, ii = pair
        try:
            return verify(claims[ci], corpus[ii], strict=False, timing=timing)
        except ResourceCapError as e:
            capped.append({"claim": claims[ci], "instance": corpus[ii].digest(), "error": str(e)})
            return None

    # evaluate instance-major so per-instance caches are reused while warm
    order = sorted(pairs, key=lambda p: (p[1], p[0]))
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as ex:
            results = dict(zip(order, ex.map(task, order)))
    else:
        results = {p: task(p) for p in order}
    reports = [results[p] for p in pairs if results[p] is not None]
    capped.sort(key=lambda d: (d["claim"], d["instance"]))
    return SuiteSummary(reports, capped)


# --- search ---------------------------------------------------------------------------


def _star(inst):
    return is_amalgam(inst) and has_condition_star(inst)


PROFILE_PREDICATES = dict(PREDICATES)
PROFILE_PREDICATES["star"] = None


def parse_profile(text):
    """'prufer,!gaussian' -> [("prufer", True), ("gaussian", False)]."""
    out = []
    for tok in text.replace("&", ",").split(","):
        tok = tok.strip()
        if not tok:
            continue
        want = True
        while tok.startswith(("!", "~")):
            want, tok = not want, tok[1:].strip()
        if tok not in PROFILE_PREDICATES:
            raise InputError(f"unknown predicate {tok!r} in profile")
        out.append((tok, want))
    if not out:
        raise InputError("empty profile")
    return out


def matches(inst, profile):
    for name, want in profile:
        val = _star(inst) if name == "star" else bool(PREDICATES[name](inst.A))
        if val != want:
            return False
    return True


def search(profile, corpus, max_size=None):
    """Corpus instances satisfying every literal of the profile, smallest first."""
    if isinstance(profile, str):
        profile = parse_profile(profile)
    names = [n for n, _ in profile]
    if any(names.count(n) > 1 and {w for m, w in profile if m == n} == {True, False}
           for n in names):
        return []
    hits = [(inst.A.size, k, inst) for k, inst in enumerate(corpus)
            if (max_size is None or inst.A.size <= max_size) and matches(inst, profile)]
    return [inst for _, _, inst in sorted(hits, key=lambda t: (t[0], t[1]))]
