"""Claim registry, instance corpus and verification campaigns."""

from .claims import CLAIM_IDS, CLAIMS, REGISTRY, Claim
from .corpus import CorpusBounds, corpus_recipes, generate_corpus
from .instances import Builder, RingInstance, rebuild
from .report import (FALSIFIED, NOT_MET, VERIFIED, ClaimReport, SuiteSummary, emit, from_json,
                     to_json, to_text)
from .suite import get_claim, matches, parse_profile, recheck, run_suite, search, verify

__all__ = [
    "CLAIM_IDS", "CLAIMS", "REGISTRY", "Claim", "CorpusBounds", "corpus_recipes",
    "generate_corpus", "Builder", "RingInstance", "rebuild", "FALSIFIED", "NOT_MET",
    "VERIFIED", "ClaimReport", "SuiteSummary", "emit", "from_json", "to_json", "to_text",
    "get_claim", "matches", "parse_profile", "recheck", "run_suite", "search", "verify",
]
