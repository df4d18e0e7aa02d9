"""Claim reports and their serialization.

The structured format is JSON Lines: one object per report, keys in the
fixed order of ``ClaimReport.FIELDS``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

VERIFIED = "verified"
NOT_MET = "hypothesis-not-met"
FALSIFIED = "falsified"
STATUSES = (VERIFIED, NOT_MET, FALSIFIED)


@dataclass
class Hypothesis:
    name: str
    holds: bool
    witness: object = None

    def to_dict(self):
        return {"name": self.name, "holds": self.holds, "witness": self.witness}


@dataclass
class Conclusion:
    holds: bool | None
    witness: object = None

    def to_dict(self):
        return {"holds": self.holds, "witness": self.witness}


@dataclass
class ClaimReport:
    claim: str
    instance_digest: str
    hypotheses: list = field(default_factory=list)
    conclusion: Conclusion = None
    status: str = NOT_MET
    timing: float | None = None

    FIELDS = ("claim", "instance_digest", "hypotheses", "conclusion", "status", "timing")

    def to_dict(self):
        return {
            "claim": self.claim,
            "instance_digest": self.instance_digest,
            "hypotheses": [h.to_dict() for h in self.hypotheses],
            "conclusion": self.conclusion.to_dict() if self.conclusion else None,
            "status": self.status,
            "timing": self.timing,
        }

    @classmethod
    def from_dict(cls, d):
        return cls(d["claim"], d["instance_digest"],
                   [Hypothesis(**h) for h in d["hypotheses"]],
                   Conclusion(**d["conclusion"]) if d["conclusion"] else None,
                   d["status"], d["timing"])


def _plain(x):
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, np.bool_):
        return bool(x)
    if isinstance(x, np.integer):
        return int(x)
    return x


def to_json(report):
    return json.dumps(_plain(report.to_dict()), ensure_ascii=False)


def from_json(line):
    return ClaimReport.from_dict(json.loads(line))


def to_text(report):
    lines = [f"{report.claim} on {report.instance_digest}: {report.status}"]
    for h in report.hypotheses:
        mark = "yes" if h.holds else "no"
        extra = f"  {h.witness}" if h.witness else ""
        lines.append(f"  hypothesis {h.name}: {mark}{extra}")
    if report.conclusion is not None and report.conclusion.holds is not None:
        c = report.conclusion
        lines.append(f"  conclusion: {'holds' if c.holds else 'fails'}")
        if c.witness:
            lines.append(f"    {json.dumps(_plain(c.witness), ensure_ascii=False)}")
    if report.timing is not None:
        lines.append(f"  time: {report.timing:.1f} ms")
    return "\n".join(lines)


def emit(report, fmt="text"):
    """Render a report (or a summary dict) as text or one structured line."""
    if isinstance(report, SuiteSummary):
        return report.to_json() if fmt == "structured" else report.to_text()
    if fmt == "structured":
        return to_json(report)
    if fmt == "text":
        return to_text(report)
    raise ValueError(f"unknown format {fmt!r}")


@dataclass
class SuiteSummary:
    reports: list
    capped: list = field(default_factory=list)

    @property
    def counts(self):
        out = {s: 0 for s in STATUSES}
        for r in self.reports:
            out[r.status] += 1
        return out

    def by_claim(self):
        out = {}
        for r in self.reports:
            out.setdefault(r.claim, {s: 0 for s in STATUSES})[r.status] += 1
        return out

    @property
    def falsified(self):
        return [r for r in self.reports if r.status == FALSIFIED]

    @property
    def ok(self):
        return not self.falsified

    def to_json(self):
        return json.dumps({"summary": self.counts, "by_claim": self.by_claim(),
                           "capped": self.capped, "ok": self.ok})

    def to_text(self):
        c = self.counts
        lines = [f"{len(self.reports)} reports: " + ", ".join(f"{c[s]} {s}" for s in STATUSES)]
        if self.capped:
            lines.append(f"{len(self.capped)} evaluations stopped at a resource cap")
        for r in self.falsified:
            lines.append(to_text(r))
        return "\n".join(lines)
