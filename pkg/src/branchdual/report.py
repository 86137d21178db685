"""Verification reports and their JSON/CSV serialisation."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field, replace
from importlib import resources


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of one lemma or theorem check on one instance.

    ``measured`` holds the quantities the check compared; values are ints,
    bools, strings or small lists/dicts of those.
    """

    lemma: str
    passed: bool
    measured: dict = field(default_factory=dict)
    digest: str = ""
    seed: int | None = None
    note: str = ""

    def with_seed(self, seed) -> "VerificationReport":
        return replace(self, seed=seed)

    def to_json(self) -> dict:
        return {
            "lemma": self.lemma,
            "seed": self.seed,
            "digest": self.digest,
            "measured": self.measured,
            "pass": self.passed,
            "note": self.note,
        }

    @classmethod
    def from_json(cls, data: dict) -> "VerificationReport":
        return cls(
            lemma=data["lemma"],
            passed=data["pass"],
            measured=dict(data.get("measured", {})),
            digest=data.get("digest", ""),
            seed=data.get("seed"),
            note=data.get("note", ""),
        )


def load_schema() -> dict:
    text = resources.files("branchdual").joinpath("schemas/report.schema.json").read_text()
    return json.loads(text)


def aggregate(reports, campaign: dict | None = None) -> dict:
    reports = list(reports)
    by_lemma = {}
    for r in reports:
        tally = by_lemma.setdefault(r.lemma, {"checked": 0, "failed": 0})
        tally["checked"] += 1
        tally["failed"] += not r.passed
    return {
        "campaign": campaign or {},
        "summary": {k: by_lemma[k] for k in sorted(by_lemma)},
        "all_pass": all(r.passed for r in reports),
        "reports": [r.to_json() for r in reports],
    }


def dumps_json(reports, campaign: dict | None = None) -> str:
    return json.dumps(aggregate(reports, campaign), indent=1, sort_keys=True) + "\n"


def dumps_csv(reports) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["lemma", "seed", "digest", "pass", "measured", "note"])
    for r in reports:
        writer.writerow(
            [r.lemma, "" if r.seed is None else r.seed, r.digest, int(r.passed),
             json.dumps(r.measured, sort_keys=True), r.note]
        )
    return buf.getvalue()
