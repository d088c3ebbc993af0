"""Report records and their JSON / CSV rendering."""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field

EXACT_ZERO = "exact-zero"
ZERO_TO_PRECISION = "zero-to-precision"
FAIL = "FAIL"


def _clean(v):
    if isinstance(v, float) and math.isinf(v):
        return "inf"
    if isinstance(v, (list, tuple)):
        return [_clean(x) for x in v]
    if isinstance(v, dict):
        return {k: _clean(x) for k, x in v.items()}
    return v


@dataclass
class CheckResult:
    check: str
    params: dict
    status: str
    witness: object = "0"
    level_valuations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.status != FAIL

    def to_dict(self) -> dict:
        return _clean(
            {
                "check": self.check,
                "params": self.params,
                "status": self.status,
                "witness": self.witness,
                "level_valuations": self.level_valuations,
            }
        )


def document(command: str, suite: str | None, grid: dict, results: list[CheckResult], cyclotomic_order: int = 1) -> dict:
    failures = [r for r in results if not r.ok]
    return {
        "command": command,
        "suite": suite,
        "grid": _clean(grid),
        "cyclotomic_order": cyclotomic_order,
        "results": [r.to_dict() for r in results],
        "summary": {
            "cases": len(results),
            "failures": len(failures),
            "first_failure": failures[0].to_dict() if failures else None,
        },
    }


def render_json(doc: dict) -> str:
    return json.dumps(doc, indent=2) + "\n"


def render_csv(rows: list[dict], columns: list[str] | None = None) -> str:
    if not rows:
        return ""
    columns = columns or list(rows[0])
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n", extrasaction="ignore")
    writer.writeheader()
    for row in rows:
        writer.writerow(
            {k: (json.dumps(v, separators=(",", ":")) if isinstance(v, (dict, list)) else v) for k, v in _clean(row).items()}
        )
    return buf.getvalue()


def results_csv(doc: dict) -> str:
    return render_csv(doc["results"], ["check", "params", "status", "witness", "level_valuations"])
