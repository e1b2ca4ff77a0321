"""Run reports: plain tables for people, JSON for machines.

Only JSON-native values go into a :class:`Report`, so ``parse(emit(r)) == r``.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field

EXIT_OK, EXIT_INVALID, EXIT_INCONCLUSIVE, EXIT_FAILURE = 0, 2, 3, 4


@dataclass
class Report:
    command: str
    status: str = "pass"
    summary: dict = field(default_factory=dict)
    columns: list = field(default_factory=list)
    rows: list = field(default_factory=list)
    checks: dict = field(default_factory=dict)
    messages: list = field(default_factory=list)

    @property
    def exit_code(self) -> int:
        return {"pass": EXIT_OK, "invalid": EXIT_INVALID, "inconclusive": EXIT_INCONCLUSIVE}.get(
            self.status, EXIT_FAILURE)


def emit(report: Report) -> str:
    return json.dumps(asdict(report), indent=1, sort_keys=True, ensure_ascii=False)


def parse(text: str) -> Report:
    return Report(**json.loads(text))


def _cell(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    return str(v)


def render_text(report: Report) -> str:
    lines = []
    if report.summary:
        lines.append("; ".join(f"{k} = {_cell(v)}" for k, v in report.summary.items() if not isinstance(v, list)))
    if report.columns:
        table = [report.columns] + [[_cell(r.get(c)) for c in report.columns] for r in report.rows]
        widths = [max(len(row[i]) for row in table) for i in range(len(report.columns))]
        fmt = " | ".join(f"{{:>{w}}}" for w in widths)
        lines.append(fmt.format(*table[0]))
        lines.append("-+-".join("-" * w for w in widths))
        lines.extend(fmt.format(*row) for row in table[1:])
    if report.checks:
        ok = [k for k, v in report.checks.items() if v]
        bad = [k for k, v in report.checks.items() if not v]
        lines.append(f"identities passed: {', '.join(ok) if ok else 'none'}")
        if bad:
            lines.append(f"identities FAILED: {', '.join(bad)}")
    lines.extend(report.messages)
    lines.append(f"status: {report.status.upper()}")
    return "\n".join(lines)
