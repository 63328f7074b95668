"""Analysis reports: one schema, machine- and human-readable renderings."""

from __future__ import annotations

import json
from dataclasses import dataclass, field


@dataclass
class AnalysisReport:
    question: str
    answer: str  # "true" | "false" | "inconclusive" | free-form payloads
    reason: str = ""
    states_explored: int | None = None
    edges: int | None = None
    scc_count: int | None = None
    wall_ms: float | None = None
    trace: list | None = None
    extra: dict = field(default_factory=dict)

    def to_json(self) -> str:
        stats = {
            "states_explored": self.states_explored,
            "edges": self.edges,
            "scc_count": self.scc_count,
            "wall_ms": self.wall_ms,
        }
        doc = {"question": self.question, "answer": self.answer, "stats": stats}
        if self.reason:
            doc["reason"] = self.reason
        if self.trace is not None:
            doc["trace"] = self.trace
        if self.extra:
            doc["extra"] = self.extra
        return json.dumps(doc, sort_keys=True, indent=1) + "\n"

    def to_text(self) -> str:
        lines = [f"{self.question}: {self.answer}"]
        if self.reason:
            lines.append(f"reason: {self.reason}")
        for label, value in (
            ("states explored", self.states_explored),
            ("edges", self.edges),
            ("SCCs", self.scc_count),
            ("wall ms", self.wall_ms),
        ):
            if value is not None:
                lines.append(f"{label}: {value}")
        for key, value in sorted(self.extra.items()):
            lines.append(f"{key}: {value}")
        if self.trace:
            lines.append("trace:")
            lines.extend(f"  {row}" for row in self.trace)
        return "\n".join(lines) + "\n"
