"""Machine-readable reports and their independent re-checking."""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Any

from .quandle import FiniteQuandle, QuandleHom, check_axioms

OUTCOMES = ("verified", "refuted", "budget_exceeded", "error")
EXIT_CODES = {"verified": 0, "refuted": 1, "budget_exceeded": 2, "error": 3}


@dataclass
class Report:
    command: str
    outcome: str
    payload: dict[str, Any] = field(default_factory=dict)
    elapsed_ms: float = 0.0

    def __post_init__(self):
        if self.outcome not in OUTCOMES:
            raise ValueError(f"unknown outcome {self.outcome!r}")

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.outcome]

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> Report:
        return cls(d["command"], d["outcome"], d.get("payload", {}), d.get("elapsed_ms", 0.0))

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=1)

    @classmethod
    def loads(cls, text: str) -> Report:
        return cls.from_dict(json.loads(text))


def emit(report: Report, fmt: str = "text") -> str:
    if fmt in ("json", "structured"):
        return report.dumps()
    if fmt != "text":
        raise ValueError(f"unknown format {fmt!r}")
    lines = [f"command: {report.command}", f"outcome: {report.outcome}", f"elapsed: {report.elapsed_ms:.1f} ms"]
    lines.extend(_render_payload(report.payload))
    return "\n".join(lines)


def _is_table(d) -> bool:
    return isinstance(d, dict) and {"table", "elements", "order"} <= set(d)


def _render_payload(payload: dict, indent: str = "") -> list[str]:
    lines = []
    for key, value in payload.items():
        if _is_table(value):
            q = FiniteQuandle.from_dict(value)
            lines.append(f"{indent}{key}: {q.name or 'table'} (order {q.order})")
            if q.order <= 30:
                lines.extend(indent + "  " + row for row in q.render().splitlines())
        elif isinstance(value, dict):
            lines.append(f"{indent}{key}:")
            lines.extend(_render_payload(value, indent + "  "))
        elif isinstance(value, list) and len(value) > 24:
            lines.append(f"{indent}{key}: [{len(value)} entries]")
        else:
            lines.append(f"{indent}{key}: {value}")
    return lines


def recheck(report: Report) -> bool:
    """Re-verify the witness carried by a ``verified`` report using only
    the core table machinery."""
    p = report.payload
    if report.outcome != "verified":
        return False
    if "isomorphism" in p:
        src, tgt = FiniteQuandle.from_dict(p["source"]), FiniteQuandle.from_dict(p["target"])
        hom = QuandleHom(src, tgt, tuple(p["isomorphism"]))
        return bool(check_axioms(src)) and bool(check_axioms(tgt)) and hom.is_homomorphism() and hom.is_bijective()
    if "extension" in p:
        from .twist_spun import verify_central_extension
        src, tgt = FiniteQuandle.from_dict(p["source"]), FiniteQuandle.from_dict(p["target"])
        hom = QuandleHom(src, tgt, tuple(p["extension"]["projection"]))
        ext = verify_central_extension(src, tgt, hom, base=src.generators[0] if src.generators else 0)
        return ext.verdict and ext.deck_order == p["extension"]["deck_order"]
    if "lemma" in p:
        return all(recheck(Report(report.command, "verified", sub)) for sub in p["lemma"].values())
    if "certificate" in p:
        from .twist_spun import certify_Q6_infinite
        return certify_Q6_infinite().to_dict() == p["certificate"]
    if "table" in p:
        return bool(check_axioms(FiniteQuandle.from_dict(p["table"])))
    if "model" in p:
        from .geometry import eisenstein_quandle
        return p["model"] == eisenstein_quandle().describe()
    return False
