"""Verification reports with a fixed field order (text and JSON)."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable

from . import __version__

STATUSES = ("pass", "fail", "info")


@dataclass(frozen=True)
class Check:
    check: str
    status: str
    expected: str | None = None
    actual: str | None = None

    def __post_init__(self) -> None:
        if self.status not in STATUSES:
            raise ValueError(f"bad status {self.status!r}")

    @classmethod
    def compare(cls, name: str, expected: object, actual: object, ok: bool | None = None) -> "Check":
        if ok is None:
            ok = expected == actual
        return cls(name, "pass" if ok else "fail", _s(expected), _s(actual))

    @classmethod
    def info(cls, name: str, actual: object, expected: object = None) -> "Check":
        return cls(name, "info", _s(expected), _s(actual))

    @property
    def passed(self) -> bool:
        return self.status != "fail"

    def to_dict(self) -> dict:
        return {"check": self.check, "status": self.status, "expected": self.expected, "actual": self.actual}


def _s(v: object) -> str | None:
    return None if v is None else str(v)


@dataclass
class Report:
    command: str
    entries: list[Check] = field(default_factory=list)
    timing: float = 0.0
    version: str = __version__

    def add(self, entry: Check | Iterable[Check]) -> None:
        if isinstance(entry, Check):
            self.entries.append(entry)
        else:
            self.entries.extend(entry)

    @property
    def ok(self) -> bool:
        return all(e.passed for e in self.entries)

    def counts(self) -> dict[str, int]:
        return {s: sum(e.status == s for e in self.entries) for s in STATUSES}

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "version": self.version,
            "timing": round(self.timing, 3),
            "ok": self.ok,
            "entries": [e.to_dict() for e in self.entries],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_dict(cls, d: dict) -> "Report":
        return cls(
            d["command"],
            [Check(e["check"], e["status"], e["expected"], e["actual"]) for e in d["entries"]],
            d.get("timing", 0.0),
            d.get("version", __version__),
        )

    def to_text(self) -> str:
        lines = [f"# {self.command}"]
        for e in self.entries:
            line = f"[{e.status.upper():4}] {e.check}"
            if e.actual is not None:
                line += f": {e.actual}"
            if e.status == "fail" and e.expected is not None:
                line += f" (expected {e.expected})"
            lines.append(line)
        c = self.counts()
        lines.append(f"# {c['pass']} pass, {c['fail']} fail, {c['info']} info in {self.timing:.2f}s")
        return "\n".join(lines)
