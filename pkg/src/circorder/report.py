from __future__ import annotations

from dataclasses import dataclass, field

PASSING = ("symbolic", "certified", "exact")


@dataclass
class Entry:
    name: str
    status: str  # symbolic | certified | exact | failed | inconclusive
    detail: str = ""

    def __str__(self) -> str:
        tail = f"  {self.detail}" if self.detail else ""
        return f"[{self.status}] {self.name}{tail}"


@dataclass
class Report:
    title: str
    entries: list[Entry] = field(default_factory=list)

    def add(self, name: str, status: str, detail: str = "") -> Entry:
        e = Entry(name, status, detail)
        self.entries.append(e)
        return e

    def extend(self, other: "Report") -> None:
        self.entries.extend(other.entries)

    @property
    def ok(self) -> bool:
        return all(e.status in PASSING for e in self.entries)

    def failures(self) -> list[Entry]:
        return [e for e in self.entries if e.status not in PASSING]

    def text(self) -> str:
        lines = [f"== {self.title}"]
        lines += [str(e) for e in self.entries]
        bad = len(self.failures())
        lines.append(f"-- {len(self.entries)} checks, {bad} not passing: {'OK' if not bad else 'FAIL'}")
        return "\n".join(lines)

    def __str__(self) -> str:
        return self.text()
