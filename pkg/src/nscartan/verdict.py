"""Verdict records shared by the lattice module and the gates."""
from __future__ import annotations

from dataclasses import dataclass, field

COMPUTED = "computed"
EXTERNAL = "external"


@dataclass(frozen=True)
class GateEntry:
    """One verdict with the quantities it was decided from.

    ``inputs`` maps each quantity name to ``(value, provenance)``, where
    provenance is ``"computed"`` or ``"external"`` (taken from cited work).
    ``expected`` is the verdict the theory predicts, or None when there is no
    prediction to compare against.
    """

    gate: str
    p: int | None
    verdict: bool
    summary: str
    inputs: dict = field(default_factory=dict)
    expected: bool | None = None

    @property
    def ok(self) -> bool:
        return self.expected is None or self.verdict == self.expected

    def to_dict(self) -> dict:
        return {
            "gate": self.gate,
            "p": self.p,
            "verdict": self.verdict,
            "expected": self.expected,
            "ok": self.ok,
            "summary": self.summary,
            "inputs": {k: {"value": v, "source": s} for k, (v, s) in sorted(self.inputs.items())},
        }

    def to_text(self) -> str:
        status = "ok" if self.ok else "MISMATCH"
        head = f"[{status}] {self.gate} p={self.p} verdict={self.verdict}: {self.summary}"
        body = "".join(f"    {k} = {v} ({s})\n" for k, (v, s) in sorted(self.inputs.items()))
        return head + "\n" + body
