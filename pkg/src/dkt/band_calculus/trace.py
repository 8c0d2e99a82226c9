"""Audit trail of a reduction: every step records cu before and after."""

from __future__ import annotations

import hashlib
import json
from dataclasses import asdict, dataclass, field

from ..errors import InconsistencyError

__all__ = ["TraceStep", "ReductionTrace", "digest"]


def digest(state) -> str:
    """Short stable fingerprint of a state (anything with a deterministic repr)."""
    return hashlib.sha256(repr(state).encode()).hexdigest()[:12]


@dataclass(frozen=True)
class TraceStep:
    k: int
    move: str
    ref: str
    before: str
    after: str
    cu_before: int
    cu_after: int
    detail: str = ""

    def line(self) -> str:
        s = f'step {self.k} | move {self.move} | ref "{self.ref}" | cu {self.cu_before}→{self.cu_after}'
        return f"{s} | {self.detail}" if self.detail else s


@dataclass
class ReductionTrace:
    p: int
    steps: list[TraceStep] = field(default_factory=list)

    def record(self, move, ref, before, after, cu_before, cu_after, detail="") -> TraceStep:
        """Append a step; a cu change aborts the reduction."""
        step = TraceStep(len(self.steps) + 1, move, ref, before, after, cu_before, cu_after, detail)
        if cu_before != cu_after:
            raise InconsistencyError(f"cu changed at {step.line()}")
        self.steps.append(step)
        return step

    def extend(self, other: ReductionTrace) -> None:
        for s in other.steps:
            self.record(s.move, s.ref, s.before, s.after, s.cu_before, s.cu_after, s.detail)

    def __len__(self) -> int:
        return len(self.steps)

    def moves(self) -> list[str]:
        return [s.move for s in self.steps]

    def lines(self) -> list[str]:
        return [s.line() for s in self.steps]

    def to_json(self) -> list[dict]:
        return [asdict(s) for s in self.steps]

    def dumps(self) -> str:
        return json.dumps(self.to_json(), ensure_ascii=False)

    def is_sound(self) -> bool:
        return all(s.cu_before == s.cu_after for s in self.steps)
