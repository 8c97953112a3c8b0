"""Row-by-row cost tables whose total is the composition of their rows."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import groupby

from .resources import Resources, par_all, seq_all


@dataclass(frozen=True)
class CostRow:
    """One labelled row. Rows sharing a ``stage`` run in parallel."""

    label: str
    cost: Resources
    stage: int

    def to_dict(self) -> dict:
        return {"label": self.label, "stage": self.stage, **self.cost.to_dict()}


@dataclass
class CostBreakdown:
    """Ordered rows; stages compose in series, rows within a stage in parallel."""

    title: str
    rows: list[CostRow] = field(default_factory=list)
    params: dict = field(default_factory=dict)

    def add(self, label: str, cost: Resources, stage: int | None = None) -> None:
        if stage is None:
            stage = self.rows[-1].stage + 1 if self.rows else 0
        if self.rows and stage < self.rows[-1].stage:
            raise ValueError("stages must be added in non-decreasing order")
        self.rows.append(CostRow(label, cost, stage))

    def row(self, label: str) -> Resources:
        for r in self.rows:
            if r.label == label:
                return r.cost
        raise KeyError(label)

    @property
    def total(self) -> Resources:
        stages = [par_all(r.cost for r in grp) for _, grp in groupby(self.rows, key=lambda r: r.stage)]
        return seq_all(stages)

    def to_dict(self) -> dict:
        return {
            "title": self.title,
            "params": dict(self.params),
            "rows": [r.to_dict() for r in self.rows],
            "total": self.total.to_dict(),
        }

    def format_table(self) -> str:
        lines = [self.title, f"{'operation':<28}{'T-depth':>10}{'T/Toffoli count':>18}"]
        for r in self.rows:
            lines.append(f"{r.label:<28}{r.cost.t_depth:>10}{r.cost.non_clifford_count:>18.3e}")
        t = self.total
        lines.append(f"{'Total':<28}{t.t_depth:>10}{t.non_clifford_count:>18.3e}")
        return "\n".join(lines)
