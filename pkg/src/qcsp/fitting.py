"""Exponential scaling fits and the fit registry.

A fit is a least-squares line through log2(metric) against n, so the metric
is modelled as 2^(slope*n + intercept).
"""

from __future__ import annotations

import csv
import math
from dataclasses import asdict, dataclass
from importlib import resources as importlib_resources
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

REGISTRY_FIELDS = ("problem", "k", "slope", "intercept", "units", "source")


@dataclass(frozen=True)
class ScalingFit:
    """Fitted exponent with the data range and residual statistics."""

    slope: float
    intercept: float
    fit_range: tuple[int, int]
    samples_per_point: int = 0
    n_points: int = 0
    residual_rms: float = 0.0
    residual_max: float = 0.0

    def log2_value(self, n: float) -> float:
        return self.slope * n + self.intercept

    def value(self, n: float) -> float:
        return 2.0 ** self.log2_value(n)

    def to_dict(self) -> dict:
        return asdict(self)


def fit_scaling(points: Iterable[tuple[float, float]], samples_per_point: int = 0) -> ScalingFit:
    """Least-squares fit of log2(metric) = slope*n + intercept.

    Raises:
        ValueError: fewer than 3 points, non-positive metric, or all n equal.
    """
    pts = sorted(points)
    if len(pts) < 3:
        raise ValueError("a scaling fit needs at least 3 points")
    n = np.array([p[0] for p in pts], dtype=float)
    y = np.array([p[1] for p in pts], dtype=float)
    if np.any(y <= 0):
        raise ValueError("metrics must be positive")
    if np.ptp(n) == 0:
        raise ValueError("all points have the same n")
    ly = np.log2(y)
    slope, intercept = np.polyfit(n, ly, 1)
    resid = ly - (slope * n + intercept)
    return ScalingFit(
        slope=float(slope),
        intercept=float(intercept),
        fit_range=(int(n.min()), int(n.max())),
        samples_per_point=samples_per_point,
        n_points=len(pts),
        residual_rms=float(np.sqrt(np.mean(resid**2))),
        residual_max=float(np.max(np.abs(resid))),
    )


@dataclass(frozen=True)
class FitEntry:
    """One registry row. ``k`` is 0 for problems not indexed by clause width."""

    problem: str
    k: int
    slope: float
    intercept: float
    units: str
    source: str

    def log2_value(self, n: float) -> float:
        return self.slope * n + self.intercept

    def value(self, n: float) -> float:
        return 2.0 ** self.log2_value(n)

    def as_fit(self) -> ScalingFit:
        return ScalingFit(self.slope, self.intercept, (0, 0))


class FitRegistry:
    """Fits keyed by (problem, k). Later entries override earlier ones."""

    def __init__(self, entries: Iterable[FitEntry] = ()):
        self._entries: dict[tuple[str, int], FitEntry] = {}
        for e in entries:
            self.add(e)

    def add(self, entry: FitEntry) -> None:
        self._entries[(entry.problem, entry.k)] = entry

    def get(self, problem: str, k: int = 0) -> FitEntry:
        try:
            return self._entries[(problem, k)]
        except KeyError:
            raise KeyError(f"no fit registered for problem={problem!r} k={k}") from None

    def __contains__(self, key) -> bool:
        return key in self._entries

    def __iter__(self):
        return iter(sorted(self._entries.values(), key=lambda e: (e.problem, e.k)))

    def __len__(self) -> int:
        return len(self._entries)

    def merged(self, other: "FitRegistry") -> "FitRegistry":
        return FitRegistry(list(self) + list(other))

    @classmethod
    def load(cls, path: str | Path) -> "FitRegistry":
        with open(path, newline="") as fh:
            reader = csv.DictReader(line for line in fh if not line.startswith("#"))
            missing = set(REGISTRY_FIELDS) - set(reader.fieldnames or ())
            if missing:
                raise ValueError(f"{path}: missing columns {sorted(missing)}")
            entries = [
                FitEntry(
                    problem=row["problem"],
                    k=int(row["k"] or 0),
                    slope=float(row["slope"]),
                    intercept=float(row["intercept"]),
                    units=row["units"],
                    source=row["source"],
                )
                for row in reader
            ]
        return cls(entries)

    def save(self, path: str | Path) -> None:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(REGISTRY_FIELDS)
            for e in self:
                w.writerow([e.problem, e.k, e.slope, e.intercept, e.units, e.source])


def default_registry() -> FitRegistry:
    """The shipped fits (published solver and tree-size exponents)."""
    path = Path(str(importlib_resources.files("qcsp") / "data" / "fits.csv"))
    return FitRegistry.load(path)


def median_by_n(rows: Sequence[dict], metric: str = "nodes") -> list[tuple[int, float]]:
    groups: dict[int, list[float]] = {}
    for r in rows:
        groups.setdefault(int(r["n"]), []).append(float(r[metric]))
    return [(n, float(np.median(v))) for n, v in sorted(groups.items())]


def percentile_by_n(rows: Sequence[dict], q: float, metric: str = "nodes") -> list[tuple[int, float]]:
    groups: dict[int, list[float]] = {}
    for r in rows:
        groups.setdefault(int(r["n"]), []).append(float(r[metric]))
    return [(n, float(np.percentile(v, q))) for n, v in sorted(groups.items())]


def log2_or_nan(x: float) -> float:
    return math.log2(x) if x > 0 else math.nan
