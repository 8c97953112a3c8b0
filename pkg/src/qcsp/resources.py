"""Resource records and their serial/parallel composition."""

from __future__ import annotations

from dataclasses import asdict, dataclass, fields
from functools import reduce
from typing import Iterable

# Counts must stay inside a 128-bit unsigned range. Python ints never wrap,
# so exceeding this is reported rather than silently accepted.
COUNT_LIMIT = 2**128 - 1

_FIELDS = ("t_depth", "t_count", "toffoli_count", "clifford_depth", "ancillas", "logical_qubits")


@dataclass(frozen=True, slots=True)
class Resources:
    """Cost of a circuit fragment.

    ``t_depth`` counts non-Clifford stages (a layer of Toffolis or T gates is
    one stage). ``t_count`` and ``toffoli_count`` are kept separately because
    they are distilled by different factories.
    """

    t_depth: int = 0
    t_count: int = 0
    toffoli_count: int = 0
    clifford_depth: int = 0
    ancillas: int = 0
    logical_qubits: int = 0

    def __post_init__(self):
        for name in _FIELDS:
            value = getattr(self, name)
            if not isinstance(value, int) or isinstance(value, bool):
                raise TypeError(f"{name} must be an int, got {type(value).__name__}")
            if value < 0:
                raise ValueError(f"{name} must be non-negative, got {value}")
            if value > COUNT_LIMIT:
                raise OverflowError(f"{name}={value} exceeds the 128-bit count range")

    @property
    def non_clifford_count(self) -> int:
        """Toffoli plus T gates, i.e. the number of magic states consumed."""
        return self.t_count + self.toffoli_count

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "Resources":
        return cls(**{f.name: int(data.get(f.name, 0)) for f in fields(cls)})

    def __add__(self, other: "Resources") -> "Resources":
        return seq(self, other)

    def __or__(self, other: "Resources") -> "Resources":
        return par(self, other)


ZERO = Resources()


def seq(a: Resources, b: Resources) -> Resources:
    """Run ``a`` then ``b``. Depths and counts add; workspace is reused."""
    return Resources(
        t_depth=a.t_depth + b.t_depth,
        t_count=a.t_count + b.t_count,
        toffoli_count=a.toffoli_count + b.toffoli_count,
        clifford_depth=a.clifford_depth + b.clifford_depth,
        ancillas=max(a.ancillas, b.ancillas),
        logical_qubits=max(a.logical_qubits, b.logical_qubits),
    )


def par(a: Resources, b: Resources) -> Resources:
    """Run ``a`` and ``b`` side by side on disjoint qubits."""
    return Resources(
        t_depth=max(a.t_depth, b.t_depth),
        t_count=a.t_count + b.t_count,
        toffoli_count=a.toffoli_count + b.toffoli_count,
        clifford_depth=max(a.clifford_depth, b.clifford_depth),
        ancillas=a.ancillas + b.ancillas,
        logical_qubits=a.logical_qubits + b.logical_qubits,
    )


def seq_all(items: Iterable[Resources]) -> Resources:
    return reduce(seq, items, ZERO)


def par_all(items: Iterable[Resources]) -> Resources:
    return reduce(par, items, ZERO)


def repeat(r: Resources, times: int) -> Resources:
    """``times`` serial copies of ``r`` (exact integer arithmetic)."""
    if times < 0:
        raise ValueError("times must be non-negative")
    if times == 0:
        return ZERO
    return Resources(
        t_depth=r.t_depth * times,
        t_count=r.t_count * times,
        toffoli_count=r.toffoli_count * times,
        clifford_depth=r.clifford_depth * times,
        ancillas=r.ancillas,
        logical_qubits=r.logical_qubits,
    )


def replicate(r: Resources, copies: int) -> Resources:
    """``copies`` parallel instances of ``r``."""
    if copies < 0:
        raise ValueError("copies must be non-negative")
    if copies == 0:
        return ZERO
    return Resources(
        t_depth=r.t_depth,
        t_count=r.t_count * copies,
        toffoli_count=r.toffoli_count * copies,
        clifford_depth=r.clifford_depth,
        ancillas=r.ancillas * copies,
        logical_qubits=r.logical_qubits * copies,
    )
