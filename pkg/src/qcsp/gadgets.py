"""Cost library for the primitive circuit gadgets.

Every constructor takes ``extra_controls``: the number of additional control
lines added to each gate of the gadget. A Toffoli with e extra controls is
costed as an (e+2)-control Toffoli and a CNOT as an (e+1)-control Toffoli.

``reduced`` selects how an uncomputed multi-controlled Toffoli is counted.
With ``reduced=True`` (the default) a c-control gate costs c-1 Toffolis,
using measurement-based uncomputation of the intermediate ANDs. With
``reduced=False`` it costs 2c-3 Toffolis.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources as importlib_resources
from pathlib import Path

from .resources import ZERO, Resources, par, repeat, seq

MAX_ADDER_BITS = 64


def ceil_log2(x: int) -> int:
    """Smallest t with 2**t >= x, for integer x >= 1."""
    if x < 1:
        raise ValueError("ceil_log2 needs x >= 1")
    return (x - 1).bit_length()


def mct_cost(controls: int, uncompute: bool = False, *, reduced: bool = True) -> Resources:
    """Toffoli gate with ``controls`` control qubits and one target.

    Built as a binary tree of ordinary Toffolis, so the depth is
    2*ceil(log2 c) - 1 stages. ``uncompute`` appends the mirror image.
    """
    if controls < 1:
        raise ValueError(f"controls must be >= 1, got {controls}")
    factor = 2 if uncompute else 1
    if controls == 1:
        return Resources(clifford_depth=factor, logical_qubits=2)
    depth = 2 * ceil_log2(controls) - 1
    count = controls - 1 if reduced else 2 * controls - 3
    return Resources(
        t_depth=factor * depth,
        toffoli_count=factor * count,
        ancillas=controls - 2,
        logical_qubits=controls + 1,
    )


def fanout_cost(copies: int) -> Resources:
    """Copy one bit into ``copies`` bits with a log-depth CNOT tree."""
    if copies < 1:
        raise ValueError(f"copies must be >= 1, got {copies}")
    return Resources(clifford_depth=ceil_log2(copies), ancillas=copies - 1, logical_qubits=copies)


@dataclass(frozen=True)
class Gadget:
    """A gadget described by its layer structure.

    Attributes:
        toffoli_layers: Sequential layers containing Toffoli gates.
        cnot_layers: Sequential layers containing only CNOTs.
        toffolis: Total Toffoli gates.
        cnots: Total CNOT gates.
        ancillas: Work qubits needed.
    """

    toffoli_layers: int
    cnot_layers: int
    toffolis: int
    cnots: int
    ancillas: int = 0

    def cost(self, extra_controls: int = 0, *, reduced: bool = True, width: int = 0) -> Resources:
        if extra_controls < 0:
            raise ValueError("extra_controls must be non-negative")
        tof = mct_cost(2 + extra_controls, reduced=reduced)
        if extra_controls == 0:
            cnot_depth, cnot_count, cliff = 0, 0, self.cnot_layers
        else:
            cx = mct_cost(1 + extra_controls, reduced=reduced)
            cnot_depth, cnot_count, cliff = cx.t_depth, cx.toffoli_count, 0
        return Resources(
            t_depth=self.toffoli_layers * tof.t_depth + self.cnot_layers * cnot_depth,
            toffoli_count=self.toffolis * tof.toffoli_count + self.cnots * cnot_count,
            clifford_depth=cliff,
            ancillas=self.ancillas + tof.ancillas,
            logical_qubits=width + self.ancillas,
        )


def _default_table_path() -> Path:
    return Path(str(importlib_resources.files("qcsp") / "data" / "gadgets.csv"))


def load_gadget_table(path: str | Path | None = None) -> dict[tuple[str, int], Gadget]:
    """Read a gadget table. Lines starting with '#' are comments."""
    path = Path(path) if path is not None else _default_table_path()
    with open(path, newline="") as fh:
        rows = csv.DictReader(line for line in fh if not line.startswith("#"))
        table = {}
        for row in rows:
            key = (row["gadget"], int(row["width"]))
            table[key] = Gadget(
                toffoli_layers=int(row["toffoli_layers"]),
                cnot_layers=int(row["cnot_layers"]),
                toffolis=int(row["toffolis"]),
                cnots=int(row["cnots"]),
                ancillas=int(row["ancillas"]),
            )
    return table


@lru_cache(maxsize=1)
def default_gadget_table() -> dict[tuple[str, int], Gadget]:
    return load_gadget_table()


def _lookup(name: str, bits: int, table: dict | None) -> Gadget:
    if not 1 <= bits <= MAX_ADDER_BITS:
        raise ValueError(f"bits must be in [1, {MAX_ADDER_BITS}], got {bits}")
    table = table if table is not None else default_gadget_table()
    try:
        return table[(name, bits)]
    except KeyError:
        raise KeyError(f"gadget table has no entry for {name} width {bits}") from None


def adder_cost(
    bits: int,
    in_place: bool = False,
    controlled: bool = False,
    *,
    extra_controls: int = 0,
    reduced: bool = True,
    table: dict | None = None,
) -> Resources:
    """Adder cost.

    Out-of-place (``in_place=False``) adds two ``bits``-bit registers into a
    fresh register; ``controlled`` adds one control to every gate. The
    in-place variant is the controlled +-1 increment/decrement, whose table
    entry already includes its control line.
    """
    if in_place:
        if not controlled:
            raise ValueError("only the controlled in-place increment is tabulated")
        g = _lookup("increment", bits, table)
        return g.cost(extra_controls, reduced=reduced, width=bits + 1)
    g = _lookup("add_oop", bits, table)
    return g.cost(extra_controls + int(controlled), reduced=reduced, width=3 * bits + 1)


def comparator_cost(bits: int, *, extra_controls: int = 0, reduced: bool = True, table: dict | None = None) -> Resources:
    """Compare two ``bits``-bit registers into one flag qubit."""
    g = _lookup("compare", bits, table)
    return g.cost(extra_controls, reduced=reduced, width=2 * bits + 1)


def cswap_cost(bits: int, *, extra_controls: int = 0, reduced: bool = True) -> Resources:
    """Controlled swap of two ``bits``-bit registers, 3 Toffolis per bit pair."""
    if bits < 1:
        raise ValueError("bits must be >= 1")
    g = Gadget(toffoli_layers=3, cnot_layers=0, toffolis=3 * bits, cnots=0)
    return g.cost(extra_controls, reduced=reduced, width=2 * bits + 1)


def compare_and_swap_cost(bits: int, payload_bits: int = 0, *, extra_controls: int = 0, reduced: bool = True) -> Resources:
    """Compare two keys and swap key+payload registers if out of order."""
    cmp = comparator_cost(bits, extra_controls=extra_controls, reduced=reduced)
    swap = cswap_cost(bits + payload_bits, extra_controls=extra_controls, reduced=reduced)
    return seq(cmp, swap)


@dataclass(frozen=True)
class SynthesisModel:
    """Expected cost of approximating a single-qubit rotation with T gates.

    The uncontrolled cost is slope*log2(1/eps) + offset. The controlled
    fields are the totals added when the state preparation is controlled on
    one qubit (two controlled gates plus their T overhead).
    """

    tcount_slope: float = 1.15
    tcount_offset: float = 9.2
    controlled_extra_tcount: int = 20
    controlled_extra_tdepth: int = 8

    def __post_init__(self):
        if self.tcount_slope <= 0:
            raise ValueError("tcount_slope must be positive")
        if self.tcount_offset < 0:
            raise ValueError("tcount_offset must be non-negative")
        if self.controlled_extra_tcount < 0 or self.controlled_extra_tdepth < 0:
            raise ValueError("controlled extras must be non-negative")


DEFAULT_SYNTHESIS = SynthesisModel()


def synthesis_cost(epsilon: float, controlled: bool = False, model: SynthesisModel = DEFAULT_SYNTHESIS) -> Resources:
    """T cost of preparing an arbitrary single-qubit state to accuracy ``epsilon``.

    The T-depth equals the T-count for the uncontrolled rotation, since the
    gates act on one qubit.
    """
    if not 0 < epsilon < 1:
        raise ValueError(f"epsilon must be in (0, 1), got {epsilon}")
    base = model.tcount_slope * math.log2(1 / epsilon) + model.tcount_offset
    if controlled:
        depth = math.ceil(base + model.controlled_extra_tdepth)
        count = math.ceil(base + model.controlled_extra_tcount)
    else:
        depth = count = math.ceil(base)
    return Resources(t_depth=depth, t_count=count, logical_qubits=2 if controlled else 1)


def controlled_hadamard_cost() -> Resources:
    """Controlled Hadamard: T-depth 2, T-count 2."""
    return Resources(t_depth=2, t_count=2, logical_qubits=2)


__all__ = [
    "ZERO",
    "Gadget",
    "SynthesisModel",
    "DEFAULT_SYNTHESIS",
    "adder_cost",
    "ceil_log2",
    "compare_and_swap_cost",
    "comparator_cost",
    "controlled_hadamard_cost",
    "cswap_cost",
    "default_gadget_table",
    "fanout_cost",
    "load_gadget_table",
    "mct_cost",
    "par",
    "repeat",
    "seq",
    "synthesis_cost",
]
