"""Regenerate src/qcsp/data/gadgets.csv.

The table is the source of truth at runtime; this script only documents how
the shipped rows were produced. Edit rows by hand to refine a width.
"""

import math
from pathlib import Path

OUT = Path(__file__).resolve().parents[1] / "src" / "qcsp" / "data" / "gadgets.csv"
MAX_WIDTH = 64


def flog2(x: float) -> int:
    return math.floor(math.log2(x))


def clog2(x: int) -> int:
    return (x - 1).bit_length()


def add_oop(b: int) -> tuple:
    """Out-of-place carry-lookahead adder of two b-bit numbers."""
    if b == 1:
        # half adder: one Toffoli for the carry, two CNOTs for the sum
        return (1, 2, 1, 2, 0)
    tof_layers = flog2(b) + flog2(b / 3) + 4
    toffolis = 4 * b - bin(b).count("1") - flog2(b) - 1
    ancillas = b - bin(b).count("1") - flog2(b)
    return (tof_layers, 3, toffolis, 3 * b - 1, ancillas)


def increment(b: int) -> tuple:
    """Controlled in-place +-1. Widths up to 8 use the 8-bit circuit."""
    if b <= 8:
        return (14, 3, 38, 25, 7)
    return (14 + 4 * (clog2(b) - 3), 3, math.ceil(38 * b / 8), math.ceil(25 * b / 8), b - 1)


def compare(b: int) -> tuple:
    """In-place comparator writing a < b into one output qubit."""
    if b == 1:
        return (1, 0, 1, 0, 0)
    return (2 * clog2(b) + 1, 2, 3 * b - 2, 2 * b, b - 1)


def main():
    lines = [
        "# gadget cost table, version 1",
        "# columns: toffoli and cnot layer counts, gate counts, ancillas",
        "gadget,width,toffoli_layers,cnot_layers,toffolis,cnots,ancillas",
    ]
    for name, fn in (("add_oop", add_oop), ("increment", increment), ("compare", compare)):
        for b in range(1, MAX_WIDTH + 1):
            lines.append(",".join(map(str, (name, b) + fn(b))))
    OUT.write_text("\n".join(lines) + "\n")
    print(f"wrote {OUT}")


if __name__ == "__main__":
    main()
