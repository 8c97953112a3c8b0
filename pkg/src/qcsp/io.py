"""Readers and writers for DIMACS CNF, DIMACS colouring graphs and edge lists."""

from __future__ import annotations

from pathlib import Path
from typing import TextIO

from .instances import CnfFormula, Graph


class FormatError(ValueError):
    """Malformed input file. ``line`` is 1-based, or None for whole-file problems."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def _text(src) -> str:
    if isinstance(src, Path):
        return src.read_text()
    if hasattr(src, "read"):
        return src.read()
    return src


def parse_dimacs_cnf(text: str) -> CnfFormula:
    """Parse the ``p cnf n m`` dialect. Clauses may span lines and end with 0."""
    n = m = None
    clauses: list[tuple[int, ...]] = []
    cur: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if n is not None:
                raise FormatError("duplicate problem line", lineno)
            if len(parts) != 4 or parts[1] != "cnf":
                raise FormatError(f"expected 'p cnf <vars> <clauses>', got {line!r}", lineno)
            try:
                n, m = int(parts[2]), int(parts[3])
            except ValueError:
                raise FormatError(f"non-integer in problem line {line!r}", lineno) from None
            if n < 0 or m < 0:
                raise FormatError("negative count in problem line", lineno)
            continue
        if n is None:
            raise FormatError("clause before problem line", lineno)
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise FormatError(f"bad literal {tok!r}", lineno) from None
            if lit == 0:
                if len({abs(x) for x in cur}) != len(cur):
                    raise FormatError("clause repeats a variable", lineno)
                clauses.append(tuple(cur))
                cur = []
            elif abs(lit) > n:
                raise FormatError(f"literal {lit} exceeds declared {n} variables", lineno)
            else:
                cur.append(lit)
    if n is None:
        raise FormatError("missing problem line")
    if cur:
        clauses.append(tuple(cur))
    if len(clauses) != m:
        raise FormatError(f"header declares {m} clauses but {len(clauses)} found")
    k = max((len(c) for c in clauses), default=0)
    return CnfFormula(n, k, tuple(clauses))


def format_dimacs_cnf(f: CnfFormula, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines += [f"c {c}" for c in comment.splitlines()]
    lines.append(f"p cnf {f.n} {f.m}")
    lines += [" ".join(map(str, c)) + " 0" for c in f.clauses]
    return "\n".join(lines) + "\n"


def read_dimacs_cnf(src: str | Path | TextIO) -> CnfFormula:
    """Read a formula from a path or open file."""
    if isinstance(src, str):
        src = Path(src)
    return parse_dimacs_cnf(_text(src))


def write_dimacs_cnf(f: CnfFormula, dest: str | Path, comment: str | None = None) -> None:
    Path(dest).write_text(format_dimacs_cnf(f, comment))


def parse_graph(text: str) -> Graph:
    """Parse DIMACS ``p edge`` / ``e u v`` (1-based) or a plain ``u v`` edge list (0-based).

    A plain edge list may start with ``# vertices N``; otherwise n is one more
    than the largest vertex id.
    """
    dimacs = any(l.lstrip().startswith("p ") for l in text.splitlines())
    n = None
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        parts = line.split()
        if dimacs:
            if parts[0] == "c":
                continue
            if parts[0] == "p":
                if len(parts) != 4 or parts[1] not in ("edge", "col"):
                    raise FormatError(f"expected 'p edge <n> <m>', got {line!r}", lineno)
                try:
                    n = int(parts[2])
                except ValueError:
                    raise FormatError("non-integer vertex count", lineno) from None
                continue
            if parts[0] != "e" or len(parts) != 3:
                raise FormatError(f"expected 'e <u> <v>', got {line!r}", lineno)
            if n is None:
                raise FormatError("edge before problem line", lineno)
            offset = 1
            toks = parts[1:]
        else:
            if line.startswith("#"):
                if len(parts) == 3 and parts[1] == "vertices":
                    try:
                        n = int(parts[2])
                    except ValueError:
                        raise FormatError("non-integer vertex count", lineno) from None
                continue
            if len(parts) != 2:
                raise FormatError(f"expected '<u> <v>', got {line!r}", lineno)
            offset = 0
            toks = parts
        try:
            u, v = (int(t) - offset for t in toks)
        except ValueError:
            raise FormatError(f"non-integer vertex in {line!r}", lineno) from None
        if u == v:
            raise FormatError(f"self-loop on vertex {u + offset}", lineno)
        if u < 0 or v < 0 or (n is not None and (u >= n or v >= n)):
            raise FormatError(f"vertex out of range in {line!r}", lineno)
        key = (min(u, v), max(u, v))
        if key in seen:
            raise FormatError(f"duplicate edge {line!r}", lineno)
        seen.add(key)
        edges.append(key)
    if n is None:
        if dimacs:
            raise FormatError("missing problem line")
        n = 1 + max((max(e) for e in edges), default=-1)
    return Graph(n, frozenset(edges))


def format_graph(g: Graph, fmt: str = "dimacs") -> str:
    if fmt == "dimacs":
        lines = [f"p edge {g.n} {g.m}"] + [f"e {u + 1} {v + 1}" for u, v in g.sorted_edges()]
    elif fmt == "edgelist":
        lines = [f"# vertices {g.n}"] + [f"{u} {v}" for u, v in g.sorted_edges()]
    else:
        raise ValueError("fmt must be 'dimacs' or 'edgelist'")
    return "\n".join(lines) + "\n"


def read_graph(src: str | Path | TextIO) -> Graph:
    if isinstance(src, str):
        src = Path(src)
    return parse_graph(_text(src))


def write_graph(g: Graph, dest: str | Path, fmt: str = "dimacs") -> None:
    Path(dest).write_text(format_graph(g, fmt))
