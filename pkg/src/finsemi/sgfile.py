"""The .sg text format.

    n
    row 0: 0*0 0*1 ... 0*(n-1)
    ...
    #labels l0 l1 ...      (optional)
    #gens i j ...          (optional)

Single spaces, one trailing newline; writing and reading round-trip exactly.
"""
from __future__ import annotations

import os

import numpy as np

from .core import INDEX_DTYPE, CayleyTable, associativity_witness, generated_subsemigroup
from .errors import BadFile


def _row_text(row: np.ndarray, zero_runs: dict[int, str]) -> str:
    # tables from nil constructions are mostly one value; emit runs of it in one piece
    nz = np.flatnonzero(row)
    if len(nz) * 4 > len(row):
        return " ".join(map(str, row.tolist()))
    pieces = []
    prev = 0
    for j in nz.tolist():
        if j > prev:
            pieces.append(zero_runs.setdefault(j - prev, " ".join(["0"] * (j - prev))))
        pieces.append(str(int(row[j])))
        prev = j + 1
    if prev < len(row):
        pieces.append(zero_runs.setdefault(len(row) - prev, " ".join(["0"] * (len(row) - prev))))
    return " ".join(pieces)


def format_sg(t: CayleyTable) -> str:
    runs: dict[int, str] = {}
    lines = [str(t.n)]
    lines += [_row_text(row, runs) for row in t.product]
    if t.labels is not None:
        lines.append("#labels " + " ".join(t.labels))
    if t.generators is not None:
        lines.append("#gens " + " ".join(map(str, t.generators)))
    return "\n".join(lines) + "\n"


def write_sg(t: CayleyTable, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(format_sg(t))


def parse_sg(text: str, check: bool = True, jobs: int = 1) -> CayleyTable:
    """Parse .sg text; with ``check`` the table must be associative and the generators must generate."""
    head, _, rest = text.partition("\n")
    try:
        n = int(head.strip())
    except ValueError:
        raise BadFile(f"first line must be the element count, got {head[:40]!r}") from None
    if n < 1:
        raise BadFile("element count must be positive")
    labels, gens = None, None
    lines = rest.split("\n")
    # body lines come first, then any number of #-directives
    cut = len(lines)
    for i, line in enumerate(lines):
        if line.startswith("#"):
            cut = i
            break
    body = "\n".join(lines[:cut])
    for line in lines[cut:]:
        if not line.strip():
            continue
        key, _, value = line.partition(" ")
        if key == "#labels":
            labels = value.split()
        elif key == "#gens":
            try:
                gens = [int(x) for x in value.split()]
            except ValueError:
                raise BadFile("generator indices must be integers") from None
        elif line.startswith("#"):
            raise BadFile(f"unknown directive {key!r}")
        else:
            raise BadFile("table rows must precede the # directives")
    rows = [ln for ln in body.split("\n") if ln.strip()]
    if len(rows) != n:
        raise BadFile(f"expected {n} rows, found {len(rows)}")
    values = np.empty((n, n), dtype=np.int64)
    for i, row in enumerate(rows):
        parts = row.split()
        if len(parts) != n:
            raise BadFile(f"row {i} has {len(parts)} entries, expected {n}")
        try:
            values[i] = np.array(parts, dtype=np.int64)
        except ValueError:
            raise BadFile(f"row {i} contains a non-integer entry") from None
    if values.min() < 0 or values.max() >= n:
        raise BadFile("table entry out of range")
    try:
        t = CayleyTable(values.astype(INDEX_DTYPE), generators=gens, labels=labels)
    except ValueError as exc:
        raise BadFile(str(exc)) from None
    if check:
        witness = associativity_witness(t, jobs=jobs)
        if witness is not None:
            x, y, z = witness
            raise BadFile(f"table is not associative at ({x}, {y}, {z})")
        if gens is not None and len(generated_subsemigroup(t, gens)) != n:
            raise BadFile("#gens do not generate the table")
    return t


def read_sg(path, check: bool = True, jobs: int = 1) -> CayleyTable:
    if not os.path.isfile(path):
        raise BadFile(f"no such file: {path}")
    with open(path, encoding="utf-8") as fh:
        return parse_sg(fh.read(), check=check, jobs=jobs)
