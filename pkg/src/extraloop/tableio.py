"""Cayley-table text format.

Line 1 holds ``n``; the next ``n`` non-comment lines hold row ``x`` of the
table, ``n`` whitespace-separated integers. Lines starting with ``#`` are
comments. If the identity is not element 0 the loader swaps it into place
and records the relabelling in ``FiniteLoop.relabel`` (new index -> old).
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .errors import InputError
from .loop import FiniteLoop


def parse_table(text: str, name: str = "") -> FiniteLoop:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise InputError("empty table file")
    try:
        n = int(lines[0])
    except ValueError:
        raise InputError(f"first line must be the element count, got {lines[0]!r}") from None
    if n <= 0:
        raise InputError("element count must be positive")
    if len(lines) != n + 1:
        raise InputError(f"expected {n} table rows, found {len(lines) - 1}")
    try:
        rows = [[int(tok) for tok in ln.split()] for ln in lines[1:]]
    except ValueError as exc:
        raise InputError(f"non-integer table entry: {exc}") from None
    for i, row in enumerate(rows):
        if len(row) != n:
            raise InputError(f"row {i} has {len(row)} entries, expected {n}")
    arr = np.array(rows, dtype=np.int64)
    if arr.min() < 0 or arr.max() >= n:
        raise InputError(f"table entries must lie in 0..{n - 1}")
    return FiniteLoop.from_rows(arr, name=name)


def load_table(path) -> FiniteLoop:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    return parse_table(text, name=path.stem)


def format_table(L: FiniteLoop, header: list[str] | None = None) -> str:
    out = [f"# {h}" for h in (header or [])]
    if L.relabel is not None:
        out.append("# relabel " + " ".join(map(str, L.relabel)))
    out.append(str(L.n))
    width = len(str(L.n - 1))
    for row in L.table:
        out.append(" ".join(str(int(v)).rjust(width) for v in row))
    return "\n".join(out) + "\n"


def save_table(L: FiniteLoop, path, header: list[str] | None = None) -> None:
    Path(path).write_text(format_table(L, header))
