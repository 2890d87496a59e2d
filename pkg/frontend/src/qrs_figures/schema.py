"""CSV contract with the solver CLI.

A table file is a ``# rabi-square <version> config={...}`` comment line,
a column-name row, then data rows.  The comment is optional here so that
hand-trimmed files still load, but when present its config echo is parsed
and carried along (the phase-diagram renderer needs ``j1`` from it).
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

__all__ = ["KINDS", "SchemaError", "Table", "read_table", "validate"]

# columns each figure kind refuses to work without; anything beyond these
# (ED overlays, error cells) is picked up opportunistically
KINDS = {
    "sweep": ("g", "phase", "E_g", "abs_alpha"),
    "scaling": ("side", "delta_g", "eps"),
    "phase-diagram": ("j2", "g", "phase", "corr"),
    "infidelity": ("g", "infidelity"),
}


class SchemaError(Exception):
    """A table does not satisfy the columns its figure kind requires."""

    def __init__(self, message: str, missing: tuple[str, ...] = ()):
        super().__init__(message)
        self.missing = missing


@dataclass(frozen=True)
class Table:
    """One parsed CSV: config echo, column names, and string cells."""

    path: Path
    config: dict
    columns: tuple[str, ...]
    rows: tuple[tuple[str, ...], ...]

    def column(self, name: str) -> list[str]:
        if name not in self.columns:
            raise SchemaError(f"{self.path} has no column {name!r}",
                              missing=(name,))
        i = self.columns.index(name)
        return [r[i] for r in self.rows]

    def floats(self, name: str) -> np.ndarray:
        # blank cells (error rows) become NaN so plots just skip them
        return np.array([float(v) if v else np.nan
                         for v in self.column(name)])


def _parse_config(line: str) -> dict:
    _, _, tail = line.partition("config=")
    if not tail:
        return {}
    try:
        return json.loads(tail)
    except json.JSONDecodeError:
        return {}


def read_table(path) -> Table:
    """Load one CSV; header comments and stray JSON block lines are skipped."""
    p = Path(path)
    config: dict = {}
    columns: tuple[str, ...] | None = None
    rows: list[tuple[str, ...]] = []
    with open(p, newline="") as fh:
        for rec in csv.reader(fh):
            if not rec:
                continue
            if rec[0].startswith("#"):
                # the config echo contains commas, so undo the csv split
                config = _parse_config(",".join(rec)) or config
                continue
            if rec[0].startswith("{"):
                continue
            if columns is None:
                columns = tuple(rec)
            else:
                rows.append(tuple(rec))
    if columns is None or not rows:
        raise SchemaError(f"{p} carries no data rows")
    return Table(path=p, config=config, columns=columns, rows=tuple(rows))


def validate(table: Table, kind: str) -> None:
    """Raise SchemaError naming every required column the table lacks."""
    if kind not in KINDS:
        raise SchemaError(f"unknown figure kind {kind!r}; "
                          f"expected one of {sorted(KINDS)}")
    missing = tuple(c for c in KINDS[kind] if c not in table.columns)
    if missing:
        raise SchemaError(
            f"{table.path} is missing column(s) {', '.join(missing)} "
            f"required by the {kind} figure", missing=missing)
