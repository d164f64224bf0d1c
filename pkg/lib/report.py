"""
Tables emitted by the subcommands and their three renderings: csv and json carry
17 significant digits (exact double round trip), plain carries 6 for reading.
"""

import csv
import io
import json
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from lib.config import MACHINE_DIGITS, PLAIN_DIGITS
from lib.utils import format_number


class Format(str, Enum):
    CSV = "csv"
    JSON = "json"
    PLAIN = "plain"


@dataclass
class Table:
    name: str
    columns: List[str]
    rows: List[List[Any]] = field(default_factory=list)

    def add_row(self, *values: Any):
        if len(values) != len(self.columns):
            raise ValueError(f"table {self.name} has {len(self.columns)} columns, got {len(values)} values")
        self.rows.append(list(values))

    def add_complex_row(self, *values: Any):
        """Like add_row, but every complex value fills two adjacent columns (re, im)."""
        flat: List[Any] = []
        for value in values:
            if isinstance(value, (complex, np.complexfloating)):
                flat.extend([float(value.real), float(value.imag)])
            else:
                flat.append(value)
        self.add_row(*flat)


def complex_columns(name: str) -> List[str]:
    return [f"{name}_re", f"{name}_im"]


def _cell(value: Any, digits: int) -> str:
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format_number(float(value), digits)

    return str(value)


def _json_value(value: Any) -> Any:
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        # Round through the 17-digit text so json and csv agree bit for bit
        return float(format_number(float(value), MACHINE_DIGITS))

    return value


def render_csv(table: Table) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(table.columns)
    writer.writerows([_cell(v, MACHINE_DIGITS) for v in row] for row in table.rows)
    return buffer.getvalue()


def render_json(tables: Sequence[Table]) -> str:
    document: Dict[str, Any] = {
        table.name: [{c: _json_value(v) for c, v in zip(table.columns, row)} for row in table.rows] for table in tables
    }
    return json.dumps(document, indent=2) + "\n"


def render_plain(table: Table) -> str:
    cells = [table.columns] + [[_cell(v, PLAIN_DIGITS) for v in row] for row in table.rows]
    widths = [max(len(row[i]) for row in cells) for i in range(len(table.columns))]
    lines = ["  ".join(c.rjust(w) for c, w in zip(row, widths)).rstrip() for row in cells]
    return "\n".join([f"[{table.name}]", *lines]) + "\n"


def render(tables: Sequence[Table], fmt: Format) -> str:
    fmt = Format(fmt)
    if fmt is Format.JSON:
        return render_json(tables)
    if fmt is Format.CSV:
        if len(tables) == 1:
            return render_csv(tables[0])
        return "\n".join(f"# {t.name}\n{render_csv(t)}" for t in tables)

    return "\n".join(render_plain(t) for t in tables)


def _write_text(path: Path, text: str):
    with open(path, "w", encoding="utf-8", newline="\n") as file:
        file.write(text)


def write(tables: Sequence[Table], fmt: Format, out: Optional[Path]) -> List[Path]:
    """Writes tables under `out`. csv gets one file per table when there are several
    (`<stem>-<table><suffix>`), json and plain a single file. Returns the written paths."""
    if out is None:
        return []

    out = Path(out)
    if out.parent != Path(""):
        out.parent.mkdir(parents=True, exist_ok=True)

    if Format(fmt) is Format.CSV and len(tables) > 1:
        paths = [out.with_name(f"{out.stem}-{t.name}{out.suffix or '.csv'}") for t in tables]
        for table, path in zip(tables, paths):
            _write_text(path, render_csv(table))
        return paths

    _write_text(out, render(tables, fmt))
    return [out]
