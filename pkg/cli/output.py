"""CSV and JSON rendering of result tables."""

import csv
import io
import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional

from utils.errors import ParameterError
from utils.formatting import column_name, format_number

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Column:
    """Table column: row key, display name and unit (None for text columns)."""

    key: str
    name: str
    unit: Optional[str] = "-"

    @property
    def header(self) -> str:
        return self.name if self.unit is None else column_name(self.name, self.unit)


@dataclass
class Table:
    columns: List[Column]
    rows: List[Dict[str, Any]] = field(default_factory=list)

    @property
    def headers(self) -> List[str]:
        return [c.header for c in self.columns]

    def records(self) -> List[Dict[str, Any]]:
        """Rows keyed by header, in column order."""
        return [{c.header: row.get(c.key) for c in self.columns} for row in self.rows]


def _cell(value: Any) -> str:
    if value is None or isinstance(value, (bool, int, float)):
        return format_number(value)
    return str(value)


def render_csv(table: Table) -> str:
    """RFC 4180 CSV with a unit-annotated header row."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\r\n")
    writer.writerow(table.headers)
    for record in table.records():
        writer.writerow([_cell(v) for v in record.values()])
    return buffer.getvalue()


def render_json(table: Table) -> str:
    """JSON array of row objects using the CSV headers as keys."""
    return json.dumps(table.records(), indent=2) + "\n"


def render(table: Table, output_format: str) -> str:
    if output_format == "csv":
        return render_csv(table)
    if output_format == "json":
        return render_json(table)
    raise ParameterError(f"Unknown output format '{output_format}', expected csv or json")


def write_output(text: str, path: Optional[Path]) -> bool:
    """Write rendered output to path. Returns False when the caller should print it instead."""
    if path is None:
        return False
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8", newline="")
    logger.info(f"Output written to {path}")
    return True
