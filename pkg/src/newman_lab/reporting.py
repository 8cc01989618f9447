"""Structured command output: a CSV table or a JSON record."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field

SCHEMA_VERSION = "1"


def _cell(value):
    if isinstance(value, bool):
        return int(value)
    if isinstance(value, float):
        return repr(value)
    if value is None:
        return ""
    return value


def _jsonable(value):
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, int) and not isinstance(value, bool) and abs(value) >= 2**53:
        # keep big exact integers exact
        return str(value)
    return value


@dataclass
class OutputRecord:
    command: str
    parameters: dict
    rows: list[dict] = field(default_factory=list)
    summary: dict = field(default_factory=dict)
    schema_version: str = SCHEMA_VERSION

    def to_json(self) -> str:
        payload = {
            "schema_version": self.schema_version,
            "command": self.command,
            "parameters": self.parameters,
            "rows": self.rows,
            "summary": self.summary,
        }
        return json.dumps(_jsonable(payload), indent=2) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        if not self.rows:
            return ""
        header = list(self.rows[0])
        for row in self.rows[1:]:
            header += [k for k in row if k not in header]
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        for row in self.rows:
            writer.writerow([_cell(row.get(k)) for k in header])
        return buf.getvalue()

    def render(self, as_json: bool) -> str:
        return self.to_json() if as_json else self.to_csv()
