"""Deterministic reporting: one Report type, text and JSON renderers.

Identical inputs must produce byte-identical output, so every payload is
built from explicitly ordered structures and rendered without relying on
anything environment-dependent.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

SCHEMA_VERSION = 1


@dataclass
class Report:
    command: list
    status: str = "ok"
    payload: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    def fail(self):
        self.status = "fail"
        return self

    def to_json(self) -> str:
        doc = {
            "schema": SCHEMA_VERSION,
            "command": list(self.command),
            "status": self.status,
        }
        doc.update(self.payload)
        if self.notes:
            doc["notes"] = list(self.notes)
        return json.dumps(doc, ensure_ascii=False, indent=2) + "\n"

    def to_text(self) -> str:
        lines = []
        _render(self.payload, lines, indent="")
        for note in self.notes:
            lines.append(f"note: {note}")
        lines.append(f"status: {self.status}")
        return "\n".join(lines) + "\n"


def _render(value, lines, indent, key=None):
    label = f"{indent}{key}: " if key is not None else indent
    if isinstance(value, dict):
        if key is not None:
            lines.append(f"{indent}{key}:")
            indent = indent + "  "
        for k, v in value.items():
            _render(v, lines, indent, k)
    elif isinstance(value, (list, tuple)):
        if not value:
            lines.append(label + "(none)")
        elif all(isinstance(v, (int, bool)) for v in value):
            lines.append(label + " ".join(str(v) for v in value))
        elif all(not isinstance(v, (dict, list, tuple)) for v in value):
            if key is not None:
                lines.append(f"{indent}{key}:")
            for v in value:
                lines.append(f"{indent}  {v}")
        else:
            if key is not None:
                lines.append(f"{indent}{key}:")
                indent = indent + "  "
            for v in value:
                if isinstance(v, dict) and v:
                    items = list(v.items())
                    k0, v0 = items[0]
                    if isinstance(v0, (dict, list, tuple)):
                        lines.append(f"{indent}-")
                        for k, vv in items:
                            _render(vv, lines, indent + "  ", k)
                    else:
                        lines.append(f"{indent}- {k0}: {v0}")
                        for k, vv in items[1:]:
                            _render(vv, lines, indent + "  ", k)
                else:
                    _render(v, lines, indent + "  ")
    else:
        lines.append(label + str(value))
