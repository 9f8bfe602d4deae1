from __future__ import annotations

import csv
import json
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from importlib import metadata
from pathlib import Path
from typing import Any

import numpy as np

from .config import RunConfig, config_hash

__all__ = ("Provenance", "emit_provenance", "tool_version", "write_csv", "write_json")


def tool_version() -> str:
    try:
        return f"twoproj-cli {metadata.version('twoproj-cli')}"
    except metadata.PackageNotFoundError:
        return "twoproj-cli (unknown version)"


def _canonical(value: Any) -> str:
    return json.dumps(value, sort_keys=True, separators=(",", ":"), default=_plain)


def _plain(value: Any) -> Any:
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, complex):
        return [value.real, value.imag]
    raise TypeError(f"{type(value).__name__} is not JSON serializable")


@dataclass(frozen=True)
class Provenance:
    """Header carried by every output file; no timestamps."""

    config: RunConfig
    command: str
    arguments: dict[str, Any] = field(default_factory=dict)

    def as_dict(self) -> dict[str, Any]:
        return {
            "tool": tool_version(),
            "command": self.command,
            "config_sha256": config_hash(self.config),
            "seed": self.config.seed,
            "arguments": self.arguments,
            "config": self.config.to_dict(),
        }

    def header_lines(self) -> list[str]:
        return [
            f"# {key}: {value if isinstance(value, str | int) else _canonical(value)}"
            for key, value in self.as_dict().items()
        ]


def emit_provenance(provenance: Provenance | RunConfig, command: str = "") -> str:
    """Comment block that opens every CSV file."""
    if isinstance(provenance, RunConfig):
        provenance = Provenance(provenance, command)
    return "".join(line + "\n" for line in provenance.header_lines())


def _cell(value: Any) -> str:
    if isinstance(value, bool | np.bool_):
        return str(bool(value)).lower()
    if isinstance(value, float | np.floating):
        return repr(float(value))
    if isinstance(value, np.integer):
        return str(int(value))
    return str(value)


def write_csv(
    path: Path,
    columns: Sequence[str],
    rows: Iterable[Sequence[Any]],
    provenance: Provenance,
) -> Path:
    """Comment header, column row, then data rows; '\\n' line endings."""
    with path.open("w", newline="") as f:
        f.write(emit_provenance(provenance))
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_cell(v) for v in row])
    return path


def write_json(path: Path, payload: dict[str, Any], provenance: Provenance) -> Path:
    data = {"provenance": provenance.as_dict(), **payload}
    path.write_text(json.dumps(data, indent=2, default=_plain) + "\n")
    return path
