import csv
import io
import json
import logging
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Sequence, TextIO

from .data.payloads import StampPayload

logger = logging.getLogger(__name__)

TOOL = "spinlab"


def fmt12(value: float) -> str:
    """
    Human-readable number for summary lines.
    """
    return f"{value:.12g}"


def json_float(value: float) -> float | None:
    return value if math.isfinite(value) else None


def _cell(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return ""
    # str() of a float is its shortest round-trip repr
    return str(value)


@dataclass
class Report:
    """
    Result of one command. The stamp (tool, version, seed, command echo) goes into both
    output formats; logs never do.
    """

    command: str
    seed: int
    payload: dict[str, Any]
    header: Sequence[str] = ()
    rows: list[Sequence[Any]] = field(default_factory=list)
    summary: list[str] = field(default_factory=list)
    exit_code: int = 0
    version: str = ""
    echo: str = ""

    @property
    def stamp(self) -> StampPayload:
        return {
            "tool": TOOL,
            "version": self.version,
            "seed": self.seed,
            "command": self.echo,
        }

    def to_json(self) -> str:
        document = {**self.stamp, **self.payload, "summary": self.summary}
        return json.dumps(document, indent=2, allow_nan=False) + "\n"

    def to_csv(self) -> str:
        out = io.StringIO()
        for key, value in self.stamp.items():
            out.write(f"# {key}={value}\n")
        writer = csv.writer(out, lineterminator="\n")
        if self.header:
            writer.writerow(self.header)
        writer.writerows([_cell(v) for v in row] for row in self.rows)
        for line in self.summary:
            out.write(f"# summary {line}\n")
        return out.getvalue()

    def render(self, output_format: str) -> str:
        match output_format:
            case "json":
                return self.to_json()
            case "csv":
                return self.to_csv()
            case _:
                raise ValueError(f"Unknown output format {output_format}")


def write_report(
    report: Report, output_format: str, output: str | None, stream: TextIO
) -> None:
    text = report.render(output_format)
    if output:
        path = Path(output)
        path.parent.mkdir(parents=True, exist_ok=True)
        # newline="" keeps "\n" line endings on every platform
        with open(path, "w", encoding="utf-8", newline="") as f:
            f.write(text)
        logger.info("Wrote %s report to %s", output_format, path)
    else:
        stream.write(text)
        stream.flush()
