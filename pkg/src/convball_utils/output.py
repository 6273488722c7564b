"""
output.py — Render command results as markdown, csv or json.
"""

import math
from typing import Any, Dict, Optional

import pandas as pd

from .utils import pretty_json

FORMATS = ("markdown", "csv", "json")
SCHEMA_VERSION = 1


def schema_name(command: str) -> str:
    return f"convball.{command}/{SCHEMA_VERSION}"


def _cell(value: Any) -> str:
    if value is None or (isinstance(value, float) and math.isnan(value)):
        return ""
    if isinstance(value, float):
        return f"{value:.9g}"
    return str(value)


def to_markdown(df: pd.DataFrame, title: Optional[str] = None) -> str:
    """Pipe table with an optional heading."""
    lines = []
    if title:
        lines.append(f"### {title}")
        lines.append("")
    header = [str(c) for c in df.columns]
    lines.append("| " + " | ".join(header) + " |")
    lines.append("|" + "|".join("---" for _ in header) + "|")
    for row in df.itertuples(index=False):
        lines.append("| " + " | ".join(_cell(v) for v in row) + " |")
    return "\n".join(lines)


def to_csv(df: pd.DataFrame) -> str:
    return df.to_csv(index=False, float_format="%.12g")


def to_json(command: str, payload: Dict[str, Any]) -> str:
    """One object per command with a versioned `schema` field first."""
    doc = {"schema": schema_name(command)}
    doc.update(payload)
    return pretty_json(doc)


def render(fmt: str, command: str, df: pd.DataFrame, payload: Dict[str, Any], title: Optional[str] = None) -> str:
    if fmt == "markdown":
        return to_markdown(df, title)
    if fmt == "csv":
        return to_csv(df)
    if fmt == "json":
        return to_json(command, payload)
    raise ValueError(f"unknown output format {fmt!r}; expected one of {', '.join(FORMATS)}")
