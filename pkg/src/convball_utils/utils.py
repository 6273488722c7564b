"""
utils.py — General helpers shared by the convball commands.
"""

import inspect
import json
import os
import sys
from typing import List, Sequence


def log(message: str) -> None:
    """Print message with the calling line number to stderr (stdout is reserved for data)."""
    if os.getenv("CONVBALL_QUIET", "") not in ("", "0"):
        return
    frame = inspect.currentframe().f_back
    print(f"[Line {frame.f_lineno}] {message}", file=sys.stderr)


def debug(message: str) -> None:
    """Like log(), but only when CONVBALL_VERBOSE is set."""
    if os.getenv("CONVBALL_VERBOSE", "") in ("", "0"):
        return
    frame = inspect.currentframe().f_back
    print(f"[Line {frame.f_lineno}] {message}", file=sys.stderr)


def pretty_json(obj) -> str:
    """Return a formatted JSON string."""
    return json.dumps(obj, indent=2, ensure_ascii=False)


def parse_vector(text: str, dimension: int) -> List[str]:
    """
    Split a comma list like "0.3" or "1,2,3" into literal strings.
    A single value is broadcast across `dimension` coordinates.
    Literals are kept as text so extended-precision backends can read them exactly.
    """
    parts = [p.strip() for p in str(text).split(",") if p.strip()]
    if not parts:
        raise ValueError("empty vector")
    for p in parts:
        float(p)  # validates the literal
    if len(parts) == 1 and dimension > 1:
        return parts * dimension
    if len(parts) != dimension:
        raise ValueError(f"expected {dimension} components, got {len(parts)}")
    return parts


def format_vector(values: Sequence, digits: int = 10, limit: int = 4) -> str:
    """Compact human-readable rendering of an iterate."""
    vals = [float(v) for v in values]
    if len(vals) > limit:
        peak = max(abs(v) for v in vals)
        return f"[{len(vals)} comps, |x|inf={peak:.{digits}g}]"
    return ", ".join(f"{v:.{digits}g}" for v in vals)
