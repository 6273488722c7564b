"""
settings.py — Environment-driven defaults (optionally loaded from a .env file).
"""

import os

from dotenv import load_dotenv


def load_environment() -> None:
    """Load a .env file from the working directory, if any; real env vars win."""
    load_dotenv(override=False)


def env_int(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return int(raw)
    except ValueError:
        raise EnvironmentError(f"{name} must be an integer, got {raw!r}")


def env_float(name: str, default: float) -> float:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return float(raw)
    except ValueError:
        raise EnvironmentError(f"{name} must be a number, got {raw!r}")
