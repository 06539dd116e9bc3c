"""Flat ``key = value`` config files for the CLI and service.

Lines starting with ``#`` and blank lines are ignored; everything else must
be ``key = value``. Values stay strings here; typing, unit conversion, and
unknown-key rejection happen in the request models.
"""

from __future__ import annotations

from pathlib import Path

from .errors import DesignError


def read_config_file(path: str | Path) -> dict[str, str]:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise DesignError(f"config file not found: {path}") from None
    out: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise DesignError(f"{path}:{lineno}: expected 'key = value', got {line!r}")
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not key:
            raise DesignError(f"{path}:{lineno}: empty key")
        if key in out:
            raise DesignError(f"{path}:{lineno}: duplicate key {key!r}")
        out[key] = value
    return out
