"""Deterministic JSON emission: numbers rounded to 9 significant digits."""

from __future__ import annotations

import json
from typing import Any


def round_sig(value: float) -> float:
    """Round to 9 significant digits (CSV and JSON share this precision)."""
    return float(f"{value:.8e}")


def _rounded(obj: Any) -> Any:
    if isinstance(obj, bool) or obj is None:
        return obj
    if isinstance(obj, float):
        return round_sig(obj)
    if isinstance(obj, int):
        return obj
    if isinstance(obj, dict):
        return {k: _rounded(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_rounded(v) for v in obj]
    return obj


def dumps(obj: Any) -> str:
    """Serialize a report dict; bit-identical output for identical inputs."""
    return json.dumps(_rounded(obj), indent=2) + "\n"
