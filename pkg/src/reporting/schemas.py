"""Canonical JSON rendering for every report printed or written by CycleMate."""
import json
from fractions import Fraction
from typing import Any


def _default(value: Any):
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, (set, frozenset, tuple)):
        return list(value)
    raise TypeError(f"Object of type {type(value).__name__} is not JSON serializable")


def render_json(document: Any) -> str:
    """Sorted keys and fixed indentation, so equal reports are byte-identical."""
    return json.dumps(document, indent=2, sort_keys=True, default=_default) + "\n"
