"""Resource caps.

Two caps guard the combinatorial explosions: the group order (table-based
group construction is cubic in the order) and the cochain dimension
(coboundary matrices are dense).  Callers pass explicit values; the CLI
resolves flags > TORSORLAB_LIMITS environment variable > these defaults.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InputError

DEFAULT_GROUP_ORDER_CAP = 24
DEFAULT_COCHAIN_DIM_CAP = 50_000

_KEYS = ("group_order", "cochain_dim")


@dataclass(frozen=True)
class Limits:
    group_order: int = DEFAULT_GROUP_ORDER_CAP
    cochain_dim: int = DEFAULT_COCHAIN_DIM_CAP


def parse_limits_env(text: str) -> Limits:
    """Parse a ``key=value,key=value`` cap string (the TORSORLAB_LIMITS format)."""
    values = {}
    text = text.strip()
    if not text:
        return Limits()
    for chunk in text.split(","):
        if "=" not in chunk:
            raise InputError(f"bad limits entry {chunk!r}: expected key=value")
        key, _, raw = chunk.partition("=")
        key = key.strip()
        if key not in _KEYS:
            raise InputError(f"unknown limit {key!r}: expected one of {_KEYS}")
        try:
            value = int(raw)
        except ValueError:
            raise InputError(f"bad limit value {raw!r} for {key}") from None
        if value <= 0:
            raise InputError(f"limit {key} must be positive, got {value}")
        values[key] = value
    return Limits(**values)
