"""Enumeration and size caps.

Defaults can be overridden through the ``POLYFUN_CAPS`` environment variable,
either as a JSON object or as ``key=value`` pairs separated by commas::

    POLYFUN_CAPS='max_degree=64,unit_enum_order=4096'
"""

from __future__ import annotations

import dataclasses
import json
import os

from polyfun.errors import PolyfunError


@dataclasses.dataclass(frozen=True)
class Caps:
    max_matrix_n: int = 4
    max_modulus: int = 256
    unit_enum_order: int = 2**20
    max_period: int = 10_000
    max_degree: int = 512
    brute_force_polys: int = 2**22
    all_subsets_order: int = 16
    default_modulus_bound: int = 16

    def replace(self, **changes) -> "Caps":
        return dataclasses.replace(self, **changes)


def parse_caps(text: str, base: Caps | None = None) -> Caps:
    base = base or Caps()
    text = text.strip()
    if not text:
        return base
    if text.startswith("{"):
        try:
            items = json.loads(text)
        except json.JSONDecodeError as exc:
            raise PolyfunError(f"bad POLYFUN_CAPS JSON: {exc}") from None
    else:
        items = {}
        for part in text.split(","):
            key, sep, value = part.partition("=")
            if not sep:
                raise PolyfunError(f"bad POLYFUN_CAPS entry {part!r}")
            items[key.strip()] = value.strip()
    known = {f.name for f in dataclasses.fields(Caps)}
    changes = {}
    for key, value in items.items():
        if key not in known:
            raise PolyfunError(f"unknown cap {key!r}")
        try:
            value = int(value)
        except (TypeError, ValueError):
            raise PolyfunError(f"cap {key} must be an integer") from None
        if value <= 0:
            raise PolyfunError(f"cap {key} must be positive")
        changes[key] = value
    return base.replace(**changes)


def get_caps() -> Caps:
    return parse_caps(os.environ.get("POLYFUN_CAPS", ""))
