"""JSON schemas for every document the command line emits."""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources

SCHEMA_NAMES = ("partition", "labeling", "oracle", "blocks", "verify", "sweep")


@lru_cache(maxsize=None)
def load_schema(name: str) -> dict:
    if name not in SCHEMA_NAMES:
        raise KeyError(f"no schema named {name!r}")
    text = resources.files("irrlabel").joinpath("schemas", f"{name}.schema.json").read_text("utf-8")
    return json.loads(text)
