"""On-disk cache of solved universal constants, one JSON file per order."""

from __future__ import annotations

import json
import os
from fractions import Fraction
from pathlib import Path

from .traces import parse_monomial, render_monomial

ENV_VAR = "GEODENSE_CACHE"


def default_cache_dir() -> Path:
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "geodense"


def constants_document(order: int, constants: dict) -> dict:
    rows = [
        {"monomial": render_monomial(mono), "value": f"{c.numerator}/{c.denominator}"}
        for mono, c in constants.items()
    ]
    rows.sort(key=lambda r: r["monomial"])
    return {"order": order, "constants": rows}


def dumps(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def parse_document(doc: dict) -> tuple[int, dict]:
    constants = {parse_monomial(r["monomial"]): Fraction(r["value"]) for r in doc["constants"]}
    return int(doc["order"]), constants


class ConstantCache:
    def __init__(self, directory: str | Path | None = None):
        self.directory = Path(directory) if directory is not None else default_cache_dir()

    def path(self, order: int) -> Path:
        return self.directory / f"order_{order}.json"

    def load(self, order: int) -> dict | None:
        path = self.path(order)
        if not path.exists():
            return None
        try:
            stored_order, constants = parse_document(json.loads(path.read_text(encoding="utf-8")))
        except (ValueError, KeyError, TypeError):
            return None
        return constants if stored_order == order else None

    def store(self, order: int, constants: dict) -> Path:
        self.directory.mkdir(parents=True, exist_ok=True)
        path = self.path(order)
        tmp = path.with_suffix(".json.tmp")
        tmp.write_text(dumps(constants_document(order, constants)), encoding="utf-8")
        os.replace(tmp, path)
        return path

    def get_or_derive(self, order: int) -> dict:
        from .universal import solve_universal_constants

        constants = self.load(order)
        if constants is None:
            constants = solve_universal_constants(order)
            self.store(order, constants)
        return constants
