"""Versioned JSON reports emitted by the command line tool.

A report is ``{"version": "1", "command": ..., "inputs": ..., "payload": ...}``
serialised with sorted keys, so identical inputs give identical bytes.
:func:`load_report` re-checks the payload against the invariants of the
object it carries.
"""
from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass

from .constants import BoundSet, Certificate
from .cycles import CycleWitness
from .edgestats import AuditReport

SCHEMA_VERSION = "1"


def sha256_text(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


@dataclass
class Report:
    command: str
    inputs: dict
    payload: object
    version: str = SCHEMA_VERSION

    def to_dict(self) -> dict:
        return {"version": self.version, "command": self.command, "inputs": self.inputs, "payload": self.payload}

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2, allow_nan=False) + "\n"


def _check_witness(obj: dict | None) -> None:
    if obj is not None:
        CycleWitness.from_dict(obj)


def _check_fas(obj: dict) -> None:
    if obj["beta"] != len(obj["removed"]):
        raise ValueError("beta differs from the number of removed edges")
    if sorted(obj["order"]) != list(range(len(obj["order"]))):
        raise ValueError("order is not a permutation")
    pos = {v: i for i, v in enumerate(obj["order"])}
    if any(pos[u] < pos[v] for u, v in obj["removed"]):
        raise ValueError("a removed edge points forward in the order")


def _check_stats(obj: dict) -> None:
    g = obj["global"]
    if g["T"] > g["out2claws"]:
        raise ValueError("more transitive triangles than out-2-claws")
    if g["sum_p"] != g["sum_q"]:
        raise ValueError("induced 2-path counts disagree")
    if g["tau"] is not None and not g["tau"] < 0.5:
        raise ValueError("tau must be below 1/2")


def _validate(command: str, payload) -> None:
    if command == "constants":
        for row in payload if isinstance(payload, list) else [payload]:
            BoundSet.from_dict(row)
    elif command == "certify":
        Certificate.from_dict(payload)
    elif command == "audit":
        AuditReport.from_dict(payload)
    elif command == "girth":
        _check_witness(payload["witness"])
        if payload["witness"] is not None and payload["witness"]["length"] != payload["girth"]:
            raise ValueError("girth differs from witness length")
    elif command == "find-cycle":
        _check_witness(payload["witness"])
        if payload["witness"]["length"] > payload["m"]:
            raise ValueError("witness longer than m")
    elif command == "fas":
        _check_fas(payload["fas"])
    elif command == "stats":
        _check_stats(payload)
    else:
        raise ValueError(f"unknown report command {command!r}")


def load_report(text: str) -> Report:
    obj = json.loads(text)
    if obj.get("version") != SCHEMA_VERSION:
        raise ValueError(f"unsupported report version {obj.get('version')!r}")
    _validate(obj["command"], obj["payload"])
    return Report(obj["command"], obj["inputs"], obj["payload"], obj["version"])


def clean_float(x: float | None) -> float | None:
    """JSON has no infinities; map non-finite values to ``None``."""
    if x is None or not math.isfinite(x):
        return None
    return x
