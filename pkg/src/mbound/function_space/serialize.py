"""
Text record for step functions.

A record is a JSON object with exactly the fields ``kappa``, ``breakpoints``
and ``values``; every number is written with 17 significant digits so that
a write/read cycle reproduces the doubles bit for bit.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

from ..errors import DomainError, FormatError
from .functions import StepFunction

FIELDS = ("kappa", "breakpoints", "values")


def _num(v: float) -> str:
    return format(float(v), ".17g")


def dumps(h: StepFunction) -> str:
    """Serialize ``h`` to a one-object JSON document."""
    b = ", ".join(_num(v) for v in h.breakpoints)
    v = ", ".join(_num(v) for v in h.values)
    return f'{{"kappa": {_num(h.kappa)}, "breakpoints": [{b}], "values": [{v}]}}\n'


def loads(text: str) -> StepFunction:
    """
    Parse a record produced by :func:`dumps`.

    Raises
    ------
    FormatError
        Not JSON, wrong fields, non-numeric entries, or a record that does not
        describe a valid non-increasing step function.
    """
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"not a JSON document: {exc}") from None
    if not isinstance(obj, dict):
        raise FormatError("step-function record must be a JSON object")
    keys = set(obj)
    if keys != set(FIELDS):
        missing = sorted(set(FIELDS) - keys)
        extra = sorted(keys - set(FIELDS))
        raise FormatError(f"bad fields: missing {missing}, unexpected {extra}")

    def number(x, where):
        if isinstance(x, bool) or not isinstance(x, (int, float)) or not math.isfinite(x):
            raise FormatError(f"{where}: expected a finite number, got {x!r}")
        return float(x)

    kappa = number(obj["kappa"], "kappa")
    arrays = {}
    for name in ("breakpoints", "values"):
        seq = obj[name]
        if not isinstance(seq, list):
            raise FormatError(f"{name}: expected a list")
        arrays[name] = [number(x, f"{name}[{i}]") for i, x in enumerate(seq)]
    try:
        return StepFunction(kappa, arrays["breakpoints"], arrays["values"])
    except DomainError as exc:
        raise FormatError(f"invalid step function: {exc}") from None


def save(h: StepFunction, path) -> None:
    Path(path).write_text(dumps(h))


def load(path) -> StepFunction:
    try:
        text = Path(path).read_text()
    except (OSError, UnicodeDecodeError) as exc:
        raise FormatError(f"cannot read {path}: {exc}") from None
    return loads(text)
