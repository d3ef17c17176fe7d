"""Interval JSON: ``{"elements": [...], "covers": [[x, y], ...], "colors": {...}}``.

``covers`` pairs mean ``y`` covers ``x`` (redundant pairs are tolerated and
closed transitively).  ``colors`` maps element names to small integers.  A
relatively colored interval instead gives ``"coloring"`` together with
per-element ``"tags"``; colored partitions use ``"colored-partition"`` with each
tag a list of ``[block, color]`` pairs.
"""

from __future__ import annotations

import json
from typing import Any

from .errors import InvalidInput
from .poset import Interval, interval_from_covers


def _freeze(value: Any) -> Any:
    if isinstance(value, list):
        return tuple(_freeze(v) for v in value)
    return value


def _thaw(value: Any) -> Any:
    if isinstance(value, tuple):
        return [_thaw(v) for v in value]
    return value


def interval_from_json(data: Any) -> Interval:
    if not isinstance(data, dict):
        raise InvalidInput("interval JSON must be an object")
    elements = data.get("elements")
    covers = data.get("covers", [])
    if not isinstance(elements, list) or not all(isinstance(e, str) for e in elements):
        raise InvalidInput('"elements" must be a list of strings')
    if not isinstance(covers, list):
        raise InvalidInput('"covers" must be a list of pairs')
    pairs = []
    for pair in covers:
        if not (isinstance(pair, list) and len(pair) == 2 and all(isinstance(p, str) for p in pair)):
            raise InvalidInput(f"bad cover {pair!r}")
        pairs.append((pair[0], pair[1]))
    colors = data.get("colors")
    if colors is not None:
        if "tags" in data:
            raise InvalidInput('give either "colors" or "tags", not both')
        if not isinstance(colors, dict) or not all(
            isinstance(c, int) and not isinstance(c, bool) for c in colors.values()
        ):
            raise InvalidInput('"colors" must map element names to integers')
        return interval_from_covers(elements, pairs, colors=colors)
    if "tags" in data:
        tags = data["tags"]
        coloring = _freeze(data.get("coloring"))
        if not isinstance(tags, dict) or coloring is None:
            raise InvalidInput('"tags" must be an object and needs a "coloring"')
        frozen = {k: _freeze(v) for k, v in tags.items()}
        if set(frozen) != set(elements):
            raise InvalidInput('"tags" must give one tag per element')
        return interval_from_covers(elements, pairs, tags=frozen, coloring=coloring)
    return interval_from_covers(elements, pairs)


def interval_to_json(P: Interval) -> dict:
    out: dict[str, Any] = {
        "elements": list(P.names),
        "covers": [[P.names[x], P.names[y]] for x, y in P.covers()],
    }
    if P.tags is not None:
        if P.coloring == "absolute" and all(isinstance(t, int) for t in P.tags):
            out["colors"] = {n: t for n, t in zip(P.names, P.tags)}
        else:
            out["coloring"] = _thaw(P.coloring)
            out["tags"] = {n: _thaw(t) for n, t in zip(P.names, P.tags)}
    return out


def loads(text: str) -> Interval:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"invalid JSON: {exc}") from None
    return interval_from_json(data)


def load(path: str) -> Interval:
    try:
        with open(path, encoding="utf-8") as fh:
            return loads(fh.read())
    except OSError as exc:
        raise InvalidInput(f"cannot read {path}: {exc.strerror}") from None


def dumps(P: Interval) -> str:
    return json.dumps(interval_to_json(P), sort_keys=True, indent=2)
