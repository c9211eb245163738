"""Reading and writing the poset JSON and quiver text formats."""

from __future__ import annotations

import json
from pathlib import Path

from .errors import CycleError, ParseError, UnknownElement
from .models import QuiverPresentation, parse_quiver
from .poset import FinitePoset, poset_from_relations


def _check_id(x, where):
    if isinstance(x, bool) or not isinstance(x, (str, int)):
        raise ParseError(f"{where}: identifiers must be strings or integers, got {x!r}")
    return x


def poset_from_json(data, source: str | None = None) -> FinitePoset:
    """``{"elements": [...], "le": [[a, b], ...]}`` -> poset (closure taken)."""
    if not isinstance(data, dict):
        raise ParseError("top level must be an object with 'elements' and 'le'", source=source)
    unknown = set(data) - {"elements", "le"}
    if unknown:
        raise ParseError(f"unexpected keys {sorted(unknown)}", source=source)
    if "elements" not in data:
        raise ParseError("missing 'elements'", source=source)
    elements = data["elements"]
    if not isinstance(elements, list):
        raise ParseError("'elements' must be a list", source=source)
    elements = [_check_id(x, f"elements[{i}]") for i, x in enumerate(elements)]
    if len(set(elements)) != len(elements):
        raise ParseError("duplicate identifiers in 'elements'", source=source)
    pairs = []
    for k, pair in enumerate(data.get("le", [])):
        if not isinstance(pair, list) or len(pair) != 2:
            raise ParseError(f"le[{k}] must be a two-element list", source=source)
        pairs.append((_check_id(pair[0], f"le[{k}][0]"), _check_id(pair[1], f"le[{k}][1]")))
    try:
        return poset_from_relations(elements, pairs)
    except (CycleError, UnknownElement) as exc:
        raise ParseError(str(exc), source=source) from exc


def loads_poset(text: str, source: str | None = None) -> FinitePoset:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno, source) from None
    return poset_from_json(data, source)


def load_poset(path) -> FinitePoset:
    path = Path(path)
    return loads_poset(path.read_text(), str(path))


def dumps_poset(space: FinitePoset) -> str:
    return json.dumps(space.to_json())


def load_quiver(path) -> QuiverPresentation:
    path = Path(path)
    return parse_quiver(path.read_text(), str(path))
