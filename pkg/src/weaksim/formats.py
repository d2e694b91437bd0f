"""On-disk formats: space files (JSON / CSV), function tables, morphism reports.

Rational values travel as strings ("3/2", or decimal strings parsed exactly);
float-backed values are written with 17 significant digits so they round-trip
bit-exactly.  Loading accepts raw JSON numbers as well: float literals are
handed over as their source text and parsed exactly, never through a binary
float.
"""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from typing import Optional, Union

from .backends import (
    DEFAULT_EPSILON,
    RATIONAL,
    Backend,
    FloatBackend,
    RationalBackend,
)
from .errors import FormatError
from .morphisms import (
    Classification,
    ScalingFunction,
    WeakSimilarity,
    build_realization,
)
from .spaces import Space, new_space
from .transforms import FunctionTable, function_table


def backend_to_obj(backend: Backend) -> Union[str, dict]:
    if isinstance(backend, RationalBackend):
        return "rational"
    return {"float": {"epsilon": repr(backend.epsilon)}}


def backend_from_obj(obj) -> Backend:
    if obj == "rational":
        return RATIONAL
    if isinstance(obj, dict) and "float" in obj:
        eps = obj["float"].get("epsilon", DEFAULT_EPSILON)
        return FloatBackend(epsilon=float(eps))
    raise FormatError(f"unknown backend {obj!r}")


def space_to_obj(space: Space) -> dict:
    fmt = space.backend.format
    return {
        "labels": list(space.labels),
        "backend": backend_to_obj(space.backend),
        "matrix": [[fmt(v) for v in row] for row in space.matrix],
    }


def space_from_obj(obj: dict) -> Space:
    try:
        labels = obj["labels"]
        backend = backend_from_obj(obj["backend"])
        matrix = obj["matrix"]
    except (KeyError, TypeError) as exc:
        raise FormatError(f"malformed space object: {exc}") from exc
    return new_space(labels, matrix, backend)


def space_to_json(space: Space) -> str:
    return json.dumps(space_to_obj(space), indent=2) + "\n"


def space_from_json(text: str) -> Space:
    # float literals arrive as their source text and are parsed exactly
    obj = json.loads(text, parse_float=str)
    return space_from_obj(obj)


def space_to_csv(space: Space) -> str:
    if not isinstance(space.backend, RationalBackend):
        raise FormatError("CSV carries no backend metadata; use JSON for float spaces")
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(space.labels)
    fmt = space.backend.format
    for row in space.matrix:
        writer.writerow([fmt(v) for v in row])
    return out.getvalue()


def space_from_csv(text: str, epsilon: Optional[float] = None) -> Space:
    rows = [row for row in csv.reader(io.StringIO(text)) if row]
    if not rows:
        raise FormatError("empty CSV")
    labels = [cell.strip() for cell in rows[0]]
    matrix = [[cell.strip() for cell in row] for row in rows[1:]]
    if len(matrix) != len(labels):
        raise FormatError("CSV matrix does not match the header size")
    backend = RATIONAL if epsilon is None else FloatBackend(epsilon=epsilon)
    return new_space(labels, matrix, backend)


def load_space(path: str, epsilon: Optional[float] = None) -> Space:
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    if path.endswith(".csv"):
        return space_from_csv(text, epsilon=epsilon)
    return space_from_json(text)


def save_space(path: str, space: Space) -> None:
    text = space_to_csv(space) if path.endswith(".csv") else space_to_json(space)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def table_to_obj(table: FunctionTable) -> dict:
    return {"entries": [[str(a), str(v)] for a, v in table.entries]}


def table_from_obj(obj: dict) -> FunctionTable:
    try:
        return function_table(tuple((a, v) for a, v in obj["entries"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"malformed table object: {exc}") from exc


def table_to_json(table: FunctionTable) -> str:
    return json.dumps(table_to_obj(table), indent=2) + "\n"


def load_table(path: str) -> FunctionTable:
    with open(path, "r", encoding="utf-8") as fh:
        obj = json.load(fh, parse_float=str)
    return table_from_obj(obj)


def save_table(path: str, table: FunctionTable) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(table_to_json(table))


def classification_to_obj(cls: Classification) -> Union[str, dict]:
    if cls.kind == "isometry":
        return "isometry"
    if cls.kind == "similarity":
        ratio = cls.ratio
        text = str(ratio) if isinstance(ratio, Fraction) else format(ratio, ".17g")
        return {"similarity": text}
    return "generic"


def morphism_to_obj(ws: WeakSimilarity, verified: bool = True) -> dict:
    src_fmt = ws.source.backend.format
    tgt_fmt = ws.target.backend.format
    return {
        "map": {a: b for a, b in ws.mapping},
        "scaling": [[tgt_fmt(t), src_fmt(v)] for t, v in ws.scaling.pairs],
        "classification": classification_to_obj(ws.classification),
        "verified": bool(verified),
        "backends": {
            "source": backend_to_obj(ws.source.backend),
            "target": backend_to_obj(ws.target.backend),
        },
    }


def morphism_to_json(ws: WeakSimilarity, verified: bool = True) -> str:
    return json.dumps(morphism_to_obj(ws, verified), indent=2) + "\n"


def morphism_from_obj(obj: dict, source: Space, target: Space) -> WeakSimilarity:
    """Rebuild a weak similarity from its report, given the two spaces."""
    try:
        mapping = dict(obj["map"])
        pairs = tuple(
            (target.backend.coerce(t), source.backend.coerce(v))
            for t, v in obj["scaling"]
        )
    except (KeyError, TypeError) as exc:
        raise FormatError(f"malformed morphism object: {exc}") from exc
    return build_realization(source, target, mapping, ScalingFunction(pairs))


def load_morphism(path: str, source: Space, target: Space) -> WeakSimilarity:
    with open(path, "r", encoding="utf-8") as fh:
        obj = json.load(fh, parse_float=str)
    return morphism_from_obj(obj, source, target)


def save_morphism(path: str, ws: WeakSimilarity, verified: bool = True) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(morphism_to_json(ws, verified))
