"""JSON documents, Latin-square text and inline literals.

Every JSON document is ``{"kind": ..., "n": n, "entries": nested lists}`` with
entries in row-major order (outermost index i, then j, then k).  Kinds are
``matrix``, ``hypermatrix``, ``corner_sum``, ``latin`` and ``triangle``; a
triangle's entries are ragged: ``entries[k-1][i-1]`` is row i of plane k.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .core import DTYPE, CornerSumHypermatrix, LatinSquare, ValidationError

KINDS = ("matrix", "hypermatrix", "corner_sum", "latin", "triangle")


def kind_of(obj) -> str:
    from .triangles import MonotoneHypertriangle

    if isinstance(obj, LatinSquare):
        return "latin"
    if isinstance(obj, CornerSumHypermatrix):
        return "corner_sum"
    if isinstance(obj, MonotoneHypertriangle):
        return "triangle"
    arr = np.asarray(obj)
    if arr.ndim == 2:
        return "matrix"
    if arr.ndim == 3:
        return "hypermatrix"
    raise TypeError(f"cannot serialize object of type {type(obj).__name__}")


def to_document(obj) -> dict:
    kind = kind_of(obj)
    if kind == "latin":
        return {"kind": kind, "n": obj.n, "entries": obj.rows()}
    if kind == "corner_sum":
        return {"kind": kind, "n": obj.n, "entries": obj.entries.tolist()}
    if kind == "triangle":
        return {"kind": kind, "n": obj.n, "entries": obj.rows()}
    arr = np.asarray(obj, dtype=DTYPE)
    return {"kind": kind, "n": int(arr.shape[0]), "entries": arr.tolist()}


def from_document(doc: dict):
    try:
        kind, n, entries = doc["kind"], int(doc["n"]), doc["entries"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"malformed document: {exc}") from None
    if kind not in KINDS:
        raise ValidationError(f"unknown kind {kind!r}")
    if kind == "latin":
        obj = LatinSquare(entries)
    elif kind == "corner_sum":
        obj = CornerSumHypermatrix(entries)
    elif kind == "triangle":
        from .triangles import MonotoneHypertriangle

        obj = MonotoneHypertriangle.from_rows(entries, n)
    else:
        obj = np.asarray(entries, dtype=DTYPE)
        want = 2 if kind == "matrix" else 3
        if obj.ndim != want:
            raise ValidationError(f"{kind} entries must be {want}-dimensional")
    if kind_n(obj) != n:
        raise ValidationError(f"declared n={n} does not match entries")
    return obj


def kind_n(obj) -> int:
    if isinstance(obj, (LatinSquare, CornerSumHypermatrix)) or hasattr(obj, "multiplicities"):
        return obj.n
    return int(np.asarray(obj).shape[0])


def dumps(obj) -> str:
    return json.dumps(to_document(obj))


def loads(text: str):
    return from_document(json.loads(text))


def dump_jsonl(objs, path) -> int:
    count = 0
    with open(path, "w", encoding="utf-8") as fh:
        for obj in objs:
            fh.write(dumps(obj) + "\n")
            count += 1
    return count


def load_jsonl(path) -> list:
    with open(path, encoding="utf-8") as fh:
        return [loads(line) for line in fh if line.strip()]


def format_latin(square: LatinSquare) -> str:
    return str(square) + "\n"


def parse_grid_text(text: str) -> list[list[int]]:
    """Rows on separate lines (or split by '/' or ';'), symbols by whitespace or commas.

    A row written as a run of digits with no separators (``312``) is read one
    symbol per character.
    """
    for sep in "/;":
        text = text.replace(sep, "\n")
    rows = []
    for line in text.splitlines():
        line = line.replace(",", " ").strip()
        if not line:
            continue
        tokens = line.split()
        if len(tokens) == 1 and tokens[0].isdigit() and len(tokens[0]) > 1:
            tokens = list(tokens[0])
        try:
            rows.append([int(t) for t in tokens])
        except ValueError:
            raise ValidationError(f"non-integer symbol in row {line!r}") from None
    if not rows or any(len(r) != len(rows) for r in rows):
        raise ValidationError("grid must have n rows of n symbols")
    return rows


def parse_latin(text: str) -> LatinSquare:
    return LatinSquare(parse_grid_text(text))


FILE_SUFFIXES = (".json", ".latin", ".txt", ".grid")


def read_object(source: str, fmt: str | None = None):
    """Load a path (format inferred from the extension) or an inline literal.

    ``.json`` files hold one tagged document and ``.grid`` files a hypermatrix
    in grid notation; anything else, and inline text, is parsed as a Latin
    square unless ``fmt`` says otherwise.
    """
    path = Path(source)
    is_file = len(source) < 4096 and "\n" not in source and path.is_file()
    if not is_file and path.suffix in FILE_SUFFIXES:
        raise FileNotFoundError(f"no such file: {source}")
    text = path.read_text(encoding="utf-8") if is_file else source
    if fmt is None:
        if is_file:
            fmt = {".json": "json", ".grid": "grid"}.get(path.suffix, "latin")
        else:
            fmt = "json" if text.lstrip().startswith("{") else "latin"
    if fmt == "json":
        try:
            return loads(text)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"invalid JSON: {exc}") from None
    if fmt == "latin":
        return parse_latin(text)
    if fmt == "grid":
        return parse_grid_notation_text(text)
    raise ValidationError(f"unknown format {fmt!r}")


def parse_grid_notation_text(text: str) -> np.ndarray:
    """Hypermatrix from grid notation: rows on lines (or split by '/'), cells like ``1-2+3``."""
    from .core import from_grid_notation, parse_cell

    rows = [line.split() for line in text.replace("/", "\n").replace(";", "\n").splitlines()]
    rows = [r for r in rows if r]
    if not rows:
        raise ValidationError("empty grid")
    return from_grid_notation([[parse_cell(c) for c in r] for r in rows])


TARGETS = ("latin", "hypermatrix", "corner-sum", "triangle", "grid", "matrix")


def convert(obj, target: str):
    """Re-express ``obj`` as ``target``; grid notation comes back as text."""
    from .core import (
        as_hypermatrix,
        format_grid,
        grid_notation,
        is_permutation_hypermatrix,
        sigma,
        xi,
    )
    from .triangles import MonotoneHypertriangle, from_triangle, to_triangle

    if target not in TARGETS:
        raise ValidationError(f"unknown target {target!r}; choose from {', '.join(TARGETS)}")
    if isinstance(obj, LatinSquare):
        if target == "latin":
            return obj
        if target == "matrix":
            return sigma(obj.cells)
        hyper = obj.hypermatrix()
    elif isinstance(obj, CornerSumHypermatrix):
        hyper = obj.hypermatrix()
    elif isinstance(obj, MonotoneHypertriangle):
        hyper = from_triangle(obj)
    else:
        arr = np.asarray(obj, dtype=DTYPE)
        if arr.ndim == 2:
            if target == "matrix":
                return sigma(arr)
            raise ValidationError("a matrix converts only to its corner-sum matrix (target 'matrix')")
        hyper = as_hypermatrix(arr)
    if target == "hypermatrix":
        return hyper
    if target == "grid":
        return format_grid(grid_notation(hyper))
    if target == "corner-sum":
        return CornerSumHypermatrix(xi(hyper))
    if target == "triangle":
        return to_triangle(CornerSumHypermatrix(xi(hyper)).hypermatrix())
    if target == "latin":
        if not is_permutation_hypermatrix(hyper):
            raise ValidationError("not a permutation hypermatrix, so not a Latin square")
        return LatinSquare.from_hypermatrix(hyper)
    raise ValidationError("a hypermatrix has no single corner-sum matrix (target 'matrix')")
