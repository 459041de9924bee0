"""Input documents, serialization and text rendering.

Documents are JSON. A system is ``{"n": int, "generators": [matrix, ...]}``, a bare
matrix is ``{"n": int, "entries": [[scalar, ...], ...]}`` (row-major). A scalar is
``"eps"``, a number ``n`` meaning ``n + i eps`` or a pair ``[a, b]`` meaning ``a + ib``.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Union

from pydantic import BaseModel, ConfigDict, Field, StrictInt, ValidationError

from .errors import BadScalar, DimensionMismatch, ParseError
from .lie import LieSystem
from .matrix import SuperMatrix
from .semiring import format_scalar, is_max_plus, parse_scalar, scalar_token

Document = Union[LieSystem, SuperMatrix]


class MatrixDocument(BaseModel):
    model_config = ConfigDict(extra="forbid")

    n: StrictInt = Field(ge=1)
    entries: list[list[Any]]


class SystemDocument(BaseModel):
    model_config = ConfigDict(extra="forbid")

    n: StrictInt = Field(ge=1)
    generators: list[MatrixDocument] = Field(min_length=1)


def _location(err: ValidationError, prefix: str = "") -> str:
    first = err.errors()[0]
    path = ".".join(str(p) for p in first["loc"])
    return f"{prefix}{path}" if path else prefix.rstrip(".") or "<root>"


def _build_matrix(doc: MatrixDocument, where: str, max_plus: bool) -> SuperMatrix:
    n = doc.n
    if len(doc.entries) != n:
        raise DimensionMismatch(n, len(doc.entries), "declared n and row count")
    rows = []
    for i, row in enumerate(doc.entries):
        if len(row) != n:
            raise ParseError(
                f"ragged row {i + 1}: {len(row)} entries, expected {n}",
                location=f"{where}entries.{i}",
            )
        parsed = []
        for j, token in enumerate(row):
            x = parse_scalar(token, where=f"{where}entries.{i}.{j}")
            if max_plus and not is_max_plus(x):
                raise BadScalar(
                    f"ghost part not allowed in max-plus mode: {format_scalar(x)}",
                    location=f"{where}entries.{i}.{j}",
                )
            parsed.append(x)
        rows.append(parsed)
    return SuperMatrix.from_rows(rows)


def parse_document(data: Any, max_plus: bool = False) -> Document:
    """Validate an already-decoded JSON value."""
    if not isinstance(data, dict):
        raise ParseError(f"top level must be an object, got {type(data).__name__}", location="<root>")

    if "generators" in data:
        try:
            doc = SystemDocument.model_validate(data)
        except ValidationError as e:
            raise ParseError(e.errors()[0]["msg"], location=_location(e)) from e
        matrices = []
        for k, gen in enumerate(doc.generators):
            if gen.n != doc.n:
                raise DimensionMismatch(doc.n, gen.n, f"system and generator {k + 1}")
            matrices.append(_build_matrix(gen, f"generators.{k}.", max_plus))
        return LieSystem(doc.n, tuple(matrices))

    try:
        mdoc = MatrixDocument.model_validate(data)
    except ValidationError as e:
        raise ParseError(e.errors()[0]["msg"], location=_location(e)) from e
    return _build_matrix(mdoc, "", max_plus)


def parse_text(text: str, max_plus: bool = False) -> Document:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, line=e.lineno, column=e.colno) from e
    return parse_document(data, max_plus=max_plus)


def parse_input(path: Path, max_plus: bool = False) -> Document:
    """Read and validate a system or matrix document."""
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Input file not found: {path}")
    text = path.read_text(encoding="utf-8")
    return parse_text(text, max_plus=max_plus)


def as_system(doc: Document) -> LieSystem:
    """A bare matrix is the system with that single generator."""
    if isinstance(doc, LieSystem):
        return doc
    return LieSystem(doc.n, (doc,))


# -- serialization ------------------------------------------------------------------


def matrix_document(a: SuperMatrix) -> dict:
    return {"n": a.n, "entries": [[scalar_token(x) for x in row] for row in a.rows()]}


def system_document(system: LieSystem) -> dict:
    return {"n": system.n, "generators": [matrix_document(g) for g in system.generators]}


def serialize(doc: Document) -> str:
    if isinstance(doc, LieSystem):
        payload = system_document(doc)
    else:
        payload = matrix_document(doc)
    return json.dumps(payload) + "\n"


def format_matrix(a: SuperMatrix, indent: str = "") -> list[str]:
    """One line per row, entries in scalar syntax separated by single spaces."""
    return [indent + " ".join(format_scalar(x) for x in row) for row in a.rows()]
