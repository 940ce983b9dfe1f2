"""JSON documents: Chern characters, lattices and Euler contexts."""

from __future__ import annotations

import json
from typing import Union

from .chern import ChernSigma, ChernY, chern_from_json
from .exact import InputError
from .lattice import IntegralLattice
from .mutation import EulerContext

Document = Union[ChernY, ChernSigma, IntegralLattice, EulerContext]


def loads(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from exc


def parse_lattice(doc: dict) -> IntegralLattice:
    if not isinstance(doc, dict) or "gram" not in doc:
        raise InputError("lattice document needs a 'gram' key")
    gram = doc["gram"]
    if not isinstance(gram, list) or not all(isinstance(r, list) for r in gram):
        raise InputError("'gram' must be a list of rows")
    name = doc.get("name")
    return IntegralLattice.from_rows(gram, name, bool(doc.get("degenerate", False)))


def parse_context(doc: dict) -> EulerContext:
    if not isinstance(doc, dict) or "euler" not in doc:
        raise InputError("context document needs an 'euler' key")
    euler = doc["euler"]
    if not isinstance(euler, list) or not all(isinstance(r, list) for r in euler):
        raise InputError("'euler' must be a list of rows")
    labels = doc.get("basis") or [f"E{i}" for i in range(len(euler))]
    if not isinstance(labels, list):
        raise InputError("'basis' must be a list of labels")
    return EulerContext(tuple(tuple(r) for r in euler), tuple(str(x) for x in labels))


def parse_document(doc) -> Document:
    if not isinstance(doc, dict):
        raise InputError("top-level JSON value must be an object")
    if "gram" in doc:
        return parse_lattice(doc)
    if "euler" in doc:
        return parse_context(doc)
    return chern_from_json(doc)


def to_document(obj: Document) -> dict:
    if isinstance(obj, IntegralLattice):
        out = {"gram": [list(r) for r in obj.gram]}
        if obj.name is not None:
            out["name"] = obj.name
        if obj.allow_degenerate:
            out["degenerate"] = True
        return out
    return obj.to_json()


def dumps(obj: Document) -> str:
    return json.dumps(to_document(obj), sort_keys=True)


def io_roundtrip(text: str) -> str:
    return dumps(parse_document(loads(text)))


def read_file(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            return loads(fh.read())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc


def load_lattice_file(path: str) -> IntegralLattice:
    return parse_lattice(read_file(path))


def load_context_file(path: str) -> EulerContext:
    return parse_context(read_file(path))
