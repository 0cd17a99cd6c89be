"""
Reading and writing complexes.

Two formats are supported:

* JSON: ``{"name": "...", "facets": [["a", "b", "c"], ...]}``
* plain text: one facet per line, whitespace-separated labels, ``#`` starts a
  comment. An optional ``# name: <name>`` header names the complex.

``corpus:<name>`` is accepted wherever a path is expected.
"""
import json
import os
from typing import Union

from loguru import logger
from pydantic import BaseModel, ValidationError, field_validator

from src.constants import CORPUS_PREFIX
from src.core.complex import SimplicialComplex
from src.corpus.registry import corpus_get
from src.errors import ComplexParseError, CycleMateError

NAME_HEADER = "# name:"


class ComplexFile(BaseModel):
    name: str = "complex"
    facets: list[list[Union[str, int]]]

    @field_validator("name")
    @classmethod
    def validate_name(cls, v):
        v = v.strip()
        if not v:
            raise ValueError("Name must be a non-empty string")
        return v

    @field_validator("facets")
    @classmethod
    def validate_facets(cls, v):
        if not v:
            raise ValueError("At least one facet is required")
        return v

    def to_complex(self) -> SimplicialComplex:
        return SimplicialComplex.from_facets(self.name, self.facets)


def _default_name(source: str) -> str:
    base = os.path.basename(source)
    return os.path.splitext(base)[0] or "complex"


def parse_json(text: str, source: str = "complex") -> SimplicialComplex:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise ComplexParseError(f"invalid JSON: {e.msg}", line=e.lineno) from None
    if isinstance(raw, dict) and "name" not in raw:
        raw = {**raw, "name": _default_name(source)}
    try:
        document = ComplexFile.model_validate(raw)
    except ValidationError as e:
        first = e.errors()[0]
        where = ".".join(str(p) for p in first["loc"])
        raise ComplexParseError(f"{where or 'document'}: {first['msg']}") from None
    return document.to_complex()


def parse_text(text: str, source: str = "complex") -> SimplicialComplex:
    name = _default_name(source)
    facets = []
    for number, raw_line in enumerate(text.splitlines(), start=1):
        stripped = raw_line.strip()
        if stripped.lower().startswith(NAME_HEADER):
            name = stripped[len(NAME_HEADER):].strip() or name
            continue
        tokens = []
        for token in stripped.split():
            if token.startswith("#"):
                break
            tokens.append(token)
        if not tokens:
            continue
        if len(set(tokens)) != len(tokens):
            raise ComplexParseError(f"facet repeats a vertex: {' '.join(tokens)}", line=number)
        facets.append(tokens)
    if not facets:
        raise ComplexParseError("no facets found")
    return SimplicialComplex.from_facets(name, facets)


def emit_json(complex_: SimplicialComplex) -> str:
    document = {"name": complex_.name, "facets": complex_.facet_lists()}
    return json.dumps(document, indent=2, sort_keys=True) + "\n"


def emit_text(complex_: SimplicialComplex) -> str:
    lines = [f"{NAME_HEADER} {complex_.name}"]
    lines += [" ".join(facet) for facet in complex_.facet_lists()]
    return "\n".join(lines) + "\n"


def emit(complex_: SimplicialComplex, fmt: str = "json") -> str:
    if fmt == "json":
        return emit_json(complex_)
    if fmt == "text":
        return emit_text(complex_)
    raise ValueError(f"Unknown format '{fmt}'")


def parse(text: str, source: str = "complex") -> SimplicialComplex:
    """Sniff the format: JSON documents start with '{'."""
    if text.lstrip().startswith("{"):
        return parse_json(text, source)
    return parse_text(text, source)


def load_complex(path: str) -> SimplicialComplex:
    if path.startswith(CORPUS_PREFIX):
        return corpus_get(path[len(CORPUS_PREFIX):])
    try:
        with open(path, "r", encoding="utf-8") as f:
            text = f.read()
    except OSError as e:
        raise ComplexParseError(f"cannot read '{path}': {e.strerror}") from None
    try:
        if path.endswith(".json"):
            complex_ = parse_json(text, path)
        else:
            complex_ = parse(text, path)
    except ComplexParseError:
        raise
    except CycleMateError as e:
        raise ComplexParseError(f"{path}: {e}") from None
    logger.debug(f"Loaded {complex_!r} from {path}")
    return complex_
