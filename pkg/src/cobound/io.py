"""Text formats for complexes, cochains and sign matrices; JSON report helpers.

Complex file: one face per line, whitespace-separated vertex labels, ``#``
starts a comment, blank lines are ignored. The complex is the downward
closure of the listed faces.

Cochain file: a ``dim <i>`` header, then one i-face per line.
"""

from __future__ import annotations

import json
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Any

from .cochain import Cochain
from .complex import Complex, from_maximal_faces
from .errors import DimensionMismatch, InputError, ParseError


def _lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def _face(tokens: list[str], lineno: int) -> list[int]:
    try:
        vs = [int(t) for t in tokens]
    except ValueError:
        raise ParseError(f"line {lineno}: vertex labels must be integers") from None
    if any(v < 0 for v in vs):
        raise ParseError(f"line {lineno}: vertex labels must be non-negative")
    return vs


def parse_complex(text: str) -> Complex:
    faces = [_face(line.split(), n) for n, line in _lines(text)]
    if not faces:
        raise ParseError("no faces in complex file")
    try:
        return from_maximal_faces(faces)
    except InputError as exc:
        raise ParseError(str(exc)) from exc


def serialize_complex(X: Complex) -> str:
    """Maximal faces, lexicographically sorted, one per line."""
    return "".join(" ".join(map(str, f)) + "\n" for f in X.maximal_faces())


def parse_cochain(text: str, X: Complex) -> Cochain:
    lines = list(_lines(text))
    if not lines:
        raise ParseError("empty cochain file")
    lineno, head = lines[0]
    parts = head.split()
    if len(parts) != 2 or parts[0] != "dim":
        raise ParseError(f"line {lineno}: expected header 'dim <i>'")
    try:
        i = int(parts[1])
    except ValueError:
        raise ParseError(f"line {lineno}: bad dimension {parts[1]!r}") from None
    faces = [_face(line.split(), n) for n, line in lines[1:]]
    for n_, f in zip((n for n, _ in lines[1:]), faces):
        if len(f) != i + 1:
            raise ParseError(f"line {n_}: expected {i + 1} vertices, got {len(f)}")
        if len(set(f)) != len(f):
            raise ParseError(f"line {n_}: repeated vertex")
    try:
        return Cochain.from_faces(X, i, faces)
    except DimensionMismatch as exc:
        raise ParseError(str(exc)) from exc


def serialize_cochain(X: Complex, f: Cochain) -> str:
    out = [f"dim {f.dim}\n"]
    out += [" ".join(map(str, F)) + "\n" for F in f.faces(X)]
    return "".join(out)


def parse_sign_matrix(text: str) -> list[list[int]]:
    rows = []
    for lineno, line in _lines(text):
        try:
            rows.append([int(t) for t in line.split()])
        except ValueError:
            raise ParseError(f"line {lineno}: entries must be +1 or -1") from None
    if not rows:
        raise ParseError("empty matrix file")
    return rows


def read_text(path: str | Path) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc


def read_complex(path: str | Path) -> Complex:
    return parse_complex(read_text(path))


def read_cochain(path: str | Path, X: Complex) -> Cochain:
    return parse_cochain(read_text(path), X)


# -- JSON --------------------------------------------------------------------------

def rational(q: Fraction | int | None) -> dict | None:
    if q is None:
        return None
    q = Fraction(q)
    return {"num": q.numerator, "den": q.denominator, "approx": format(float(q), ".12g")}


def faces_json(X: Complex, f: Cochain | None) -> list[list[int]] | None:
    if f is None:
        return None
    return [list(F) for F in f.faces(X)]


def number(x: float | int | None) -> int | str | None:
    """Integers pass through; infinity becomes the string "inf"."""
    if x is None:
        return None
    if x == float("inf"):
        return "inf"
    return int(x)


def schema() -> dict[str, Any]:
    return json.loads(resources.files("cobound").joinpath("report.schema.json").read_text())


def dumps(report: dict) -> str:
    return json.dumps(report, sort_keys=True)
