"""Readers and writers for the .sig, .alg and .cls text formats.

All three formats are line-oriented: '#' starts a comment running to
the end of the line, blank lines are ignored, and tokens are separated
by whitespace.  FORMAT.md in the repository root documents the layouts
with examples; briefly:

  .sig   one declaration per line: "op NAME ARITY" / "pred NAME ARITY"
  .alg   "size N", then interleaved declarations and tables: each
         "op NAME ARITY" is followed by N**ARITY values in row-major
         order over lexicographic argument tuples ("pred" likewise
         with 0/1 entries), and an optional "labels" line carries N
         display names
  .cls   "algebra PATH" lines (relative to the .cls file), optional
         "include_unitary BOOL" and "size_bound N"

Loading is strict: unknown keywords, wrong counts and range errors
raise FormatError with the file name and line number.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

from .algebras import FiniteAlgebra, unitary_system
from .errors import AlgebraMismatch, FormatError
from .terms import Signature


def _tokenize(path: str) -> list[tuple[int, str]]:
    """All tokens of a file as (line number, token), comments stripped."""
    out = []
    try:
        with open(path, "r", encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, start=1):
                body = line.split("#", 1)[0]
                out.extend((lineno, tok) for tok in body.split())
    except OSError as exc:
        raise FormatError(f"{path}: {exc.strerror or exc}") from exc
    return out


class _Reader:
    def __init__(self, path: str):
        self.path = path
        self.tokens = _tokenize(path)
        self.pos = 0

    def done(self) -> bool:
        return self.pos >= len(self.tokens)

    def peek(self) -> str:
        return self.tokens[self.pos][1]

    def next(self, what: str) -> str:
        if self.done():
            last = self.tokens[-1][0] if self.tokens else 1
            raise FormatError(f"{self.path}:{last}: expected {what}, "
                              f"found end of file")
        lineno, tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def next_int(self, what: str, low: int = 0, high: int | None = None) -> int:
        lineno = self.tokens[self.pos][0] if not self.done() else 0
        tok = self.next(what)
        try:
            value = int(tok)
        except ValueError:
            raise FormatError(
                f"{self.path}:{lineno}: expected {what}, found {tok!r}")
        if value < low or (high is not None and value >= high):
            bound = f"{low}..{high - 1}" if high is not None else f">= {low}"
            raise FormatError(
                f"{self.path}:{lineno}: {what} {value} outside {bound}")
        return value

    def error(self, message: str) -> FormatError:
        lineno = self.tokens[self.pos - 1][0] if self.pos else 1
        return FormatError(f"{self.path}:{lineno}: {message}")


def _read_declaration(reader: _Reader) -> tuple[str, str, int]:
    kind = reader.next("'op' or 'pred'")
    if kind not in ("op", "pred"):
        raise reader.error(f"expected 'op' or 'pred', found {kind!r}")
    name = reader.next("a symbol name")
    arity = reader.next_int("an arity", low=0)
    return kind, name, arity


def load_signature(path: str) -> Signature:
    """Read a .sig file: op/pred declarations, one per line."""
    reader = _Reader(path)
    ops: list[tuple[str, int]] = []
    preds: list[tuple[str, int]] = []
    while not reader.done():
        kind, name, arity = _read_declaration(reader)
        (ops if kind == "op" else preds).append((name, arity))
    try:
        return Signature(ops=tuple(ops), preds=tuple(preds))
    except ValueError as exc:
        raise FormatError(f"{path}: {exc}") from exc


def save_signature(sig: Signature, path: str) -> None:
    lines = [f"op {name} {arity}" for name, arity in sig.ops]
    lines += [f"pred {name} {arity}" for name, arity in sig.preds]
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


def load_algebra(path: str) -> FiniteAlgebra:
    """Read a .alg file: size, then declarations each with its table."""
    reader = _Reader(path)
    key = reader.next("'size'")
    if key != "size":
        raise reader.error(f"expected 'size', found {key!r}")
    size = reader.next_int("the carrier size", low=1)
    ops: list[tuple[str, int]] = []
    preds: list[tuple[str, int]] = []
    op_tables: dict[str, tuple[int, ...]] = {}
    pred_tables: dict[str, tuple[bool, ...]] = {}
    labels = None
    while not reader.done():
        if reader.peek() == "labels":
            reader.next("'labels'")
            labels = tuple(reader.next(f"label {i}") for i in range(size))
            continue
        kind, name, arity = _read_declaration(reader)
        count = size**arity
        if kind == "op":
            ops.append((name, arity))
            op_tables[name] = tuple(
                reader.next_int(f"a value of {name}", low=0, high=size)
                for _ in range(count))
        else:
            preds.append((name, arity))
            pred_tables[name] = tuple(
                bool(reader.next_int(f"a 0/1 entry of {name}", low=0, high=2))
                for _ in range(count))
    try:
        sig = Signature(ops=tuple(ops), preds=tuple(preds))
        return FiniteAlgebra(sig, size, op_tables, pred_tables, labels)
    except ValueError as exc:
        raise FormatError(f"{path}: {exc}") from exc


def save_algebra(alg: FiniteAlgebra, path: str) -> None:
    """Write a .alg file in the canonical layout (binary ops as a
    square of rows, everything else chunked by the last argument)."""
    n = alg.size
    lines = [f"size {n}"]
    for name, arity in alg.sig.ops:
        lines.append(f"op {name} {arity}")
        lines.extend(_table_lines(alg.op_tables[name], n, arity))
    for name, arity in alg.sig.preds:
        lines.append(f"pred {name} {arity}")
        lines.extend(_table_lines(
            tuple(int(v) for v in alg.pred_tables[name]), n, arity))
    if alg.labels is not None:
        lines.append("labels " + " ".join(alg.labels))
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


def _table_lines(table: tuple[int, ...], size: int, arity: int) -> list[str]:
    if arity == 0:
        return [str(table[0])]
    width = size
    return [" ".join(str(v) for v in table[i:i + width])
            for i in range(0, len(table), width)]


@dataclass(frozen=True)
class ClassDefinition:
    """A generator family loaded from a .cls file.

    algebras are the loaded members (plus the one-element system when
    include_unitary is set), all sharing one signature; size_bound caps
    free/presented construction over the class.
    """

    algebras: tuple[FiniteAlgebra, ...]
    include_unitary: bool
    size_bound: int
    paths: tuple[str, ...]


def load_class(path: str, *, default_size_bound: int = 10_000
               ) -> ClassDefinition:
    """Read a .cls file and load its member algebras.

    Member paths resolve relative to the .cls file's directory.  All
    members must share a signature; with include_unitary the
    one-element system over that signature is appended.
    """
    reader = _Reader(path)
    base = os.path.dirname(os.path.abspath(path))
    member_paths: list[str] = []
    include_unitary = False
    size_bound = default_size_bound
    while not reader.done():
        key = reader.next("'algebra', 'include_unitary' or 'size_bound'")
        if key == "algebra":
            member_paths.append(reader.next("an algebra file path"))
        elif key == "include_unitary":
            value = reader.next("true or false")
            if value not in ("true", "false"):
                raise reader.error(
                    f"include_unitary takes true or false, found {value!r}")
            include_unitary = value == "true"
        elif key == "size_bound":
            size_bound = reader.next_int("a size bound", low=1)
        else:
            raise reader.error(f"unknown keyword {key!r}")
    if not member_paths:
        raise FormatError(f"{path}: a class needs at least one algebra")
    algebras = []
    for rel in member_paths:
        member = rel if os.path.isabs(rel) else os.path.join(base, rel)
        algebras.append(load_algebra(member))
    sig = algebras[0].sig
    for rel, alg in zip(member_paths[1:], algebras[1:]):
        if alg.sig != sig:
            raise AlgebraMismatch(
                f"{path}: {rel} has a different signature from the first "
                f"class member")
    if include_unitary:
        algebras.append(unitary_system(sig))
    return ClassDefinition(tuple(algebras), include_unitary, size_bound,
                           tuple(member_paths))
