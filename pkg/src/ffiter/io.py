"""Text formats for tables and fast-forward codes.

Table format: whitespace separated decimal integers, ``N`` first and then
``f(0) .. f(N-1)``; ``#`` comments run to end of line.

Code format, one record per line::

    FFC 1 <perm|func>
    N <n> L <l>
    <sigma: n integers>
    <starts: l+1 integers>
    <aux: l integers>

``sigma_inv`` and the dense component index are rebuilt on load.
"""

from __future__ import annotations

import os
from typing import IO, Union

from .codec import FastForwardCode, code_from_layout
from .core import (
    CodeKind,
    FunctionTable,
    IndexMode,
    InvariantViolation,
    LengthMismatch,
    ValidationError,
    validate_table,
)

__all__ = ["BadMagic", "ParseError", "read_code", "read_table", "write_code", "write_table"]

Source = Union[str, os.PathLike, IO[str]]

MAGIC = "FFC"
VERSION = "1"


class ParseError(ValidationError):
    def __init__(self, line: int, token: str):
        self.line = line
        self.token = token
        super().__init__(f"line {line}: cannot parse {token!r}")


class BadMagic(ValidationError):
    def __init__(self, header: str):
        self.header = header
        super().__init__(f"not a fast-forward code file (header {header!r})")


def _read_text(source: Source) -> str:
    if hasattr(source, "read"):
        return source.read()
    with open(source, encoding="ascii") as fh:
        return fh.read()


def _write_text(text: str, destination: Source) -> None:
    if hasattr(destination, "write"):
        destination.write(text)
        return
    with open(destination, "w", encoding="ascii", newline="\n") as fh:
        fh.write(text)


def _int_token(tok: str, line: int) -> int:
    if not tok.isdigit():
        raise ParseError(line, tok)
    return int(tok)


def parse_table(text: str) -> FunctionTable:
    tokens: list[int] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0]
        tokens.extend(_int_token(tok, lineno) for tok in line.split())
    if not tokens:
        raise ValidationError("empty table: missing size token")
    n, values = tokens[0], tokens[1:]
    if n < 1:
        raise ValidationError("n must be at least 1")
    if len(values) != n:
        raise LengthMismatch(n, len(values))
    return validate_table(values, n)


def read_table(source: Source) -> FunctionTable:
    return parse_table(_read_text(source))


def format_table(t: FunctionTable) -> str:
    return f"{t.n}\n{' '.join(map(str, t.values))}\n"


def write_table(t: FunctionTable, destination: Source) -> None:
    _write_text(format_table(t), destination)


def format_code(code: FastForwardCode) -> str:
    lines = [
        f"{MAGIC} {VERSION} {code.kind.value}",
        f"N {code.n} L {code.n_components}",
        " ".join(map(str, code.sigma)),
        " ".join(map(str, code.starts)),
        " ".join(map(str, code.aux)),
    ]
    return "\n".join(lines) + "\n"


def write_code(code: FastForwardCode, destination: Source) -> None:
    _write_text(format_code(code), destination)


def _ints(line: str, lineno: int) -> list[int]:
    return [_int_token(tok, lineno) for tok in line.split()]


def parse_code(text: str, index_mode: str | IndexMode = IndexMode.DENSE, hot: bool = False) -> FastForwardCode:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    header = lines[0].split() if lines else []
    if len(header) != 3 or header[0] != MAGIC or header[1] != VERSION:
        raise BadMagic(lines[0] if lines else "")
    try:
        kind = CodeKind(header[2])
    except ValueError:
        raise BadMagic(lines[0]) from None
    if len(lines) != 5:
        raise InvariantViolation("line count", f"expected 5 lines, got {len(lines)}")
    dims = lines[1].split()
    if len(dims) != 4 or dims[0] != "N" or dims[2] != "L":
        raise ParseError(2, lines[1])
    n, ell = _int_token(dims[1], 2), _int_token(dims[3], 2)
    sigma, starts, aux = _ints(lines[2], 3), _ints(lines[3], 4), _ints(lines[4], 5)
    if len(sigma) != n:
        raise InvariantViolation("sigma length", f"expected {n}, got {len(sigma)}")
    if len(starts) != ell + 1:
        raise InvariantViolation("starts length", f"expected {ell + 1}, got {len(starts)}")
    if len(aux) != ell:
        raise InvariantViolation("aux length", f"expected {ell}, got {len(aux)}")
    return code_from_layout(n, sigma, starts, aux, kind, index_mode, hot).validate()


def read_code(source: Source, index_mode: str | IndexMode = IndexMode.DENSE, hot: bool = False) -> FastForwardCode:
    return parse_code(_read_text(source), index_mode, hot)
