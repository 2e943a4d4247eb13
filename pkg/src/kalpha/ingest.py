"""Read a reliability matrix from delimited text (units in rows, coders in columns)."""

from __future__ import annotations

import csv
import io
import math
import re
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import TextIO

import numpy as np

from .data import ReliabilityMatrix
from .errors import EmptyFile, RaggedRows, UnparseableCell

STDIN = "-"
_NUMBER = re.compile(r"[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?")


@dataclass(frozen=True)
class InputSpec:
    path: str | Path = STDIN
    has_header: bool = False
    na_tokens: frozenset = frozenset({"NA", ""})
    delimiter: str = ","

    def __post_init__(self):
        if len(self.delimiter) != 1 or not self.delimiter.isprintable():
            raise ValueError("delimiter must be a single printable character")
        if not self.na_tokens:
            raise ValueError("na_tokens must not be empty")
        object.__setattr__(self, "na_tokens", frozenset(self.na_tokens))


def parse_rows(stream: TextIO, spec: InputSpec) -> ReliabilityMatrix:
    reader = csv.reader(stream, delimiter=spec.delimiter)
    rows = []
    width = None
    header_pending = spec.has_header
    for fields in reader:
        if not fields or (len(fields) == 1 and not fields[0].strip()):
            continue
        if header_pending:
            header_pending = False
            continue
        line = reader.line_num
        if width is None:
            width = len(fields)
        elif len(fields) != width:
            raise RaggedRows(line, width, len(fields))
        row = []
        for col, raw in enumerate(fields, start=1):
            cell = raw.strip()
            if cell in spec.na_tokens:
                row.append(math.nan)
                continue
            if not _NUMBER.fullmatch(cell):
                raise UnparseableCell(line, col, raw)
            value = float(cell)
            if not math.isfinite(value):
                raise UnparseableCell(line, col, raw)
            row.append(value)
        rows.append(row)
    if not rows:
        raise EmptyFile("no data rows found")
    return ReliabilityMatrix(np.array(rows, dtype=float))


def ingest(spec: InputSpec) -> ReliabilityMatrix:
    if str(spec.path) == STDIN:
        return parse_rows(sys.stdin, spec)
    with open(spec.path, newline="", encoding="utf-8") as fh:
        return parse_rows(fh, spec)


def ingest_text(text: str, **kw) -> ReliabilityMatrix:
    return parse_rows(io.StringIO(text), InputSpec(**kw))
