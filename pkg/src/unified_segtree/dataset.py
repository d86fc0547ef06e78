"""CSV ingestion and random instance generation."""

from __future__ import annotations

import csv
import io
import random
from dataclasses import dataclass
from pathlib import Path

from .geometry import GeometryError, Rect

HEADER = ["id", "minx", "miny", "maxx", "maxy"]


class DatasetError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass
class Dataset:
    source: str
    rects: list[Rect]


def parse_csv(text: str, source: str = "<string>") -> Dataset:
    # newline="" semantics: csv handles both LF and CRLF
    reader = csv.reader(io.StringIO(text, newline=""))
    try:
        header = next(reader)
    except StopIteration:
        raise DatasetError("missing header", 1) from None
    if [h.strip() for h in header] != HEADER:
        raise DatasetError(f"header must be {','.join(HEADER)}, got {','.join(header)}", 1)
    rects = []
    seen: dict[int, int] = {}
    for row in reader:
        line = reader.line_num
        if not row or all(not c.strip() for c in row):
            continue
        if len(row) != 5:
            raise DatasetError(f"expected 5 fields, got {len(row)}", line)
        try:
            values = [int(c.strip(), 10) for c in row]
        except ValueError:
            raise DatasetError(f"non-integer field in {row}", line) from None
        try:
            rect = Rect(*values)
        except GeometryError as e:
            raise DatasetError(str(e), line) from None
        if rect.id in seen:
            raise DatasetError(f"duplicate id {rect.id} (first seen on line {seen[rect.id]})", line)
        seen[rect.id] = line
        rects.append(rect)
    return Dataset(source, rects)


def load_csv(path: str | Path) -> Dataset:
    path = Path(path)
    try:
        text = path.read_bytes().decode("utf-8")
    except UnicodeDecodeError as e:
        raise DatasetError(f"not valid UTF-8 ({e})") from None
    return parse_csv(text, str(path))


def dump_csv(rects) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(HEADER)
    for r in rects:
        w.writerow(r.as_tuple())
    return buf.getvalue()


def random_rects(rng: random.Random, n: int, grid: int, span: int | None = None) -> list[Rect]:
    """``n`` rects whose corners are drawn from ``grid`` distinct values per axis.

    The value pool is a random subset of ``range(span)``, so many rects share
    endpoints when ``n`` is large relative to ``grid``.
    """
    if grid < 2:
        raise ValueError("grid needs at least 2 values per axis")
    span = span if span is not None else 4 * grid
    xs = sorted(rng.sample(range(span), grid))
    ys = sorted(rng.sample(range(span), grid))
    rects = []
    for i in range(n):
        x0, x1 = sorted(rng.sample(xs, 2))
        y0, y1 = sorted(rng.sample(ys, 2))
        rects.append(Rect(i, x0, y0, x1, y1))
    return rects


def sized_rects(rng: random.Random, n: int, span: int = 1024, max_side: int = 128) -> list[Rect]:
    """``n`` rects on a ``span x span`` integer grid with sides up to ``max_side``."""
    max_side = min(max_side, span - 1)
    rects = []
    for i in range(n):
        w = rng.randint(1, max_side)
        h = rng.randint(1, max_side)
        x0 = rng.randrange(0, span - w)
        y0 = rng.randrange(0, span - h)
        rects.append(Rect(i, x0, y0, x0 + w, y0 + h))
    return rects
