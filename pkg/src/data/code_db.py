"""
Plain-text code database

    # comment
    code <n> <k> [name]
    <k rows of n characters 0/1>

Blank lines and lines starting with '#' are ignored anywhere.
"""

import logging
from pathlib import Path
from typing import Iterable, List, Optional, Union

from src.algebra.gf2core import BitMatrix, rank
from src.codes.linear_code import LinearCode, make_code
from src.errors import CodeFormatError

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


def _header(fields: List[str], path: str, line: int):
    if len(fields) < 3 or fields[0] != "code":
        raise CodeFormatError(f"Expected 'code <n> <k> [name]', got {' '.join(fields)!r}", path, line)
    try:
        n, k = int(fields[1]), int(fields[2])
    except ValueError:
        raise CodeFormatError(f"Length and dimension must be integers, got {fields[1]!r} {fields[2]!r}", path, line)
    if n < 1 or not 0 <= k <= n:
        raise CodeFormatError(f"Invalid parameters n={n}, k={k}", path, line)
    name = " ".join(fields[3:]) or None
    return n, k, name


def parse_db_text(text: str, path: PathLike = "<string>") -> List[LinearCode]:
    path = str(path)
    codes: List[LinearCode] = []
    record = None
    rows: List[int] = []

    def close():
        n, k, name, start = record
        if len(rows) != k:
            raise CodeFormatError(f"Record declares k={k} but has {len(rows)} rows", path, start)
        matrix = BitMatrix(n, tuple(rows))
        if rank(matrix) != k:
            raise CodeFormatError(f"Generator rows have rank {rank(matrix)}, declared k={k}", path, start)
        codes.append(make_code(matrix, n, name))

    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if stripped.startswith("code"):
            if record is not None:
                close()
            n, k, name = _header(stripped.split(), path, lineno)
            record = (n, k, name, lineno)
            rows = []
            continue
        if record is None:
            raise CodeFormatError("Generator row before any 'code' header", path, lineno)
        n, k = record[0], record[1]
        if len(stripped) != n:
            raise CodeFormatError(f"Row has length {len(stripped)}, expected {n}", path, lineno)
        bad = next((ch for ch in stripped if ch not in "01"), None)
        if bad is not None:
            raise CodeFormatError(f"Non-binary character {bad!r}", path, lineno)
        if len(rows) == k:
            raise CodeFormatError(f"More than the declared k={k} rows", path, lineno)
        rows.append(sum(1 << j for j, ch in enumerate(stripped) if ch == "1"))
    if record is not None:
        close()
    return codes


def parse_db(path: PathLike) -> List[LinearCode]:
    """Read every code of a database file"""
    path = Path(path)
    text = path.read_text()
    codes = parse_db_text(text, path)
    logger.info(f"Loaded {len(codes)} codes from {path}")
    return codes


def format_db(codes: Iterable[LinearCode], comment: Optional[str] = None) -> str:
    lines = []
    if comment:
        lines.extend(f"# {part}" for part in comment.splitlines())
    for code in codes:
        header = f"code {code.n} {code.k}"
        if code.name:
            header += f" {code.name}"
        lines.append(header)
        lines.extend(code.gen.to_strings())
        lines.append("")
    return "\n".join(lines)


def write_db(codes: Iterable[LinearCode], path: PathLike, comment: Optional[str] = None) -> None:
    codes = list(codes)
    path = Path(path)
    path.write_text(format_db(codes, comment))
    logger.info(f"Wrote {len(codes)} codes to {path}")
