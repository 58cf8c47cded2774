"""
CurveFile reading and writing

Format: an optional `# k_min=<int>` comment, a `k,value` header, then one
row per index with consecutive non-negative integer k.
"""
import re
from pathlib import Path
from typing import List, Optional, Tuple, Union

import chardet
import numpy as np

from elbowkit.processors.curve import ArrayLike, ErrorCurve, validate
from elbowkit.utils.custom_exceptions import CurveFileFormatError, CurveFileReadError, EmptyCurveError

HEADER = ('k', 'value')
K_MIN_COMMENT = re.compile(r'^#\s*k_min\s*=\s*(\S+)\s*$')

PathLike = Union[str, Path]


def decode_contents(contents: bytes, path: str = '<bytes>') -> str:
    """
    Decode file bytes as UTF-8, falling back to the chardet guess

    Raises:
        CurveFileReadError: If no encoding decodes the contents
    """
    try:
        return contents.decode('utf-8-sig')
    except UnicodeDecodeError:
        pass

    detected = chardet.detect(contents)
    encoding = detected.get('encoding')
    if encoding:
        try:
            return contents.decode(encoding)
        except (UnicodeDecodeError, LookupError):
            pass
    raise CurveFileReadError(path, f"cannot decode contents (detected encoding: {encoding})")


def parse_curve_text(text: str, path: Optional[str] = None) -> Tuple[np.ndarray, int]:
    """
    Parse CurveFile text into raw values and the index offset

    Returns:
        tuple: (values, k_min)

    Raises:
        CurveFileFormatError: On a malformed header or row, a gap or
            duplicate in k, or a k_min comment that disagrees with the rows
        EmptyCurveError: If the file has no data rows
    """
    declared_k_min = None
    declared_line = None
    header_seen = False
    ks: List[int] = []
    values: List[float] = []

    for line_number, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.strip()
        if not line:
            continue
        if line.startswith('#'):
            match = K_MIN_COMMENT.match(line)
            if match:
                try:
                    declared_k_min = int(match.group(1))
                except ValueError:
                    raise CurveFileFormatError(f"k_min comment is not an integer: '{match.group(1)}'", line_number, path)
                declared_line = line_number
            continue

        fields = [part.strip() for part in line.split(',')]
        if not header_seen:
            if tuple(part.lower() for part in fields) != HEADER:
                raise CurveFileFormatError(f"expected header 'k,value', got '{line}'", line_number, path)
            header_seen = True
            continue

        if len(fields) != 2:
            raise CurveFileFormatError(f"expected 2 fields, got {len(fields)}: '{line}'", line_number, path)
        try:
            k = int(fields[0])
        except ValueError:
            raise CurveFileFormatError(f"k is not an integer: '{fields[0]}'", line_number, path)
        try:
            value = float(fields[1])
        except ValueError:
            raise CurveFileFormatError(f"value is not a number: '{fields[1]}'", line_number, path)

        if k < 0:
            raise CurveFileFormatError(f"k must be non-negative, got {k}", line_number, path)
        if ks and k == ks[-1]:
            raise CurveFileFormatError(f"duplicate k={k}", line_number, path)
        if ks and k != ks[-1] + 1:
            raise CurveFileFormatError(f"k must increase by 1 (gaps are not supported), got {k} after {ks[-1]}", line_number, path)
        ks.append(k)
        values.append(value)

    if not header_seen:
        raise CurveFileFormatError("missing 'k,value' header", None, path)
    if not ks:
        raise EmptyCurveError()
    if declared_k_min is not None and declared_k_min != ks[0]:
        raise CurveFileFormatError(
            f"k_min={declared_k_min} disagrees with first row k={ks[0]}", declared_line, path
        )
    return np.array(values, dtype=np.float64), ks[0]


def read_curve_file(path: PathLike, tol: Optional[float] = None) -> ErrorCurve:
    """
    Read and validate a CurveFile

    Raises:
        CurveFileReadError: If the file cannot be opened or decoded
        CurveValidationError: If its contents are not a valid error curve
    """
    path = str(path)
    try:
        contents = Path(path).read_bytes()
    except OSError as e:
        raise CurveFileReadError(path, e.strerror or str(e))

    values, k_min = parse_curve_text(decode_contents(contents, path), path)
    return validate(values, tol=tol, k_min=k_min)


def format_curve(values: ArrayLike, k_min: int = 0) -> str:
    """CurveFile text with shortest round-trip float formatting"""
    lines = [f"# k_min={k_min}", ','.join(HEADER)]
    for offset, value in enumerate(np.asarray(values, dtype=np.float64)):
        lines.append(f"{k_min + offset},{float(value)!r}")
    return '\n'.join(lines) + '\n'


def write_curve_file(path: PathLike, curve: ErrorCurve):
    try:
        Path(path).write_text(format_curve(curve.values, curve.k_min), encoding='utf-8')
    except OSError as e:
        raise CurveFileReadError(str(path), e.strerror or str(e), operation="write")
