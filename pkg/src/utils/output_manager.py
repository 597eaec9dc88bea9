#!/usr/bin/env python3
"""Output writers: JSON dumps, CSV coefficient tables and text reports"""

import csv
import io
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional

import numpy as np

from utils.logger import Logger

CSV_FLOAT_FORMAT = '%.17g'
CSV_COLUMNS = ('component', 'n', 're', 'im')


def _json_default(value: Any):
    """Values json cannot encode natively; floats keep their round-trip repr"""
    if isinstance(value, (complex, np.complexfloating)):
        return [float(value.real), float(value.imag)]
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, Path):
        return str(value)
    raise TypeError(f"cannot serialize {type(value).__name__}")


def dumps_json(data: Any) -> str:
    """Deterministic JSON: sorted keys and shortest round-trip floats"""
    return json.dumps(data, default=_json_default, sort_keys=True, indent=2, allow_nan=True) + '\n'


def _open_target(output: Optional[Path]):
    if output is None:
        return sys.stdout, False
    output.parent.mkdir(parents=True, exist_ok=True)
    return open(output, 'w', encoding='utf-8', newline=''), True


def write_text(text: str, output: Optional[Path] = None):
    """Write to a file, or to stdout when output is None"""
    stream, owned = _open_target(output)
    try:
        stream.write(text)
    finally:
        if owned:
            stream.close()
            Logger.debug(f"Wrote {output}")


def write_json(data: Any, output: Optional[Path] = None):
    write_text(dumps_json(data), output)


def format_csv(rows: Iterable[Dict[str, Any]], metadata: Dict[str, Any] = None,
               columns: Iterable[str] = CSV_COLUMNS) -> str:
    """
    CSV with a '# key: value' metadata header; floats use %.17g so values
    read back bit for bit.
    """
    columns = list(columns)
    buffer = io.StringIO()
    for key in sorted(metadata or {}):
        buffer.write(f"# {key}: {metadata[key]}\n")
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_csv_cell(row[c]) for c in columns])
    return buffer.getvalue()


def _csv_cell(value: Any) -> str:
    if isinstance(value, (float, np.floating)):
        return CSV_FLOAT_FORMAT % value
    if isinstance(value, complex):
        sign = '-' if value.imag < 0 else '+'
        return f"{CSV_FLOAT_FORMAT % value.real}{sign}{CSV_FLOAT_FORMAT % abs(value.imag)}j"
    return str(value)


def write_csv(rows: List[Dict[str, Any]], output: Optional[Path] = None,
              metadata: Dict[str, Any] = None, columns: Iterable[str] = CSV_COLUMNS):
    write_text(format_csv(rows, metadata, columns), output)
