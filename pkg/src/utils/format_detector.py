#!/usr/bin/env python3
"""Output format detection for series dumps and reports."""

from pathlib import Path
from typing import Literal, Optional

from core.errors import ConfigError

FormatType = Literal['json', 'csv', 'text']

SUFFIX_FORMATS = {
    '.json': 'json',
    '.csv': 'csv',
    '.txt': 'text',
    '.text': 'text',
}


def detect_format(output: Optional[Path], explicit: Optional[str] = None,
                  default: FormatType = 'json') -> FormatType:
    """
    Pick the output format.

    An explicit --format wins; otherwise the suffix of the output path
    decides; stdout gets the command's default.

    Raises:
        ConfigError: unknown explicit format or unrecognised suffix
    """
    if explicit:
        value = explicit.strip().lower()
        if value not in ('json', 'csv', 'text'):
            raise ConfigError(f"unknown output format {explicit!r} (json, csv or text)")
        return value
    if output is None:
        return default
    suffix = Path(output).suffix.lower()
    if suffix in SUFFIX_FORMATS:
        return SUFFIX_FORMATS[suffix]
    raise ConfigError(f"cannot infer output format from {output}; pass --format")
