#!/usr/bin/env python3
"""Logging utilities for glsm-lab"""

import sys
import time
from datetime import datetime, timezone
from pathlib import Path


class Logger:
    """Simple logger for console and file output"""
    _debug_enabled = False
    _debug_file = None
    _last_stage_time = None

    @classmethod
    def set_debug(cls, enabled: bool, debug_file_path: str = None):
        """Enable debug logging, optionally mirrored to a file"""
        cls._debug_enabled = enabled
        cls._debug_file = None
        if enabled and debug_file_path:
            cls._debug_file = Path(debug_file_path)
            cls._debug_file.parent.mkdir(parents=True, exist_ok=True)
        cls._last_stage_time = time.perf_counter()

    @classmethod
    def is_debug(cls) -> bool:
        return cls._debug_enabled

    @classmethod
    def _log(cls, level: str, message: str):
        """Internal log method"""
        timestamp = datetime.now(timezone.utc).strftime('%Y-%m-%d %H:%M:%S')
        log_msg = f"[{timestamp}] [{level}] {message}"

        print(log_msg, file=sys.stderr if level == "ERROR" else sys.stdout, flush=True)

        if cls._debug_enabled and cls._debug_file:
            try:
                with open(cls._debug_file, 'a', encoding='utf-8') as f:
                    f.write(log_msg + '\n')
            except Exception:
                pass

    @classmethod
    def info(cls, message: str):
        """Log info message"""
        cls._log("INFO", message)

    @classmethod
    def debug(cls, message: str):
        """Log debug message (only if debug enabled)"""
        if cls._debug_enabled:
            cls._log("DEBUG", message)

    @classmethod
    def warning(cls, message: str):
        """Log warning message"""
        cls._log("WARNING", message)

    @classmethod
    def error(cls, message: str):
        """Log error message"""
        cls._log("ERROR", message)

    @classmethod
    def stage(cls, name: str):
        """
        Log the wall time spent since the previous checkpoint.

        Only active with debug enabled. Use this to see which part of a
        computation (pole enumeration, residues, quadrature) dominates a run.
        """
        if not cls._debug_enabled:
            return
        now = time.perf_counter()
        last = cls._last_stage_time if cls._last_stage_time is not None else now
        cls._log("STAGE", f"{name}: {now - last:.3f} s")
        cls._last_stage_time = now
