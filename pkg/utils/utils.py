#!/usr/bin/env python3
"""
Utility functions shared by the workbench: logging, file parsers, exporters.
"""
import dataclasses
import json
import logging
import re
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, Optional, TextIO, Union

import numpy as np
import yaml
from dotenv import dotenv_values

LOG_FORMAT = "%(asctime)s | %(levelname)s | %(message)s"
LOG_DATEFMT = "%Y-%m-%d %H:%M:%S"


# --- LOGGING ---
def setup_logging(level: str = "INFO", data_dir: Optional[Path] = None, stream: Optional[TextIO] = None) -> None:
    """Initializes logging configuration with console output.

    Args:
        level: Root log level name.
        data_dir: When given, a ``virlab.log`` file handler is added there.
        stream: Console stream, stdout by default.
    """
    logger = logging.getLogger()
    logger.setLevel(level)

    # Remove any existing handlers
    for handler in logger.handlers:
        handler.close()
    logger.handlers.clear()

    console_handler = logging.StreamHandler(stream or sys.stdout)
    console_handler.setLevel(level)
    formatter = logging.Formatter(fmt=LOG_FORMAT, datefmt=LOG_DATEFMT)
    console_handler.setFormatter(formatter)
    logger.addHandler(console_handler)

    if data_dir is None:
        return

    # Optionally add file handler for persistent logs
    try:
        data_dir.mkdir(parents=True, exist_ok=True)
        log_file = data_dir / "virlab.log"
        file_handler = logging.FileHandler(log_file, mode="a")
        file_handler.setLevel(level)
        file_handler.setFormatter(formatter)
        logger.addHandler(file_handler)
        logging.debug("Logging configured. Console + File output enabled (%s)", log_file)
    except OSError as e:
        logging.info("Logging configured. Console output enabled (File logging failed: %s)", e)


ANSI_ESCAPE_RE = re.compile(r"\x1B\[[0-?]*[ -/]*[@-~]")


def strip_ansi_codes(text: str) -> str:
    """Remove ANSI color codes so files and pipes receive plain text."""
    return ANSI_ESCAPE_RE.sub("", text)


# --- PARSERS ---
def yaml_parser(filePath: Union[str, Path]) -> dict:
    """
    Parses a YAML file and returns its content as a dictionary.

    Args:
        filePath (str): The path to the YAML file to be parsed.

    Returns:
        dict: The parsed YAML data (empty for an empty file).
    """
    with open(filePath) as f:
        config = yaml.load(f, Loader=yaml.FullLoader)
    return config or {}


def json_parser(filePath: Union[str, Path]) -> Any:
    """
    Parses a JSON file and returns its content.

    Args:
        filePath (str): The path to the JSON file to be parsed.

    Returns:
        The parsed JSON data.
    """
    with open(filePath) as f:
        value = json.load(f)
    return value


def keyvalue_parser(filePath: Union[str, Path]) -> Dict[str, str]:
    """Parse a plain ``key=value`` file (dotenv syntax) into a dictionary.

    Keys are lower-cased so they line up with the YAML profile keys.
    """
    values = dotenv_values(filePath)
    return {key.lower(): value for key, value in values.items() if value is not None}


# --- SERIALIZATION ---
def to_serializable(value: Any) -> Any:
    """Recursively convert numpy, Fraction, Path and dataclass values so they can be JSON-serialized.

    Fractions become ``"p/q"`` strings (integers when the denominator is 1) so
    exact values survive a round trip through JSON.
    """
    if isinstance(value, dict):
        return {str(key): to_serializable(val) for key, val in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_serializable(item) for item in value]
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else str(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, Path):
        return str(value)
    if dataclasses.is_dataclass(value) and not isinstance(value, type):
        return to_serializable(dataclasses.asdict(value))
    return value


def json_dumps(d: Any) -> str:
    """Stable JSON text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(to_serializable(d), indent=2, sort_keys=True) + "\n"


def json_exporter(d: Any, filePath: Union[str, Path]) -> None:
    """
    Exports a value to a JSON file with stable key order.

    Args:
        d: The value to export; numpy and Fraction values are converted.
        filePath (str): The path where the JSON file will be saved.
    """
    path = Path(filePath)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as fp:
        fp.write(json_dumps(d))


def text_exporter(text: str, filePath: Union[str, Path]) -> Path:
    """Write rendered output (CSV, JSON or markdown) to a file, creating parent directories."""
    path = Path(filePath)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(strip_ansi_codes(text), encoding="utf-8")
    return path
