import logging
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import numpy as np

from utils.utils import (
    json_dumps,
    json_exporter,
    json_parser,
    keyvalue_parser,
    setup_logging,
    strip_ansi_codes,
    text_exporter,
    to_serializable,
    yaml_parser,
)


def test_to_serializable():
    value = {1: [Fraction(1, 3), Fraction(4, 2)], "x": (np.int64(3), np.float64(0.5))}
    assert to_serializable(value) == {"1": ["1/3", 2], "x": [3, 0.5]}


def test_json_dumps_is_stable():
    assert json_dumps({"b": 1, "a": 2}) == '{\n  "a": 2,\n  "b": 1\n}\n'


def test_json_round_trip(tmp_path):
    path = tmp_path / "nested" / "out.json"
    json_exporter({"value": Fraction(5, 8)}, path)
    assert json_parser(path) == {"value": "5/8"}


def test_parsers(tmp_path):
    (tmp_path / "a.yaml").write_text("samples: 10\n")
    (tmp_path / "empty.yaml").write_text("")
    (tmp_path / "run.env").write_text("SEED=3\n# comment\nDATA_DIR=out\n")
    assert yaml_parser(tmp_path / "a.yaml") == {"samples": 10}
    assert yaml_parser(tmp_path / "empty.yaml") == {}
    assert keyvalue_parser(tmp_path / "run.env") == {"seed": "3", "data_dir": "out"}


def test_text_exporter_strips_colors(tmp_path):
    path = text_exporter("\x1b[32mpass\x1b[0m\n", tmp_path / "report.txt")
    assert path.read_text() == "pass\n"
    assert strip_ansi_codes("\x1b[31mx\x1b[0m") == "x"


def test_setup_logging_with_file(tmp_path):
    setup_logging("INFO", data_dir=tmp_path / "logs")
    logging.info("[test] hello")
    for handler in logging.getLogger().handlers:
        handler.flush()
    assert "| INFO | [test] hello" in (tmp_path / "logs" / "virlab.log").read_text()
    setup_logging("WARNING")
    assert len(logging.getLogger().handlers) == 1


def test_dataclasses_serialize_as_dicts():
    @dataclass(frozen=True)
    class Cell:
        n: int
        value: Fraction
        origin: Path

    assert to_serializable([Cell(3, Fraction(1, 2), Path("data"))]) == [{"n": 3, "value": "1/2", "origin": "data"}]
    assert json_dumps(Cell(2, Fraction(4), Path("x"))) == '{\n  "n": 2,\n  "origin": "x",\n  "value": 4\n}\n'
