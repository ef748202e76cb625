#!/usr/bin/env python3
"""
Complexity tables of the coefficient representations.

Tables 1-3 apply Cr1, Cr2, Cr3 to the tree sums of b_n and a_n; tables 4-6
apply the primed criteria to the cumulative sets of tree sums of orders 2..n
that B_n is assembled from. Every cell carries a source: ``computed`` from
live enumeration or ``reference`` from the published constants.
"""
import logging
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Tuple

import pandas as pd

from config import config
from utils.utils import json_dumps

from . import reference
from .criteria import BaseSet, cr1, cr2, cr3, cr_prime
from .errors import VirlabError, check_order
from .ree_hoover import rh_linear_combination
from .trees import tree_sum, tree_sum_set

COMPUTED = "computed"
REFERENCE = "reference"
MISSING = "-"
FORMATS = ("csv", "json", "md")

FOOTNOTES = (
    "* marks a published reference value, not recomputed here.",
    "L_RH rows count nonisomorphic Ree-Hoover diagrams, while tree rows count classes of labeled trees; "
    "the rows are compared as printed.",
)


@dataclass(frozen=True)
class TableSpec:
    table_id: int
    criterion: str
    title: str
    cumulative: bool
    with_rh: bool


TABLES: Dict[int, TableSpec] = {
    1: TableSpec(1, "cr1", "Complexity by Cr1: length", False, True),
    2: TableSpec(2, "cr2", "Complexity by Cr2: total edge count", False, True),
    3: TableSpec(3, "cr3", "Complexity by Cr3: summed N1 complexity", False, False),
    4: TableSpec(4, "cr1p", "Complexity by Cr'1 of the representations of B_n", True, True),
    5: TableSpec(5, "cr2p", "Complexity by Cr'2 of the representations of B_n", True, True),
    6: TableSpec(6, "cr3p", "Complexity by Cr'3 of the representations of B_n", True, False),
}

_UNPRIMED: Dict[str, Callable] = {"cr1": cr1, "cr2": cr2, "cr3": cr3}


def row_labels(spec: TableSpec) -> Tuple[str, ...]:
    prefix = "𝔏" if spec.cumulative else "L"
    labels = (f"{prefix}_TR(n)", f"{prefix}_TR(n.0)", "L_F(n)")
    return labels + (("L_RH(n)",) if spec.with_rh else ())


def _tree_cell(spec: TableSpec, n: int, subset: str) -> int:
    if spec.cumulative:
        return cr_prime(int(spec.criterion[2]), BaseSet.of(tree_sum_set(n, subset)))
    return _UNPRIMED[spec.criterion](tree_sum(n, subset))


def _rh_cell(spec: TableSpec, n: int, rh_live_max_n: int) -> Tuple[Optional[int], str]:
    if n <= rh_live_max_n:
        return _UNPRIMED[spec.criterion[:3]](rh_linear_combination(n)), COMPUTED
    count = reference.rh_reference_count(n)
    if spec.criterion[:3] == "cr1":
        return count, REFERENCE
    # complete labels: every diagram carries all n(n-1)/2 pairs
    return count * n * (n - 1) // 2, REFERENCE


def build_table(table_id: int, n_max: int = 10, n_min: int = 2, rh_live_max_n: Optional[int] = None) -> pd.DataFrame:
    """Long-format table: one row per (row label, n) with value and source."""
    if table_id not in TABLES:
        raise VirlabError(f"unknown table {table_id}; expected one of {sorted(TABLES)}")
    check_order(n_max, 2, config.TABLE_MAX_N, "tables")
    spec = TABLES[table_id]
    rh_live_max_n = config.RH_MAX_N if rh_live_max_n is None else min(rh_live_max_n, config.RH_MAX_N)
    labels = row_labels(spec)

    records: List[Dict[str, object]] = []
    for n in range(n_min, n_max + 1):
        cells = [
            (_tree_cell(spec, n, "full"), COMPUTED),
            (_tree_cell(spec, n, "a-subset"), COMPUTED),
        ]
        frame_value = reference.frame_sum_value(spec.criterion, n)
        cells.append((frame_value, REFERENCE) if frame_value is not None else (None, MISSING))
        if spec.with_rh:
            cells.append(_rh_cell(spec, n, rh_live_max_n))
        for label, (value, source) in zip(labels, cells):
            records.append({"table": table_id, "row": label, "n": n, "value": value, "source": source})
    logging.info("[tables] table %d built for n=%d..%d", table_id, n_min, n_max)
    frame = pd.DataFrame.from_records(records, columns=["table", "row", "n", "value", "source"])
    frame["value"] = frame["value"].astype("Int64")
    return frame


def wide(frame: pd.DataFrame) -> pd.DataFrame:
    """Printed layout: row labels down, n across; reference cells marked with '*'."""

    def cell(record) -> str:
        if record.source == MISSING:
            return MISSING
        mark = "*" if record.source == REFERENCE else ""
        return f"{int(record.value)}{mark}"

    shown = frame.assign(cell=[cell(r) for r in frame.itertuples()])
    order = list(dict.fromkeys(frame["row"]))
    table = shown.pivot(index="row", columns="n", values="cell").reindex(order)
    table.index.name = "n"
    return table


def render(frame: pd.DataFrame, fmt: str) -> str:
    if fmt not in FORMATS:
        raise VirlabError(f"unknown format {fmt!r}; expected one of {FORMATS}")
    if fmt == "csv":
        return frame.to_csv(index=False)
    table_ids = list(dict.fromkeys(frame["table"]))
    if fmt == "json":
        payload = []
        for table_id in table_ids:
            part = frame[frame["table"] == table_id]
            spec = TABLES[int(table_id)]
            rows = []
            for label in dict.fromkeys(part["row"]):
                cells = part[part["row"] == label]
                rows.append(
                    {
                        "label": label,
                        "cells": [
                            {"n": int(c.n), "value": None if pd.isna(c.value) else int(c.value), "source": c.source}
                            for c in cells.itertuples()
                        ],
                    }
                )
            payload.append({"table": int(table_id), "criterion": spec.criterion, "title": spec.title, "rows": rows})
        return json_dumps({"tables": payload, "footnotes": list(FOOTNOTES)})

    blocks = []
    for table_id in table_ids:
        spec = TABLES[int(table_id)]
        part = frame[frame["table"] == table_id]
        blocks.append(f"## Table {spec.table_id}. {spec.title}\n\n{wide(part).to_markdown()}\n")
    blocks.append("\n".join(f"- {note}" for note in FOOTNOTES) + "\n")
    return "\n".join(blocks)


def build_tables(table_ids: List[int], n_max: int = 10, rh_live_max_n: Optional[int] = None) -> pd.DataFrame:
    frames = [build_table(t, n_max, rh_live_max_n=rh_live_max_n) for t in table_ids]
    return pd.concat(frames, ignore_index=True)


def lookup(frame: pd.DataFrame, table_id: int, row: str, n: int) -> Optional[int]:
    """Value of one cell, None when the cell is empty."""
    match = frame[(frame["table"] == table_id) & (frame["row"] == row) & (frame["n"] == n)]
    if match.empty:
        raise VirlabError(f"no cell ({table_id}, {row}, {n})")
    value = match["value"].iloc[0]
    return None if pd.isna(value) else int(value)
