import json

import pytest

from virlab.errors import OrderRangeError, VirlabError
from virlab.reports import COMPUTED, MISSING, REFERENCE, build_table, build_tables, lookup, render, row_labels, TABLES, wide


@pytest.fixture(scope="module")
def all_tables():
    return build_tables(sorted(TABLES), n_max=10, rh_live_max_n=5)


def test_every_published_cell_matches(all_tables, published_tables):
    mismatches = []
    for table_id, rows in published_tables.items():
        for row, cells in rows.items():
            for n, expected in cells.items():
                actual = lookup(all_tables, table_id, row, n)
                if actual != expected:
                    mismatches.append((table_id, row, n, expected, actual))
    assert mismatches == []


@pytest.mark.parametrize(
    "table_id,row,n,expected",
    [
        (3, "L_TR(n)", 7, 940),
        (6, "𝔏_TR(n.0)", 9, 19834),
        (4, "L_RH(n)", 6, 23),
        (2, "L_TR(n)", 10, 329325),
        (5, "𝔏_TR(n)", 10, 395772),
    ],
)
def test_selected_cells(all_tables, table_id, row, n, expected):
    assert lookup(all_tables, table_id, row, n) == expected


def test_every_cell_has_a_source(all_tables):
    assert set(all_tables["source"]) <= {COMPUTED, REFERENCE, MISSING}
    frame_rows = all_tables[all_tables["row"] == "L_F(n)"]
    assert set(frame_rows["source"]) == {REFERENCE, MISSING}
    rh = all_tables[(all_tables["row"] == "L_RH(n)") & (all_tables["table"] == 1)]
    assert rh[rh["n"] <= 5]["source"].eq(COMPUTED).all()
    assert rh[rh["n"] > 5]["source"].eq(REFERENCE).all()


def test_row_labels():
    assert row_labels(TABLES[1]) == ("L_TR(n)", "L_TR(n.0)", "L_F(n)", "L_RH(n)")
    assert row_labels(TABLES[6]) == ("𝔏_TR(n)", "𝔏_TR(n.0)", "L_F(n)")


def test_wide_layout_marks_reference_cells():
    table = wide(build_table(1, n_max=6, rh_live_max_n=4))
    assert list(table.columns) == [2, 3, 4, 5, 6]
    assert table.loc["L_TR(n)", 6] == "44"
    assert table.loc["L_RH(n)", 6] == "23*"
    assert table.loc["L_F(n)", 6] == MISSING


def test_render_formats():
    frame = build_table(3, n_max=5, rh_live_max_n=4)
    csv = render(frame, "csv")
    assert csv.splitlines()[0] == "table,row,n,value,source"
    payload = json.loads(render(frame, "json"))
    assert payload["tables"][0]["criterion"] == "cr3"
    assert payload["tables"][0]["rows"][0]["cells"][-1] == {"n": 5, "value": 37, "source": "computed"}
    md = render(frame, "md")
    assert md.startswith("## Table 3.")
    assert "L_TR(n.0)" in md


def test_rendering_is_deterministic():
    first = render(build_table(5, n_max=7, rh_live_max_n=4), "json")
    second = render(build_table(5, n_max=7, rh_live_max_n=4), "json")
    assert first == second


def test_errors():
    with pytest.raises(VirlabError):
        build_table(7)
    with pytest.raises(OrderRangeError):
        build_table(1, n_max=11)
    with pytest.raises(VirlabError):
        render(build_table(1, n_max=3, rh_live_max_n=3), "xml")
