import json
import math

import pytest

from virlab.cli import app


def invoke(runner, env, *args):
    return runner.invoke(app, list(args), env=env)


def test_tables_csv(runner, quiet_env):
    result = invoke(runner, quiet_env, "tables", "--table", "3", "--n-max", "7", "--format", "csv")
    assert result.exit_code == 0, result.output
    lines = result.stdout.splitlines()
    assert lines[0] == "table,row,n,value,source"
    assert "3,L_TR(n),7,940,computed" in lines


def test_tables_markdown_to_file(runner, quiet_env, tmp_path):
    out = tmp_path / "tables.md"
    result = invoke(runner, quiet_env, "tables", "--table", "4", "--n-max", "10", "--rh-live-max-n", "5", "--out", str(out))
    assert result.exit_code == 0, result.output
    text = out.read_text(encoding="utf-8")
    assert text.startswith("## Table 4.")
    assert "17756" in text
    assert "4980756*" in text
    assert "\x1b[" not in text


def test_tables_are_byte_identical(runner, quiet_env):
    args = ("tables", "--table", "2", "--n-max", "8", "--format", "json")
    assert invoke(runner, quiet_env, *args).stdout == invoke(runner, quiet_env, *args).stdout


def test_tables_range_error(runner, quiet_env):
    result = invoke(runner, quiet_env, "tables", "--n-max", "11")
    assert result.exit_code == 3


def test_trees_list(runner, quiet_env):
    result = invoke(runner, quiet_env, "trees", "list", "--n", "4", "--format", "json")
    assert result.exit_code == 0, result.output
    records = json.loads(result.stdout)
    assert len(records) == 5
    assert sum(r["multiplicity"] for r in records) == 16
    assert set(records[0]) == {"height", "layers", "parents", "composition", "multiplicity", "admissible_count"}


def test_trees_list_a_subset(runner, quiet_env):
    result = invoke(runner, quiet_env, "trees", "list", "--n", "6", "--subset", "a", "--format", "json")
    assert len(json.loads(result.stdout)) == 15


def test_trees_bad_subset(runner, quiet_env):
    result = invoke(runner, quiet_env, "trees", "list", "--n", "4", "--subset", "b")
    assert result.exit_code == 2


def test_trees_count(runner, quiet_env):
    result = invoke(runner, quiet_env, "trees", "count", "--n-max", "6", "--format", "json")
    rows = json.loads(result.stdout)
    assert [r["count_tr"] for r in rows] == [1, 2, 5, 14, 44]
    assert all(r["labeled_trees"] == r["cayley"] for r in rows)


def test_rh_count(runner, quiet_env):
    assert invoke(runner, quiet_env, "rh", "count", "--n", "6").stdout.strip() == "23"
    assert invoke(runner, quiet_env, "rh", "count", "--n", "9").stdout.strip() == "81564"


def test_rh_diagrams(runner, quiet_env):
    result = invoke(runner, quiet_env, "rh", "diagrams", "--n", "4", "--format", "json")
    records = json.loads(result.stdout)
    assert [r["star_content"] for r in records] == [1, -2]
    assert set(records[0]) == {"n", "f_edges", "star_content", "class_size"}


def test_compare_set_against_rh(runner, quiet_env):
    result = invoke(runner, quiet_env, "compare", "--n", "5", "--criterion", "cr2p", "--left", "b", "--right", "rh")
    assert result.exit_code == 0, result.output
    payload = json.loads(result.stdout)
    assert payload["verdict"] == "considerably-more-complicated"
    assert (payload["value_a"], payload["value_b"]) == (121, 50)


def test_compare_routes_reports_cost_ratio(runner, quiet_env):
    result = invoke(runner, quiet_env, "compare", "--n", "6", "--criterion", "cr3", "--left", "b", "--right", "a")
    assert result.exit_code == 0, result.output
    payload = json.loads(result.stdout)
    assert (payload["value_a"], payload["value_b"]) == (183, 97)
    # summed pair evaluations per sample equal Cr2 of each tree sum
    assert payload["pair_evals"] == {"b": 403, "a": 172}
    assert payload["pair_evals_ratio"] == "403/172"


def test_compare_route_sets_report_cumulative_cost(runner, quiet_env):
    result = invoke(runner, quiet_env, "compare", "--n", "5", "--criterion", "cr2p", "--left", "a", "--right", "b")
    assert result.exit_code == 0, result.output
    payload = json.loads(result.stdout)
    assert (payload["value_a"], payload["value_b"]) == (57, 121)
    assert payload["pair_evals"] == {"a": 57, "b": 121}
    assert payload["pair_evals_ratio"] == "57/121"


def test_compare_cr3_on_box_is_a_domain_error(runner, quiet_env):
    result = invoke(runner, quiet_env, "compare", "--n", "4", "--criterion", "cr3", "--left", "b", "--right", "rh")
    assert result.exit_code == 3


def test_estimate_b2_writes_manifest(runner, quiet_env, tmp_path):
    out = tmp_path / "runs"
    result = invoke(runner, quiet_env, "estimate", "--quantity", "b", "--n", "2", "--samples", "5000", "--out", str(out))
    assert result.exit_code == 0, result.output
    payload = json.loads(result.stdout)
    assert payload["mean"] == pytest.approx(-2 * math.pi / 3)
    assert payload["stderr"] == 0.0
    manifest = json.loads((out / "manifest_b_n2_direct.json").read_text())
    assert manifest["config"]["samples"] == 5000
    assert manifest["potential"]["kind"] == "hard-sphere"


def test_estimate_defaults_to_data_dir(runner, quiet_env, tmp_path):
    result = invoke(runner, quiet_env, "estimate", "--quantity", "B", "--n", "2", "--route", "a", "--samples", "2000")
    assert result.exit_code == 0, result.output
    assert (tmp_path / "data" / "manifest_B_n2_a-route.json").is_file()


def test_estimate_order_cap(runner, quiet_env):
    result = invoke(runner, quiet_env, "estimate", "--quantity", "B", "--n", "7", "--samples", "100")
    assert result.exit_code == 3


def test_estimate_bad_potential(runner, quiet_env):
    result = invoke(runner, quiet_env, "estimate", "--n", "2", "--dim", "5")
    assert result.exit_code == 2


def test_bounds(runner, quiet_env):
    result = invoke(runner, quiet_env, "bounds", "--n", "10", "--format", "json")
    rows = json.loads(result.stdout)
    a_route = next(r for r in rows if r["route"] == "a-route")
    assert a_route["bound"] == 21000
    assert all(r["measured"] <= r["bound"] for r in rows)


def test_verify_pass(runner, quiet_env):
    result = invoke(runner, quiet_env, "verify", "--suite", "bounds")
    assert result.exit_code == 0, result.output
    payload = json.loads(result.stdout)
    assert payload["passed"] is True
    assert payload["mismatches"] == 0


def test_verify_unknown_suite(runner, quiet_env):
    result = invoke(runner, quiet_env, "verify", "--suite", "everything")
    assert result.exit_code == 2


def test_errors_are_logged_to_the_data_dir(runner, quiet_env, tmp_path):
    invoke(runner, quiet_env, "verify", "--suite", "everything")
    log = tmp_path / "data" / "virlab.log"
    assert "| ERROR | [cli] unknown suite" in log.read_text()


def test_config_file_and_flags(runner, quiet_env, tmp_path):
    config_file = tmp_path / "run.env"
    config_file.write_text("SAMPLES=3000\nSEED=99\n")
    out = tmp_path / "runs"
    result = invoke(runner, quiet_env, "estimate", "--quantity", "b", "--n", "2", "--config", str(config_file), "--seed", "7", "--out", str(out))
    assert result.exit_code == 0, result.output
    manifest = json.loads((out / "manifest_b_n2_direct.json").read_text())
    assert manifest["config"]["samples"] == 3000
    assert manifest["seed"] == 7


def test_missing_config_file(runner, quiet_env, tmp_path):
    result = invoke(runner, quiet_env, "trees", "count", "--n-max", "3", "--config", str(tmp_path / "nope.env"))
    assert result.exit_code == 2
