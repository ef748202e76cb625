#!/usr/bin/env python3
"""
Command-line surface of the workbench.

Every command builds its RunConfig from the config layers plus its own flags,
logs to stderr and prints its result (CSV, JSON or markdown) to stdout or to
``--out``. Library errors map to exit codes: 1 failed verification, 2 usage,
3 range or domain.
"""
import logging
import sys
from contextlib import contextmanager
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, Iterator, List, Optional

import pandas as pd
import typer
from colorama import Fore, Style

from config import config
from utils.utils import json_dumps, setup_logging, strip_ansi_codes, text_exporter

from . import reference, reports, series, verify
from .criteria import CRITERIA, BaseSet, Domain, compare as compare_operands
from .errors import EXIT_VERIFY_FAILED, VirlabError
from .estimator import SamplingPlan, Stopwatch, estimate_a, estimate_b, estimate_B, write_manifest
from .potentials import POTENTIAL_KINDS, PairPotential, second_virial_analytic
from .ree_hoover import enumerate_rh_diagrams, rh_combination
from .trees import cost_accounting, count_tr, count_tr0, enumerate_classes, enumerate_tr, enumerate_tr0, multiplicity, tree_sum, tree_sum_set

app = typer.Typer(help="Virial coefficient representation workbench.", no_args_is_help=True, add_completion=False)
trees_app = typer.Typer(help="Tree-frame classes of b_n and a_n.", no_args_is_help=True)
rh_app = typer.Typer(help="Ree-Hoover diagrams.", no_args_is_help=True)
app.add_typer(trees_app, name="trees")
app.add_typer(rh_app, name="rh")

SUBSETS = {"full": "full", "a": "a-subset"}
ROUTES = {"b": "b-route", "a": "a-route"}
OPERANDS = ("b", "a", "rh")
OPERAND_SUBSETS = {"b": "full", "a": "a-subset"}

# --- SHARED OPTIONS ---
ConfigOption = typer.Option(None, "--config", help="key=value run-config file.")
FormatOption = typer.Option(None, "--format", help="csv, json or md.")
OutOption = typer.Option(None, "--out", help="Write the output here instead of stdout.")


def _choice(value: str, allowed, flag: str) -> str:
    if value not in allowed:
        raise typer.BadParameter(f"expected one of {', '.join(allowed)}, got {value!r}", param_hint=flag)
    return value


@contextmanager
def _guarded() -> Iterator[None]:
    """Map library errors to their exit codes."""
    try:
        yield
    except VirlabError as e:
        logging.error("[cli] %s", e)
        typer.echo(f"{Fore.RED}error: {e}{Style.RESET_ALL}", err=True)
        raise typer.Exit(code=e.exit_code)


def _setup(config_path: Optional[Path], **flags: Any) -> config.RunConfig:
    with _guarded():
        run = config.load_run_config(flags, config_path)
    setup_logging(run.log_level, data_dir=Path(run.data_dir), stream=sys.stderr)
    logging.debug("[cli] effective configuration: %s", run.to_dict())
    return run


def _emit(text: str, out: Optional[Path]) -> None:
    if out is None:
        typer.echo(strip_ansi_codes(text), nl=False)
        return
    path = text_exporter(text, out)
    typer.echo(f"{Fore.CYAN}written to {path}{Style.RESET_ALL}", err=True)


def _records(records: List[Dict[str, Any]], fmt: str) -> str:
    _choice(fmt, reports.FORMATS, "--format")
    if fmt == "json":
        return json_dumps(records)
    frame = pd.DataFrame.from_records([{k: json_dumps(v).strip() if isinstance(v, (list, dict)) else v for k, v in r.items()} for r in records])
    if fmt == "csv":
        return frame.to_csv(index=False)
    return frame.to_markdown(index=False) + "\n"


# --- TABLES ---
@app.command()
def tables(
    table: Optional[List[int]] = typer.Option(None, "--table", help="Table id 1-6; repeatable, all by default."),
    n_max: int = typer.Option(10, "--n-max"),
    rh_live_max_n: Optional[int] = typer.Option(None, "--rh-live-max-n", help="Enumerate RH diagrams up to this n, reference counts above."),
    fmt: Optional[str] = FormatOption,
    config_path: Optional[Path] = ConfigOption,
    out: Optional[Path] = OutOption,
):
    """Emit the complexity tables."""
    run = _setup(config_path, output_format=fmt)
    with _guarded():
        frame = reports.build_tables(table or sorted(reports.TABLES), n_max, rh_live_max_n)
        _emit(reports.render(frame, run.output_format), out)


# --- TREES ---
@trees_app.command("list")
def trees_list(
    n: int = typer.Option(..., "--n"),
    subset: str = typer.Option("full", "--subset", help="full or a."),
    fmt: Optional[str] = FormatOption,
    config_path: Optional[Path] = ConfigOption,
    out: Optional[Path] = OutOption,
):
    """One record per tree-frame class."""
    run = _setup(config_path, output_format=fmt)
    with _guarded():
        classes = enumerate_classes(n, SUBSETS[_choice(subset, SUBSETS, "--subset")])
        _emit(_records([t.to_json() for t in classes], run.output_format), out)


@trees_app.command("count")
def trees_count(
    n_max: int = typer.Option(10, "--n-max"),
    fmt: Optional[str] = FormatOption,
    config_path: Optional[Path] = ConfigOption,
    out: Optional[Path] = OutOption,
):
    """Closed-form class counts next to the enumerated ones."""
    run = _setup(config_path, output_format=fmt)
    with _guarded():
        records = []
        for n in range(2, n_max + 1):
            full, a_subset = enumerate_tr(n), enumerate_tr0(n)
            records.append(
                {
                    "n": n,
                    "count_tr": count_tr(n),
                    "enumerated_tr": len(full),
                    "count_tr0": count_tr0(n),
                    "enumerated_tr0": len(a_subset),
                    "labeled_trees": sum(multiplicity(t) for t in full),
                    "cayley": n ** (n - 2),
                }
            )
        _emit(_records(records, run.output_format), out)


# --- REE-HOOVER ---
@rh_app.command("count")
def rh_count(
    n: int = typer.Option(..., "--n"),
    config_path: Optional[Path] = ConfigOption,
):
    """Number of nonisomorphic diagrams with nonzero star content."""
    _setup(config_path)
    with _guarded():
        count = len(enumerate_rh_diagrams(n)) if n <= config.RH_MAX_N else reference.rh_reference_count(n)
        typer.echo(str(count))


@rh_app.command("diagrams")
def rh_diagrams(
    n: int = typer.Option(..., "--n"),
    fmt: Optional[str] = FormatOption,
    config_path: Optional[Path] = ConfigOption,
    out: Optional[Path] = OutOption,
):
    """f-edge sets, star contents and class sizes."""
    run = _setup(config_path, output_format=fmt)
    with _guarded():
        _emit(_records([d.to_json() for d in enumerate_rh_diagrams(n)], run.output_format), out)


# --- COMPARE ---
def _operand(kind: str, n: int, primed: bool, domain: Domain):
    if kind == "rh":
        return rh_combination(n, domain.side)
    subset = OPERAND_SUBSETS[kind]
    if primed:
        return BaseSet.of(tree_sum_set(n, subset, domain))
    return tree_sum(n, subset, domain)


def _route_cost(n: int, subset: str, primed: bool) -> int:
    orders = range(2, n + 1) if primed else (n,)
    return sum(c["pair_evals"] for k in orders for c in cost_accounting(k, subset))


@app.command()
def compare(
    n: int = typer.Option(..., "--n"),
    criterion: str = typer.Option("cr1p", "--criterion"),
    left: str = typer.Option("b", "--left", help="b, a or rh."),
    right: str = typer.Option("rh", "--right", help="b, a or rh."),
    box_side: Optional[float] = typer.Option(None, "--box-side", help="Integrate over a box of this side; required side for rh, 1 by default."),
    config_path: Optional[Path] = ConfigOption,
    out: Optional[Path] = OutOption,
):
    """Verdict of one representation against another."""
    _setup(config_path)
    _choice(criterion, CRITERIA, "--criterion")
    _choice(left, OPERANDS, "--left")
    _choice(right, OPERANDS, "--right")
    with _guarded():
        if box_side is None and "rh" in (left, right):
            box_side = 1.0
        domain = Domain.space() if box_side is None else Domain.box(box_side)
        primed = criterion.endswith("p")
        result = compare_operands(_operand(left, n, primed, domain), _operand(right, n, primed, domain), criterion)
        payload: Dict[str, Any] = {"n": n, "left": left, "right": right, "domain": domain.describe(n), **result.to_dict()}
        if {left, right} == {"b", "a"}:
            cost = {kind: _route_cost(n, OPERAND_SUBSETS[kind], primed) for kind in (left, right)}
            payload["pair_evals"] = cost
            payload["pair_evals_ratio"] = Fraction(cost[left], cost[right])
        _emit(json_dumps(payload), out)


# --- ESTIMATE ---
def _reference_ratio(quantity: str, n: int, potential: PairPotential, mean: float) -> Optional[str]:
    if quantity != "B" or potential.kind != "hard-sphere" or potential.dim != 3 or n not in reference.HARD_SPHERE_RATIOS:
        return None
    ratio = mean / second_virial_analytic(potential) ** (n - 1)
    return f"B_{n}/B_2^{n - 1} = {ratio:.6g} (reference {reference.HARD_SPHERE_RATIOS[n].value})"


@app.command()
def estimate(
    quantity: str = typer.Option("B", "--quantity", help="b, a or B."),
    n: int = typer.Option(..., "--n"),
    route: str = typer.Option("b", "--route", help="b or a (B only)."),
    potential: str = typer.Option("hard-sphere", "--potential"),
    dim: int = typer.Option(3, "--dim"),
    sigma: float = typer.Option(1.0, "--sigma"),
    lam: float = typer.Option(1.5, "--lambda", help="Square-well range in units of sigma."),
    beta_eps: float = typer.Option(1.0, "--beta-eps", help="Square-well depth in units of kT."),
    samples: Optional[int] = typer.Option(None, "--samples"),
    seed: Optional[int] = typer.Option(None, "--seed"),
    workers: Optional[int] = typer.Option(None, "--workers"),
    config_path: Optional[Path] = ConfigOption,
    out: Optional[Path] = typer.Option(None, "--out", help="Manifest directory, data_dir by default."),
):
    """Monte Carlo estimate of b_n, a_n or B_n; writes a run manifest."""
    run = _setup(config_path, samples=samples, seed=seed, workers=workers)
    _choice(quantity, ("b", "a", "B"), "--quantity")
    _choice(route, ROUTES, "--route")
    _choice(potential, POTENTIAL_KINDS, "--potential")
    with _guarded():
        pair = PairPotential(kind=potential, sigma=sigma, dim=dim, lam=lam, beta_eps=beta_eps)
        plan = SamplingPlan.from_run_config(run)
        with Stopwatch() as clock:
            if quantity == "B":
                result = estimate_B(n, ROUTES[route], pair, run.samples, run.seed, plan)
            elif quantity == "b":
                result = estimate_b(n, pair, run.samples, run.seed, plan)
            else:
                result = estimate_a(n, pair, run.samples, run.seed, plan)
        path = write_manifest(result, pair, run.to_dict(), clock.elapsed, out or Path(run.data_dir))

    label = f"{result.quantity}_{n}" + (f" via {result.route}" if result.route else "")
    typer.echo(f"{Fore.CYAN}{label}{Style.RESET_ALL}: {result.mean:.8g} +/- {result.stderr:.2g}", err=True)
    typer.echo(f"samples={result.samples} pair_evals={result.pair_evals} ops={result.ops} wall={clock.elapsed:.2f}s", err=True)
    note = _reference_ratio(quantity, n, pair, result.mean)
    if note:
        typer.echo(note, err=True)
    typer.echo(json_dumps({**result.to_dict(), "manifest": str(path)}), nl=False)


# --- BOUNDS ---
@app.command()
def bounds(
    n: Optional[int] = typer.Option(None, "--n", help="Single order; 2..n-max otherwise."),
    n_max: int = typer.Option(10, "--n-max"),
    fmt: Optional[str] = FormatOption,
    config_path: Optional[Path] = ConfigOption,
    out: Optional[Path] = OutOption,
):
    """Operation bounds next to the measured operation counts."""
    run = _setup(config_path, output_format=fmt)
    with _guarded():
        orders = [n] if n is not None else list(range(2, n_max + 1))
        records = []
        for k in orders:
            if k < 2 or k > series.TABLE_MAX:
                raise VirlabError(f"bounds: n={k} outside 2..{series.TABLE_MAX}")
            for route in ROUTES.values():
                counter = series.measured_ops(route, k)
                records.append({"n": k, "route": route, "bound": series.op_bound(route, k), "measured": counter.total, "stages": counter.stages})
        _emit(_records(records, run.output_format), out)


# --- VERIFY ---
@app.command("verify")
def verify_command(
    suite: str = typer.Option(..., "--suite", help=", ".join(verify.SUITES)),
    config_path: Optional[Path] = ConfigOption,
    out: Optional[Path] = OutOption,
):
    """Run a verification suite; exit 1 on any mismatch."""
    _setup(config_path)
    with _guarded():
        report = verify.run_suite(suite)
    _emit(json_dumps(report.to_dict()), out)
    colour = Fore.GREEN if report.passed else Fore.RED
    status = "pass" if report.passed else "FAIL"
    typer.echo(f"{colour}{suite}: {status}, {len(report.checks)} checks, {len(report.failures)} mismatches{Style.RESET_ALL}", err=True)
    for check in report.failures:
        typer.echo(f"  {check.name}: expected {check.expected}, got {check.actual}", err=True)
    if not report.passed:
        raise typer.Exit(code=EXIT_VERIFY_FAILED)
