#!/usr/bin/env python3
"""
Verification suites bundling the exact oracles of the other modules.
"""
import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional

import sympy

from config import config

from . import reference, reports, series
from .errors import UnknownSuiteError
from .ree_hoover import enumerate_rh_diagrams, rh_expansion_oracle
from .trees import class_consistency_oracle, partition_oracle

SUITES = ("tables", "partition", "rh-expansion", "recurrence", "routes", "bounds")
B_ROUTE_SUM_LIMIT = 2430


def _plain(value: object) -> object:
    """sympy results as ints or strings so reports serialize to JSON."""
    if isinstance(value, sympy.Basic):
        return int(value) if value.is_Integer else str(value)
    return value


@dataclass
class Check:
    name: str
    expected: object
    actual: object

    @property
    def passed(self) -> bool:
        return self.expected == self.actual

    def to_dict(self) -> Dict[str, object]:
        return {"name": self.name, "expected": self.expected, "actual": self.actual, "passed": self.passed}


@dataclass
class SuiteReport:
    suite: str
    checks: List[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> List[Check]:
        return [c for c in self.checks if not c.passed]

    def add(self, name: str, expected: object, actual: object) -> None:
        self.checks.append(Check(name, _plain(expected), _plain(actual)))

    def to_dict(self) -> Dict[str, object]:
        return {
            "suite": self.suite,
            "passed": self.passed,
            "checks": len(self.checks),
            "mismatches": len(self.failures),
            "results": [c.to_dict() for c in self.checks],
        }


def _symbols(prefix: str, n: int) -> List[sympy.Symbol]:
    return list(sympy.symbols(f"{prefix}2:{n + 1}"))


# --- SUITES ---
def verify_tables(n_max: int = 10, rh_live_max_n: Optional[int] = None) -> SuiteReport:
    report = SuiteReport("tables")
    frame = reports.build_tables(sorted(reports.TABLES), n_max, rh_live_max_n)
    for table_id, rows in reference.PUBLISHED_TABLES.items():
        for label, cells in rows.items():
            for n, expected in cells.items():
                if n > n_max:
                    continue
                report.add(f"table {table_id} {label} n={n}", expected, reports.lookup(frame, table_id, label, n))
    return report


def verify_partition(n_max: int = 5) -> SuiteReport:
    report = SuiteReport("partition")
    for n in range(2, n_max + 1):
        cover = partition_oracle(n)
        report.add(f"n={n} connected graphs covered once", cover["connected"], cover["covered"])
        report.add(f"n={n} stray graphs", 0, cover["strays"])
        classes = class_consistency_oracle(n)
        report.add(f"n={n} class sizes", 0, classes["size_mismatches"])
        report.add(f"n={n} completed labels", 0, classes["label_mismatches"])
        report.add(f"n={n} classes found", 0, classes["unknown_classes"] + classes["missing_classes"])
    return report


def verify_rh_expansion(n_max: int = 5, count_max_n: Optional[int] = None) -> SuiteReport:
    report = SuiteReport("rh-expansion")
    for n in range(2, n_max + 1):
        report.add(f"n={n} block-sum monomials", 0, rh_expansion_oracle(n)["mismatches"])
    for n in range(2, (count_max_n or config.RH_MAX_N) + 1):
        report.add(f"n={n} diagram count", reference.rh_reference_count(n), len(enumerate_rh_diagrams(n)))
    return report


def verify_recurrence(n_max: int = 5) -> SuiteReport:
    report = SuiteReport("recurrence")
    a = _symbols("a", n_max)
    b = series.b_from_a(a, n_max)
    for n in range(2, n_max + 1):
        residual = sympy.expand(series.ab_recurrence_residual(a, b, n))
        report.add(f"n={n} residual of b from a", 0, residual)
    back = series.a_from_b(b, n_max)
    report.add("a recovered from b", [str(x) for x in a], [str(sympy.expand(x)) for x in back])
    return report


def verify_routes(n_max: int = 5) -> SuiteReport:
    report = SuiteReport("routes")
    a = _symbols("a", n_max)
    b_sym = _symbols("b", n_max)
    b = series.b_from_a(a, n_max)
    for n in range(2, n_max + 1):
        via_a = series.a_to_B(a, n)
        via_b = series.b_to_B(b, n)
        report.add(f"n={n} a-route minus b-route", 0, sympy.expand(via_a - via_b))
        beta = series.beta_mu(b_sym, n - 1)
        report.add(f"n={n} Mayer formula vs beta", 0, sympy.expand(series.b_to_B(b_sym, n) + sympy.Rational(n - 1, n) * beta))
    b2, b3 = b_sym[0], b_sym[1]
    report.add("B_3 in b", 0, sympy.expand(series.b_to_B(b_sym, 3) - (4 * b2**2 - 2 * b3)))
    return report


def verify_bounds(n_max: int = 10) -> SuiteReport:
    report = SuiteReport("bounds")
    for n in range(2, n_max + 1):
        a_ops = series.measured_ops("a-route", n).total
        report.add(f"n={n} a-route ops within bound", True, a_ops <= series.op_bound("a-route", n))
        b_counter = series.measured_ops("b-route", n)
        report.add(f"n={n} b-route ops within bound", True, b_counter.total <= series.op_bound("b-route", n))
        report.add(f"n={n} b-route sum below {B_ROUTE_SUM_LIMIT}", True, b_counter.stages["mayer-sum"] <= B_ROUTE_SUM_LIMIT)
    return report


_RUNNERS: Dict[str, Callable[[], SuiteReport]] = {
    "tables": verify_tables,
    "partition": verify_partition,
    "rh-expansion": verify_rh_expansion,
    "recurrence": verify_recurrence,
    "routes": verify_routes,
    "bounds": verify_bounds,
}


def run_suite(suite: str) -> SuiteReport:
    if suite not in _RUNNERS:
        raise UnknownSuiteError(f"unknown suite {suite!r}; expected one of {SUITES}")
    report = _RUNNERS[suite]()
    logging.info("[verify] %s: %d checks, %d mismatches", suite, len(report.checks), len(report.failures))
    return report
