"""Exception hierarchy; every error carries the CLI exit code it maps to."""

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_RANGE = 3


class VirlabError(Exception):
    exit_code = EXIT_USAGE


class GraphError(VirlabError, ValueError):
    """Malformed two-color graph."""


class OverlapError(GraphError):
    pass


class CoverageError(GraphError):
    pass


class VertexRangeError(GraphError):
    pass


class NotBaseProductError(VirlabError, ValueError):
    """Mayer subgraph is disconnected."""

    exit_code = EXIT_RANGE


class SizeError(VirlabError, ValueError):
    exit_code = EXIT_RANGE


class OrderRangeError(VirlabError, ValueError):
    exit_code = EXIT_RANGE


class CriterionDomainError(VirlabError, ValueError):
    exit_code = EXIT_RANGE


class IncomparableError(VirlabError, ValueError):
    exit_code = EXIT_RANGE


class PotentialError(VirlabError, ValueError):
    pass


class UnknownSuiteError(VirlabError, LookupError):
    pass


class ConfigError(VirlabError):
    pass


def check_order(n: int, low: int, high: int, what: str) -> None:
    """Raise OrderRangeError unless low <= n <= high."""
    if not low <= n <= high:
        raise OrderRangeError(f"{what}: n={n} outside supported range {low}..{high}")
