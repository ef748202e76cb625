#!/usr/bin/env python3
"""
Complexity criteria over base linear combinations and base sets.

Cr1 is the length of a combination, Cr2 the total edge count of its labels and
Cr3 the summed N1 complexity (improper domain only). The primed criteria sum
the unprimed ones over the members of a base set. ``compare`` turns two
criterion values into a verdict.
"""
import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, Literal, Optional, Sequence, Tuple, Union

from .errors import CriterionDomainError, IncomparableError, NotBaseProductError, VirlabError
from .graphs import TwoColorGraph, is_complete, is_connected, make_two_color_graph, n1_complexity

logger = logging.getLogger(__name__)

CRITERIA = ("cr1", "cr2", "cr3", "cr1p", "cr2p", "cr3p")
NEGLIGIBLY_MORE = "negligibly-more-complicated"
NEGLIGIBLY_SIMPLER = "negligibly-simpler"


@dataclass(frozen=True)
class Domain:
    """Integration domain: the improper space (R^nu)^(n-1) or a bounded box of side ``side``."""

    kind: Literal["space", "box"] = "space"
    side: Optional[float] = None

    def __post_init__(self):
        if self.kind == "box" and (self.side is None or self.side <= 0):
            raise VirlabError(f"box side must be positive, got {self.side}")
        if self.kind == "space" and self.side is not None:
            raise VirlabError("the improper space takes no side length")

    @classmethod
    def space(cls) -> "Domain":
        return cls("space")

    @classmethod
    def box(cls, side: float) -> "Domain":
        return cls("box", float(side))

    @property
    def is_improper(self) -> bool:
        return self.kind == "space"

    def describe(self, n: int) -> str:
        return f"improper-space({n})" if self.is_improper else f"bounded-box({self.side:g}, {n})"


@dataclass(frozen=True)
class BaseLinearCombination:
    """Domain plus (graph-label, exact coefficient) entries, all of one order n."""

    n: int
    domain: Domain
    entries: Tuple[Tuple[TwoColorGraph, Fraction], ...]

    def __post_init__(self):
        if not self.entries:
            raise VirlabError("a base linear combination needs at least one entry")
        seen = set()
        for label, _ in self.entries:
            if label.n != self.n:
                raise VirlabError(f"label of order {label.n} in a combination of order {self.n}")
            if not is_connected(label, "mayer-only"):
                raise NotBaseProductError(f"label {label.to_json()} is not a base product")
            if label in seen:
                raise VirlabError(f"duplicate label {label.to_json()}")
            seen.add(label)

    @classmethod
    def build(cls, n: int, domain: Domain, entries: Iterable[Tuple[TwoColorGraph, object]]) -> "BaseLinearCombination":
        return cls(n=n, domain=domain, entries=tuple((g, Fraction(c)) for g, c in entries))

    @property
    def labels(self) -> FrozenSet[TwoColorGraph]:
        return frozenset(label for label, _ in self.entries)

    def as_combination(self) -> "BaseLinearCombination":
        return self


@dataclass(frozen=True)
class ReferenceCombination:
    """Complete combination known only through its published length."""

    n: int
    domain: Domain
    length: int
    source: str = ""

    def as_combination(self) -> "ReferenceCombination":
        return self


Combination = Union[BaseLinearCombination, ReferenceCombination]


@dataclass(frozen=True)
class BaseSet:
    """Members share one conjugate: every domain improper, or every domain a box of one side."""

    members: Tuple[Combination, ...]

    def __post_init__(self):
        if not self.members:
            raise VirlabError("a base set needs at least one member")
        domains = {m.domain for m in self.members}
        if len(domains) != 1:
            raise IncomparableError(f"members of a base set must share one conjugate domain, got {sorted(map(str, domains))}")

    @classmethod
    def of(cls, members: Iterable[object]) -> "BaseSet":
        return cls(members=tuple(_resolve(m) for m in members))

    @property
    def order(self) -> int:
        return max(m.n for m in self.members)

    @property
    def conjugate(self) -> Domain:
        return self.members[0].domain

    @property
    def labels(self) -> FrozenSet[TwoColorGraph]:
        out = set()
        for m in self.members:
            out.update(getattr(m, "labels", ()))
        return frozenset(out)


class Verdict(str, Enum):
    MORE_COMPLICATED = "considerably-more-complicated"
    SIMPLER = "considerably-simpler"
    EQUAL = "approximately-equal"

    def flipped(self) -> "Verdict":
        return {Verdict.MORE_COMPLICATED: Verdict.SIMPLER, Verdict.SIMPLER: Verdict.MORE_COMPLICATED}.get(self, self)


@dataclass(frozen=True)
class Comparison:
    """Verdict of the first operand against the second."""

    criterion: str
    verdict: Verdict
    value_a: int
    value_b: int
    note: Optional[str] = None

    def to_dict(self) -> Dict[str, object]:
        return {
            "criterion": self.criterion,
            "verdict": self.verdict.value,
            "value_a": self.value_a,
            "value_b": self.value_b,
            "note": self.note,
        }


def _resolve(x: object) -> Union[Combination, BaseSet]:
    if isinstance(x, (BaseLinearCombination, ReferenceCombination, BaseSet)):
        return x
    if hasattr(x, "as_combination"):
        return x.as_combination()
    raise VirlabError(f"cannot evaluate criteria on {type(x).__name__}")


# --- CRITERIA ---
def cr1(L: object) -> int:
    L = _resolve(L)
    if isinstance(L, ReferenceCombination):
        return L.length
    return len(L.entries)


def cr2(L: object) -> int:
    L = _resolve(L)
    if isinstance(L, ReferenceCombination):
        return L.length * L.n * (L.n - 1) // 2
    return sum(label.edge_count for label, _ in L.entries)


def cr3(L: object) -> int:
    L = _resolve(L)
    if not L.domain.is_improper:
        raise CriterionDomainError(f"Cr3 is defined on improper integrals only, got {L.domain.describe(L.n)}")
    if isinstance(L, ReferenceCombination):
        raise CriterionDomainError("Cr3 needs the graph-labels, which a reference combination does not carry")
    return sum(n1_complexity(label) for label, _ in L.entries)


_UNPRIMED = {1: cr1, 2: cr2, 3: cr3}


def criterion_index(criterion: str) -> int:
    if criterion not in CRITERIA:
        raise VirlabError(f"unknown criterion {criterion!r}; expected one of {CRITERIA}")
    return int(criterion[2])


def cr_prime(i: int, S: Union[BaseSet, Sequence[object]]) -> int:
    """Sum of Cr_i over the members of a base set."""
    if not isinstance(S, BaseSet):
        S = BaseSet.of(S)
    return sum(_UNPRIMED[i](m) for m in S.members)


def criterion_value(x: object, criterion: str) -> int:
    i = criterion_index(criterion)
    x = _resolve(x)
    if isinstance(x, BaseSet):
        return cr_prime(i, x)
    return _UNPRIMED[i](x)


# --- COMPLETENESS ---
def is_complete_combination(L: object) -> bool:
    L = _resolve(L)
    if isinstance(L, ReferenceCombination):
        return True
    return all(is_complete(label) for label, _ in L.entries)


# --- COMPARABILITY ---
def is_comparable(a: object, b: object) -> bool:
    a, b = _resolve(a), _resolve(b)
    if isinstance(a, BaseSet) and isinstance(b, BaseSet):
        return a.order == b.order and a.conjugate == b.conjugate
    if isinstance(b, BaseSet):
        a, b = b, a
    if isinstance(a, BaseSet):
        if a.order != b.n:
            return False
        return all(m.domain == b.domain for m in a.members if m.n == b.n)
    return a.n == b.n and a.domain == b.domain


def _labels(x: Union[Combination, BaseSet]) -> FrozenSet[TwoColorGraph]:
    return getattr(x, "labels", frozenset())


def compare(a: object, b: object, criterion: str) -> Comparison:
    """Verdict of ``a`` against ``b`` under ``criterion``.

    Equal values are annotated as negligibly different when one operand's
    labels strictly contain the other's.

    Raises:
        IncomparableError: orders or domains differ.
        CriterionDomainError: the criterion is undefined on an operand.
    """
    a, b = _resolve(a), _resolve(b)
    if not is_comparable(a, b):
        raise IncomparableError("operands differ in order or integration domain")
    value_a = criterion_value(a, criterion)
    value_b = criterion_value(b, criterion)

    note = None
    if value_a > value_b:
        verdict = Verdict.MORE_COMPLICATED
    elif value_a < value_b:
        verdict = Verdict.SIMPLER
    else:
        verdict = Verdict.EQUAL
        labels_a, labels_b = _labels(a), _labels(b)
        if labels_a and labels_b:
            if labels_a > labels_b:
                note = NEGLIGIBLY_MORE
            elif labels_a < labels_b:
                note = NEGLIGIBLY_SIMPLER
    logger.debug("[criteria] %s: %d vs %d -> %s", criterion, value_a, value_b, verdict.value)
    return Comparison(criterion=criterion, verdict=verdict, value_a=value_a, value_b=value_b, note=note)


def improper_order3_combinations() -> Tuple[BaseLinearCombination, BaseLinearCombination]:
    """The order-3 pair (L, L1): L holds the star with one Boltzmann edge, L1 adds the bare path."""
    path = make_two_color_graph(3, [(1, 2), (2, 3)])
    star = make_two_color_graph(3, [(1, 2), (1, 3)], [(2, 3)])
    L = BaseLinearCombination.build(3, Domain.space(), [(star, 1)])
    L1 = BaseLinearCombination.build(3, Domain.space(), [(path, 1), (star, 1)])
    return L, L1
