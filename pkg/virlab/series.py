#!/usr/bin/env python3
"""
Exact polynomial machinery linking the coefficient families b_n, a_n and B_n.

Coefficient sequences start at order 2: ``b[0]`` is b_2, ``b[1]`` is b_3 and
so on, with b_1 = a_1 = 1 implied. Only multiplication, division by integers
and addition are applied to the values, so the functions accept ints,
Fractions, sympy expressions and gvar variables alike.

Every routine takes an optional ``OpCounter`` recording multiplications,
divisions, additions and factorial-table lookups.
"""
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Any, Dict, Iterator, List, Literal, Optional, Sequence, Tuple

from .errors import VirlabError

TABLE_MAX = 64
FACTORIALS: Tuple[int, ...] = tuple(math.factorial(k) for k in range(2 * TABLE_MAX + 1))

Route = Literal["b-route", "a-route"]


@dataclass
class OpCounter:
    mul: int = 0
    div: int = 0
    add: int = 0
    lookup: int = 0
    stages: Dict[str, int] = field(default_factory=dict)

    @property
    def total(self) -> int:
        return self.mul + self.div + self.add + self.lookup

    def mark(self, stage: str) -> None:
        """Record the running total under ``stage``."""
        self.stages[stage] = self.total - sum(self.stages.values())

    def to_dict(self) -> Dict[str, object]:
        return {"mul": self.mul, "div": self.div, "add": self.add, "lookup": self.lookup, "total": self.total, "stages": dict(self.stages)}


def _factorial(k: int, counter: Optional[OpCounter]) -> int:
    if counter is not None:
        counter.lookup += 1
    return FACTORIALS[k]


def _mul(a: Any, b: Any, counter: Optional[OpCounter]) -> Any:
    if counter is not None:
        counter.mul += 1
    return a * b


def _div(a: Any, k: int, counter: Optional[OpCounter]) -> Any:
    if counter is not None:
        counter.div += 1
    return Fraction(a, k) if isinstance(a, (int, Fraction)) else a / k


def _accumulate(total: Any, term: Any, counter: Optional[OpCounter]) -> Any:
    if total is None:
        return term
    if counter is not None:
        counter.add += 1
    return total + term


# --- M(n) VECTORS ---
@dataclass(frozen=True)
class MVector:
    """Multiplicities (m_1..m_{n-1}) of a partition of n-1."""

    n: int
    m: Tuple[int, ...]

    def __post_init__(self):
        if len(self.m) != self.n - 1 or any(x < 0 for x in self.m):
            raise VirlabError(f"{self.m} is not a vector of length {self.n - 1}")
        if sum(j * x for j, x in enumerate(self.m, start=1)) != self.n - 1:
            raise VirlabError(f"{self.m} does not partition {self.n - 1}")

    @property
    def norm(self) -> int:
        return sum(self.m)


def _vectors(remaining: int, j: int, length: int) -> Iterator[Tuple[int, ...]]:
    if j > length:
        if remaining == 0:
            yield ()
        return
    for count in range(remaining // j, -1, -1):
        for rest in _vectors(remaining - count * j, j + 1, length):
            yield (count,) + rest


@lru_cache(maxsize=None)
def enumerate_m_vectors(n: int) -> Tuple[MVector, ...]:
    """All m with sum j*m_j = n-1, m_1 descending first."""
    if n < 2:
        raise VirlabError(f"M(n) needs n >= 2, got {n}")
    return tuple(MVector(n, m) for m in _vectors(n - 1, 1, n - 1))


@lru_cache(maxsize=TABLE_MAX + 1)
def partition_count(k: int) -> int:
    """p(k), the number of integer partitions of k."""
    if k < 0:
        raise VirlabError(f"p(k) needs k >= 0, got {k}")
    ways = [1] + [0] * k
    for part in range(1, k + 1):
        for total in range(part, k + 1):
            ways[total] += ways[total - part]
    return ways[k]


# --- PRODUCTS ---
def q_product(x: Sequence[Any], y: Optional[Sequence[Any]], m: MVector, counter: Optional[OpCounter] = None) -> Any:
    """Product over j of (y_j x_j)^{m_j} / m_j!.

    ``y=None`` stands for all y_j = 1, which saves one multiplication per factor.
    """
    result = None
    for j, power in enumerate(m.m, start=1):
        if power == 0:
            continue
        base = x[j - 1] if y is None else _mul(y[j - 1], x[j - 1], counter)
        term = base
        for _ in range(power - 1):
            term = _mul(term, base, counter)
        if power > 1:
            term = _div(term, _factorial(power, counter), counter)
        result = term if result is None else _mul(result, term, counter)
    return 1 if result is None else result


def _at(seq: Sequence[Any], k: int, what: str) -> Any:
    """Value of order k >= 2 from a sequence starting at order 2."""
    if k - 2 >= len(seq):
        raise VirlabError(f"{what} must supply orders 2..{k}, got {len(seq)} values")
    return seq[k - 2]


def _mayer_x(b: Sequence[Any], n: int) -> Tuple[List[Any], List[int]]:
    return [-_at(b, j + 1, "b") for j in range(1, n)], [j + 1 for j in range(1, n)]


# --- b-ROUTE ---
def beta_mu(b: Sequence[Any], mu: int, counter: Optional[OpCounter] = None) -> Any:
    """beta_mu = -(1/mu!) sum over M(mu+1) of (mu+|m|-1)! Q(-b_{j+1}; j+1)."""
    x, y = _mayer_x(b, mu + 1)
    total = None
    for m in enumerate_m_vectors(mu + 1):
        term = _mul(_factorial(mu + m.norm - 1, counter), q_product(x, y, m, counter), counter)
        total = _accumulate(total, term, counter)
    return -_div(total, _factorial(mu, counter), counter)


def b_to_B(b: Sequence[Any], n: int, counter: Optional[OpCounter] = None) -> Any:
    """Mayer formula: B_n = ((n-1)/n!) sum over M(n) of (n+|m|-2)! Q(-b_{j+1}; j+1)."""
    x, y = _mayer_x(b, n)
    total = None
    for m in enumerate_m_vectors(n):
        term = _mul(_factorial(n + m.norm - 2, counter), q_product(x, y, m, counter), counter)
        total = _accumulate(total, term, counter)
    if counter is not None:
        counter.mark("mayer-sum")
    return _div(_mul(total, n - 1, counter), _factorial(n, counter), counter)


# --- a-ROUTE ---
def e_coeffs(a: Sequence[Any], n: int, counter: Optional[OpCounter] = None) -> List[Any]:
    """e_1..e_n with e_mu = (1/mu) sum over M(mu) of |m|! Q(a_{j+1}; j+1)."""
    out: List[Any] = [1]
    for mu in range(2, n + 1):
        x = [_at(a, j + 1, "a") for j in range(1, mu)]
        y = [j + 1 for j in range(1, mu)]
        total = None
        for m in enumerate_m_vectors(mu):
            term = _mul(_factorial(m.norm, counter), q_product(x, y, m, counter), counter)
            total = _accumulate(total, term, counter)
        out.append(_div(total, mu, counter))
    return out


def tau_coeffs(a: Sequence[Any], n: int, counter: Optional[OpCounter] = None) -> List[Any]:
    """tau_1..tau_n with tau_mu = (mu-1)! sum over M(mu) of Q(a_{j+1}; -(j+1)) / (mu-|m|)!."""
    out: List[Any] = [1]
    for mu in range(2, n + 1):
        x = [_at(a, j + 1, "a") for j in range(1, mu)]
        y = [-(j + 1) for j in range(1, mu)]
        total = None
        for m in enumerate_m_vectors(mu):
            term = _div(q_product(x, y, m, counter), _factorial(mu - m.norm, counter), counter)
            total = _accumulate(total, term, counter)
        out.append(_mul(_factorial(mu - 1, counter), total, counter))
    return out


def a_to_B(a: Sequence[Any], n: int, counter: Optional[OpCounter] = None) -> Any:
    """B_n from a_2..a_n: sum over M(n+1) of |m|! e_{|m|} Q(tau_j; 1)."""
    e = e_coeffs(a, n, counter)
    if counter is not None:
        counter.mark("e")
    tau = tau_coeffs(a, n, counter)
    if counter is not None:
        counter.mark("tau")
    total = None
    for m in enumerate_m_vectors(n + 1):
        weight = _mul(_factorial(m.norm, counter), e[m.norm - 1], counter)
        term = _mul(weight, q_product(tau, None, m, counter), counter)
        total = _accumulate(total, term, counter)
    if counter is not None:
        counter.mark("assembly")
    return total


# --- a <-> b ---
def _with_one(seq: Sequence[Any]) -> List[Any]:
    return [1] + list(seq)


def ab_recurrence_residual(a: Sequence[Any], b: Sequence[Any], n: int) -> Any:
    """n b_n - sum_{q=1..n-1} (q+1) a_{q+1} (n-q) b_{n-q}; zero for consistent inputs."""
    a1, b1 = _with_one(a), _with_one(b)
    if len(a1) < n or len(b1) < n:
        raise VirlabError(f"sequences must supply orders 2..{n}")
    total = n * b1[n - 1]
    for q in range(1, n):
        total -= (q + 1) * a1[q] * (n - q) * b1[n - q - 1]
    return total


def b_from_a(a: Sequence[Any], n: int) -> List[Any]:
    """b_2..b_n solved order by order from the recurrence."""
    a1 = _with_one(a)
    b1: List[Any] = [1]
    for k in range(2, n + 1):
        total = 0
        for q in range(1, k):
            total += (q + 1) * a1[q] * (k - q) * b1[k - q - 1]
        b1.append(_div(total, k, None))
    return b1[1:]


def a_from_b(b: Sequence[Any], n: int) -> List[Any]:
    """a_2..a_n solved order by order from the recurrence."""
    b1 = _with_one(b)
    a1: List[Any] = [1]
    for k in range(2, n + 1):
        rest = 0
        for q in range(1, k - 1):
            rest += (q + 1) * a1[q] * (k - q) * b1[k - q - 1]
        a1.append(b1[k - 1] - _div(rest, k, None))
    return a1[1:]


# --- OPERATION BOUNDS ---
def op_bound(route: Route, n: int) -> int:
    """Upper bound on the arithmetic operations of the polynomial stages.

    a-route: 7 p(n-1) n (n-1) + 5 n p(n). b-route: 5|m| + 3 per vector of M(n)
    plus the three operations of the prefactor.
    """
    if n < 2:
        raise VirlabError(f"op_bound needs n >= 2, got {n}")
    if route == "a-route":
        return 7 * partition_count(n - 1) * n * (n - 1) + 5 * n * partition_count(n)
    if route == "b-route":
        return sum(5 * m.norm + 3 for m in enumerate_m_vectors(n)) + 3
    raise VirlabError(f"unknown route {route!r}")


def measured_ops(route: Route, n: int) -> OpCounter:
    """Run the route on unit inputs and return its operation counter."""
    counter = OpCounter()
    ones = [Fraction(1)] * (n - 1)
    if route == "a-route":
        a_to_B(ones, n, counter)
    else:
        b_to_B(ones, n, counter)
    return counter
