#!/usr/bin/env python3
"""
Reference constants: published values that are reported next to the computed
ones but not reproduced by live enumeration.
"""
import math
from dataclasses import dataclass
from types import MappingProxyType
from typing import Mapping, Optional

from .errors import check_order


@dataclass(frozen=True)
class ReferenceValue:
    value: float
    source: str


# Number of nonisomorphic Ree-Hoover diagrams with nonzero star content.
RH_COUNTS: Mapping[int, int] = MappingProxyType(
    {2: 1, 3: 1, 4: 2, 5: 5, 6: 23, 7: 171, 8: 2606, 9: 81564, 10: 4980756}
)
RH_COUNTS_SOURCE = "published Ree-Hoover diagram counts (complexity table 1, row L_RH)"

# Criterion values of the frame-cycle sums of B_n; known only at the orders listed.
FRAME_SUM_VALUES: Mapping[str, Mapping[int, int]] = MappingProxyType(
    {
        "cr1": MappingProxyType({2: 1, 3: 1, 4: 5, 5: 57}),
        "cr2": MappingProxyType({2: 1, 3: 3, 4: 26}),
        "cr3": MappingProxyType({2: 0, 3: 1, 4: 11}),
    }
)
FRAME_SUM_SOURCE = "published frame-sum criterion values (complexity tables 1-3, row L_F)"

# Three-dimensional hard spheres, sigma = 1.
HARD_SPHERE_B3_RATIO = ReferenceValue(5 / 8, "exact: B_3 / B_2^2 for 3D hard spheres")
HARD_SPHERE_B4_RATIO = ReferenceValue(0.2869495, "B_4 / B_2^3 for 3D hard spheres")
HARD_SPHERE_TRIANGLE = ReferenceValue(-5 * math.pi**2 / 6, "exact: triangle integral of f12 f13 f23, sigma = 1")

HARD_SPHERE_RATIOS: Mapping[int, ReferenceValue] = MappingProxyType({3: HARD_SPHERE_B3_RATIO, 4: HARD_SPHERE_B4_RATIO})


def rh_reference_count(n: int) -> int:
    """Published count of nonisomorphic Ree-Hoover diagrams of order n."""
    check_order(n, 2, 10, "rh_reference_count")
    return RH_COUNTS[n]


def frame_sum_value(criterion: str, n: int) -> Optional[int]:
    """Frame-sum value of ``cr1``/``cr2``/``cr3`` (primed names map to the same row), or None."""
    return FRAME_SUM_VALUES[criterion[:3]].get(n)


def _row(*values: Optional[int]) -> Mapping[int, Optional[int]]:
    return MappingProxyType(dict(zip(range(2, 11), values)))


_RH_CR1 = _row(1, 1, 2, 5, 23, 171, 2606, 81564, 4980756)
_RH_CR2 = _row(1, 3, 12, 50, 345, 3591, 72968, 2936304, 224134020)
_F_CR1 = _row(1, 1, 5, 57, None, None, None, None, None)
_F_CR2 = _row(1, 3, 26, None, None, None, None, None, None)
_F_CR3 = _row(0, 1, 11, None, None, None, None, None, None)

# Published complexity tables, n = 2..10; None marks an empty cell.
PUBLISHED_TABLES: Mapping[int, Mapping[str, Mapping[int, Optional[int]]]] = MappingProxyType(
    {
        1: {
            "L_TR(n)": _row(1, 2, 5, 14, 44, 157, 634, 2852, 14047),
            "L_TR(n.0)": _row(1, 1, 2, 5, 15, 55, 239, 1169, 6213),
            "L_F(n)": _F_CR1,
            "L_RH(n)": _RH_CR1,
        },
        2: {
            "L_TR(n)": _row(1, 5, 22, 93, 403, 1882, 9671, 54370, 329325),
            "L_TR(n.0)": _row(1, 3, 11, 42, 172, 804, 4330, 25930, 166666),
            "L_F(n)": _F_CR2,
            "L_RH(n)": _RH_CR2,
        },
        3: {
            "L_TR(n)": _row(0, 1, 7, 37, 183, 940, 5233, 31554, 202902),
            "L_TR(n.0)": _row(0, 1, 5, 22, 97, 474, 2657, 16578, 110749),
            "L_F(n)": _F_CR3,
        },
        4: {
            "𝔏_TR(n)": _row(1, 3, 8, 22, 66, 223, 857, 3709, 17756),
            "𝔏_TR(n.0)": _row(1, 2, 4, 9, 24, 79, 318, 1487, 7700),
            "L_F(n)": _F_CR1,
            "L_RH(n)": _RH_CR1,
        },
        5: {
            "𝔏_TR(n)": _row(1, 6, 28, 121, 524, 2406, 12077, 66447, 395772),
            "𝔏_TR(n.0)": _row(1, 4, 15, 57, 229, 1033, 5363, 31293, 197959),
            "L_F(n)": _F_CR2,
            "L_RH(n)": _RH_CR2,
        },
        6: {
            "𝔏_TR(n)": _row(0, 1, 8, 45, 228, 1168, 6401, 37955, 240857),
            "𝔏_TR(n.0)": _row(0, 1, 6, 28, 125, 599, 3256, 19834, 130583),
            "L_F(n)": _F_CR3,
        },
    }
)
