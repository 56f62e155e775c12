"""Catalog sweeps shared by the test modules."""

from __future__ import annotations

from typing import Iterator, List

from schubert_rigidity.hasse import CHSS, get_chss
from schubert_rigidity.roots import LieType


def grassmannians(max_n: int, min_n: int = 1) -> Iterator[CHSS]:
    for n in range(min_n, max_n + 1):
        for i in range(1, n + 1):
            yield get_chss(LieType("A", n), i)


def family(fam: str, node: str, ns) -> List[CHSS]:
    """node is "1" or "n"."""
    return [get_chss(LieType(fam, n), 1 if node == "1" else n) for n in ns]


def classification_catalog() -> List[CHSS]:
    """A_n/P_i n <= 8, B_n/P_1 n <= 6, D_n/P_1 n <= 7, C_n/P_n n <= 7, D_n/P_n n <= 8."""
    return (list(grassmannians(8)) + family("B", "1", range(2, 7)) + family("D", "1", range(4, 8))
            + family("C", "n", range(3, 8)) + family("D", "n", range(4, 9)))


def exceptional() -> List[CHSS]:
    return [get_chss(LieType("E6", 6), 6), get_chss(LieType("E7", 7), 7)]


def space(type_text: str, node: int) -> CHSS:
    return get_chss(LieType.parse(type_text), node)
