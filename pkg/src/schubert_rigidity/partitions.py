"""Partitions indexing Schubert cells of Gr(i, n+1) = A_n/P_i.

A partition lives in the i x (n+1-i) box (at most i parts, each at most n+1-i)
and is stored run-length encoded as ((p_1, q_1), ..., (p_r, q_r)), p strictly
decreasing: q_l parts equal to p_l.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterator, List, Sequence, Tuple

from .hasse import CHSS, HasseElement, get_chss
from .roots import LieType
from .schubert import SchubertDescriptor, is_realizable

SUITS = ("spade", "heart", "diamond", "club")
SUIT_SYMBOL = {"spade": "♠", "heart": "♥", "diamond": "♦", "club": "♣"}


@dataclass(frozen=True)
class Partition:
    i: int
    n_plus_1: int
    runs: Tuple[Tuple[int, int], ...]

    def __post_init__(self) -> None:
        runs = tuple((int(p), int(q)) for p, q in self.runs if p > 0 and q > 0)
        object.__setattr__(self, "runs", runs)
        ps = [p for p, _ in runs]
        if any(a <= b for a, b in zip(ps, ps[1:])):
            raise ValueError("run values must be strictly decreasing")
        if not 1 <= self.i <= self.n_plus_1 - 1:
            raise ValueError("need 1 <= i <= n")
        if ps and ps[0] > self.width:
            raise ValueError(f"first part exceeds n+1-i = {self.width}")
        if sum(q for _, q in runs) > self.i:
            raise ValueError(f"more than i = {self.i} parts")

    @property
    def width(self) -> int:
        return self.n_plus_1 - self.i

    @property
    def n(self) -> int:
        return self.n_plus_1 - 1

    @classmethod
    def from_parts(cls, i: int, n_plus_1: int, parts: Sequence[int]) -> "Partition":
        parts = sorted((p for p in parts if p > 0), reverse=True)
        runs = [(p, len(list(g))) for p, g in itertools.groupby(parts)]
        return cls(i, n_plus_1, tuple(runs))

    @classmethod
    def parse(cls, i: int, n_plus_1: int, text: str) -> "Partition":
        """Accepts "6,4,4,1,1" or run-length "6 4^2 1^2"."""
        text = text.strip().strip("()")
        parts: List[int] = []
        if text:
            for tok in re.split(r"[,\s]+", text):
                if not tok:
                    continue
                m = re.fullmatch(r"(\d+)(?:\^(\d+))?", tok)
                if not m:
                    raise ValueError(f"bad partition token {tok!r}")
                parts.extend([int(m.group(1))] * int(m.group(2) or 1))
        return cls.from_parts(i, n_plus_1, parts)

    def parts(self) -> List[int]:
        return [p for p, q in self.runs for _ in range(q)]

    def padded(self) -> List[int]:
        ps = self.parts()
        return ps + [0] * (self.i - len(ps))

    def size(self) -> int:
        return sum(p * q for p, q in self.runs)

    def __str__(self) -> str:
        if not self.runs:
            return "()"
        return " ".join(str(p) if q == 1 else f"{p}^{q}" for p, q in self.runs)


def conjugate(pi: Partition) -> Partition:
    parts = pi.parts()
    cols = [sum(1 for p in parts if p > c) for c in range(pi.width)]
    return Partition.from_parts(pi.width, pi.n_plus_1, cols)


def dual(pi: Partition) -> Partition:
    pad = pi.padded()
    return Partition.from_parts(pi.i, pi.n_plus_1, [pi.width - p for p in reversed(pad)])


def suit(pi: Partition) -> str:
    full_row = bool(pi.runs) and pi.runs[0][0] == pi.width
    full_col = sum(q for _, q in pi.runs) == pi.i
    return {(True, True): "spade", (True, False): "heart",
            (False, True): "diamond", (False, False): "club"}[(full_row, full_col)]


def chss_of(pi: Partition) -> CHSS:
    return get_chss(LieType("A", pi.n), pi.i)


def aJ_from_partition(pi: Partition) -> SchubertDescriptor:
    d = dual(pi)
    dim = d.size()
    if not pi.runs or not d.runs:
        return SchubertDescriptor(0, (), dim)
    a = len(d.runs) - 1
    acc, Jset = 0, set()
    for p, q in pi.runs:
        acc += q
        Jset.add(acc)
        Jset.add(pi.n_plus_1 - p)
    Jset.discard(pi.i)
    return SchubertDescriptor(a, tuple(sorted(Jset)), dim)


def partition_from_aJ(i: int, n_plus_1: int, a: int, J: Sequence[int]) -> Partition:
    x = get_chss(LieType("A", n_plus_1 - 1), i)
    J = tuple(sorted(set(J)))
    if not is_realizable(x, a, J):
        raise ValueError(f"({a}, {set(J)}) is not realizable on Gr({i},{n_plus_1})")
    for pi in all_partitions(i, n_plus_1):
        if aJ_from_partition(pi).key() == (a, J):
            return pi
    raise AssertionError("realizable descriptor without a partition")


def all_partitions(i: int, n_plus_1: int) -> Iterator[Partition]:
    width = n_plus_1 - i

    def rec(prefix: List[int], cap: int) -> Iterator[List[int]]:
        yield prefix
        if len(prefix) == i:
            return
        for p in range(min(cap, width), 0, -1):
            yield from rec(prefix + [p], p)

    for parts in rec([], width):
        yield Partition.from_parts(i, n_plus_1, parts)


def cell_of_partition(pi: Partition) -> HasseElement:
    """Delta(w_pi): roots alpha_c + ... + alpha_b with c <= i <= b <= n - pi_c."""
    x = chss_of(pi)
    n = pi.n
    roots = []
    for c, part in enumerate(pi.padded(), start=1):
        for b in range(pi.i, n - part + 1):
            roots.append(tuple(1 if c <= k <= b else 0 for k in range(1, n + 1)))
    return HasseElement(x.mask_of(roots))


def pq_of(x: CHSS, d: SchubertDescriptor) -> Tuple[int, int]:
    return len(d.J), sum(1 for j in d.J if j < x.node)


# Suit -> (p, q) as affine functions of a.
SUIT_PQ = {
    "spade": lambda a: (2 * a + 2, a + 1),
    "heart": lambda a: (2 * a + 1, a + 1),
    "diamond": lambda a: (2 * a + 1, a),
    "club": lambda a: (2 * a, a),
}


def hplus_by_partition(pi: Partition) -> bool:
    """Multiplicity criterion: every q_l, q'_l > 1 for l >= 2, plus suit-dependent first terms."""
    conj = conjugate(pi)
    q = [m for _, m in pi.runs]
    qc = [m for _, m in conj.runs]
    if len(q) != len(qc):
        raise AssertionError("a partition and its conjugate have the same number of corners")
    if any(m <= 1 for m in q[1:] + qc[1:]):
        return False
    s = suit(pi)
    if s == "heart":
        return qc[0] > 1
    if s == "diamond":
        return q[0] > 1
    if s == "club":
        return q[0] > 1 and qc[0] > 1
    return True
