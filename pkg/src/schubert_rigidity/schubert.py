"""The (a, J) classification of Schubert cells and the realizability criteria."""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from typing import FrozenSet, Iterable, List, Sequence, Set, Tuple

from .hasse import (
    CHSS,
    HasseElement,
    _enumerate_masks,
    star_node,
)
from .roots import highest_root


class NotCanonical(Exception):
    """(a, J) names a cell whose canonical descriptor is different."""


@dataclass(frozen=True)
class SchubertDescriptor:
    a: int
    J: Tuple[int, ...]
    dim: int

    @property
    def smooth(self) -> bool:
        return self.a == 0

    @property
    def proper(self) -> bool:
        return bool(self.J)

    @property
    def p(self) -> int:
        return len(self.J)

    def key(self) -> Tuple[int, Tuple[int, ...]]:
        return (self.a, self.J)


def z_grade(J: Iterable[int], alpha: Sequence[int]) -> int:
    """alpha(Z_J)."""
    return sum(alpha[j - 1] for j in J)


def stabilizer_failures(x: CHSS, mask: int) -> Tuple[int, ...]:
    """Nodes j in I_p with some alpha in Delta(w), alpha + alpha_j in Delta(g_1) minus Delta(w)."""
    out = set()
    for k in range(len(x.g1)):
        if mask >> k & 1:
            for j, m in x.upper[k]:
                if not mask >> m & 1:
                    out.add(j)
    return tuple(sorted(out))


def classify(x: CHSS, w: HasseElement) -> SchubertDescriptor:
    mask = w.delta_w
    dim = w.length
    if mask == 0 or mask == x.full_mask:
        return SchubertDescriptor(0, (), dim)
    J = stabilizer_failures(x, mask)
    a = max(z_grade(J, r) for r in x.roots_of(mask))
    rebuilt = cell_mask(x, a, J)
    if rebuilt != mask:
        raise AssertionError(f"{x.label}: Delta(w) is not cut out by (a, J) = ({a}, {J})")
    return SchubertDescriptor(a, J, dim)


def is_smooth(d: SchubertDescriptor) -> bool:
    return d.a == 0


def cell_mask(x: CHSS, a: int, J: Iterable[int]) -> int:
    J = tuple(J)
    m = 0
    for k, r in enumerate(x.g1):
        if z_grade(J, r) <= a:
            m |= 1 << k
    return m


@dataclass(frozen=True)
class FromAJ:
    element: HasseElement
    descriptor: SchubertDescriptor
    canonical: bool


def schubert_from_aJ(x: CHSS, a: int, J: Iterable[int]) -> FromAJ:
    J = tuple(sorted(set(J)))
    if any(j not in x.I_p for j in J):
        raise ValueError(f"J must be a subset of {x.I_p}")
    top = z_grade(J, highest_root(x.rs))
    if not 0 <= a <= top:
        raise ValueError(f"a must lie in [0, {top}]")
    w = HasseElement(cell_mask(x, a, J))
    d = classify(x, w)
    canonical = (d.a, d.J) == (a, J) or (not J and not d.J and a == 0)
    return FromAJ(w, d, canonical)


def highest_root_grade(x: CHSS, J: Iterable[int]) -> int:
    return z_grade(J, highest_root(x.rs))


def highest_root_grade_formula(x: CHSS, J: Iterable[int]) -> int:
    """Case list for alpha~(Z_J) on the classical spaces."""
    J = set(J)
    fam, n, i = x.lie_type.family, x.rank, x.node
    if fam == "A":
        return len(J)
    if fam in ("B", "C"):
        return 2 * len(J)
    if fam == "D":
        special = {1, n - 1, n} - {i}
        hit = len(special & J)
        if hit == 0:
            return 2 * len(J)
        if hit == len(special):
            return 2 * len(J) - 2
        return 2 * len(J) - 1
    raise ValueError("exceptional type")


def dual_descriptor(x: CHSS, d: SchubertDescriptor) -> SchubertDescriptor:
    if not d.proper:
        raise ValueError("dual descriptor needs a proper cell")
    a_star = highest_root_grade(x, d.J) - d.a - 1
    J_star = tuple(sorted(star_node(x, j) for j in d.J))
    return SchubertDescriptor(a_star, J_star, x.dim - d.dim)


def conjugate_J(phi: Sequence[int], J: Iterable[int]) -> Tuple[int, ...]:
    return tuple(sorted(phi[j - 1] for j in J))


# ---------------------------------------------------------------------------
# Realizability


def padded_J(x: CHSS, J: Sequence[int]) -> List[int]:
    """[j_0, j_1, ..., j_p, j_{p+1}] with j_0 = 0 and j_{p+1} = 1 + max(I_p)."""
    return [0] + sorted(J) + [1 + max(x.I_p)]


def q_index(x: CHSS, J: Sequence[int]) -> int:
    return sum(1 for j in J if j < x.node)


def realizable_classical(x: CHSS, a: int, J: Sequence[int]) -> bool:
    J = sorted(J)
    p = len(J)
    if p == 0 or a < 0 or any(j not in x.I_p for j in J):
        return False
    fam, n, i = x.lie_type.family, x.rank, x.node
    jj = padded_J(x, J)
    if fam == "A":
        if a > min(i - 1, n - i):
            return False
        q = q_index(x, J)
        return (p, q) in {(2 * a, a), (2 * a + 1, a), (2 * a + 1, a + 1), (2 * a + 2, a + 1)}
    if fam == "B":
        return a <= 1 and p == 1
    if fam == "C":
        return a <= n - 1 and p in (a, a + 1)
    if fam == "D" and i == 1:
        if a == 0:
            return p == 1 or J == [n - 1, n]
        if a == 1:
            return (p == 1 and J[0] <= n - 2) or J == [n - 1, n]
        return False
    if fam == "D":
        # D_n/P_{n-1} is the mirror of D_n/P_n under the swap of the spin nodes.
        if i == n - 1:
            J = sorted(n - 1 if j == n else j for j in J)
            jj = [0] + J + [n]
        other = n - 1
        first = (a <= n - 3 and ((p == a and other not in J) or (p == a + 1 and other in J)))
        if first:
            s = math.ceil((p + 1) / 2)
            if jj[s] - jj[s - 1] >= 2:
                return True
        second = (a <= n - 4 and ((p == a + 1 and other not in J) or (p == a + 2 and other in J)))
        if second:
            s = math.ceil(p / 2)
            if jj[s + 1] - jj[s] >= 2:
                return True
        return False
    raise ValueError("exceptional type")


@functools.lru_cache(maxsize=None)
def proper_descriptors(x: CHSS) -> FrozenSet[Tuple[int, Tuple[int, ...]]]:
    out = set()
    for m in _enumerate_masks(x):
        d = classify(x, HasseElement(m))
        if d.proper:
            out.add(d.key())
    return frozenset(out)


def is_realizable(x: CHSS, a: int, J: Iterable[int]) -> bool:
    J = tuple(sorted(set(J)))
    if x.lie_type.family.startswith("E"):
        return (a, J) in proper_descriptors(x)
    return realizable_classical(x, a, J)


def realizability_set(x: CHSS) -> Set[Tuple[int, Tuple[int, ...]]]:
    """All (a, J) accepted by the realizability predicate, J ranging over subsets of I_p."""
    from itertools import combinations

    top = highest_root_grade(x, x.I_p)
    out = set()
    for p in range(1, len(x.I_p) + 1):
        for J in combinations(x.I_p, p):
            for a in range(0, top + 1):
                if realizable_classical(x, a, J):
                    out.add((a, J))
    return out
