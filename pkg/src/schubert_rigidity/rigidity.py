"""Conditions H1, H2, H+ by root combinatorics, and the closed-form catalogs."""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .hasse import CHSS, HasseElement, enumerate_hasse, star_node
from .roots import Root, add, sub
from .schubert import SchubertDescriptor, classify, padded_J, q_index, z_grade


@dataclass(frozen=True)
class Component:
    """One irreducible g_{0,0}-summand of a bigraded piece of g_1."""

    grade: int
    highest: Root
    lowest: Root
    members: int  # bitset over x.g1


def components(x: CHSS, J: Sequence[int], grade: Optional[int] = None) -> List[Component]:
    """g_{0,0}-orbits in g_{1,grade} (all grades when grade is None).

    Members are linked by adding simple roots alpha_k with k in I_p minus J.
    """
    J = tuple(J)
    free = [k for k in x.I_p if k not in J]
    g1 = x.g1
    pool = [k for k, r in enumerate(g1) if grade is None or z_grade(J, r) == grade]
    left = set(pool)
    out = []
    while left:
        seed = left.pop()
        comp, stack = {seed}, [seed]
        while stack:
            k = stack.pop()
            for j, m in x.upper[k] + x.lower[k]:
                if j in free and m not in comp:
                    comp.add(m)
                    stack.append(m)
        left -= comp
        roots = [g1[k] for k in comp]
        tops = [r for r in roots if not any(add(r, x.rs.simple(j)) in x.g1_index for j in free)]
        bots = [r for r in roots if not any(sub(r, x.rs.simple(j)) in x.g1_index for j in free)]
        assert len(tops) == 1 and len(bots) == 1, "component without unique extreme weight"
        mask = 0
        for k in comp:
            mask |= 1 << k
        out.append(Component(z_grade(J, roots[0]), tops[0], bots[0], mask))
    out.sort(key=lambda c: (c.grade, x.g1_index[c.highest]))
    return out


@dataclass(frozen=True)
class RigidityVerdict:
    h1: bool
    h2: bool
    h1_witnesses: Tuple[Tuple[Root, Root], ...] = ()  # (beta, gamma)
    h2_witnesses: Tuple[Tuple[Root, Root], ...] = ()  # (epsilon, gamma)

    @property
    def h_plus(self) -> bool:
        return self.h1 and self.h2


def _grade_roots(x: CHSS, J: Sequence[int], s: int) -> List[Root]:
    return [r for r in x.g1 if z_grade(J, r) == s]


def check_h1(x: CHSS, w: HasseElement, d: Optional[SchubertDescriptor] = None):
    d = d or classify(x, w)
    if not d.proper:
        raise ValueError("H1 is defined for proper cells only")
    rs = x.rs
    top = _grade_roots(x, d.J, d.a)
    witnesses = []
    for j in d.J:
        beta = rs.simple(j)
        movers = [al for al in top if rs.is_root(add(al, beta))]
        for comp in components(x, d.J, d.a):
            gamma = comp.highest
            if rs.is_root(sub(gamma, beta)) or not rs.is_root(add(gamma, beta)):
                continue
            if movers == [gamma]:
                witnesses.append((beta, gamma))
    return not witnesses, tuple(witnesses)


def check_h2(x: CHSS, w: HasseElement, d: Optional[SchubertDescriptor] = None):
    d = d or classify(x, w)
    if not d.proper:
        raise ValueError("H2 is defined for proper cells only")
    if d.a == 0:
        return True, ()
    rs = x.rs
    top = _grade_roots(x, d.J, d.a)
    witnesses = []
    for ce in components(x, d.J, d.a - 1):
        eps = ce.highest
        reach = [al for al in top if rs.is_root(sub(eps, al))]
        for cg in components(x, d.J, d.a):
            gamma = cg.highest
            if rs.is_root(sub(eps, gamma)) and reach == [gamma]:
                witnesses.append((eps, gamma))
    return not witnesses, tuple(witnesses)


def verdict(x: CHSS, w: HasseElement, d: Optional[SchubertDescriptor] = None) -> RigidityVerdict:
    d = d or classify(x, w)
    h1, w1 = check_h1(x, w, d)
    h2, w2 = check_h2(x, w, d)
    return RigidityVerdict(h1, h2, w1, w2)


@dataclass(frozen=True)
class CatalogEntry:
    element: HasseElement
    descriptor: SchubertDescriptor
    verdict: Optional[RigidityVerdict]  # None for the point and the whole space


@functools.lru_cache(maxsize=None)
def _catalog(x: CHSS) -> Tuple[CatalogEntry, ...]:
    out = []
    for w in enumerate_hasse(x):
        d = classify(x, w)
        out.append(CatalogEntry(w, d, verdict(x, w, d) if d.proper else None))
    return tuple(out)


def hplus_catalog(x: CHSS) -> List[CatalogEntry]:
    return list(_catalog(x))


def hplus_elements(x: CHSS) -> List[CatalogEntry]:
    return [e for e in _catalog(x) if e.verdict is not None and e.verdict.h_plus]


# ---------------------------------------------------------------------------
# Closed forms


def _gaps(jj: Sequence[int], lo: int, hi: int, bound: int = 1) -> bool:
    """bound < j_l - j_{l-1} for lo <= l <= hi."""
    return all(jj[l] - jj[l - 1] > bound for l in range(lo, hi + 1))


def _orthogonal(x: CHSS, S) -> bool:
    S = sorted(set(S))
    return not any(x.rs.dynkin_adjacent(a, b) for k, a in enumerate(S) for b in S[k + 1:])


def _stated_list_A(x: CHSS, d: SchubertDescriptor) -> bool:
    n, i, a, p = x.rank, x.node, d.a, d.p
    if not 1 < i < n:
        return False
    q = q_index(x, d.J)
    jj = padded_J(x, d.J)
    if (p, q) == (2 * a + 2, a + 1):
        return _gaps(jj, 2, p) and i - jj[q] > 1 and jj[q + 1] - i > 1
    if (p, q) == (2 * a + 1, a + 1):
        return _gaps(jj, 2, p + 1) and jj[q + 1] - i > 1
    if (p, q) == (2 * a + 1, a):
        return _gaps(jj, 1, p) and i - jj[q] > 1
    if (p, q) == (2 * a, a):
        return _gaps(jj, 1, p + 1)
    return False


def _orthogonal_A(x: CHSS, d: SchubertDescriptor) -> bool:
    n, i, a, p = x.rank, x.node, d.a, d.p
    if not 1 < i < n:
        return False
    q = q_index(x, d.J)
    D = set(d.J) | {i}
    Ds = {star_node(x, j) for j in d.J} | {i}
    if (p, q) == (2 * a + 2, a + 1):
        return _orthogonal(x, D)
    if (p, q) == (2 * a + 1, a + 1):
        return (_orthogonal(x, [j for j in D if j < i]) and _orthogonal(x, [j for j in D if j >= i])
                and _orthogonal(x, [j for j in Ds if j >= i]))
    if (p, q) == (2 * a + 1, a):
        return (_orthogonal(x, [j for j in D if j > i]) and _orthogonal(x, [j for j in D if j <= i])
                and _orthogonal(x, [j for j in Ds if j <= i]))
    if (p, q) == (2 * a, a):
        return _orthogonal(x, Ds)
    return False


def _stated_list_C(x: CHSS, d: SchubertDescriptor) -> bool:
    jj = padded_J(x, d.J)
    if d.p == d.a:
        return _gaps(jj, 1, d.p)
    if d.p == d.a + 1:
        return _gaps(jj, 2, d.p + 1)
    return False


def _case_analysis_C(x: CHSS, d: SchubertDescriptor) -> bool:
    n, a, p = x.rank, d.a, d.p
    jj = padded_J(x, d.J)
    if p == a:
        return jj[1] > 1 and _gaps(jj, 2, a)
    if p == a + 1:
        return _gaps(jj, 2, a + 1) and jj[a + 1] < n - 1
    return False


def _orthogonal_C(x: CHSS, d: SchubertDescriptor) -> bool:
    i = x.node
    if d.p == d.a:
        return _orthogonal(x, {star_node(x, j) for j in d.J} | {i})
    if d.p == d.a + 1:
        return _orthogonal(x, set(d.J) | {i})
    return False


def _to_spin_n(x: CHSS, J: Sequence[int]) -> List[int]:
    """Express J on D_n/P_{n-1} in the node labels of D_n/P_n."""
    n = x.rank
    if x.node == n - 1:
        return sorted(n - 1 if j == n else j for j in J)
    return sorted(J)


def _stated_list_D(x: CHSS, d: SchubertDescriptor) -> bool:
    n, a = x.rank, d.a
    J = _to_spin_n(x, d.J)
    p = len(J)
    jj = [0] + J + [n]
    inside = n - 1 in J
    if (p == a and not inside) or (p == a + 1 and inside):
        s = math.ceil((p + 1) / 2)
        if _gaps(jj, 1, p) and jj[s] - jj[s - 1] > 2:
            return True
    if p == a + 1 and not inside:
        s = math.ceil(p / 2)
        if _gaps(jj, 2, p) and jj[s + 1] - jj[s] > 2:
            return True
    return False


def _case_analysis_D(x: CHSS, d: SchubertDescriptor) -> bool:
    n, a = x.rank, d.a
    J = _to_spin_n(x, d.J)
    p = len(J)
    jj = [0] + J + [n]
    if a == 0:
        return J != [n - 2]
    if n - 1 not in J:
        r = (a + 1) // 2  # a = 2r-1 or 2r
        return _gaps(jj, p - a + 1, p) and jj[p - r + 1] - jj[p - r] > 2
    r = a // 2  # a = 2r or 2r+1
    return p == a + 1 and _gaps(jj, 1, p) and jj[p - r] - jj[p - r - 1] > 2


def _orthogonal_D(x: CHSS, d: SchubertDescriptor) -> bool:
    n, a = x.rank, d.a
    J = _to_spin_n(x, d.J)
    p = len(J)
    jj = [0] + J + [n]
    if not _orthogonal(x, J):
        return False
    inside = n - 1 in J
    if (p == a and not inside) or (p == a + 1 and inside):
        s = math.ceil((p + 1) / 2)
        if 1 not in J and jj[s] - jj[s - 1] > 2:
            return True
    if p == a + 1 and not inside:
        s = math.ceil(p / 2)
        if jj[s + 1] - jj[s] > 2:
            return True
    return False


def closed_form_variants(x: CHSS, d: SchubertDescriptor) -> Dict[str, bool]:
    """Every closed-form statement of H+ available for this space, keyed by source."""
    fam, n, i = x.lie_type.family, x.rank, x.node
    if fam.startswith("E"):
        raise ValueError("exceptional spaces are decided by their tables")
    if not d.proper:
        raise ValueError("closed forms cover proper cells only")
    if fam == "A":
        return {"stated_list": _stated_list_A(x, d), "orthogonal": _orthogonal_A(x, d)}
    if fam == "B":
        return {"stated_list": False}
    if fam == "C":
        return {"stated_list": _stated_list_C(x, d), "case_analysis": _case_analysis_C(x, d),
                "orthogonal": _orthogonal_C(x, d)}
    if i == 1:
        val = d.a == 0 and d.J in ((n - 1,), (n,))
        return {"stated_list": val, "orthogonal": val}
    return {"stated_list": _stated_list_D(x, d), "case_analysis": _case_analysis_D(x, d),
            "orthogonal": _orthogonal_D(x, d)}


def closed_form_hplus(x: CHSS, d: SchubertDescriptor) -> bool:
    return closed_form_variants(x, d)["stated_list"]
