"""Exact sparse linear algebra over the rationals.

Vectors are dicts mapping an arbitrary hashable key to a nonzero Fraction.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Dict, Hashable, Iterable, List, Mapping, Optional, Sequence, Tuple

Vec = Dict[Hashable, Fraction]


def axpy(y: Vec, a: Fraction, x: Mapping[Hashable, Fraction]) -> None:
    """y += a*x in place, pruning zeros."""
    for k, v in x.items():
        nv = y.get(k, 0) + a * v
        if nv:
            y[k] = nv
        else:
            y.pop(k, None)


def scale(x: Mapping[Hashable, Fraction], a: Fraction) -> Vec:
    return {k: a * v for k, v in x.items()} if a else {}


class Echelon:
    """Incrementally built echelon basis; remembers how each row came from the inputs."""

    def __init__(self) -> None:
        self.rows: List[Tuple[Hashable, Vec, Vec]] = []  # (pivot, row, combination)

    def reduce(self, v: Mapping[Hashable, Fraction], combo: Optional[Vec] = None) -> Tuple[Vec, Vec]:
        v = dict(v)
        combo = dict(combo or {})
        for piv, row, rc in self.rows:
            c = v.get(piv)
            if c:
                axpy(v, -c, row)
                axpy(combo, -c, rc)
        return v, combo

    def add(self, v: Mapping[Hashable, Fraction], tag: Hashable = None) -> Optional[Vec]:
        """Insert v; returns a dependency (combination of tags) if v is in the span."""
        res, combo = self.reduce(v, {tag: Fraction(1)} if tag is not None else None)
        if not res:
            return combo
        piv = next(iter(res))
        inv = Fraction(1) / res[piv]
        self.rows.append((piv, scale(res, inv), scale(combo, inv)))
        return None

    def contains(self, v: Mapping[Hashable, Fraction]) -> bool:
        res, _ = self.reduce(v)
        return not res

    @property
    def rank(self) -> int:
        return len(self.rows)


def rank(vectors: Iterable[Mapping[Hashable, Fraction]]) -> int:
    e = Echelon()
    for v in vectors:
        e.add(v)
    return e.rank


def kernel(columns: Sequence[Mapping[Hashable, Fraction]]) -> List[Vec]:
    """Basis of {c : sum_k c_k columns[k] = 0}, as dicts over column indices."""
    e = Echelon()
    out = []
    for k, col in enumerate(columns):
        dep = e.add(col, tag=k)
        if dep is not None:
            out.append(dep)
    return out


def in_span(target: Mapping[Hashable, Fraction], vectors: Iterable[Mapping[Hashable, Fraction]]) -> bool:
    e = Echelon()
    for v in vectors:
        e.add(v)
    return e.contains(target)


def combine(coeffs: Mapping[int, Fraction], vectors: Sequence[Mapping[Hashable, Fraction]]) -> Vec:
    out: Vec = {}
    for k, c in coeffs.items():
        axpy(out, c, vectors[k])
    return out


class IntEchelon:
    """Fraction-free echelon basis for integer vectors; rows are kept primitive."""

    def __init__(self) -> None:
        self.rows: List[Tuple[Hashable, Dict[Hashable, int]]] = []

    @staticmethod
    def _primitive(v: Dict[Hashable, int]) -> Dict[Hashable, int]:
        g = 0
        for c in v.values():
            g = math.gcd(g, c)
            if g == 1:
                return v
        return {k: c // g for k, c in v.items()} if g > 1 else v

    def reduce(self, v: Mapping[Hashable, int]) -> Dict[Hashable, int]:
        v = dict(v)
        scaled = False
        for piv, row in self.rows:
            c = v.get(piv)
            if not c:
                continue
            p = row[piv]
            if p == 1 or p == -1:
                f = c * p
            else:
                g = math.gcd(p, c)
                mv, f = p // g, c // g
                if mv != 1:
                    v = {k: mv * x for k, x in v.items()}
                    scaled = True
            for k, x in row.items():
                nv = v.get(k, 0) - f * x
                if nv:
                    v[k] = nv
                else:
                    del v[k]
        return self._primitive(v) if scaled else v

    def add(self, v: Mapping[Hashable, int]) -> bool:
        """Insert v; returns False when v was already in the span."""
        res = self._primitive(self.reduce(v))
        if not res:
            return False
        piv = min(res, key=lambda k: abs(res[k]))
        self.rows.append((piv, res))
        return True

    def contains(self, v: Mapping[Hashable, int]) -> bool:
        return not self.reduce(v)

    @property
    def rank(self) -> int:
        return len(self.rows)
