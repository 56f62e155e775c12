"""Root systems of types A-E7 and a Chevalley basis with integer structure constants.

Roots are integer tuples in the simple-root basis, nodes numbered as in Bourbaki.
The Chevalley basis is realised concretely inside a minuscule representation,
where every root vector acts as a signed partial permutation of a weight basis.
"""

from __future__ import annotations

import functools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

Root = Tuple[int, ...]

_MIN_RANK = {"A": 1, "B": 2, "C": 3, "D": 4}
_FIXED_RANK = {"E6": 6, "E7": 7}


@dataclass(frozen=True, order=True)
class LieType:
    family: str
    rank: int

    def __post_init__(self) -> None:
        if self.family in _FIXED_RANK:
            if self.rank != _FIXED_RANK[self.family]:
                raise ValueError(f"{self.family} has rank {_FIXED_RANK[self.family]}")
        elif self.family in _MIN_RANK:
            if self.rank < _MIN_RANK[self.family]:
                raise ValueError(
                    f"type {self.family} needs rank >= {_MIN_RANK[self.family]}, got {self.rank}"
                )
        else:
            raise ValueError(f"unknown family {self.family!r}")

    @classmethod
    def parse(cls, text: str) -> "LieType":
        m = re.fullmatch(r"\s*([A-Ea-e])(\d+)\s*", text)
        if not m:
            raise ValueError(f"cannot parse Lie type {text!r}")
        letter, rank = m.group(1).upper(), int(m.group(2))
        if letter == "E":
            return cls(f"E{rank}", rank)
        return cls(letter, rank)

    def __str__(self) -> str:
        return self.family if self.family.startswith("E") else f"{self.family}{self.rank}"


def _gram_matrix(t: LieType) -> List[List[Fraction]]:
    """Gram matrix of the simple roots, long roots of square length 2."""
    n = t.rank
    g = [[Fraction(0)] * n for _ in range(n)]

    def edge(i: int, j: int, v: Fraction) -> None:
        g[i - 1][j - 1] = g[j - 1][i - 1] = v

    if t.family == "A":
        for i in range(1, n + 1):
            g[i - 1][i - 1] = Fraction(2)
        for i in range(1, n):
            edge(i, i + 1, Fraction(-1))
    elif t.family == "B":
        for i in range(1, n):
            g[i - 1][i - 1] = Fraction(2)
        g[n - 1][n - 1] = Fraction(1)
        for i in range(1, n):
            edge(i, i + 1, Fraction(-1))
    elif t.family == "C":
        for i in range(1, n):
            g[i - 1][i - 1] = Fraction(1)
        g[n - 1][n - 1] = Fraction(2)
        for i in range(1, n - 1):
            edge(i, i + 1, Fraction(-1, 2))
        edge(n - 1, n, Fraction(-1))
    elif t.family == "D":
        for i in range(1, n + 1):
            g[i - 1][i - 1] = Fraction(2)
        for i in range(1, n - 1):
            edge(i, i + 1, Fraction(-1))
        edge(n - 2, n, Fraction(-1))
    else:
        for i in range(1, n + 1):
            g[i - 1][i - 1] = Fraction(2)
        for i, j in [(1, 3), (3, 4), (4, 5), (5, 6), (2, 4)] + ([(6, 7)] if n == 7 else []):
            edge(i, j, Fraction(-1))
    return g


# Highest weight of a minuscule representation used to realise the Chevalley basis.
_MINUSCULE_NODE = {"A": lambda n: 1, "B": lambda n: n, "C": lambda n: 1, "D": lambda n: 1,
                   "E6": lambda n: 1, "E7": lambda n: 7}


def _positive_root_count(t: LieType) -> int:
    n = t.rank
    return {"A": n * (n + 1) // 2, "B": n * n, "C": n * n, "D": n * (n - 1),
            "E6": 36, "E7": 63}[t.family]


@dataclass(frozen=True)
class RootSystem:
    lie_type: LieType
    gram: Tuple[Tuple[Fraction, ...], ...]
    cartan_matrix: Tuple[Tuple[int, ...], ...]  # a_ij = <alpha_i^vee, alpha_j>
    symmetrizer: Tuple[Fraction, ...]
    positive_roots: Tuple[Root, ...]
    root_index: Mapping[Root, int] = field(repr=False, compare=False)

    @property
    def rank(self) -> int:
        return self.lie_type.rank

    @property
    def roots(self) -> Tuple[Root, ...]:
        return self.positive_roots + tuple(neg(r) for r in self.positive_roots)

    def simple(self, i: int) -> Root:
        """Simple root alpha_i, 1-based."""
        return tuple(1 if k == i - 1 else 0 for k in range(self.rank))

    def is_root(self, v: Sequence[int]) -> bool:
        v = tuple(v)
        return v in self.root_index or neg(v) in self.root_index

    def is_positive_root(self, v: Sequence[int]) -> bool:
        return tuple(v) in self.root_index

    def pairing(self, beta: Sequence[int], i: int) -> int:
        """<beta, alpha_i^vee>."""
        row = self.cartan_matrix[i - 1]
        return sum(b * c for b, c in zip(beta, row))

    def reflect_simple(self, i: int, beta: Sequence[int]) -> Root:
        c = self.pairing(beta, i)
        return tuple(b - c if k == i - 1 else b for k, b in enumerate(beta))

    def dynkin_adjacent(self, i: int, j: int) -> bool:
        return i != j and self.cartan_matrix[i - 1][j - 1] != 0


def neg(v: Sequence[int]) -> Root:
    return tuple(-x for x in v)


def add(u: Sequence[int], v: Sequence[int]) -> Root:
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Sequence[int], v: Sequence[int]) -> Root:
    return tuple(a - b for a, b in zip(u, v))


def height(v: Sequence[int]) -> int:
    return sum(v)


@functools.lru_cache(maxsize=None)
def build_root_system(t: LieType) -> RootSystem:
    n = t.rank
    g = _gram_matrix(t)
    cartan = tuple(tuple(int(2 * g[i][j] / g[i][i]) for j in range(n)) for i in range(n))
    for i in range(n):
        for j in range(n):
            assert 2 * g[i][j] / g[i][i] == cartan[i][j]
    sym = tuple(g[i][i] / 2 for i in range(n))

    simple = [tuple(1 if k == i else 0 for k in range(n)) for i in range(n)]
    found = set(simple)
    layer = list(simple)
    while layer:
        nxt = []
        for beta in layer:
            for i in range(n):
                # alpha_i-string through beta: beta - p alpha_i, ..., beta + q alpha_i
                p = 0
                probe = list(beta)
                while True:
                    probe[i] -= 1
                    if tuple(probe) in found:
                        p += 1
                    else:
                        break
                q = p - sum(b * c for b, c in zip(beta, cartan[i]))
                if q > 0:
                    up = tuple(b + 1 if k == i else b for k, b in enumerate(beta))
                    if up not in found:
                        found.add(up)
                        nxt.append(up)
        layer = nxt
    pos = tuple(sorted(found, key=lambda r: (sum(r), r)))
    if len(pos) != _positive_root_count(t):
        raise AssertionError(f"{t}: found {len(pos)} positive roots")
    return RootSystem(
        lie_type=t,
        gram=tuple(tuple(row) for row in g),
        cartan_matrix=cartan,
        symmetrizer=sym,
        positive_roots=pos,
        root_index={r: k for k, r in enumerate(pos)},
    )


def inner(rs: RootSystem, alpha: Sequence[int], beta: Sequence[int]) -> Fraction:
    if len(alpha) != rs.rank or len(beta) != rs.rank:
        raise ValueError("dimension mismatch")
    total = Fraction(0)
    for i, a in enumerate(alpha):
        if a:
            row = rs.gram[i]
            total += a * sum((row[j] * b for j, b in enumerate(beta) if b), Fraction(0))
    return total


def reflect(rs: RootSystem, alpha: Sequence[int], beta: Sequence[int]) -> Root:
    """sigma_alpha(beta)."""
    c = 2 * inner(rs, alpha, beta) / inner(rs, alpha, alpha)
    assert c.denominator == 1
    return tuple(b - int(c) * a for a, b in zip(alpha, beta))


def highest_root(rs: RootSystem) -> Root:
    top = rs.positive_roots[-1]
    assert all(sum(top) > sum(r) for r in rs.positive_roots[:-1])
    for i in range(1, rs.rank + 1):
        assert not rs.is_root(add(top, rs.simple(i)))
    return top


def coroot_coefficients(rs: RootSystem, alpha: Sequence[int]) -> Tuple[Fraction, ...]:
    """alpha^vee in the basis of simple coroots."""
    aa = inner(rs, alpha, alpha)
    return tuple(a * rs.gram[k][k] / aa for k, a in enumerate(alpha))


def root_string_p(rs: RootSystem, alpha: Root, beta: Root) -> int:
    """Largest p with beta - p*alpha a root."""
    p = 0
    cur = sub(beta, alpha)
    while rs.is_root(cur):
        p += 1
        cur = sub(cur, alpha)
    return p


# ---------------------------------------------------------------------------
# Chevalley basis

PartialPerm = Dict[int, Tuple[int, int]]  # column -> (row, sign)


def _compose(a: PartialPerm, b: PartialPerm) -> Dict[Tuple[int, int], int]:
    out: Dict[Tuple[int, int], int] = {}
    for c, (k, sb) in b.items():
        hit = a.get(k)
        if hit is not None:
            r, sa = hit
            out[(r, c)] = out.get((r, c), 0) + sa * sb
    return out


def _commutator(a: PartialPerm, b: PartialPerm) -> Dict[Tuple[int, int], int]:
    out = _compose(a, b)
    for key, v in _compose(b, a).items():
        out[key] = out.get(key, 0) - v
    return {k: v for k, v in out.items() if v}


def _transpose(a: PartialPerm) -> PartialPerm:
    return {r: (c, s) for c, (r, s) in a.items()}


def _minuscule_weights(rs: RootSystem, node: int) -> List[Tuple[int, ...]]:
    n = rs.rank
    # Dynkin labels of alpha_i are the columns of the Cartan matrix.
    alpha_labels = [tuple(rs.cartan_matrix[k][i] for k in range(n)) for i in range(n)]
    top = tuple(1 if k == node - 1 else 0 for k in range(n))
    seen = {top}
    order = [top]
    frontier = [top]
    while frontier:
        nxt = []
        for mu in frontier:
            for i in range(n):
                if mu[i] > 0:
                    nu = tuple(m - mu[i] * a for m, a in zip(mu, alpha_labels[i]))
                    if nu not in seen:
                        seen.add(nu)
                        order.append(nu)
                        nxt.append(nu)
        frontier = nxt
    for mu in order:
        assert all(abs(x) <= 1 for x in mu), "representation is not minuscule"
    return order


@dataclass(frozen=True)
class ChevalleyBasis:
    """Structure constants N(alpha, beta) with [E_a, E_b] = N(a,b) E_{a+b}.

    ``kappa[alpha]`` is the invariant pairing (E_alpha, E_-alpha) and
    ``hscale[alpha]`` the factor in [E_alpha, E_-alpha] = hscale * H_alpha.
    Both are 1-normalised per root length for the standard basis and change
    under :meth:`rescaled`.
    """

    rs: RootSystem
    structure_constants: Mapping[Tuple[Root, Root], Fraction] = field(repr=False)
    kappa: Mapping[Root, Fraction] = field(repr=False)
    hscale: Mapping[Root, Fraction] = field(repr=False)
    rep: Optional[Mapping[Root, PartialPerm]] = field(default=None, repr=False, compare=False)

    def N(self, alpha: Root, beta: Root) -> Fraction:
        return self.structure_constants[(alpha, beta)]

    def rescaled(self, scale: Mapping[Root, Fraction]) -> "ChevalleyBasis":
        """Basis E'_a = c_a E_a for every root a (missing roots keep c = 1)."""
        c = {r: Fraction(scale.get(r, 1)) for r in self.rs.roots}
        if any(v == 0 for v in c.values()):
            raise ValueError("scale factors must be nonzero")
        sc = {
            (a, b): v * c[a] * c[b] / c[add(a, b)]
            for (a, b), v in self.structure_constants.items()
        }
        kap = {r: v * c[r] * c[neg(r)] for r, v in self.kappa.items()}
        hs = {r: v * c[r] * c[neg(r)] for r, v in self.hscale.items()}
        return ChevalleyBasis(self.rs, sc, kap, hs, None)


def structure_constant(cb: ChevalleyBasis, alpha: Sequence[int], beta: Sequence[int]) -> Fraction:
    alpha, beta = tuple(alpha), tuple(beta)
    if not cb.rs.is_root(add(alpha, beta)):
        raise ValueError(f"{alpha} + {beta} is not a root")
    return cb.structure_constants[(alpha, beta)]


@functools.lru_cache(maxsize=None)
def chevalley_basis(t: LieType) -> ChevalleyBasis:
    rs = build_root_system(t)
    n = rs.rank
    weights = _minuscule_weights(rs, _MINUSCULE_NODE[t.family](n))
    windex = {mu: k for k, mu in enumerate(weights)}
    alpha_labels = [tuple(rs.cartan_matrix[k][i] for k in range(n)) for i in range(n)]

    rep: Dict[Root, PartialPerm] = {}
    for i in range(n):
        e: PartialPerm = {}
        for mu, k in windex.items():
            if mu[i] == -1:
                e[k] = (windex[tuple(m + a for m, a in zip(mu, alpha_labels[i]))], 1)
        rep[rs.simple(i + 1)] = e

    for xi in rs.positive_roots:
        if sum(xi) == 1:
            continue
        i = next(k for k in range(1, n + 1) if rs.is_positive_root(sub(xi, rs.simple(k))))
        a, b = rs.simple(i), sub(xi, rs.simple(i))
        p = root_string_p(rs, a, b)
        comm = _commutator(rep[a], rep[b])
        e = {}
        for (r, c), v in comm.items():
            assert v % (p + 1) == 0 and abs(v) == p + 1, "root vector not integral"
            assert c not in e
            e[c] = (r, v // (p + 1))
        rep[xi] = e
    for xi in rs.positive_roots:
        rep[neg(xi)] = _transpose(rep[xi])

    # [E_xi, E_-xi] must be the coroot H_xi acting by <mu, xi^vee>.
    kappa: Dict[Root, Fraction] = {}
    for xi in rs.positive_roots:
        co = coroot_coefficients(rs, xi)
        comm = _commutator(rep[xi], rep[neg(xi)])
        for mu, k in windex.items():
            expect = sum(c * m for c, m in zip(co, mu))
            assert comm.get((k, k), 0) == expect, f"coroot mismatch at {xi}"
        assert all(r == c for r, c in comm)
        kappa[xi] = kappa[neg(xi)] = Fraction(len(rep[xi]))
    # Trace form is invariant: (E_a, E_-a) proportional to 2/(a,a).
    ratios = {kappa[xi] * inner(rs, xi, xi) for xi in rs.positive_roots}
    assert len(ratios) == 1

    sc: Dict[Tuple[Root, Root], Fraction] = {}
    allroots = rs.roots
    for a in allroots:
        for b in allroots:
            s = add(a, b)
            comm = None
            if rs.is_root(s):
                comm = _commutator(rep[a], rep[b])
                target = rep[s]
                (c0, (r0, s0)), *_ = target.items()
                ratio = comm.get((r0, c0), 0) * s0
                for c, (r, sg) in target.items():
                    assert comm.get((r, c), 0) == ratio * sg
                assert len(comm) == len(target)
                p = root_string_p(rs, a, b)
                assert abs(ratio) == p + 1, f"|N({a},{b})| != p+1"
                sc[(a, b)] = Fraction(ratio)
            elif any(s):
                assert not _commutator(rep[a], rep[b]), f"[E_{a}, E_{b}] should vanish"
    for (a, b), v in sc.items():
        assert sc[(b, a)] == -v
    return ChevalleyBasis(rs, sc, kappa, {r: Fraction(1) for r in allroots}, rep)


# ---------------------------------------------------------------------------
# Abstract brackets on root vectors and Cartan elements

Element = Dict[Tuple[str, object], Fraction]  # ('e', root) or ('h', node)


def bracket(cb: ChevalleyBasis, x: Mapping[Tuple[str, object], Fraction],
            y: Mapping[Tuple[str, object], Fraction]) -> Element:
    rs = cb.rs
    out: Element = {}

    def put(key: Tuple[str, object], v: Fraction) -> None:
        out[key] = out.get(key, Fraction(0)) + v

    for (kx, ax), vx in x.items():
        for (ky, ay), vy in y.items():
            c = vx * vy
            if kx == "h" and ky == "h":
                continue
            if kx == "h":
                put(("e", ay), c * rs.pairing(ay, ax))
            elif ky == "h":
                put(("e", ax), -c * rs.pairing(ax, ay))
            else:
                s = add(ax, ay)
                if not any(s):
                    co = coroot_coefficients(rs, ax)
                    for k, cc in enumerate(co):
                        if cc:
                            put(("h", k + 1), c * cb.hscale[ax] * cc)
                elif rs.is_root(s):
                    put(("e", s), c * cb.structure_constants[(ax, ay)])
    return {k: v for k, v in out.items() if v}


def root_vector(alpha: Iterable[int]) -> Element:
    return {("e", tuple(alpha)): Fraction(1)}
