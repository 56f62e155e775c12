"""Hasse diagrams W^p of the compact Hermitian symmetric spaces.

An element w is stored as the bitset of Delta(w) inside Delta(g_1), bit k
standing for ``x.g1[k]`` (roots ordered by height, then lexicographically).
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .roots import LieType, Root, RootSystem, add, build_root_system, neg, sub


def _catalog_nodes(t: LieType) -> Tuple[int, ...]:
    n = t.rank
    return {
        "A": tuple(range(1, n + 1)),
        "B": (1,),
        "C": (n,),
        "D": (1, n - 1, n),
        "E6": (1, 6),
        "E7": (7,),
    }[t.family]


@dataclass(frozen=True)
class CHSS:
    lie_type: LieType
    node: int
    rs: RootSystem = field(repr=False, compare=False)
    g1: Tuple[Root, ...] = field(repr=False, compare=False)
    g1_index: Mapping[Root, int] = field(repr=False, compare=False)
    g0_positive: Tuple[Root, ...] = field(repr=False, compare=False)
    # lower[k] / upper[k]: list of (j, m) with g1[k] = g1[m] + alpha_j, resp. g1[m] = g1[k] + alpha_j
    lower: Tuple[Tuple[Tuple[int, int], ...], ...] = field(repr=False, compare=False)
    upper: Tuple[Tuple[Tuple[int, int], ...], ...] = field(repr=False, compare=False)

    @property
    def i(self) -> int:
        return self.node

    @property
    def rank(self) -> int:
        return self.lie_type.rank

    @property
    def I_p(self) -> Tuple[int, ...]:
        return tuple(j for j in range(1, self.rank + 1) if j != self.node)

    @property
    def dim(self) -> int:
        return len(self.g1)

    @property
    def full_mask(self) -> int:
        return (1 << len(self.g1)) - 1

    @property
    def label(self) -> str:
        return f"{self.lie_type}/P{self.node}"

    def roots_of(self, mask: int) -> List[Root]:
        return [self.g1[k] for k in range(len(self.g1)) if mask >> k & 1]

    def mask_of(self, roots) -> int:
        m = 0
        for r in roots:
            m |= 1 << self.g1_index[tuple(r)]
        return m


@functools.lru_cache(maxsize=None)
def get_chss(lie_type: LieType, node: int) -> CHSS:
    if node not in _catalog_nodes(lie_type):
        raise ValueError(f"{lie_type}/P{node} is not a compact Hermitian symmetric space")
    rs = build_root_system(lie_type)
    g1 = tuple(r for r in rs.positive_roots if r[node - 1] == 1)
    assert all(r[node - 1] <= 1 for r in rs.positive_roots), "grading has depth > 1"
    idx = {r: k for k, r in enumerate(g1)}
    g0p = tuple(r for r in rs.positive_roots if r[node - 1] == 0)
    lower, upper = [], []
    for r in g1:
        lo, up = [], []
        for j in range(1, rs.rank + 1):
            if j == node:
                continue
            d = sub(r, rs.simple(j))
            if d in idx:
                lo.append((j, idx[d]))
            u = add(r, rs.simple(j))
            if u in idx:
                up.append((j, idx[u]))
        lower.append(tuple(lo))
        upper.append(tuple(up))
    return CHSS(lie_type, node, rs, g1, idx, g0p, tuple(lower), tuple(upper))


def parse_chss(type_text: str, node: int) -> CHSS:
    return get_chss(LieType.parse(type_text), int(node))


def catalog_spaces(families: Sequence[str] = ("A", "B", "C", "D", "E6", "E7"),
                   max_rank: int = 8) -> List[CHSS]:
    out = []
    for fam in families:
        if fam.startswith("E"):
            t = LieType(fam, int(fam[1]))
            out.extend(get_chss(t, k) for k in _catalog_nodes(t))
            continue
        lo = {"A": 1, "B": 2, "C": 3, "D": 4}[fam]
        for n in range(lo, max_rank + 1):
            t = LieType(fam, n)
            out.extend(get_chss(t, k) for k in _catalog_nodes(t))
    return out


@dataclass(frozen=True)
class HasseElement:
    delta_w: int
    word: Optional[Tuple[int, ...]] = field(default=None, compare=False)

    @property
    def length(self) -> int:
        return bin(self.delta_w).count("1")

    def hex(self) -> str:
        return format(self.delta_w, "x")


def is_lower_ideal(x: CHSS, mask: int) -> bool:
    for k in range(len(x.g1)):
        if mask >> k & 1:
            for _, m in x.lower[k]:
                if not mask >> m & 1:
                    return False
    return True


@functools.lru_cache(maxsize=None)
def _enumerate_masks(x: CHSS) -> Tuple[int, ...]:
    seen = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for mask in frontier:
            for k in range(len(x.g1)):
                if mask >> k & 1:
                    continue
                if all(mask >> m & 1 for _, m in x.lower[k]):
                    new = mask | 1 << k
                    if new not in seen:
                        seen.add(new)
                        nxt.append(new)
        frontier = nxt
    return tuple(sorted(seen, key=lambda m: (bin(m).count("1"), m)))


def enumerate_hasse(x: CHSS) -> List[HasseElement]:
    return [HasseElement(m) for m in _enumerate_masks(x)]


def apply_word(rs: RootSystem, word: Sequence[int], beta: Sequence[int]) -> Root:
    """s_{w1} s_{w2} ... s_{wk} (beta), reflections applied from the right."""
    out = tuple(beta)
    for j in reversed(word):
        out = rs.reflect_simple(j, out)
    return out


def delta_from_word(x: CHSS, word: Sequence[int]) -> HasseElement:
    rs = x.rs
    word = tuple(int(j) for j in word)
    for j in word:
        if not 1 <= j <= rs.rank:
            raise ValueError(f"invalid simple reflection index {j}")
    mask = 0
    for m, j in enumerate(word):
        r = apply_word(rs, word[:m], rs.simple(j))
        if r not in x.g1_index:
            raise ValueError(f"word {word} is not a minimal coset representative")
        bit = 1 << x.g1_index[r]
        if mask & bit:
            raise ValueError(f"word {word} is not reduced")
        mask |= bit
    return HasseElement(mask, word)


@functools.lru_cache(maxsize=None)
def _reduced_words(x: CHSS) -> Dict[int, Tuple[int, ...]]:
    """One reduced word per element, grown upward by appending the smallest admissible node."""
    rs = x.rs
    words: Dict[int, Tuple[int, ...]] = {0: ()}
    for mask in _enumerate_masks(x):
        word = words[mask]
        for j in range(1, rs.rank + 1):
            r = apply_word(rs, word, rs.simple(j))
            k = x.g1_index.get(r)
            if k is None or mask >> k & 1:
                continue
            words.setdefault(mask | 1 << k, word + (j,))
    return words


def reduced_word(x: CHSS, w: HasseElement) -> Tuple[int, ...]:
    if w.word is not None:
        return w.word
    return _reduced_words(x)[w.delta_w]


@functools.lru_cache(maxsize=None)
def _longest_parabolic(x: CHSS) -> Tuple[Tuple[int, ...], Dict[Root, Root]]:
    rs = x.rs
    word: List[int] = []
    while True:
        for j in x.I_p:
            if all(c >= 0 for c in apply_word(rs, word, rs.simple(j))):
                word.append(j)
                break
        else:
            break
    action = {r: apply_word(rs, word, r) for r in rs.roots}
    for r in x.g0_positive:
        assert all(c <= 0 for c in action[r])
    return tuple(word), action


def longest_parabolic_action(x: CHSS, alpha: Sequence[int]) -> Root:
    """w0_p(alpha) for the longest element w0_p of the parabolic Weyl group."""
    return _longest_parabolic(x)[1][tuple(alpha)]


def star_node(x: CHSS, j: int) -> int:
    """j* with alpha_{j*} = -w0_p(alpha_j), for j in I_p."""
    r = neg(longest_parabolic_action(x, x.rs.simple(j)))
    assert sum(r) == 1
    return r.index(1) + 1


def dual(x: CHSS, w: HasseElement) -> HasseElement:
    image = x.mask_of(longest_parabolic_action(x, r) for r in x.roots_of(w.delta_w))
    return HasseElement(x.full_mask & ~image)


@functools.lru_cache(maxsize=None)
def diagram_automorphisms(rs: RootSystem) -> Tuple[Tuple[int, ...], ...]:
    """All node permutations (as 1-based tuples phi[i-1] = phi(i)) preserving the Cartan matrix."""
    n = rs.rank
    a = rs.cartan_matrix
    out = []

    def extend(prefix: List[int]) -> None:
        k = len(prefix)
        if k == n:
            out.append(tuple(p + 1 for p in prefix))
            return
        for c in range(n):
            if c in prefix or a[c][c] != a[k][k]:
                continue
            if all(a[k][m] == a[c][prefix[m]] and a[m][k] == a[prefix[m]][c] for m in range(k)):
                prefix.append(c)
                extend(prefix)
                prefix.pop()

    extend([])
    return tuple(out)


def permute_root(phi: Sequence[int], beta: Sequence[int]) -> Root:
    out = [0] * len(beta)
    for k, b in enumerate(beta):
        out[phi[k] - 1] = b
    return tuple(out)


def conjugate(x: CHSS, w: HasseElement, phi: Sequence[int]) -> Tuple[CHSS, HasseElement]:
    phi = tuple(phi)
    if phi not in diagram_automorphisms(x.rs):
        raise ValueError(f"{phi} is not a Dynkin diagram automorphism")
    target = get_chss(x.lie_type, phi[x.node - 1])
    roots = [permute_root(phi, r) for r in x.roots_of(w.delta_w)]
    return target, HasseElement(target.mask_of(roots))


def brute_force_ideals(x: CHSS) -> List[int]:
    """Test oracle: subsets Phi of Delta(g_1) with Phi and Delta^+ minus Phi both closed."""
    rs = x.rs
    n1 = len(x.g1)
    out = []
    pos = rs.positive_roots
    for mask in range(1 << n1):
        phi = set(x.roots_of(mask))
        comp = set(pos) - phi
        if _closed(rs, phi) and _closed(rs, comp):
            out.append(mask)
    return out


def _closed(rs: RootSystem, s) -> bool:
    for a, b in itertools.combinations(s, 2):
        c = add(a, b)
        if rs.is_positive_root(c) and c not in s:
            return False
    return True
