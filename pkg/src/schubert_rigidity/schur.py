"""The exterior-algebra membership test for B_w = R_w.

Wedge vectors live in the top-degree piece of the exterior algebra of g_{-1}
spanned by E_{-gamma_1} ^ ... ^ E_{-gamma_k}. A key is a bitset over x.g1,
factors taken in increasing index order.
"""

from __future__ import annotations

import functools
import random
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .hasse import CHSS, HasseElement, _enumerate_masks
from .linalg import IntEchelon
from .rigidity import components
from .roots import ChevalleyBasis, Root, add, chevalley_basis, neg, sub
from .schubert import SchubertDescriptor, classify, z_grade

WedgeVector = Dict[int, int]  # integer coefficients: all structure constants are integers

DEFAULT_SPAN_BOUND = 10**6
MIN_SPAN_BOUND = 10**3


class Indeterminate(Exception):
    """The ordered-sequence count for a weight space exceeds the configured bound."""


@dataclass(frozen=True)
class PiPair:
    gamma: Root
    beta: Root
    s: int

    @property
    def positive_gap(self) -> bool:
        """beta - gamma is a nonnegative combination of simple roots.

        Otherwise the weight space is zero and the pair cannot witness membership.
        """
        return all(b >= g for b, g in zip(self.beta, self.gamma))


def _popcount(m: int) -> int:
    return bin(m).count("1")


def pi_set(x: CHSS, w: HasseElement, d: Optional[SchubertDescriptor] = None) -> List[PiPair]:
    d = d or classify(x, w)
    if not d.proper:
        raise ValueError("Pi(w) needs a proper cell")
    rs = x.rs
    comps = components(x, d.J)
    tops = [c.highest for c in comps if c.grade <= d.a]
    bots = [c.lowest for c in comps if c.grade > d.a]
    out = []
    for g in tops:
        for b in bots:
            if rs.is_root(sub(g, b)):
                continue
            pair = PiPair(g, b, z_grade(d.J, b) - z_grade(d.J, g))
            assert pair.s >= 2 or not pair.positive_gap, "(beta-gamma)(Z_w) < 2 with beta-gamma >= 0"
            out.append(pair)
    return out


def wedge_weight(x: CHSS, key: int) -> Root:
    """Sum of the g_1 roots in the key (the negative of the wedge vector's weight)."""
    out = [0] * x.rank
    k = 0
    while key:
        if key & 1:
            for t, v in enumerate(x.g1[k]):
                out[t] += v
        key >>= 1
        k += 1
    return tuple(out)


def v_w(w: HasseElement) -> WedgeVector:
    return {w.delta_w: 1}


def _integral(c: Fraction) -> int:
    if Fraction(c).denominator != 1:
        raise ValueError("wedge computations need an integral Chevalley basis")
    return int(c)


_INT_TABLES: Dict[int, Tuple[ChevalleyBasis, Dict[Tuple[Root, Root], int]]] = {}


def _constants(cb: ChevalleyBasis) -> Dict[Tuple[Root, Root], int]:
    """Integer copy of the structure constants, cached per basis object."""
    hit = _INT_TABLES.get(id(cb))
    if hit is None or hit[0] is not cb:
        if len(_INT_TABLES) > 64:
            _INT_TABLES.clear()
        hit = (cb, {k: _integral(v) for k, v in cb.structure_constants.items()})
        _INT_TABLES[id(cb)] = hit
    return hit[1]


def xi_v(x: CHSS, w: HasseElement, pair: PiPair, cb: Optional[ChevalleyBasis] = None) -> WedgeVector:
    """E_{-beta} ^ (E_gamma contracted into v_w)."""
    cb = cb or chevalley_basis(x.lie_type)
    g, b = x.g1_index[pair.gamma], x.g1_index[pair.beta]
    key = w.delta_w
    if not key >> g & 1:
        raise ValueError("gamma is not in Delta(w)")
    if key >> b & 1:
        raise ValueError("beta is in Delta(w)")
    below_g = key & ((1 << g) - 1)
    rest = key & ~(1 << g)
    below_b = rest & ((1 << b) - 1)
    sign = (-1) ** (_popcount(below_g) + _popcount(below_b))
    return {rest | (1 << b): sign * _integral(cb.kappa[pair.gamma])}


def lower(x: CHSS, cb: ChevalleyBasis, b: Root, vec: WedgeVector) -> WedgeVector:
    """E_{-b} acting as a derivation, b a positive root of Z_i-degree 0."""
    out: WedgeVector = {}
    nb = neg(b)
    N = _constants(cb)
    g1, index = x.g1, x.g1_index
    for key, c in vec.items():
        m, k = key, 0
        while m:
            if m & 1:
                tgt = index.get(add(g1[k], b))
                if tgt is not None and not key >> tgt & 1:
                    n = N[(nb, neg(g1[k]))]
                    lo, hi = min(k, tgt), max(k, tgt)
                    between = key & ((1 << hi) - 1) & ~((1 << (lo + 1)) - 1)
                    new = (key & ~(1 << k)) | (1 << tgt)
                    val = out.get(new, 0) + (-c * n if _popcount(between) & 1 else c * n)
                    if val:
                        out[new] = val
                    else:
                        out.pop(new, None)
            m >>= 1
            k += 1
    return out


def degree_one_roots(x: CHSS, J: Sequence[int]) -> List[Root]:
    """Delta(g_{0,1}): positive roots of Z_i-degree 0 and Z_w-degree 1."""
    i = x.node
    return [r for r in x.rs.positive_roots if r[i - 1] == 0 and z_grade(J, r) == 1]


def _fits(r: Sequence[int], target: Sequence[int]) -> bool:
    return all(a <= b for a, b in zip(r, target))


def count_sequences(steps: Sequence[Root], target: Root, s: int) -> int:
    """Number of ordered s-tuples from ``steps`` summing to ``target``."""

    @functools.lru_cache(maxsize=None)
    def count(rem: Root, k: int) -> int:
        if k == 0:
            return int(not any(rem))
        return sum(count(sub(rem, r), k - 1) for r in steps if _fits(r, rem))

    return count(tuple(target), s)


def weight_space_span(x: CHSS, w: HasseElement, pair: PiPair, cb: Optional[ChevalleyBasis] = None,
                      span_bound: int = DEFAULT_SPAN_BOUND, d: Optional[SchubertDescriptor] = None
                      ) -> List[WedgeVector]:
    """A basis of the span of b.v_w over ordered sequences b from Delta(g_{0,1}) summing to beta-gamma.

    The span is built one lowering step at a time, keeping an echelon basis per
    intermediate weight; this spans exactly the same space as the individual
    sequence vectors. The sequence count is still checked against the bound.
    """
    cb = cb or chevalley_basis(x.lie_type)
    d = d or classify(x, w)
    steps = degree_one_roots(x, d.J)
    target = sub(pair.beta, pair.gamma)
    total = count_sequences(steps, target, pair.s)
    if total > span_bound:
        raise Indeterminate(f"{total} ordered sequences exceed the bound {span_bound}")
    if total == 0:
        return []

    @functools.lru_cache(maxsize=None)
    def reachable(rem: Root, k: int) -> bool:
        if k == 0:
            return not any(rem)
        return any(reachable(sub(rem, r), k - 1) for r in steps if _fits(r, rem))

    level: Dict[Root, List[WedgeVector]] = {target: [v_w(w)]}
    for k in range(pair.s, 0, -1):
        nxt: Dict[Root, IntEchelon] = defaultdict(IntEchelon)
        for rem, vecs in level.items():
            for r in steps:
                if not _fits(r, rem):
                    continue
                rem2 = sub(rem, r)
                if not reachable(rem2, k - 1):
                    continue
                for v in vecs:
                    lv = lower(x, cb, r, v)
                    if lv:
                        nxt[rem2].add(lv)
        level = {rem: [row for _, row in e.rows] for rem, e in nxt.items() if e.rank}
    out = level.get(tuple(0 for _ in target), [])
    expect = add(wedge_weight(x, w.delta_w), target)
    for v in out:
        assert all(wedge_weight(x, key) == expect for key in v), "inhomogeneous weight vector"
    return out


@dataclass(frozen=True)
class PairOutcome:
    pair: PiPair
    member: Optional[bool]  # None when the span bound was hit
    span_dim: int


@dataclass(frozen=True)
class SchurResult:
    status: str  # "equal", "not_equal" or "indeterminate"
    outcomes: Tuple[PairOutcome, ...]

    @property
    def witnesses(self) -> Tuple[PiPair, ...]:
        return tuple(o.pair for o in self.outcomes if o.member)

    @property
    def equal(self) -> bool:
        if self.status == "indeterminate":
            raise Indeterminate("the span bound was hit for some pair")
        return self.status == "equal"

    def __bool__(self) -> bool:
        return self.equal


def pair_outcome(x: CHSS, w: HasseElement, pair: PiPair, cb: ChevalleyBasis, span_bound: int,
                 d: SchubertDescriptor) -> PairOutcome:
    try:
        span = weight_space_span(x, w, pair, cb, span_bound, d)
    except Indeterminate:
        return PairOutcome(pair, None, -1)
    xi = xi_v(x, w, pair, cb)
    e = IntEchelon()
    for v in span:
        e.add(v)
    return PairOutcome(pair, e.contains(xi), e.rank)


def _result(outcomes: Sequence[PairOutcome]) -> SchurResult:
    if any(o.member for o in outcomes):
        status = "not_equal"
    elif any(o.member is None for o in outcomes):
        status = "indeterminate"
    else:
        status = "equal"
    return SchurResult(status, tuple(outcomes))


def schur_equal(x: CHSS, w: HasseElement, cb: Optional[ChevalleyBasis] = None,
                span_bound: int = DEFAULT_SPAN_BOUND, only_s: Optional[int] = None) -> SchurResult:
    """B_w = R_w iff no pair of Pi(w) has xi v_w inside the spanned weight space.

    A single witnessing pair settles inequality even if other pairs hit the bound.
    """
    if span_bound < MIN_SPAN_BOUND:
        raise ValueError(f"span bound must be at least {MIN_SPAN_BOUND}")
    cb = cb or chevalley_basis(x.lie_type)
    d = classify(x, w)
    pairs = [p for p in pi_set(x, w, d) if only_s is None or p.s == only_s]
    return _result([pair_outcome(x, w, p, cb, span_bound, d) for p in pairs])


def random_sign_basis(cb: ChevalleyBasis, rng: random.Random) -> ChevalleyBasis:
    """The same algebra with every root vector independently negated at random."""
    return cb.rescaled({r: Fraction(rng.choice((-1, 1))) for r in cb.rs.roots})


# ---------------------------------------------------------------------------
# Triviality


def triviality_filter(x: CHSS, w: HasseElement) -> bool:
    """Cases listed as having an irreducible top wedge: length one, P^n, odd quadrics,
    and even quadrics Q^{2n-2} = D_n/P_1 with |w| != n-1."""
    fam, n, i = x.lie_type.family, x.rank, x.node
    k = w.length
    if k == 1:
        return True
    if fam == "A" and i in (1, n):
        return True
    if fam == "B" and i == 1:
        return True
    if fam == "D" and i == 1 and k != n - 1:
        return True
    return False


def wedge_irreducible(x: CHSS, k: int) -> bool:
    """The k-th wedge of g_{-1} is g_0-irreducible iff exactly one cell has length k.

    Each length-k cell contributes one irreducible summand, without repetition.
    """
    return sum(1 for m in _enumerate_masks(x) if _popcount(m) == k) == 1


def wedge_highest_weight_count(x: CHSS, k: int, cb: Optional[ChevalleyBasis] = None) -> int:
    """Dimension of the g_0-highest weight vectors in the k-th wedge of g_{-1}, by direct elimination."""
    import itertools

    from .linalg import kernel

    cb = cb or chevalley_basis(x.lie_type)
    N = cb.structure_constants
    raisers = [j for j in range(1, x.rank + 1) if j != x.node]
    blocks: Dict[Root, List[int]] = defaultdict(list)
    for combo in itertools.combinations(range(len(x.g1)), k):
        key = sum(1 << t for t in combo)
        blocks[wedge_weight(x, key)].append(key)
    total = 0
    for keys in blocks.values():
        cols = []
        for key in keys:
            col: Dict[Tuple[int, int], Fraction] = {}
            for j in raisers:
                aj = x.rs.simple(j)
                m, t = key, 0
                while m:
                    if m & 1:
                        tgt = x.g1_index.get(sub(x.g1[t], aj))
                        if tgt is not None and not key >> tgt & 1:
                            n = N[(aj, neg(x.g1[t]))]
                            lo, hi = min(t, tgt), max(t, tgt)
                            between = key & ((1 << hi) - 1) & ~((1 << (lo + 1)) - 1)
                            new = (key & ~(1 << t)) | (1 << tgt)
                            ck = (j, new)
                            col[ck] = col.get(ck, 0) + n * (-1) ** _popcount(between)
                            if not col[ck]:
                                del col[ck]
                    m >>= 1
                    t += 1
            cols.append(col)
        total += len(kernel(cols))
    return total


# ---------------------------------------------------------------------------
# Reduction to (beta-gamma)(Z_w) = 2


def two_step_decompositions(steps: Sequence[Root], target: Root) -> List[Tuple[Root, Root]]:
    """Unordered {b1, b2} from ``steps`` with b1 + b2 = target."""
    out = set()
    for b1 in steps:
        b2 = sub(target, b1)
        if b2 in steps:
            out.add(tuple(sorted((b1, b2))))
    return sorted(out)


def independence_criterion(x: CHSS, d: SchubertDescriptor, b1: Root, b2: Root) -> bool:
    """Distinct nu, mu in Delta(g_{1,a}) with nu+b1 and mu+b2 distinct roots."""
    top = [r for r in x.g1 if z_grade(d.J, r) == d.a]
    rs = x.rs
    for nu in top:
        s1 = add(nu, b1)
        if not rs.is_root(s1):
            continue
        for mu in top:
            if mu == nu:
                continue
            s2 = add(mu, b2)
            if rs.is_root(s2) and s2 != s1:
                return True
    return False


@dataclass(frozen=True)
class CriterionComparison:
    pair: PiPair
    member: bool
    criterion_independent: bool


@dataclass(frozen=True)
class ReductionReport:
    full: SchurResult
    restricted: SchurResult
    comparisons: Tuple[CriterionComparison, ...]

    @property
    def agree(self) -> bool:
        return self.full.status == self.restricted.status

    @property
    def criterion_agrees(self) -> bool:
        return all(c.member != c.criterion_independent for c in self.comparisons)


def reduction_check(x: CHSS, w: HasseElement, cb: Optional[ChevalleyBasis] = None,
                    span_bound: int = DEFAULT_SPAN_BOUND) -> ReductionReport:
    """Full Pi(w) test versus the s = 2 subset, plus the explicit independence
    criterion on s = 2 pairs whose weight space is spanned by one unordered pair."""
    if x.lie_type.family not in ("A", "C", "D"):
        raise ValueError("the reduction to s = 2 is asserted for types A, C and D only")
    cb = cb or chevalley_basis(x.lie_type)
    d = classify(x, w)
    full = schur_equal(x, w, cb, span_bound)
    restricted = _result([o for o in full.outcomes if o.pair.s == 2])
    steps = degree_one_roots(x, d.J)
    comps = []
    for o in restricted.outcomes:
        decs = two_step_decompositions(steps, sub(o.pair.beta, o.pair.gamma))
        if len(decs) == 1 and o.member is not None:
            b1, b2 = decs[0]
            comps.append(CriterionComparison(o.pair, o.member, independence_criterion(x, d, b1, b2)))
    return ReductionReport(full, restricted, tuple(comps))
