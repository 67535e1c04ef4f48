"""Pools of zero-sum triples in Γ ≅ L × H, L cyclic with one involution, |H| odd.

With the Zeng partition of L∖{0, ι} into triples A_i = (a_i0, a_i1, a_i2)
and pairs {±b_i}, and the Skolem partition of H∖{0} into good 6-subsets with
witness triples (c_j0, c_j1, c_j2) and pairs {±d_i}, the families are
(second subscripts taken mod 3)::

    W0  {(a_i0, c_jh), (a_i1, c_j,h+1), (a_i2, c_j,h+2)} and its negation
    W1  {(0, c_j0), (0, c_j1), (0, c_j2)} and its negation         (l = 0)
    W2  {(b_1, c_jh), (-b_1, c_j,h+1), (0, c_j,h+2)} and negation  (l >= 1)
    T   {(a_ih, d_1), (a_i,h+1, -d_1), (a_i,h+2, 0)}               (p >= 1)

where |L| = 2l + 2 + 3m (m Zeng triples) and |H| = 2p + 1 + 6k.  Every
W-triple is listed next to its elementwise negation.  The T-triples have no
such partners; T is negation-closed only as a whole and is consumed whole.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .blocks import ZeroSumPart, skolem_partition, zeng_partition
from .errors import InputError
from .groups import GroupElement, GroupSpec, ProductSplit, factor_2_odd

POOL_TAGS = ("W0", "W1", "W2", "T", "W1'", "W3'", "S'")


@dataclass(frozen=True)
class PoolParameters:
    """|L| = 2l + 2 + 3m and |H| = 2p + 1 + 6k."""

    l: int
    m: int
    p: int
    k: int

    @classmethod
    def for_orders(cls, order_L: int, order_H: int) -> "PoolParameters":
        if order_L % 2 or order_H % 2 == 0:
            raise InputError(f"need |L| even and |H| odd, got {order_L}, {order_H}")
        l = next(l for l in (0, 1, 2) if (order_L - 2 - 2 * l) % 3 == 0)
        m = (order_L - 2 - 2 * l) // 3
        k, s = divmod(order_H, 6)
        return cls(l=l, m=m, p=(s - 1) // 2, k=k)

    def expected_sizes(self) -> dict[str, int]:
        """Element counts each pool should have."""
        a = 3 * self.m  # |L| - 2l - 2
        c = 6 * self.k  # |H| - 2p - 1
        out = {"W0": a * c}
        if self.l == 0:
            out["W1"] = c
        else:
            out["W2"] = 3 * c
        if self.p:
            out["T"] = 3 * a
        return out


@dataclass(frozen=True)
class TriplePool:
    """Zero-sum triples from one family.

    ``partner[i]`` is the index of the triple made of the negatives of triple
    ``i``, or None when that triple is not in the pool.  ``bundles`` groups
    indices into negation-closed units that selection must take or leave whole.
    """

    tag: str
    triples: tuple[ZeroSumPart, ...]
    partner: tuple[int | None, ...]
    bundles: tuple[tuple[int, ...], ...]

    @property
    def element_count(self) -> int:
        return 3 * len(self.triples)

    def elements(self) -> set[GroupElement]:
        return {x for t in self.triples for x in t}


def _triple(xs) -> ZeroSumPart:
    return ZeroSumPart(tuple(xs), "triple")


def _paired_pool(tag: str, pos_neg: list[tuple[list, list]]) -> TriplePool:
    triples, partner, bundles = [], [], []
    for pos, neg in pos_neg:
        i = len(triples)
        triples += [_triple(pos), _triple(neg)]
        partner += [i + 1, i]
        bundles.append((i, i + 1))
    return TriplePool(tag, tuple(triples), tuple(partner), tuple(bundles))


def _witness_triples(skolem: list[ZeroSumPart]) -> list[tuple[GroupElement, GroupElement, GroupElement]]:
    out = []
    for g in skolem:
        if g.kind == "good6":
            c, d = g.witnesses
            out.append((c, d, -(c + d)))
    return out


def build_pools(F: ProductSplit) -> list[TriplePool]:
    """W0 plus W1 or W2, plus T when H has a leftover pair."""
    return list(_build_pools_cached(F))


@lru_cache(maxsize=256)
def _build_pools_cached(F: ProductSplit) -> tuple[TriplePool, ...]:
    L, H = F.L, F.H
    if len(L.factors) != 1 or L.order % 2 or H.order % 2 == 0:
        raise InputError(f"pools need L cyclic of even order and |H| odd; got L={L}, H={H}")
    if F.group.involution_count != 1:
        raise InputError(f"{F.group} must have exactly one involution")
    n_L = L.order
    prm = PoolParameters.for_orders(n_L, H.order)
    zeng = zeng_partition(n_L, prm.m, prm.l)
    A = [tuple(x.residues[0] for x in part) for part in zeng if part.kind == "triple"]
    B = [part.elements[0].residues[0] for part in zeng if part.kind == "pair"]
    skolem = skolem_partition(H)
    C = _witness_triples(skolem)
    D = [part.elements[0] for part in skolem if part.kind == "pair"]
    e = F.pair

    w0 = []
    for a in A:
        for c in C:
            for h in range(3):
                pos = [e(a[x], c[(h + x) % 3]) for x in range(3)]
                neg = [e(-a[x], -c[(h + x) % 3]) for x in range(3)]
                w0.append((pos, neg))
    pools = [_paired_pool("W0", w0)]

    if prm.l == 0:
        pools.append(_paired_pool("W1", [([e(0, y) for y in c], [e(0, -y) for y in c]) for c in C]))
    else:
        b = B[0]
        w2 = []
        for h in range(3):
            for c in C:
                c0, c1, c2 = c[h % 3], c[(h + 1) % 3], c[(h + 2) % 3]
                w2.append(([e(b, c0), e(-b, c1), e(0, c2)], [e(-b, -c0), e(b, -c1), e(0, -c2)]))
        pools.append(_paired_pool("W2", w2))

    if prm.p:
        d = D[0]
        zero = H.zero
        ts = []
        for h in range(3):
            for a in A:
                ts.append(_triple([e(a[h % 3], d), e(a[(h + 1) % 3], -d), e(a[(h + 2) % 3], zero)]))
        pools.append(
            TriplePool("T", tuple(ts), tuple([None] * len(ts)), (tuple(range(len(ts))),) if ts else ())
        )
    return tuple(pools)


def is_power_of(n: int, p: int) -> bool:
    while n > 1 and n % p == 0:
        n //= p
    return n == 1


def regroup(group: GroupSpec, extra_component: int) -> ProductSplit:
    """Γ ≅ (Z2 × Z_{n1}) × H' where Z_{n1} is one odd primary component."""
    comps = group.components
    twos = [i for i, c in enumerate(comps) if c.prime == 2]
    if len(twos) != 1 or comps[twos[0]].order != 2:
        raise InputError(f"{group} must have 2-part Z2 to regroup")
    rest = [i for i, c in enumerate(comps) if c.prime != 2 and i != extra_component]
    return ProductSplit.from_blocks(group, ((twos[0], extra_component),), tuple((i,) for i in rest))


def build_pools_case22(group: GroupSpec) -> list[TriplePool]:
    """Pools for Γ ≅ Z2 × H with |H| = 3^β, β >= 2."""
    F = factor_2_odd(group)
    if F.L.order != 2 or not is_power_of(F.H.order, 3) or F.H.order < 9:
        raise InputError(f"{group} is not Z2 x H with |H| = 3^b, b >= 2")
    if F.H.order == 9:
        # single good 6-subset {0} x C from the Skolem partition of H
        return [p for p in build_pools(F) if p.tag == "W1"]
    odd = [i for i, c in enumerate(group.components) if c.prime == 3]
    if len(odd) < 2:
        raise InputError(f"{group}: H must be non-cyclic of order >= 27")
    # the smallest 3-component becomes Z_{n1}
    n1_comp = min(odd, key=lambda i: (group.components[i].order, i))
    F2 = regroup(group, n1_comp)
    if group.components[n1_comp].order >= 9:
        return build_pools(F2)
    return list(_z6_pools(F2))


@lru_cache(maxsize=64)
def _z6_pools(F: ProductSplit) -> tuple[TriplePool, ...]:
    """W1', W3', S' over Z6 × H'."""
    H = F.H
    skolem = skolem_partition(H)
    C = _witness_triples(skolem)
    d = next(part.elements[0] for part in skolem if part.kind == "pair")
    e = F.pair
    zero = H.zero

    w1 = []
    for h in range(3):
        for c in C:
            c0, c1, c2 = c[h % 3], c[(h + 1) % 3], c[(h + 2) % 3]
            w1.append(([e(1, c0), e(5, c1), e(0, c2)], [e(5, -c0), e(1, -c1), e(0, -c2)]))
    w3 = []
    for c in C:
        w3.append(([e(2, y) for y in c], [e(4, -y) for y in c]))
        # completes {2,4} x C; needed for |W'| = 5(|H'| - 3) + 6
        w3.append(([e(4, y) for y in c], [e(2, -y) for y in c]))
    s = [([e(4, d), e(4, zero), e(4, -d)], [e(2, -d), e(2, zero), e(2, d)])]
    return (_paired_pool("W1'", w1), _paired_pool("W3'", w3), _paired_pool("S'", s))
