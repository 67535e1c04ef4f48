"""Zero-sum building blocks: good 6-subsets, Zeng and Skolem partitions."""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from . import exact_cover
from .errors import ConstructionError, InputError, ResourceError
from .groups import GroupElement, GroupSpec, element_sum

KINDS = ("pair", "triple", "good6", "composite")


@dataclass(frozen=True)
class ZeroSumPart:
    """A subset of a group intended to sum to zero.

    Nothing is checked on construction; :func:`irrlabel.results.verify_partition`
    does the checking.  ``good6`` parts keep their witnesses ``(c, d)`` and list
    elements in the order ``c, d, -c-d, -c, -d, c+d``; other parts are sorted.
    Composite parts remember the pieces they were assembled from.
    """

    elements: tuple[GroupElement, ...]
    kind: str
    witnesses: tuple[GroupElement, GroupElement] | None = None
    pieces: tuple["ZeroSumPart", ...] = field(default=(), compare=False)

    @classmethod
    def of(cls, elements, kind: str, **kw) -> "ZeroSumPart":
        if kind not in KINDS:
            raise InputError(f"unknown part kind {kind!r}")
        return cls(tuple(sorted(elements)), kind, **kw)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    @property
    def group(self) -> GroupSpec:
        return self.elements[0].group

    def total(self) -> GroupElement:
        return element_sum(self.group, self.elements)

    def to_strings(self) -> list[str]:
        return [str(x) for x in self.elements]


def good6_from_witnesses(c: GroupElement, d: GroupElement) -> ZeroSumPart:
    values = (c, d, -(c + d), -c, -d, c + d)
    if len(set(values)) != 6:
        raise InputError(f"witnesses c={c}, d={d} give colliding values {[str(v) for v in values]}")
    return ZeroSumPart(values, "good6", witnesses=(c, d))


def split_good6(g: ZeroSumPart, mode: str) -> list[ZeroSumPart]:
    if g.kind != "good6" or g.witnesses is None:
        raise InputError("split_good6 needs a good6 part with witnesses")
    c, d = g.witnesses
    if mode == "pairs":
        return [ZeroSumPart.of(p, "pair") for p in ((c, -c), (d, -d), (c + d, -(c + d)))]
    if mode == "triples":
        return [ZeroSumPart.of(t, "triple") for t in ((c, d, -(c + d)), (-c, -d, c + d))]
    raise InputError(f"mode must be 'pairs' or 'triples', not {mode!r}")


def inverse_pair(x: GroupElement) -> ZeroSumPart:
    return ZeroSumPart.of((x, -x), "pair")


# -- Zeng partitions of Z_n \ {0, n/2} -----------------------------------------


def zeng_partition(n: int, m: int, l: int, *, node_limit: int = 2_000_000) -> list[ZeroSumPart]:
    """Partition Z_n minus {0, n/2} into ``m`` zero-sum triples and ``l`` pairs.

    Returns the triples (sorted by least element) followed by the pairs.
    """
    if n % 2 or n < 2:
        raise InputError(f"n must be even and >= 2, got {n}")
    if m < 0 or l < 0 or 3 * m + 2 * l != n - 2:
        raise InputError(f"need 3m + 2l = n - 2, got n={n}, m={m}, l={l}")
    G = GroupSpec.cyclic(n)
    triples, pairs = _zeng_cached(n, m, node_limit)
    return [ZeroSumPart.of((G.element(x) for x in t), "triple") for t in triples] + [
        ZeroSumPart.of((G.element(x) for x in p), "pair") for p in pairs
    ]


@lru_cache(maxsize=512)
def _zeng_cached(n: int, m: int, node_limit: int):
    q = n // 2
    t = m // 2  # m is always even: 3m = n - 2 - 2l
    if t == 0:
        triples: list[tuple[int, ...]] = []
    else:
        # Class sets of Skolem / hooked Skolem type always admit a+b=c triples.
        if t % 4 in (0, 1):
            classes = list(range(1, 3 * t + 1))
        elif 3 * t + 1 <= q - 1:
            classes = list(range(1, 3 * t)) + [3 * t + 1]
        else:
            classes = None
        triples = None
        if classes is not None:
            try:
                triples = _class_triples(n, classes, node_limit)
            except ResourceError:
                triples = None
        if triples is None:
            triples = _zeng_element_search(n, m, node_limit)
    covered = {x for tr in triples for x in tr}
    pairs = [(x, n - x) for x in range(1, q) if x not in covered]
    out_t = tuple(sorted(tuple(sorted(tr)) for tr in triples))
    return out_t, tuple(pairs)


def _class_triples(n: int, classes: Sequence[int], node_limit: int):
    """Cover ``classes`` (as ±x) by good 6-subsets of Z_n; return the triples."""
    cls = set(classes)
    rows = {}
    for a in classes:
        for b in classes:
            if b <= a:
                continue
            for c1 in (b, n - b):
                s = (a + c1) % n
                c = min(s, n - s)
                if c in cls and c > b:
                    rows[(a, c1)] = (a, b, c)
    sol = exact_cover.first(list(classes), rows, node_limit=node_limit, key=lambda x: x)
    if sol is None:
        return None
    out = []
    for a, c1 in sol:
        z = (-(a + c1)) % n
        out.append((a, c1, z))
        out.append(((-a) % n, (-c1) % n, (-z) % n))
    return out


def _zeng_element_search(n: int, m: int, node_limit: int):
    """Backtracking over elements, forcing the negative of every element
    placed in a triple into a triple as well (the pairs are then automatic)."""
    q = n // 2
    used = [False] * n
    used[0] = used[q] = True
    forced = [False] * n
    state = {"nforced": 0, "nodes": 0}
    triples: list[tuple[int, int, int]] = []

    def force(e: int) -> bool:
        ne = (-e) % n
        if not used[ne] and not forced[ne]:
            forced[ne] = True
            state["nforced"] += 1
            return True
        return False

    def unforce(e: int):
        forced[e] = False
        state["nforced"] -= 1

    def rec(m_left: int) -> bool:
        state["nodes"] += 1
        if state["nodes"] > node_limit:
            raise ConstructionError(f"Zeng search for n={n}, m={m} exceeded {node_limit} nodes")
        if state["nforced"] > 3 * m_left:
            return False
        if state["nforced"]:
            x = next(e for e in range(1, n) if forced[e] and not used[e])
        else:
            # nothing forced: the unused set is negation-closed, so it pairs up
            x = next((e for e in range(1, n) if not used[e]), None)
            if x is None or m_left == 0:
                return m_left == 0
        was_forced = forced[x]
        used[x] = True
        if was_forced:
            unforce(x)
        fx = force(x)
        for y in range(1, n):
            z = (-x - y) % n
            if used[y] or used[z] or z <= y or z == x:
                continue
            used[y] = used[z] = True
            unf = [e for e in (y, z) if forced[e]]
            for e in unf:
                unforce(e)
            newly = [(-e) % n for e in (y, z) if force(e)]
            triples.append((x, y, z))
            if rec(m_left - 1):
                return True
            triples.pop()
            for e in newly:
                unforce(e)
            for e in unf:
                forced[e] = True
                state["nforced"] += 1
            used[y] = used[z] = False
        if fx:
            unforce((-x) % n)
        if was_forced:
            forced[x] = True
            state["nforced"] += 1
            used[x] = False
            return False
        # x and -x form a pair
        used[(-x) % n] = True
        if rec(m_left):
            return True
        used[x] = used[(-x) % n] = False
        return False

    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, 10 * n + 1000))
    try:
        if not rec(m):
            raise ConstructionError(f"no Zeng partition found for n={n}, m={m}")
    finally:
        sys.setrecursionlimit(limit)
    return triples


# -- Skolem partitions of odd-order groups --------------------------------------


def skolem_partition(H: GroupSpec, *, node_limit: int = 2_000_000) -> list[ZeroSumPart]:
    """Split H minus {0} into good 6-subsets followed by zero-sum pairs."""
    if H.order % 2 == 0:
        raise InputError(f"Skolem partitions need odd order, {H} has order {H.order}")
    goods, pairs = _skolem_cached(H, node_limit)
    return [good6_from_witnesses(H.from_index(c), H.from_index(d)) for c, d in goods] + [
        inverse_pair(H.from_index(x)) for x in pairs
    ]


@lru_cache(maxsize=256)
def _skolem_cached(H: GroupSpec, node_limit: int):
    n = H.order
    k, s = divmod(n, 6)
    n_pairs = (s - 1) // 2
    elems = H.elements()
    idx = {x: i for i, x in enumerate(elems)}
    neg = [idx[-x] for x in elems]
    reps = [i for i in range(1, n) if i < neg[i]]
    rep_of = {i: min(i, neg[i]) for i in range(1, n)}
    rows: dict[tuple[int, int, int], tuple] = {}
    if k:
        for a in reps:
            for b in reps:
                if b <= a:
                    continue
                for c1 in (b, neg[b]):
                    c = rep_of.get(idx[elems[a] + elems[c1]])
                    if c is not None and c > b:
                        rows[(0, a, c1)] = (a, b, c)
    # pair tokens are negative items so that exactly n_pairs classes stay pairs
    for a in reps:
        for j in range(n_pairs):
            rows[(1, a, j)] = (a, -(j + 1))
    items = reps + [-(j + 1) for j in range(n_pairs)]
    sol = exact_cover.first(items, rows, node_limit=node_limit, key=lambda x: x)
    if sol is None:
        raise ConstructionError(f"no Skolem partition found for {H}")
    goods = tuple(sorted((a, c1) for kind, a, c1 in sol if kind == 0))
    pairs = tuple(sorted(a for kind, a, _ in sol if kind == 1))
    return goods, pairs
