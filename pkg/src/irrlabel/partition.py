"""Zero-sum partitions of Γ with prescribed part sizes.

:func:`theorem_zero_sum` handles groups with exactly one involution ι and part
sizes >= 4 summing to |Γ| - 2.  Odd parts each receive one zero-sum triple;
triples are drawn from the pools in negation-closed bundles so that whatever
is left of Γ∖{0, ι} splits into inverse pairs {x, -x}, which fill the rest.
:func:`general_partition` pads smaller demands and routes everything else to
the exhaustive oracle.
"""

from __future__ import annotations

import logging
from dataclasses import replace
from typing import Sequence

from .blocks import ZeroSumPart, inverse_pair, zeng_partition
from .errors import ConstructionError, InfeasibleError, InputError, ResourceError, UnsupportedClassError
from .groups import GroupElement, GroupSpec, factor_2_odd
from .oracle import OracleReport, SearchBudget, oracle_partition
from .pools import TriplePool, build_pools, build_pools_case22, is_power_of, regroup
from .results import PartitionResult, SizeDemand, verify_partition

log = logging.getLogger(__name__)

MIN_THEOREM_PART = 4
GOOD6_SEARCH_NODES = 200_000


def _check_theorem_demand(G: GroupSpec, demand: SizeDemand) -> None:
    if G.involution_count != 1:
        raise InputError(f"{G} has {G.involution_count} involutions; the construction needs exactly one")
    if not demand.sizes:
        raise InputError("empty size demand")
    small = [r for r in demand.sizes if r < MIN_THEOREM_PART]
    if small:
        raise InputError(f"part sizes must be >= {MIN_THEOREM_PART}, got {small}")
    if demand.total != G.order - 2:
        raise InputError(f"sizes sum to {demand.total}; need |Γ| - 2 = {G.order - 2}")
    if demand.odd_count % 2:
        raise InputError(f"odd number ({demand.odd_count}) of odd sizes")


def _assemble(
    G: GroupSpec, demand: SizeDemand, triples: list[ZeroSumPart], pairs: list[ZeroSumPart]
) -> tuple[ZeroSumPart, ...]:
    """One triple plus pairs for each odd size, pairs only for each even size."""
    t_iter, p_iter = iter(triples), iter(pairs)
    parts = []
    for r in demand.sizes:
        pieces = [next(t_iter)] if r % 2 else []
        pieces += [next(p_iter) for _ in range((r - 3 * (r % 2)) // 2)]
        parts.append(
            ZeroSumPart.of((x for p in pieces for x in p), "composite", pieces=tuple(pieces))
        )
    if next(t_iter, None) is not None or next(p_iter, None) is not None:
        raise ConstructionError("unused pieces after assembling the parts")
    return tuple(parts)


def _leftover_pairs(G: GroupSpec, used: set[GroupElement]) -> list[ZeroSumPart] | None:
    rest = [x for x in G.elements() if x not in used]
    rest_set = set(rest)
    if any(-x not in rest_set or -x == x for x in rest):
        return None
    return [inverse_pair(x) for x in rest if x < -x]


def _select(pools: Sequence[TriplePool], s: int) -> tuple[list[ZeroSumPart], dict[str, int]] | None:
    """Pick ``s`` triples as whole negation-closed bundles, W families first.

    When W cannot supply them all, T is taken whole and W tops up the rest.
    """
    w_bundles = [(P.tag, [P.triples[i] for i in b]) for P in pools if P.tag != "T" for b in P.bundles]
    t_bundles = [(P.tag, [P.triples[i] for i in b]) for P in pools if P.tag == "T" for b in P.bundles]
    w_cap = sum(len(b) for _, b in w_bundles)
    if s <= w_cap:
        plan = w_bundles
    else:
        plan = t_bundles + w_bundles
    chosen: list[ZeroSumPart] = []
    used: dict[str, int] = {}
    for tag, b in plan:
        if len(chosen) == s:
            break
        if len(chosen) + len(b) > s:
            continue
        chosen += b
        used[tag] = used.get(tag, 0) + len(b)
    return (chosen, used) if len(chosen) == s else None


def _candidate_pools(G: GroupSpec) -> list[tuple[str, list[TriplePool]]]:
    F = factor_2_odd(G)
    if F.L.order > 2:
        return [("split", build_pools(F))]
    H = F.H
    out = []
    if is_power_of(H.order, 3):
        if H.order == 9 or not H.is_cyclic():
            out.append(("z2-by-3group", build_pools_case22(G)))
    else:
        comps = G.components
        odd = [i for i, c in enumerate(comps) if c.prime not in (2, 3)]
        # prefer the smallest component that leaves |H'| >= 7
        odd.sort(key=lambda i: (comps[i].order, i))
        good = [i for i in odd if H.order // comps[i].order >= 7 and len(comps) > 2]
        if good:
            out.append(("regrouped", build_pools(regroup(G, good[0]))))
    # the plain split L = Z2 gives the single family W1
    out.append(("z2-w1", build_pools(F)))
    return out


def _good6_search(G: GroupSpec, s: int, node_limit: int = GOOD6_SEARCH_NODES) -> list[ZeroSumPart] | None:
    """Find s/2 disjoint good 6-subsets of Γ∖{0, ι}, returned as 2 triples each."""
    iota = G.the_involution()
    elems = [x for x in G.elements() if x != G.zero and x != iota]
    used: set[GroupElement] = set()
    out: list[ZeroSumPart] = []
    nodes = 0

    def rec(start: int) -> bool:
        nonlocal nodes
        if len(out) == s:
            return True
        nodes += 1
        if nodes > node_limit:
            raise ResourceError("good 6-subset search exceeded its node budget")
        i = next((j for j in range(start, len(elems)) if elems[j] not in used), None)
        if i is None:
            return False
        x = elems[i]
        for y in elems[i + 1 :]:
            z = -(x + y)
            six = {x, y, z, -x, -y, -z}
            if len(six) != 6 or used & six:
                continue
            used.update(six)
            out.extend([ZeroSumPart.of((x, y, z), "triple"), ZeroSumPart.of((-x, -y, -z), "triple")])
            if rec(i + 1):
                return True
            del out[-2:]
            used.difference_update(six)
        # leave x and -x for the inverse pairs
        used.update((x, -x))
        ok = rec(i + 1)
        used.difference_update((x, -x))
        return ok

    try:
        return out if rec(0) else None
    except ResourceError:
        return None


def _zeng_route(G: GroupSpec, demand: SizeDemand) -> PartitionResult:
    n = G.order
    s = demand.odd_count
    l = (n - 2 - 3 * s) // 2
    g = G.generator()
    blocks = zeng_partition(n, s, l)
    mapped = [
        ZeroSumPart.of((G.multiple(g, x.residues[0]) for x in b), b.kind) for b in blocks
    ]
    triples = [b for b in mapped if b.kind == "triple"]
    pairs = [b for b in mapped if b.kind == "pair"]
    parts = _assemble(G, demand, triples, pairs)
    excluded = (G.zero, G.the_involution())
    return PartitionResult(G, demand, parts, excluded, "zeng", case="cyclic")


def theorem_zero_sum(
    G: GroupSpec,
    demand: SizeDemand | Sequence[int],
    *,
    allow_oracle: bool = True,
    budget: SearchBudget | None = None,
    route: str = "auto",
) -> PartitionResult:
    """Partition Γ∖{0, ι} into zero-sum parts of the demanded sizes.

    ``route="auto"`` sends cyclic groups to the Zeng partition and the rest
    to the triple pools; ``"pools"`` uses the pools for cyclic groups too.
    """
    demand = SizeDemand.coerce(demand)
    if route not in ("auto", "pools"):
        raise InputError(f"route must be 'auto' or 'pools', not {route!r}")
    _check_theorem_demand(G, demand)
    iota = G.the_involution()
    s = demand.odd_count

    if G.is_cyclic() and route == "auto":
        return _finish(G, _zeng_route(G, demand), {"pools": {}, "negation_closed": True})

    for case, pools in _candidate_pools(G):
        picked = _select(pools, s)
        if picked is None:
            continue
        triples, used = picked
        covered = {x for t in triples for x in t} | {G.zero, iota}
        pairs = _leftover_pairs(G, covered)
        if pairs is None:
            log.warning("%s: residual after %s selection is not negation-closed", G, case)
            continue
        parts = _assemble(G, demand, triples, pairs)
        result = PartitionResult(G, demand, parts, (G.zero, iota), "theorem", case=case)
        return _finish(G, result, {"pools": used, "negation_closed": True})

    triples = _good6_search(G, s)
    if triples is not None:
        pairs = _leftover_pairs(G, {x for t in triples for x in t} | {G.zero, iota})
        if pairs is not None:
            warn = "pool selection failed; triples from bounded good 6-subset search"
            log.warning("%s %s: %s", G, demand.sizes, warn)
            parts = _assemble(G, demand, triples, pairs)
            result = PartitionResult(
                G, demand, parts, (G.zero, iota), "theorem", case="good6-search", warnings=(warn,)
            )
            return _finish(G, result, {"pools": {}, "negation_closed": True})

    if not allow_oracle:
        raise ConstructionError(f"no pool selection for {G} with {s} odd parts")
    warn = "pool selection failed; fell back to exhaustive search"
    log.warning("%s %s: %s", G, demand.sizes, warn)
    report = oracle_partition(G, demand, forbidden=(G.zero, iota), budget=budget or SearchBudget.from_env())
    result = _oracle_result(report, demand)
    return _finish(G, replace(result, warnings=(warn,)), None)


def _finish(G: GroupSpec, result: PartitionResult, construction: dict | None) -> PartitionResult:
    result = result.certified()
    if construction is not None:
        result.certificate["construction"] = construction
    if not result.certificate["ok"]:
        raise ConstructionError(
            f"verifier rejected the {result.path} construction for {G}: {result.certificate['failures']}"
        )
    return result


def _oracle_result(report: OracleReport, demand: SizeDemand) -> PartitionResult:
    if report.verdict == "infeasible":
        raise InfeasibleError(
            f"no disjoint zero-sum subsets of sizes {list(demand.sizes)} exist", report=report
        )
    if report.verdict == "unknown":
        raise ResourceError(
            f"search budget exhausted after {report.nodes} nodes ({report.elapsed_ms:.0f} ms)"
        )
    return report.partition


def general_partition(
    G: GroupSpec,
    demand: SizeDemand | Sequence[int],
    allow_oracle: bool = True,
    *,
    budget: SearchBudget | None = None,
) -> PartitionResult:
    """Disjoint zero-sum subsets of Γ with the demanded sizes.

    With one involution and all sizes >= 4 the demand is padded with one
    extra part of size |Γ| - 2 - Σ (when that is nonzero) and solved by
    :func:`theorem_zero_sum`; the pad is reported via ``pad_index``.
    Other demands go to the oracle over all of Γ when ``allow_oracle``.
    """
    demand = SizeDemand.coerce(demand)
    if not demand.sizes:
        raise InputError("empty size demand")
    if demand.total > G.order:
        raise InputError(f"sizes sum to {demand.total} > |Γ| = {G.order}")
    theorem_ok = G.involution_count == 1 and min(demand.sizes) >= MIN_THEOREM_PART
    if theorem_ok:
        pad = G.order - 2 - demand.total
        if pad < 0 or 0 < pad < MIN_THEOREM_PART:
            if not allow_oracle:
                raise InputError(
                    f"|Γ| - 2 - Σ = {pad}; the construction needs 0 or >= {MIN_THEOREM_PART} "
                    f"(guaranteed when |Γ| >= n + 6)"
                )
        else:
            if pad == 0:
                return theorem_zero_sum(G, demand, allow_oracle=allow_oracle, budget=budget)
            padded = SizeDemand(demand.sizes + (pad,))
            res = theorem_zero_sum(G, padded, allow_oracle=allow_oracle, budget=budget)
            return replace(res, pad_index=len(demand.sizes))
    if not allow_oracle:
        why = (
            f"{G} has {G.involution_count} involutions"
            if G.involution_count != 1
            else f"part sizes below {MIN_THEOREM_PART}"
        )
        raise UnsupportedClassError(f"{why}; no construction applies and the oracle is disabled")
    report = oracle_partition(G, demand, budget=budget or SearchBudget.from_env())
    return _oracle_result(report, demand)
