"""Exhaustive search for disjoint zero-sum subsets of prescribed sizes.

The oracle is independent of every construction in the package: it only uses
the group's addition table.  The search walks the elements in order; the
least free element either opens a part of one of the still-missing sizes
(whose other members are larger) or is left out, which is allowed only as
often as the slack |Γ| - |forbidden| - Σ permits.  So every part is increasing,
its first element is minimal among those remaining, and equal-size parts come
out ordered by least element.  An ``infeasible`` verdict is returned only after
this reduced tree has been exhausted.
"""

from __future__ import annotations

import os
import time
from dataclasses import dataclass
from typing import Iterable, Sequence

from .blocks import ZeroSumPart
from .errors import InputError, ResourceError
from .groups import GroupElement, GroupSpec
from .results import PartitionResult, SizeDemand

ORACLE_ORDER_CAP = 4096
CROSS_VALIDATE_CAP = 24


@dataclass(frozen=True)
class SearchBudget:
    time_limit: float = 10.0
    node_limit: int = 5_000_000

    def __post_init__(self):
        if self.time_limit <= 0 or self.node_limit <= 0:
            raise InputError("search budgets must be positive")

    @classmethod
    def from_env(cls, **overrides) -> "SearchBudget":
        """Defaults, then IRR_BUDGET_MS / IRR_NODE_LIMIT, then non-None overrides."""
        kw = {}
        try:
            if os.environ.get("IRR_BUDGET_MS"):
                kw["time_limit"] = int(os.environ["IRR_BUDGET_MS"]) / 1000
            if os.environ.get("IRR_NODE_LIMIT"):
                kw["node_limit"] = int(os.environ["IRR_NODE_LIMIT"])
        except ValueError as exc:
            raise InputError(f"bad budget environment variable: {exc}") from None
        kw.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**kw)


@dataclass(frozen=True)
class OracleReport:
    verdict: str
    nodes: int
    elapsed_ms: float
    partition: PartitionResult | None = None

    @property
    def feasible(self) -> bool:
        return self.verdict == "feasible"

    def to_json(self) -> dict:
        out = {"verdict": self.verdict, "nodes": self.nodes, "elapsed_ms": round(self.elapsed_ms, 3)}
        if self.partition is not None:
            out["partition"] = self.partition.to_json()
        return out


class _OutOfBudget(Exception):
    pass


def oracle_partition(
    G: GroupSpec,
    sizes: SizeDemand | Sequence[int],
    forbidden: Iterable[GroupElement] = (),
    budget: SearchBudget | None = None,
) -> OracleReport:
    demand = SizeDemand.coerce(sizes)
    budget = budget or SearchBudget()
    forbidden = tuple(sorted(set(forbidden)))
    if any(x.group != G for x in forbidden):
        raise InputError(f"forbidden elements must belong to {G}")
    n = G.order
    if n > ORACLE_ORDER_CAP:
        raise ResourceError(f"{G} is beyond the oracle cap of {ORACLE_ORDER_CAP} elements")
    if demand.total > n - len(forbidden):
        raise InputError(
            f"demand {demand.total} exceeds the {n - len(forbidden)} usable elements of {G}"
        )
    elems = G.elements()
    idx = {x: i for i, x in enumerate(elems)}
    add = [[idx[x + y] for y in elems] for x in elems]
    neg = [idx[-x] for x in elems]
    free = [True] * n
    for x in forbidden:
        free[idx[x]] = False

    remaining: dict[int, int] = {}
    for r in demand.sizes:
        remaining[r] = remaining.get(r, 0) + 1
    size_order = sorted(remaining, reverse=True)
    free_sum = 0
    for i in range(n):
        if free[i]:
            free_sum = add[free_sum][i]
    state = {"slack": n - len(forbidden) - demand.total, "sum": free_sum, "open": len(demand.sizes)}
    chosen: list[list[int]] = []
    nodes = 0
    start = time.perf_counter()
    deadline = start + budget.time_limit

    def tick():
        nonlocal nodes
        nodes += 1
        if nodes > budget.node_limit or (nodes & 0x3FF == 0 and time.perf_counter() > deadline):
            raise _OutOfBudget

    def take(e: int):
        free[e] = False
        state["sum"] = add[state["sum"]][neg[e]]

    def give(e: int):
        free[e] = True
        state["sum"] = add[state["sum"]][e]

    def step(lo: int) -> bool:
        if not state["open"]:
            return True
        # placed parts are zero-sum, so the free elements sum to state["sum"];
        # with no slack that is 0, with slack 1 it is the element left out
        slack = state["slack"]
        if slack == 0 and state["sum"] != 0:
            return False
        if slack == 1 and not free[state["sum"]]:
            return False
        if state["open"] == 1:
            r = next(r for r in size_order if remaining[r])
            if slack < r - 1:
                return last_by_complement(lo, r)
        x = next((e for e in range(lo, n) if free[e]), None)
        if x is None:
            return False
        tick()
        take(x)
        for r in size_order:
            if not remaining[r]:
                continue
            remaining[r] -= 1
            state["open"] -= 1
            if grow([x], r, x + 1, x, x):
                return True
            state["open"] += 1
            remaining[r] += 1
        if slack:
            state["slack"] -= 1
            if step(x + 1):
                return True
            state["slack"] += 1
        give(x)
        return False

    def last_by_complement(lo: int, r: int) -> bool:
        # every free element is >= lo; the last part is the free set minus
        # `slack` elements summing to state["sum"]
        pool = [e for e in range(lo, n) if free[e]]
        k = len(pool) - r
        target = state["sum"]
        out: list[int] = []

        def pick(start: int, acc: int) -> bool:
            if len(out) == k - 1:
                last = add[target][neg[acc]]
                tick()
                if last >= lo and free[last] and (not out or last > out[-1]):
                    out.append(last)
                    return True
                return False
            for j in range(start, len(pool) - (k - len(out) - 1)):
                tick()
                out.append(pool[j])
                if pick(j + 1, add[acc][pool[j]]):
                    return True
                out.pop()
            return False

        if k == 0:
            found = target == 0
        else:
            found = pick(0, 0)
        if found:
            left = set(out)
            chosen.append([e for e in pool if e not in left])
        return found

    def grow(part: list[int], r: int, lo: int, acc: int, first: int) -> bool:
        # the rest of this part sums to -acc, so the unused elements sum to sum + acc
        if state["slack"] < 2:
            unused = add[state["sum"]][acc]
            if state["slack"] == 0 and unused != 0:
                return False
            if state["slack"] == 1 and not free[unused]:
                return False
        if len(part) == r:
            if acc != 0:
                return False
            chosen.append(list(part))
            if step(first + 1):
                return True
            chosen.pop()
            return False
        if len(part) == r - 1:
            last = neg[acc]
            if last < lo or not free[last]:
                return False
            tick()
            take(last)
            part.append(last)
            if grow(part, r, last + 1, 0, first):
                return True
            part.pop()
            give(last)
            return False
        for e in range(lo, n - (r - len(part) - 1)):
            if not free[e]:
                continue
            tick()
            take(e)
            part.append(e)
            if grow(part, r, e + 1, add[acc][e], first):
                return True
            part.pop()
            give(e)
        return False

    try:
        found = step(0)
    except _OutOfBudget:
        return OracleReport("unknown", nodes, (time.perf_counter() - start) * 1000)
    elapsed = (time.perf_counter() - start) * 1000
    if not found:
        return OracleReport("infeasible", nodes, elapsed)
    # hand the parts back in demand order
    by_size: dict[int, list[list[int]]] = {}
    for members in chosen:
        by_size.setdefault(len(members), []).append(members)
    parts = tuple(
        ZeroSumPart.of((elems[i] for i in by_size[r].pop(0)), "composite") for r in demand.sizes
    )
    result = PartitionResult(
        group=G, demand=demand, parts=parts, excluded=forbidden, path="oracle"
    ).certified()
    return OracleReport("feasible", nodes, elapsed, result)


@dataclass(frozen=True)
class CrossValidation:
    group: GroupSpec
    demand: SizeDemand
    theorem: str
    oracle: str
    nodes: int
    detail: str = ""

    @property
    def applicable(self) -> bool:
        return self.theorem != "n/a"

    @property
    def agree(self) -> bool | None:
        """None when only the oracle applies or either side is unknown."""
        if not self.applicable or "unknown" in (self.theorem, self.oracle):
            return None
        return self.theorem == self.oracle

    def to_json(self) -> dict:
        return {
            "group": str(self.group),
            "demand": list(self.demand.sizes),
            "theorem": self.theorem,
            "oracle": self.oracle,
            "agree": self.agree,
            "nodes": self.nodes,
            "detail": self.detail,
        }


def cross_validate(
    G: GroupSpec,
    demand: SizeDemand | Sequence[int],
    budget: SearchBudget | None = None,
    *,
    max_order: int = CROSS_VALIDATE_CAP,
) -> CrossValidation:
    """Compare the construction's verdict with the oracle's over all of Γ."""
    from .partition import general_partition  # partition imports this module
    from .errors import ConstructionError, UnsupportedClassError

    demand = SizeDemand.coerce(demand)
    if G.order > max_order:
        raise InputError(f"cross-validation is limited to |Γ| <= {max_order}; {G} has order {G.order}")
    detail = ""
    try:
        general_partition(G, demand, allow_oracle=False)
        theorem = "feasible"
    except (UnsupportedClassError, InputError) as exc:
        theorem, detail = "n/a", str(exc)
    except ConstructionError as exc:
        theorem, detail = "infeasible", str(exc)
    if demand.total > G.order:
        return CrossValidation(G, demand, theorem, "infeasible", 0, detail)
    report = oracle_partition(G, demand, budget=budget)
    return CrossValidation(G, demand, theorem, report.verdict, report.nodes, detail)
