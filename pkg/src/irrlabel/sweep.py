"""Property sweeps: construction vs oracle, and random labeling runs."""

from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .errors import IrrlabelError
from .groups import GroupSpec, presentations
from .labeler import label_digraph, random_digraph, weak_components
from .oracle import CrossValidation, SearchBudget, cross_validate
from .partition import MIN_THEOREM_PART


def theorem_applies(G: GroupSpec, sizes: tuple[int, ...]) -> bool:
    if G.involution_count != 1 or min(sizes) < MIN_THEOREM_PART:
        return False
    pad = G.order - 2 - sum(sizes)
    return pad == 0 or pad >= MIN_THEOREM_PART


def demands(G: GroupSpec, *, applicable_only: bool = False) -> list[tuple[int, ...]]:
    """Non-increasing size lists with parts >= 4 and Σ <= |Γ| - 1 (|Γ| - 2 with one involution)."""
    cap = G.order - (2 if G.involution_count == 1 else 1)
    out: list[tuple[int, ...]] = []

    def rec(left: int, top: int, cur: list[int]):
        if cur:
            out.append(tuple(cur))
        for r in range(min(top, left), MIN_THEOREM_PART - 1, -1):
            cur.append(r)
            rec(left - r, r, cur)
            cur.pop()

    rec(cap, cap, [])
    out.sort(key=lambda d: (sum(d), d))
    if applicable_only:
        out = [d for d in out if theorem_applies(G, d)]
    return out


def _cv_job(args) -> CrossValidation:
    G, d, budget = args
    return cross_validate(G, d, budget)


def cross_validation_sweep(
    max_order: int,
    *,
    min_order: int = 4,
    applicable_only: bool = False,
    budget: SearchBudget | None = None,
    jobs: int = 1,
) -> list[CrossValidation]:
    """Every presentation in the order range against every demand; results in a fixed order."""
    budget = budget or SearchBudget.from_env()
    work = [
        (G, d, budget)
        for G in presentations(max_order, min_order)
        for d in demands(G, applicable_only=applicable_only)
    ]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_cv_job, work, chunksize=8))
    return [_cv_job(w) for w in work]


def summarize(rows: list[CrossValidation]) -> dict:
    return {
        "instances": len(rows),
        "agree": sum(r.agree is True for r in rows),
        "disagree": sum(r.agree is False for r in rows),
        "oracle_only": sum(not r.applicable for r in rows),
        "unknown": sum(r.oracle == "unknown" for r in rows),
    }


@dataclass(frozen=True)
class LabelingRun:
    index: int
    n: int
    components: tuple[int, ...]
    group: str
    margin: int
    ok: bool
    path: str
    fallback: bool
    seconds: float
    error: str = ""

    def to_json(self, timing: bool = True) -> dict:
        """``timing=False`` drops ``seconds`` so seeded output is byte-stable."""
        d = dict(self.__dict__)
        d["components"] = list(self.components)
        if not timing:
            del d["seconds"]
        return d


def one_involution_groups(lo: int, hi: int) -> list[GroupSpec]:
    return [G for G in presentations(hi, lo) if G.involution_count == 1]


def labeling_sweep(
    count: int,
    seed: int,
    *,
    max_n: int = 30,
    margin: tuple[int, int] = (6, 12),
    allow_oracle: bool = False,
) -> list[LabelingRun]:
    """Random digraphs with components >= 4 labeled over random one-involution groups
    of order n + margin[0] .. n + margin[1]."""
    rng = random.Random(seed)
    runs = []
    for i in range(count):
        n = rng.randint(MIN_THEOREM_PART, max_n)
        D = random_digraph(rng, n)
        G = rng.choice(one_involution_groups(n + margin[0], n + margin[1]))
        comps = weak_components(D).orders
        t = time.perf_counter()
        try:
            lab = label_digraph(D, G, allow_oracle)
            ok, path, fb, err = lab.certificate["ok"], lab.certificate["path"], bool(lab.certificate["warnings"]), ""
        except IrrlabelError as exc:
            ok, path, fb, err = False, "", False, f"{type(exc).__name__}: {exc}"
        runs.append(
            LabelingRun(i, n, comps, str(G), G.order - n, ok, path, fb, time.perf_counter() - t, err)
        )
    return runs
