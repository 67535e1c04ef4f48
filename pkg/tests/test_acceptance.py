"""Acceptance suite.  Each test prints one PASS/FAIL line; run with ``pytest tests/test_acceptance.py``."""

import logging
import random
import time

import pytest

from conftest import brute_elements, brute_order, brute_sum, random_theorem_demand, theorem_demands
from irrlabel.blocks import skolem_partition, zeng_partition
from irrlabel.errors import InfeasibleError
from irrlabel.groups import GroupSpec, factor_2_odd, presentations
from irrlabel.labeler import Digraph, label_digraph, verify_labeling
from irrlabel.oracle import oracle_partition
from irrlabel.partition import theorem_zero_sum
from irrlabel.pools import build_pools
from irrlabel.results import check_parts
from irrlabel.sweep import cross_validation_sweep, labeling_sweep, summarize


@pytest.fixture
def report(capsys):
    def emit(number, title, ok, detail):
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {number}: {title}: {detail}")
        assert ok, detail

    return emit


def independent_zero_sum(group, parts):
    zero = (0,) * len(group.factors)
    return all(brute_sum(group.factors, [x.residues for x in p]) == zero for p in parts)


def test_1_group_sum_rule(report):
    t = time.perf_counter()
    bad = []
    groups = presentations(64)
    for g in groups:
        elems = brute_elements(g.factors)
        invs = [x for x in elems if any(x) and brute_order(g.factors, x) == 2]
        want = invs[0] if len(invs) == 1 else (0,) * len(g.factors)
        if g.group_sum().residues != want or brute_sum(g.factors, elems) != want:
            bad.append(str(g))
    dt = time.perf_counter() - t
    report(1, "group sum over all presentations of order <= 64", not bad and dt < 10,
           f"{len(groups)} groups, {len(bad)} mismatches {bad[:5]}, {dt:.2f}s (limit 10s)")


def test_2_zeng_sweep(report):
    t = time.perf_counter()
    total, bad = 0, []
    for n in range(4, 65, 2):
        G = GroupSpec.cyclic(n)
        for m in range(0, (n - 2) // 3 + 1):
            if (n - 2 - 3 * m) % 2:
                continue
            l = (n - 2 - 3 * m) // 2
            total += 1
            try:
                parts = zeng_partition(n, m, l)
            except Exception as exc:  # noqa: BLE001
                bad.append((n, m, l, repr(exc)))
                continue
            cert = check_parts(G, parts, (G.zero, G.element(n // 2)), [3] * m + [2] * l, exact=True)
            if not (cert["ok"] and independent_zero_sum(G, parts)):
                bad.append((n, m, l))
    dt = time.perf_counter() - t
    report(2, "Zeng partitions for even 4 <= n <= 64, all (m, l)", not bad and dt < 60,
           f"{total - len(bad)}/{total} certified, {dt:.2f}s (limit 60s) {bad[:3]}")


def test_3_skolem_sweep(report):
    t = time.perf_counter()
    total, bad = 0, []
    for H in presentations(81):
        if H.order % 2 == 0:
            continue
        total += 1
        parts = skolem_partition(H)
        k, s = divmod(H.order, 6)
        kinds_ok = [p.kind for p in parts] == ["good6"] * k + ["pair"] * ((s - 1) // 2)
        cert = check_parts(H, parts, (H.zero,), None, exact=True)
        if not (kinds_ok and cert["ok"] and independent_zero_sum(H, parts)):
            bad.append(str(H))
    dt = time.perf_counter() - t
    report(3, "Skolem partitions for odd orders <= 81", not bad and dt < 60,
           f"{total - len(bad)}/{total} exact covers, {dt:.2f}s (limit 60s) {bad[:3]}")


def test_4_pool_cardinalities(report):
    checked, bad = 0, []
    for g in presentations(200):
        if g.involution_count != 1:
            continue
        F = factor_2_odd(g)
        nL, nH = F.L.order, F.H.order
        if nL <= 2 or nH < 3:
            continue
        l = next(l for l in (0, 1, 2) if (nL - 2 - 2 * l) % 3 == 0)
        p = (nH % 6 - 1) // 2
        a, c = nL - 2 * l - 2, nH - 2 * p - 1
        want = {"W0": a * c, ("W1" if l == 0 else "W2"): c if l == 0 else 3 * c}
        if p:
            want["T"] = 3 * a
        pools = build_pools(F)
        got = {P.tag: 3 * len(P.triples) for P in pools}
        triples = [t for P in pools for t in P.triples]
        checked += 1
        if got != want or not independent_zero_sum(g, triples) or any(len(t) != 3 for t in triples):
            bad.append((str(g), got, want))
    report(4, "pool sizes for one-involution groups of order <= 200 with |L| > 2", not bad and checked > 0,
           f"{checked} groups, {len(bad)} mismatches {bad[:2]}")


def test_5_theorem_desk_scale(report, caplog):
    rng = random.Random(2024)
    t = time.perf_counter()
    instances, failures, fallbacks = 0, [], []
    with caplog.at_level(logging.WARNING, logger="irrlabel"):
        for g in presentations(60):
            if g.involution_count != 1 or g.order < 6:
                continue
            total = g.order - 2
            if g.order <= 30:
                todo = theorem_demands(total)
            else:
                todo = [random_theorem_demand(total, rng) for _ in range(200)]
            for sizes in todo:
                instances += 1
                try:
                    res = theorem_zero_sum(g, sizes)
                except Exception as exc:  # noqa: BLE001
                    failures.append((str(g), sizes, repr(exc)))
                    continue
                exc_set = [g.zero, g.the_involution()]
                covered = sorted(x.residues for p in res.parts for x in p) + sorted(x.residues for x in exc_set)
                ok = (
                    res.certificate["ok"]
                    and [len(p) for p in res.parts] == list(sizes)
                    and independent_zero_sum(g, res.parts)
                    and sorted(covered) == brute_elements(g.factors)
                )
                if not ok:
                    failures.append((str(g), sizes))
                if res.warnings:
                    fallbacks.append((str(g), sizes, res.path))
    logged = sum(1 for r in caplog.records if "fell back" in r.getMessage() or "pool selection failed" in r.getMessage())
    dt = time.perf_counter() - t
    rate = len(fallbacks) / max(instances, 1)
    ok = instances > 0 and not failures and rate < 0.05 and logged >= len(fallbacks)
    report(5, "theorem_zero_sum for one-involution groups of order <= 60", ok,
           f"{instances} instances, {len(failures)} failures {failures[:2]}, "
           f"{len(fallbacks)} fallbacks ({100 * rate:.2f}%, limit 5%), {dt:.1f}s")


def test_6_labeling_pipeline(report):
    t = time.perf_counter()
    runs = labeling_sweep(500, 20241014)
    dt = time.perf_counter() - t
    good = sum(r.ok for r in runs)
    bad = [(r.index, r.group, r.error) for r in runs if not r.ok]
    report(6, "500 random digraphs, |Γ| in [n+6, n+12]", good == 500 and dt < 120,
           f"{good}/500 verified, {dt:.1f}s (limit 120s) {bad[:2]}")


def _single_component(order):
    vs = tuple(str(i) for i in range(order))
    return Digraph(vs, tuple(zip(vs, vs[1:] + vs[:1])))


def test_7_elementary_abelian_negative(report):
    g = GroupSpec.parse("Z2xZ2xZ2")
    verdicts = {r: oracle_partition(g, (r,)).verdict for r in (5, 6, 8)}
    pipeline = {}
    for r in (5, 6, 8):
        D = _single_component(r)
        try:
            lab = label_digraph(D, g)
            pipeline[r] = "feasible" if verify_labeling(D, g, lab)["ok"] else "bad-certificate"
        except InfeasibleError as exc:
            pipeline[r] = exc.report.verdict
    want = {5: "feasible", 6: "infeasible", 8: "feasible"}
    report(7, "(Z2)^3 with one component of order 5, 6, 8", verdicts == want and pipeline == want,
           f"oracle {verdicts}, label_digraph {pipeline}")


def test_8_oracle_equivalence(report):
    t = time.perf_counter()
    rows = cross_validation_sweep(24, applicable_only=True)
    s = summarize(rows)
    dt = time.perf_counter() - t
    bad = [(str(r.group), r.demand.sizes, r.theorem, r.oracle) for r in rows if r.agree is False]
    report(8, "construction vs oracle, orders <= 24, theorem-applicable demands",
           s["disagree"] == 0 and s["instances"] > 0,
           f"{s['instances']} instances, {s['agree']} agree, {s['disagree']} disagree, "
           f"{s['unknown']} unknown, {dt:.1f}s {bad[:2]}")
