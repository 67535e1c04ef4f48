import itertools

import pytest

from conftest import brute_elements, brute_sum
from irrlabel.errors import InputError, ResourceError
from irrlabel.groups import GroupSpec, presentations
from irrlabel.oracle import SearchBudget, cross_validate, oracle_partition


def G(s):
    return GroupSpec.parse(s)


def brute_feasible(factors, sizes, forbidden=()):
    zero = (0,) * len(factors)
    pool = [x for x in brute_elements(factors) if x not in set(forbidden)]

    def rec(i, free):
        if i == len(sizes):
            return True
        return any(
            brute_sum(factors, c) == zero and rec(i + 1, free - set(c))
            for c in itertools.combinations(sorted(free), sizes[i])
        )

    return rec(0, frozenset(pool))


class TestOracle:
    def test_z2_cubed_verdicts(self):
        g = G("Z2xZ2xZ2")
        assert oracle_partition(g, (6,)).verdict == "infeasible"
        assert oracle_partition(g, (5,)).verdict == "feasible"
        assert oracle_partition(g, (8,)).verdict == "feasible"
        assert oracle_partition(g, (4, 4)).verdict == "feasible"

    def test_forbidden(self):
        g = G("Z10")
        assert oracle_partition(g, (5, 5)).verdict == "infeasible"
        assert oracle_partition(g, (4, 4), forbidden=[g.zero, g.element(5)]).verdict == "feasible"
        assert oracle_partition(g, (9,), forbidden=[g.element(5)]).verdict == "feasible"
        assert oracle_partition(g, (9,), forbidden=[g.zero]).verdict == "infeasible"
        with pytest.raises(InputError):
            oracle_partition(g, (10,), forbidden=[g.zero])

    def test_partition_is_valid(self):
        g = G("Z3xZ6")
        rep = oracle_partition(g, (3, 5, 4), forbidden=[g.zero])
        assert rep.feasible
        res = rep.partition
        assert res.path == "oracle" and res.certificate["ok"]
        assert [len(p) for p in res.parts] == [3, 5, 4]
        flat = [x for p in res.parts for x in p]
        assert len(set(flat)) == len(flat) and g.zero not in flat
        for p in res.parts:
            assert brute_sum(g.factors, [x.residues for x in p]) == (0, 0)

    def test_report_json(self):
        doc = oracle_partition(G("Z5"), (5,)).to_json()
        assert doc["verdict"] == "feasible" and doc["nodes"] >= 0
        assert doc["partition"]["parts"] == [["0", "1", "2", "3", "4"]]
        assert "partition" not in oracle_partition(G("Z4"), (4,)).to_json()

    def test_budget_exhaustion(self):
        rep = oracle_partition(G("Z2xZ2xZ2xZ2"), (6, 4, 4), budget=SearchBudget(node_limit=50))
        assert rep.verdict == "unknown"
        assert rep.partition is None

    def test_order_cap(self):
        with pytest.raises(ResourceError):
            oracle_partition(G("Z100xZ100"), (4,))

    def test_matches_brute_force(self):
        for g in presentations(10):
            n = g.order
            for sizes in [(1,), (2,), (3,), (n,), (n - 1,), (2, 2), (3, 3), (2, 3), (4, 3), (3, 3, 2)]:
                if sum(sizes) > n:
                    continue
                for forbidden in [(), (g.zero.residues,)]:
                    if sum(sizes) > n - len(forbidden):
                        continue
                    want = brute_feasible(g.factors, sizes, forbidden)
                    forb = [g.element(x) for x in forbidden]
                    got = oracle_partition(g, sizes, forbidden=forb).verdict
                    assert got == ("feasible" if want else "infeasible"), (g, sizes, forbidden)


class TestBudget:
    def test_env(self, monkeypatch):
        monkeypatch.setenv("IRR_BUDGET_MS", "250")
        monkeypatch.setenv("IRR_NODE_LIMIT", "1234")
        b = SearchBudget.from_env()
        assert (b.time_limit, b.node_limit) == (0.25, 1234)
        assert SearchBudget.from_env(node_limit=9, time_limit=None).node_limit == 9

    def test_bad_env(self, monkeypatch):
        monkeypatch.setenv("IRR_NODE_LIMIT", "lots")
        with pytest.raises(InputError):
            SearchBudget.from_env()

    def test_non_positive(self):
        with pytest.raises(InputError):
            SearchBudget(node_limit=0)
        with pytest.raises(InputError):
            SearchBudget(time_limit=-1)


class TestCrossValidate:
    def test_agreement(self):
        cv = cross_validate(G("Z2xZ9"), (4, 4, 4, 4))
        assert (cv.theorem, cv.oracle, cv.agree) == ("feasible", "feasible", True)

    def test_oracle_only(self):
        cv = cross_validate(G("Z2xZ2xZ2"), (6,))
        assert cv.theorem == "n/a" and cv.oracle == "infeasible"
        assert not cv.applicable and cv.agree is None
        assert cv.to_json()["agree"] is None

    def test_order_limit(self):
        with pytest.raises(InputError):
            cross_validate(G("Z30"), (4, 4))
