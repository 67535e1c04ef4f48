import itertools
import random
from math import prod
from pathlib import Path

import pytest

DATA = Path(__file__).parent / "data"


def brute_elements(factors):
    return list(itertools.product(*(range(f) for f in factors)))


def brute_sum(factors, elems):
    return tuple(sum(e[i] for e in elems) % f for i, f in enumerate(factors))


def brute_order(factors, x):
    k, cur = 1, tuple(x)
    zero = (0,) * len(factors)
    while cur != zero:
        cur = tuple((c + r) % f for c, r, f in zip(cur, x, factors))
        k += 1
    return k


def brute_is_cyclic(factors):
    n = prod(factors)
    return any(brute_order(factors, x) == n for x in brute_elements(factors))


def theorem_demands(total):
    """All non-increasing size lists with parts >= 4, no gap of 1..3, even odd count."""
    out = []

    def rec(left, top, cur):
        if left == 0:
            if sum(r % 2 for r in cur) % 2 == 0:
                out.append(tuple(cur))
            return
        for r in range(min(top, left), 3, -1):
            if left - r in (1, 2, 3):
                continue
            rec(left - r, r, cur + [r])

    rec(total, total, [])
    return out


def random_theorem_demand(total, rng: random.Random):
    while True:
        parts, left = [], total
        while left >= 4:
            r = rng.randint(4, left)
            if left - r in (1, 2, 3):
                continue
            parts.append(r)
            left -= r
        if left == 0 and sum(r % 2 for r in parts) % 2 == 0:
            return tuple(parts)


@pytest.fixture
def data_dir():
    return DATA


@pytest.fixture(scope="session")
def schema_validator():
    import jsonschema
    from referencing import Registry, Resource

    from irrlabel.schemas import SCHEMA_NAMES, load_schema

    registry = Registry().with_resources(
        (f"{n}.schema.json", Resource.from_contents(load_schema(n))) for n in SCHEMA_NAMES
    )

    def validate(name, doc):
        jsonschema.Draft202012Validator(load_schema(name), registry=registry).validate(doc)

    return validate
