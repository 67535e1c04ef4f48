"""Knuth's Algorithm X over dict-of-sets, with a node budget.

Columns are chosen by fewest remaining rows; ties and row order follow the
sort key of the column and row identifiers, so the first solution found is
deterministic for a given input.
"""

from __future__ import annotations

from typing import Hashable, Iterator, Mapping, Sequence

from .errors import ResourceError


def solve(
    items: Sequence[Hashable],
    rows: Mapping[Hashable, Sequence[Hashable]],
    *,
    node_limit: int = 2_000_000,
    key=repr,
) -> Iterator[list]:
    """Yield exact covers of ``items`` as lists of row identifiers."""
    columns = {c: set() for c in items}
    for r, cols in rows.items():
        for c in cols:
            columns[c].add(r)
    order = {c: i for i, c in enumerate(sorted(items, key=key))}
    row_order = {r: i for i, r in enumerate(sorted(rows, key=key))}
    nodes = 0
    solution: list = []

    def select(r):
        removed = []
        for j in rows[r]:
            for i in columns[j]:
                for k in rows[i]:
                    if k != j:
                        columns[k].discard(i)
            removed.append(columns.pop(j))
        return removed

    def deselect(r, removed):
        for j in reversed(rows[r]):
            columns[j] = removed.pop()
            for i in columns[j]:
                for k in rows[i]:
                    if k != j:
                        columns[k].add(i)

    def search():
        nonlocal nodes
        if not columns:
            yield list(solution)
            return
        nodes += 1
        if nodes > node_limit:
            raise ResourceError(f"exact cover search exceeded {node_limit} nodes")
        c = min(columns, key=lambda c: (len(columns[c]), order[c]))
        for r in sorted(columns[c], key=row_order.__getitem__):
            solution.append(r)
            removed = select(r)
            yield from search()
            deselect(r, removed)
            solution.pop()

    yield from search()


def first(items, rows, **kw) -> list | None:
    for sol in solve(items, rows, **kw):
        return sol
    return None
