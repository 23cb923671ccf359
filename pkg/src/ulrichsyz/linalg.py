"""Exact integer rank by fraction-free (Bareiss) elimination.

Sparse matrices are dicts ``{(row, col): value}``.  ``sparse_rank`` splits
the support into connected components of the row/column incidence graph
(read off directly when every column, or every row, holds a single entry);
after permuting rows and columns the matrix is block diagonal, so its rank
is the sum of the block ranks, each computed with ``bareiss_rank``.
"""

from __future__ import annotations

from collections import defaultdict


def bareiss_rank(rows: list[list[int]]) -> int:
    """Rank of an integer matrix given as a list of rows.

    All intermediate entries stay integral: each update is an exact
    division by the previous pivot.
    """
    m = [list(map(int, r)) for r in rows]
    if not m or not m[0]:
        return 0
    nrows, ncols = len(m), len(m[0])
    rank = 0
    prev = 1
    for col in range(ncols):
        if rank == nrows:
            break
        piv = next((r for r in range(rank, nrows) if m[r][col] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        p = m[rank][col]
        for r in range(rank + 1, nrows):
            a = m[r][col]
            row_r, row_p = m[r], m[rank]
            for c in range(col + 1, ncols):
                row_r[c] = (p * row_r[c] - a * row_p[c]) // prev
            row_r[col] = 0
        prev = p
        rank += 1
    return rank


def dense(entries: dict, nrows: int, ncols: int) -> list[list[int]]:
    out = [[0] * ncols for _ in range(nrows)]
    for (r, c), v in entries.items():
        out[r][c] += v
    return out


def _component_keys(nonzero) -> dict | None:
    """Component labels without union-find when every column (or row) has one entry."""
    rows, cols = defaultdict(int), defaultdict(int)
    for r, c, _ in nonzero:
        rows[r] += 1
        cols[c] += 1
    if all(v == 1 for v in cols.values()):
        return {(r, c): r for r, c, _ in nonzero}
    if all(v == 1 for v in rows.values()):
        return {(r, c): c for r, c, _ in nonzero}
    return None


def _blocks(entries: dict) -> list[list[list[int]]]:
    nonzero = [(r, c, v) for (r, c), v in entries.items() if v != 0]
    keys = _component_keys(nonzero)
    if keys is None:
        keys = _union_find_keys(nonzero)
    bucket: dict = defaultdict(list)
    for r, c, v in nonzero:
        bucket[keys[(r, c)]].append((r, c, v))
    blocks = []
    for key in sorted(bucket, key=repr):
        items = bucket[key]
        rows = sorted({r for r, _, _ in items})
        cols = sorted({c for _, c, _ in items})
        ri = {r: i for i, r in enumerate(rows)}
        ci = {c: j for j, c in enumerate(cols)}
        block = [[0] * len(cols) for _ in rows]
        for r, c, v in items:
            block[ri[r]][ci[c]] = v
        blocks.append(block)
    return blocks


def _union_find_keys(nonzero) -> dict:
    parent: dict = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for r, c, _ in nonzero:
        a, b = ("r", r), ("c", c)
        parent.setdefault(a, a)
        parent.setdefault(b, b)
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
    return {(r, c): find(("r", r)) for r, c, _ in nonzero}


def sparse_rank(entries: dict) -> int:
    return sum(bareiss_rank(block) for block in _blocks(entries))
