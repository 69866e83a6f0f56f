"""Invariant factors of sparse integer matrices.

Unit pivots are eliminated first on the sparse representation, which keeps
Khovanov differentials (entries mostly +-1) cheap; whatever is left is
reduced densely with gcd row/column steps.  Everything is exact integer
arithmetic.
"""

from __future__ import annotations

from math import gcd

SparseMatrix = dict[int, dict[int, int]]  # row -> {col: value}, zeros never stored


def from_dense(rows: list[list[int]]) -> SparseMatrix:
    return {r: {c: v for c, v in enumerate(row) if v} for r, row in enumerate(rows) if any(row)}


def matmul(a: SparseMatrix, b: SparseMatrix) -> SparseMatrix:
    """``a @ b`` where ``a`` is indexed (i, k) and ``b`` (k, j)."""
    out: SparseMatrix = {}
    for i, row in a.items():
        acc: dict[int, int] = {}
        for k, x in row.items():
            for j, y in b.get(k, {}).items():
                acc[j] = acc.get(j, 0) + x * y
        acc = {j: v for j, v in acc.items() if v}
        if acc:
            out[i] = acc
    return out


def is_zero(m: SparseMatrix) -> bool:
    return not any(m.values())


def _eliminate_units(m: SparseMatrix) -> tuple[int, SparseMatrix]:
    rows = {r: dict(cols) for r, cols in m.items() if cols}
    col_rows: dict[int, set[int]] = {}
    for r, cols in rows.items():
        for c in cols:
            col_rows.setdefault(c, set()).add(r)

    units = 0
    while True:
        best = None
        for r, cols in rows.items():
            for c, v in cols.items():
                if v in (1, -1):
                    cost = (len(cols) - 1) * (len(col_rows[c]) - 1)
                    if best is None or cost < best[0]:
                        best = (cost, r, c)
                        if cost == 0:
                            break
            if best is not None and best[0] == 0:
                break
        if best is None:
            break
        _, pr, pc = best
        prow = rows.pop(pr)
        u = prow[pc]
        for c in prow:
            col_rows[c].discard(pr)
        for r in list(col_rows[pc]):
            row = rows[r]
            factor = row[pc] * u  # u is its own inverse
            for c, v in prow.items():
                nv = row.get(c, 0) - factor * v
                if nv:
                    if c not in row:
                        col_rows[c].add(r)
                    row[c] = nv
                elif c in row:
                    del row[c]
                    col_rows[c].discard(r)
            if not row:
                del rows[r]
        del col_rows[pc]
        units += 1
    return units, rows


def _dense_invariants(rows: SparseMatrix) -> list[int]:
    if not rows:
        return []
    cols = sorted({c for row in rows.values() for c in row})
    cidx = {c: k for k, c in enumerate(cols)}
    a = []
    for row in rows.values():
        dense = [0] * len(cols)
        for c, v in row.items():
            dense[cidx[c]] = v
        a.append(dense)
    return smith_diagonal(a)


def smith_diagonal(a: list[list[int]]) -> list[int]:
    """Nonzero invariant factors ``d_1 | d_2 | ...`` of a dense integer matrix."""
    a = [list(row) for row in a]
    nrows = len(a)
    ncols = len(a[0]) if a else 0
    diag = []
    t = 0
    while t < min(nrows, ncols):
        # smallest nonzero entry in the remaining block becomes the pivot
        pivot = None
        for i in range(t, nrows):
            for j in range(t, ncols):
                v = a[i][j]
                if v and (pivot is None or abs(v) < abs(a[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        i, j = pivot
        a[t], a[i] = a[i], a[t]
        for row in a:
            row[t], row[j] = row[j], row[t]
        while True:
            p = a[t][t]
            done = True
            for i in range(t + 1, nrows):
                if a[i][t]:
                    q = a[i][t] // p
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                    if a[i][t]:
                        done = False
            for j in range(t + 1, ncols):
                if a[t][j]:
                    q = a[t][j] // p
                    for row in a:
                        row[j] -= q * row[t]
                    if a[t][j]:
                        done = False
            if done:
                # divisibility: pivot must divide the rest of the block
                bad = next(
                    ((i, j) for i in range(t + 1, nrows) for j in range(t + 1, ncols) if a[i][j] % p),
                    None,
                )
                if bad is None:
                    break
                a[t] = [x + y for x, y in zip(a[t], a[bad[0]])]
                continue
            # move the smallest remaining entry of row/column t into the pivot
            cand = [(abs(a[i][t]), i, t) for i in range(t, nrows) if a[i][t]]
            cand += [(abs(a[t][j]), t, j) for j in range(t, ncols) if a[t][j]]
            _, i, j = min(cand)
            a[t], a[i] = a[i], a[t]
            for row in a:
                row[t], row[j] = row[j], row[t]
        diag.append(abs(a[t][t]))
        t += 1
    out = sorted(diag)
    # normalise to a divisibility chain
    for k in range(len(out)):
        for m in range(k + 1, len(out)):
            g = gcd(out[k], out[m])
            out[k], out[m] = g, out[k] * out[m] // g
    return out


def invariant_factors(m: SparseMatrix) -> list[int]:
    """Nonzero invariant factors, in divisibility order."""
    units, rest = _eliminate_units(m)
    return [1] * units + [d for d in _dense_invariants(rest)]
