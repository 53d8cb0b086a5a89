"""Smith normal form over the integers.

Two entry points: :func:`invariant_factors` runs a sparse elimination that
only tracks the diagonal (enough for homology groups), and :func:`smith_form`
is a dense version that also returns the unimodular transforms, used when
explicit cycle or cocycle representatives are needed.
"""
from __future__ import annotations

from math import gcd


def _normalize_diagonal(entries):
    """Turn a list of nonzero diagonal entries into invariant factors."""
    d = sorted(abs(e) for e in entries if e)
    ones = [x for x in d if x == 1]
    rest = [x for x in d if x != 1]
    changed = True
    while changed:
        changed = False
        for i in range(len(rest)):
            for j in range(i + 1, len(rest)):
                a, b = rest[i], rest[j]
                if b % a:
                    g = gcd(a, b)
                    rest[i], rest[j] = g, a * b // g
                    changed = True
        rest.sort()
    return sorted(ones + rest)


def invariant_factors(columns, row_order=None, col_order=None):
    """Nonzero invariant factors of a sparse integer matrix.

    ``columns`` maps a column key to ``{row_key: value}``. Pivots are chosen
    by smallest magnitude; ties are broken by the given row/column orders
    (insertion order when omitted), so the elimination is deterministic.
    """
    rows = {}
    for c, col in columns.items():
        for r, v in col.items():
            if v:
                rows.setdefault(r, {})[c] = v
    cols = {}
    for r, row in rows.items():
        for c, v in row.items():
            cols.setdefault(c, {})[r] = v
    if row_order is None:
        row_order = list(rows)
    if col_order is None:
        col_order = list(columns)
    rpos = {r: i for i, r in enumerate(row_order)}
    cpos = {c: i for i, c in enumerate(col_order)}

    def set_entry(r, c, v):
        if v:
            rows.setdefault(r, {})[c] = v
            cols.setdefault(c, {})[r] = v
        else:
            rows.get(r, {}).pop(c, None)
            cols.get(c, {}).pop(r, None)

    def row_op(target, source, q):
        # row_target -= q * row_source
        for c, v in list(rows[source].items()):
            set_entry(target, c, rows.get(target, {}).get(c, 0) - q * v)

    def col_op(target, source, q):
        for r, v in list(cols[source].items()):
            set_entry(r, target, cols.get(target, {}).get(r, 0) - q * v)

    def rmin(col):
        return min(col, key=lambda r: (abs(col[r]), rpos.get(r, len(rpos))))

    def cmin(row):
        return min(row, key=lambda c: (abs(row[c]), cpos.get(c, len(cpos))))

    def isolate(pc):
        # alternate row and column reduction until the pivot is alone
        pr = rmin(cols[pc])
        while True:
            p = rows[pr][pc]
            dirty = False
            for r in sorted(cols[pc], key=lambda r: rpos.get(r, len(rpos))):
                if r != pr:
                    row_op(r, pr, cols[pc][r] // p)
                    dirty = dirty or bool(cols[pc].get(r))
            if dirty:
                pr = rmin(cols[pc])
                continue
            for c in sorted(rows[pr], key=lambda c: cpos.get(c, len(cpos))):
                if c != pc:
                    col_op(c, pc, rows[pr][c] // p)
                    dirty = dirty or bool(rows[pr].get(c))
            if dirty:
                pc = cmin(rows[pr])
                continue
            return pr, pc

    pivots = []
    for c0 in sorted(cols, key=lambda c: cpos.get(c, len(cpos))):
        while cols.get(c0):
            pr, pc = isolate(c0)
            pivots.append(rows[pr][pc])
            set_entry(pr, pc, 0)
    return _normalize_diagonal(pivots)


def smith_form(matrix):
    """Dense Smith normal form ``U @ A @ V = S`` over the integers.

    Returns ``(S, U, V, Uinv, Vinv)`` as lists of lists of Python ints; the
    nonzero diagonal of ``S`` is a divisibility chain with positive entries.
    """
    m = len(matrix)
    n = len(matrix[0]) if m else 0
    A = [list(map(int, row)) for row in matrix]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    Ui = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]
    Vi = [[int(i == j) for j in range(n)] for i in range(n)]

    def add_row(t, s, q):
        # row t += q * row s ; U likewise ; Uinv: col s -= q * col t
        if not q:
            return
        At, As = A[t], A[s]
        for j in range(n):
            if As[j]:
                At[j] += q * As[j]
        Ut, Us = U[t], U[s]
        for j in range(m):
            if Us[j]:
                Ut[j] += q * Us[j]
        for row in Ui:
            if row[t]:
                row[s] -= q * row[t]

    def add_col(t, s, q):
        if not q:
            return
        for row in A:
            if row[s]:
                row[t] += q * row[s]
        for row in V:
            if row[s]:
                row[t] += q * row[s]
        Vt, Vs = Vi[t], Vi[s]
        for j in range(n):
            if Vt[j]:
                Vs[j] -= q * Vt[j]

    def swap_rows(a, b):
        if a != b:
            A[a], A[b] = A[b], A[a]
            U[a], U[b] = U[b], U[a]
            for row in Ui:
                row[a], row[b] = row[b], row[a]

    def swap_cols(a, b):
        if a != b:
            for M in (A, V):
                for row in M:
                    row[a], row[b] = row[b], row[a]
            Vi[a], Vi[b] = Vi[b], Vi[a]

    def negate_row(a):
        A[a] = [-x for x in A[a]]
        U[a] = [-x for x in U[a]]
        for row in Ui:
            row[a] = -row[a]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            p = A[t][t]
            done = True
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // p))
                    if A[i][t]:
                        done = False
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // p))
                    if A[t][j]:
                        done = False
            if not done:
                best = None
                for i in range(t, m):
                    if A[i][t] and (best is None or abs(A[i][t]) < abs(A[best][t])):
                        best = i
                bc = None
                for j in range(t, n):
                    if A[t][j] and (bc is None or abs(A[t][j]) < abs(A[t][bc])):
                        bc = j
                if abs(A[t][bc]) < abs(A[best][t]):
                    swap_cols(t, bc)
                else:
                    swap_rows(t, best)
                continue
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if A[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, 1)
        if A[t][t] < 0:
            negate_row(t)
        t += 1
    return A, U, V, Ui, Vi


def matmul(A, B):
    if not A:
        return []
    n = len(B[0]) if B else 0
    out = []
    for row in A:
        r = [0] * n
        for k, a in enumerate(row):
            if a:
                for j, b in enumerate(B[k]):
                    if b:
                        r[j] += a * b
        out.append(r)
    return out
