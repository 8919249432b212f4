"""Pure-Python Smith normal form kernel.

Arbitrary-precision reference implementation.  The compiled kernel in
``_snf_core`` mirrors this algorithm step for step over int64 with
overflow detection, so both backends produce identical output and the
dispatcher may retry here after an overflow without changing results.

Pivot rule: the first entry, scanning rows then columns of the trailing
submatrix, whose absolute value attains the submatrix minimum.  Together
with the fixed operation order below this makes U, D, V reproducible.
"""

from __future__ import annotations


def _first_unit(row, start, n):
    """Index of the first +-1 entry of row[start:n], or -1."""
    try:
        a = row.index(1, start, n)
    except ValueError:
        a = -1
    try:
        b = row.index(-1, start, n)
    except ValueError:
        b = -1
    if a < 0:
        return b
    if b < 0:
        return a
    return a if a < b else b


def _find_pivot(mat, t, m, n):
    # A unit entry always wins and ties break by scan order, so the first
    # +-1 in row-major order is the selection whenever one exists.
    for i in range(t, m):
        j = _first_unit(mat[i], t, n)
        if j >= 0:
            return i, j
    best = 0
    pi = pj = -1
    for i in range(t, m):
        row = mat[i]
        for j in range(t, n):
            a = row[j]
            if a:
                if a < 0:
                    a = -a
                if best == 0 or a < best:
                    pi, pj, best = i, j, a
    return pi, pj


def _row_axpy(dst, src, q, start):
    # dst[start:] -= q * src[start:]
    if q == 1:
        dst[start:] = [x - y for x, y in zip(dst[start:], src[start:])]
    elif q == -1:
        dst[start:] = [x + y for x, y in zip(dst[start:], src[start:])]
    else:
        dst[start:] = [x - q * y for x, y in zip(dst[start:], src[start:])]


def snf(mat, m, n, want_transforms):
    """Reduce ``mat`` (list of row lists, mutated in place) to Smith form.

    Returns ``(diag, U, V)`` where diag is the list of nonzero diagonal
    entries (positive, each dividing the next) and U, V are unimodular
    row lists satisfying ``U @ input @ V == mat`` afterwards.  U and V
    are None unless ``want_transforms``.
    """
    U = [[1 if i == j else 0 for j in range(m)] for i in range(m)] if want_transforms else None
    V = [[1 if i == j else 0 for j in range(n)] for i in range(n)] if want_transforms else None

    t = 0
    limit = min(m, n)
    exhausted = False
    while t < limit and not exhausted:
        while True:
            pi, pj = _find_pivot(mat, t, m, n)
            if pi < 0:
                exhausted = True  # trailing submatrix is zero
                break
            if pi != t:
                mat[t], mat[pi] = mat[pi], mat[t]
                if U is not None:
                    U[t], U[pi] = U[pi], U[t]
            if pj != t:
                for row in mat:
                    row[t], row[pj] = row[pj], row[t]
                if V is not None:
                    for row in V:
                        row[t], row[pj] = row[pj], row[t]
            if mat[t][t] < 0:
                row = mat[t]
                row[t:] = [-x for x in row[t:]]
                if U is not None:
                    U[t] = [-x for x in U[t]]
            p = mat[t][t]

            # clear column t; floor division leaves remainders in [0, p)
            col_clean = True
            for i in range(t + 1, m):
                a = mat[i][t]
                if a:
                    q = a // p
                    if q:
                        _row_axpy(mat[i], mat[t], q, t)
                        if U is not None:
                            _row_axpy(U[i], U[t], q, 0)
                    if mat[i][t]:
                        col_clean = False
            if not col_clean:
                continue  # a remainder below p exists; re-select the pivot

            # clear row t; column t is already clear so only the pivot row
            # of mat changes, but V needs the full column operation
            row_clean = True
            for j in range(t + 1, n):
                a = mat[t][j]
                if a:
                    q = a // p
                    if q:
                        for i in range(t, m):
                            v = mat[i][t]
                            if v:
                                mat[i][j] -= q * v
                        if V is not None:
                            for vrow in V:
                                v = vrow[t]
                                if v:
                                    vrow[j] -= q * v
                    if mat[t][j]:
                        row_clean = False
            if not row_clean:
                continue

            if p > 1:
                # divisibility sweep: fold an offending row into row t so
                # the next pass shrinks the pivot
                folded = False
                for i in range(t + 1, m):
                    row = mat[i]
                    for j in range(t + 1, n):
                        if row[j] % p:
                            _row_axpy(mat[t], row, -1, t + 1)
                            if U is not None:
                                _row_axpy(U[t], U[i], -1, 0)
                            folded = True
                            break
                    if folded:
                        break
                if folded:
                    continue
            break
        if not exhausted:
            t += 1

    diag = []
    for k in range(limit):
        d = mat[k][k]
        if d == 0:
            break
        diag.append(d)
    return diag, U, V
