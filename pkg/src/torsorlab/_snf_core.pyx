# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled Smith normal form kernel over int64.

Mirrors ``_snf_py.snf`` exactly: same pivot rule (first entry in
row-then-column scan order attaining the minimal absolute value), same
operation order, same floor-division reduction.  Every arithmetic step is
overflow-checked; on overflow an OverflowError is raised and the caller
reruns the pure-Python kernel, which by construction yields the same
result the compiled path would have produced with unbounded integers.
"""

cdef extern from *:
    """
    #include <stdint.h>
    static int tl_mul_ovf(int64_t x, int64_t y, int64_t *r) { return __builtin_mul_overflow(x, y, r); }
    static int tl_sub_ovf(int64_t x, int64_t y, int64_t *r) { return __builtin_sub_overflow(x, y, r); }
    static int tl_add_ovf(int64_t x, int64_t y, int64_t *r) { return __builtin_add_overflow(x, y, r); }
    """
    int tl_mul_ovf(long long x, long long y, long long *r)
    int tl_sub_ovf(long long x, long long y, long long *r)
    int tl_add_ovf(long long x, long long y, long long *r)

cdef long long LLONG_MIN = (<long long> -9223372036854775807) - 1


cdef inline unsigned long long _uabs(long long a):
    if a < 0:
        return <unsigned long long> (-(<unsigned long long> a))
    return <unsigned long long> a


cdef inline long long _fdiv(long long a, long long p):
    # floor division with p > 0, matching Python's //
    cdef long long q = a / p
    if a % p != 0 and a < 0:
        q -= 1
    return q


def snf_i64(long long[:, ::1] mat, long long[:, ::1] U, long long[:, ::1] V,
            bint want_transforms):
    """Smith-reduce ``mat`` in place; returns the nonzero diagonal as a list.

    U and V must be identity matrices of matching sizes when
    want_transforms is set (they are updated in place); otherwise they may
    be 0x0 placeholders.
    """
    cdef Py_ssize_t m = mat.shape[0]
    cdef Py_ssize_t n = mat.shape[1]
    cdef Py_ssize_t limit = m if m < n else n
    cdef Py_ssize_t t = 0, i, j, k, pi, pj
    cdef long long a, p, q, v, tmp
    cdef unsigned long long best, ua
    cdef bint exhausted = False, col_clean, row_clean, folded

    while t < limit and not exhausted:
        while True:
            # pivot search: first entry attaining the minimal absolute value
            pi = -1
            pj = -1
            best = 0
            for i in range(t, m):
                for j in range(t, n):
                    a = mat[i, j]
                    if a != 0:
                        ua = _uabs(a)
                        if best == 0 or ua < best:
                            pi = i
                            pj = j
                            best = ua
                            if best == 1:
                                break
                if best == 1:
                    break
            if pi < 0:
                exhausted = True
                break
            if pi != t:
                for k in range(n):
                    tmp = mat[t, k]; mat[t, k] = mat[pi, k]; mat[pi, k] = tmp
                if want_transforms:
                    for k in range(m):
                        tmp = U[t, k]; U[t, k] = U[pi, k]; U[pi, k] = tmp
            if pj != t:
                for k in range(m):
                    tmp = mat[k, t]; mat[k, t] = mat[k, pj]; mat[k, pj] = tmp
                if want_transforms:
                    for k in range(n):
                        tmp = V[k, t]; V[k, t] = V[k, pj]; V[k, pj] = tmp
            if mat[t, t] < 0:
                for k in range(t, n):
                    if mat[t, k] == LLONG_MIN:
                        raise OverflowError("int64 negate")
                    mat[t, k] = -mat[t, k]
                if want_transforms:
                    for k in range(m):
                        if U[t, k] == LLONG_MIN:
                            raise OverflowError("int64 negate")
                        U[t, k] = -U[t, k]
            p = mat[t, t]

            col_clean = True
            for i in range(t + 1, m):
                a = mat[i, t]
                if a != 0:
                    q = _fdiv(a, p)
                    if q != 0:
                        for k in range(t, n):
                            if tl_mul_ovf(q, mat[t, k], &tmp):
                                raise OverflowError("int64 mul")
                            if tl_sub_ovf(mat[i, k], tmp, &mat[i, k]):
                                raise OverflowError("int64 sub")
                        if want_transforms:
                            for k in range(m):
                                if tl_mul_ovf(q, U[t, k], &tmp):
                                    raise OverflowError("int64 mul")
                                if tl_sub_ovf(U[i, k], tmp, &U[i, k]):
                                    raise OverflowError("int64 sub")
                    if mat[i, t] != 0:
                        col_clean = False
            if not col_clean:
                continue

            row_clean = True
            for j in range(t + 1, n):
                a = mat[t, j]
                if a != 0:
                    q = _fdiv(a, p)
                    if q != 0:
                        for i in range(t, m):
                            v = mat[i, t]
                            if v != 0:
                                if tl_mul_ovf(q, v, &tmp):
                                    raise OverflowError("int64 mul")
                                if tl_sub_ovf(mat[i, j], tmp, &mat[i, j]):
                                    raise OverflowError("int64 sub")
                        if want_transforms:
                            for i in range(n):
                                v = V[i, t]
                                if v != 0:
                                    if tl_mul_ovf(q, v, &tmp):
                                        raise OverflowError("int64 mul")
                                    if tl_sub_ovf(V[i, j], tmp, &V[i, j]):
                                        raise OverflowError("int64 sub")
                    if mat[t, j] != 0:
                        row_clean = False
            if not row_clean:
                continue

            if p > 1:
                folded = False
                for i in range(t + 1, m):
                    for j in range(t + 1, n):
                        if mat[i, j] % p != 0:
                            for k in range(t + 1, n):
                                if tl_add_ovf(mat[t, k], mat[i, k], &mat[t, k]):
                                    raise OverflowError("int64 add")
                            if want_transforms:
                                for k in range(m):
                                    if tl_add_ovf(U[t, k], U[i, k], &U[t, k]):
                                        raise OverflowError("int64 add")
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
        if mat[k, k] == 0:
            break
        diag.append(int(mat[k, k]))
    return diag
