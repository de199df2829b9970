# cython: language_level=3, boundscheck=False, wraparound=False
"""int64 Smith normal form kernel.

Same pivoting as ``_pykernels.snf``. Any intermediate value leaving the
signed 64-bit range raises ``OverflowError``; the caller then reruns the
pure-Python kernel on arbitrary-precision ints.
"""

from libc.stdlib cimport malloc, free

cdef extern from *:
    """
    static int dc_fms(long long a, long long q, long long b, long long *out) {
        long long p;
        if (__builtin_mul_overflow(q, b, &p)) return 1;
        if (__builtin_sub_overflow(a, p, out)) return 1;
        return 0;
    }
    """
    int dc_fms(long long a, long long q, long long b, long long *out)

ctypedef long long i64

cdef i64 I64_MIN = -9223372036854775807 - 1


cdef inline i64 _abs(i64 v) except? -1:
    if v == I64_MIN:
        raise OverflowError("int64 abs overflow")
    return -v if v < 0 else v


cdef inline i64 _floordiv(i64 a, i64 b) except? -1:
    if b == -1 and a == I64_MIN:
        raise OverflowError("int64 division overflow")
    return a // b


cdef inline i64 _floormod_nz(i64 a, i64 b):
    # nonzero iff b does not divide a
    return a % b


cdef int _row_axpy(i64* a, i64* left, int m, int n, int dst, int src, i64 q) except -1:
    cdef int j
    cdef i64 v
    for j in range(n):
        v = a[src * n + j]
        if v != 0:
            if dc_fms(a[dst * n + j], q, v, &a[dst * n + j]):
                raise OverflowError("int64 overflow")
    if left != NULL:
        for j in range(m):
            v = left[src * m + j]
            if v != 0:
                if dc_fms(left[dst * m + j], q, v, &left[dst * m + j]):
                    raise OverflowError("int64 overflow")
    return 0


cdef int _col_axpy(i64* a, i64* right, int m, int n, int dst, int src, i64 q) except -1:
    cdef int i
    cdef i64 v
    for i in range(m):
        v = a[i * n + src]
        if v != 0:
            if dc_fms(a[i * n + dst], q, v, &a[i * n + dst]):
                raise OverflowError("int64 overflow")
    if right != NULL:
        for i in range(n):
            v = right[i * n + src]
            if v != 0:
                if dc_fms(right[i * n + dst], q, v, &right[i * n + dst]):
                    raise OverflowError("int64 overflow")
    return 0


cdef void _swap_rows(i64* a, int width, int i, int k):
    cdef int j
    cdef i64 tmp
    for j in range(width):
        tmp = a[i * width + j]
        a[i * width + j] = a[k * width + j]
        a[k * width + j] = tmp


cdef void _swap_cols(i64* a, int height, int width, int j, int k):
    cdef int i
    cdef i64 tmp
    for i in range(height):
        tmp = a[i * width + j]
        a[i * width + j] = a[i * width + k]
        a[i * width + k] = tmp


cdef int _min_entry(i64* a, int t, int m, int n, int* pi, int* pj) except -1:
    cdef int i, j
    cdef i64 v, av, best = -1
    for i in range(t, m):
        for j in range(t, n):
            v = a[i * n + j]
            if v != 0:
                av = _abs(v)
                if best < 0 or av < best:
                    best = av
                    pi[0] = i
                    pj[0] = j
                    if av == 1:
                        return 1
    return 1 if best >= 0 else 0


cdef int _min_cross(i64* a, int t, int m, int n, int* pi, int* pj) except -1:
    cdef int i, j
    cdef i64 v, av, best = _abs(a[t * n + t])
    pi[0] = t
    pj[0] = t
    for i in range(t + 1, m):
        v = a[i * n + t]
        if v != 0:
            av = _abs(v)
            if av < best:
                best = av
                pi[0] = i
                pj[0] = t
    for j in range(t + 1, n):
        v = a[t * n + j]
        if v != 0:
            av = _abs(v)
            if av < best:
                best = av
                pi[0] = t
                pj[0] = j
    return 0


cdef int _run(i64* a, i64* left, i64* right, int m, int n, list diag) except -1:
    cdef int size = m if m < n else n
    cdef int t = 0, i, j, bad, pi = 0, pj = 0
    cdef bint dirty
    cdef i64 piv, v
    while t < size:
        if not _min_entry(a, t, m, n, &pi, &pj):
            break
        while True:
            if pi != t:
                _swap_rows(a, n, t, pi)
                if left != NULL:
                    _swap_rows(left, m, t, pi)
            if pj != t:
                _swap_cols(a, m, n, t, pj)
                if right != NULL:
                    _swap_cols(right, n, n, t, pj)
            piv = a[t * n + t]
            dirty = False
            for i in range(t + 1, m):
                v = a[i * n + t]
                if v != 0:
                    _row_axpy(a, left, m, n, i, t, _floordiv(v, piv))
                    if a[i * n + t] != 0:
                        dirty = True
            for j in range(t + 1, n):
                v = a[t * n + j]
                if v != 0:
                    _col_axpy(a, right, m, n, j, t, _floordiv(v, piv))
                    if a[t * n + j] != 0:
                        dirty = True
            if dirty:
                _min_cross(a, t, m, n, &pi, &pj)
                continue
            bad = -1
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if _floormod_nz(a[i * n + j], piv) != 0:
                        bad = i
                        break
                if bad >= 0:
                    break
            if bad < 0:
                break
            _row_axpy(a, left, m, n, t, bad, -1)
            _min_cross(a, t, m, n, &pi, &pj)
        if a[t * n + t] < 0:
            for j in range(n):
                if a[t * n + j] == I64_MIN:
                    raise OverflowError("int64 negation overflow")
                a[t * n + j] = -a[t * n + j]
            if left != NULL:
                for j in range(m):
                    if left[t * m + j] == I64_MIN:
                        raise OverflowError("int64 negation overflow")
                    left[t * m + j] = -left[t * m + j]
        diag.append(a[t * n + t])
        t += 1
    while len(diag) < size:
        diag.append(0)
    return 0


def snf(data, int m, int n, bint certificates=False):
    """Same contract as ``_pykernels.snf``; raises OverflowError on int64 overflow."""
    cdef i64* a = NULL
    cdef i64* left = NULL
    cdef i64* right = NULL
    cdef int i, j
    cdef list diag = []
    cdef size_t asz = <size_t>m * <size_t>n
    a = <i64*>malloc((asz if asz > 0 else 1) * sizeof(i64))
    if certificates:
        left = <i64*>malloc((<size_t>m * m if m > 0 else 1) * sizeof(i64))
        right = <i64*>malloc((<size_t>n * n if n > 0 else 1) * sizeof(i64))
    try:
        for i in range(m):
            row = data[i]
            for j in range(n):
                a[i * n + j] = row[j]
        if certificates:
            for i in range(m):
                for j in range(m):
                    left[i * m + j] = 1 if i == j else 0
            for i in range(n):
                for j in range(n):
                    right[i * n + j] = 1 if i == j else 0
        _run(a, left, right, m, n, diag)
        if not certificates:
            return diag, None, None
        return (
            diag,
            [[left[i * m + j] for j in range(m)] for i in range(m)],
            [[right[i * n + j] for j in range(n)] for i in range(n)],
        )
    finally:
        free(a)
        if left != NULL:
            free(left)
        if right != NULL:
            free(right)
