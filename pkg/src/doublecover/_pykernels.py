"""Pure-Python Smith normal form kernel on arbitrary-precision ints.

Mirrors ``_ckernels.pyx`` step for step so both backends return the same
invariant factors and the same certificates.
"""


def _identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def _min_entry(a, t, m, n):
    best = None
    best_abs = 0
    for i in range(t, m):
        row = a[i]
        for j in range(t, n):
            v = row[j]
            if v:
                av = v if v > 0 else -v
                if best is None or av < best_abs:
                    best, best_abs = (i, j), av
                    if av == 1:
                        return best
    return best


def _min_cross(a, t, m, n):
    """Smallest nonzero entry in column t (rows >= t) or row t (cols >= t)."""
    best = (t, t)
    best_abs = abs(a[t][t])
    for i in range(t + 1, m):
        v = a[i][t]
        if v and abs(v) < best_abs:
            best, best_abs = (i, t), abs(v)
    for j in range(t + 1, n):
        v = a[t][j]
        if v and abs(v) < best_abs:
            best, best_abs = (t, j), abs(v)
    return best


def _swap_rows(a, left, i, k):
    a[i], a[k] = a[k], a[i]
    if left is not None:
        left[i], left[k] = left[k], left[i]


def _swap_cols(a, right, j, k):
    for row in a:
        row[j], row[k] = row[k], row[j]
    if right is not None:
        for row in right:
            row[j], row[k] = row[k], row[j]


def _row_axpy(a, left, dst, src, q):
    # row[dst] -= q * row[src]
    rd, rs = a[dst], a[src]
    for j, v in enumerate(rs):
        if v:
            rd[j] -= q * v
    if left is not None:
        rd, rs = left[dst], left[src]
        for j, v in enumerate(rs):
            if v:
                rd[j] -= q * v


def _col_axpy(a, right, dst, src, q):
    for row in a:
        v = row[src]
        if v:
            row[dst] -= q * v
    if right is not None:
        for row in right:
            v = row[src]
            if v:
                row[dst] -= q * v


def snf(data, m, n, certificates=False):
    """Return ``(diag, left, right)`` with ``left @ A @ right`` diagonal.

    ``data`` is a list of ``m`` rows of length ``n``; it is not modified.
    ``left``/``right`` are ``None`` unless ``certificates`` is true.
    """
    a = [list(r) for r in data]
    left = _identity(m) if certificates else None
    right = _identity(n) if certificates else None
    diag = []
    size = min(m, n)
    t = 0
    while t < size:
        pos = _min_entry(a, t, m, n)
        if pos is None:
            break
        while True:
            i, j = pos
            if i != t:
                _swap_rows(a, left, t, i)
            if j != t:
                _swap_cols(a, right, t, j)
            piv = a[t][t]
            dirty = False
            for i in range(t + 1, m):
                v = a[i][t]
                if v:
                    _row_axpy(a, left, i, t, v // piv)
                    if a[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                v = a[t][j]
                if v:
                    _col_axpy(a, right, j, t, v // piv)
                    if a[t][j]:
                        dirty = True
            if dirty:
                pos = _min_cross(a, t, m, n)
                continue
            # row t and column t are clear; enforce divisibility downstream
            bad = None
            for i in range(t + 1, m):
                row = a[i]
                for j in range(t + 1, n):
                    if row[j] % piv:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            _row_axpy(a, left, t, bad, -1)
            pos = _min_cross(a, t, m, n)
        if a[t][t] < 0:
            a[t] = [-v for v in a[t]]
            if left is not None:
                left[t] = [-v for v in left[t]]
        diag.append(a[t][t])
        t += 1
    diag.extend([0] * (size - len(diag)))
    return diag, left, right
