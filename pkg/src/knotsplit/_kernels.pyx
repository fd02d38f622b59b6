# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled dense polynomial kernels; mirrors ``_kernels_py`` exactly."""


cpdef list trim(list a):
    cdef Py_ssize_t n = len(a)
    while n and not a[n - 1]:
        n -= 1
    return a[:n]


cpdef list add(list a, list b):
    cdef Py_ssize_t i
    if len(a) < len(b):
        a, b = b, a
    cdef list out = list(a)
    for i in range(len(b)):
        out[i] = out[i] + b[i]
    return trim(out)


cpdef list sub(list a, list b):
    cdef Py_ssize_t i, n = max(len(a), len(b))
    cdef list out = list(a) + [0] * (n - len(a))
    for i in range(len(b)):
        out[i] = out[i] - b[i]
    return trim(out)


cpdef list scale(list a, object c):
    if not c:
        return []
    return [x * c for x in a]


cpdef list mul(list a, list b):
    cdef Py_ssize_t i, j, la = len(a), lb = len(b)
    cdef object x
    if not la or not lb:
        return []
    cdef list out = [0] * (la + lb - 1)
    for i in range(la):
        x = a[i]
        if not x:
            continue
        for j in range(lb):
            out[i + j] = out[i + j] + x * b[j]
    return trim(out)


cpdef tuple divmod_(list a, list b):
    cdef Py_ssize_t db, k, j, base
    cdef object c, lead
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    db = len(b) - 1
    cdef list r = list(a)
    if len(r) <= db:
        return [], trim(r)
    lead = b[db]
    cdef list q = [0] * (len(r) - db)
    for k in range(len(r) - 1, db - 1, -1):
        c = r[k]
        if not c:
            continue
        c = c / lead
        base = k - db
        q[base] = c
        for j in range(db + 1):
            r[base + j] = r[base + j] - c * b[j]
    return trim(q), trim(r[:db])


cpdef object horner(list a, object x):
    cdef object acc = 0
    cdef Py_ssize_t i
    for i in range(len(a) - 1, -1, -1):
        acc = acc * x + a[i]
    return acc


cpdef int sign_changes(list polys, object x):
    cdef int count = 0, prev = 0, s
    cdef object v
    for p in polys:
        v = horner(p, x)
        if v > 0:
            s = 1
        elif v < 0:
            s = -1
        else:
            continue
        if prev and s != prev:
            count += 1
        prev = s
    return count
