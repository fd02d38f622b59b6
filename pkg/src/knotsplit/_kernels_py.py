"""Pure-Python dense polynomial kernels.

Coefficient lists run from the constant term upward and carry no trailing
zeros; the empty list is the zero polynomial.  The compiled ``_kernels``
extension exposes the same functions with the same semantics.
"""


def trim(a):
    n = len(a)
    while n and not a[n - 1]:
        n -= 1
    return a[:n] if n != len(a) else list(a)


def add(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = out[i] + c
    return trim(out)


def sub(a, b):
    n = max(len(a), len(b))
    out = list(a) + [0] * (n - len(a))
    for i, c in enumerate(b):
        out[i] = out[i] - c
    return trim(out)


def scale(a, c):
    if not c:
        return []
    return [x * c for x in a]


def mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return trim(out)


def divmod_(a, b):
    """Long division ``a = q*b + r`` with ``deg r < deg b``; ``b`` nonzero."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    db = len(b) - 1
    r = list(a)
    if len(r) <= db:
        return [], trim(r)
    lead = b[db]
    q = [0] * (len(r) - db)
    for k in range(len(r) - 1, db - 1, -1):
        c = r[k]
        if not c:
            continue
        c = c / lead
        q[k - db] = c
        base = k - db
        for j in range(db + 1):
            r[base + j] -= c * b[j]
    return trim(q), trim(r[:db])


def horner(a, x):
    acc = 0
    for c in reversed(a):
        acc = acc * x + c
    return acc


def sign_changes(polys, x):
    """Sign variations of a polynomial sequence evaluated at ``x``."""
    count = 0
    prev = 0
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
