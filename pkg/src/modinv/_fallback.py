"""Pure-Python versions of the routines in ``_kernels.pyx``.

Same signatures and results; used when the extension is not built or when
``MODINV_PURE=1`` is set.
"""

from collections import deque

import numpy as np


def mul_packed(ka, ca, kb, cb, p):
    acc = {}
    get = acc.get
    kb = np.asarray(kb).tolist()
    cb = np.asarray(cb).tolist()
    pairs = list(zip(kb, cb))
    for key, c in zip(np.asarray(ka).tolist(), np.asarray(ca).tolist()):
        for kj, cj in pairs:
            k = key + kj
            acc[k] = get(k, 0) + c * cj
    keys = [k for k, v in acc.items() if v % p]
    coefs = [acc[k] % p for k in keys]
    return np.array(keys, dtype=np.int64), np.array(coefs, dtype=np.int64)


def closure_order(gens, p, cap):
    gens = [tuple(tuple(int(x) for x in row) for row in g) for g in np.asarray(gens)]
    if not gens:
        return 1
    n = len(gens[0])
    cols = [tuple(zip(*g)) for g in gens]
    ident = tuple(tuple(1 if r == c else 0 for c in range(n)) for r in range(n))
    seen = {ident}
    queue = deque([ident])
    while queue:
        cur = queue.popleft()
        for gc in cols:
            prod = tuple(
                tuple(sum(a * b for a, b in zip(row, col)) % p for col in gc) for row in cur
            )
            if prod not in seen:
                seen.add(prod)
                queue.append(prod)
                if len(seen) > cap:
                    return -1
    return len(seen)


def rank_mod_p(matrix, p):
    m = np.array(matrix, dtype=np.int64, copy=True)
    rows, cols = m.shape
    rank = 0
    for c in range(cols):
        if rank == rows:
            break
        nz = np.nonzero(m[rank:, c])[0]
        if nz.size == 0:
            continue
        piv = rank + nz[0]
        if piv != rank:
            m[[rank, piv]] = m[[piv, rank]]
        m[rank] = m[rank] * pow(int(m[rank, c]), p - 2, p) % p
        below = rank + 1 + np.nonzero(m[rank + 1:, c])[0]
        if below.size:
            m[below] = (m[below] - np.outer(m[below, c], m[rank])) % p
        rank += 1
    return rank
