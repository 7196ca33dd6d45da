# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops. Each function mirrors one in ``_fallback.py``."""

import numpy as np

from libc.stdint cimport int64_t
from libcpp.unordered_map cimport unordered_map
from libcpp.unordered_set cimport unordered_set
from libcpp.vector cimport vector
from cython.operator cimport dereference as deref, preincrement as inc


def mul_packed(const int64_t[:] ka, const int64_t[:] ca,
               const int64_t[:] kb, const int64_t[:] cb, int64_t p):
    """Product of two sparse polynomials whose monomials are packed into int64 keys."""
    cdef Py_ssize_t na = ka.shape[0], nb = kb.shape[0], i, j, n
    cdef unordered_map[int64_t, int64_t] acc
    cdef unordered_map[int64_t, int64_t].iterator it
    cdef int64_t key, c
    acc.reserve(<size_t>min(na * nb, 1 << 24))
    for i in range(na):
        c = ca[i]
        key = ka[i]
        for j in range(nb):
            it = acc.find(key + kb[j])
            if it == acc.end():
                acc[key + kb[j]] = (c * cb[j]) % p
            else:
                deref(it).second = (deref(it).second + c * cb[j]) % p
    n = 0
    it = acc.begin()
    while it != acc.end():
        if deref(it).second != 0:
            n += 1
        inc(it)
    keys = np.empty(n, dtype=np.int64)
    coefs = np.empty(n, dtype=np.int64)
    cdef int64_t[:] kv = keys
    cdef int64_t[:] cv = coefs
    n = 0
    it = acc.begin()
    while it != acc.end():
        if deref(it).second != 0:
            kv[n] = deref(it).first
            cv[n] = deref(it).second
            n += 1
        inc(it)
    return keys, coefs


def closure_order(const int64_t[:, :, :] gens, int64_t p, int64_t cap):
    """Size of the monoid generated by ``gens`` under right multiplication.

    Matrices are encoded as base-p integers of their row-major entries, so the
    caller must ensure p**(n*n) fits in 63 bits. Returns -1 past ``cap``.
    """
    cdef Py_ssize_t k = gens.shape[0], n = gens.shape[1]
    cdef Py_ssize_t nn = n * n, g, r, c, t, head = 0
    cdef unordered_set[int64_t] seen
    cdef vector[int64_t] queue
    cdef vector[int64_t] cur
    cdef vector[int64_t] prod
    cdef int64_t code, s
    cur.resize(nn)
    prod.resize(nn)

    code = 0
    for r in range(n - 1, -1, -1):
        for c in range(n - 1, -1, -1):
            code = code * p + (1 if r == c else 0)
    seen.insert(code)
    queue.push_back(code)
    while head < <Py_ssize_t>queue.size():
        code = queue[head]
        head += 1
        for t in range(nn):
            cur[t] = code % p
            code //= p
        for g in range(k):
            for r in range(n):
                for c in range(n):
                    s = 0
                    for t in range(n):
                        s += cur[r * n + t] * gens[g, t, c]
                    prod[r * n + c] = s % p
            code = 0
            for t in range(nn - 1, -1, -1):
                code = code * p + prod[t]
            if seen.insert(code).second:
                queue.push_back(code)
                if <int64_t>queue.size() > cap:
                    return -1
    return <int64_t>queue.size()


def rank_mod_p(const int64_t[:, :] matrix, int64_t p):
    """Rank over F_p by row reduction; entries must already lie in [0, p)."""
    cdef Py_ssize_t rows = matrix.shape[0], cols = matrix.shape[1]
    cdef Py_ssize_t r, c, i, piv, rank = 0
    cdef int64_t inv, f, e, b
    work = np.array(matrix, dtype=np.int64, copy=True)
    cdef int64_t[:, :] m = work
    for c in range(cols):
        if rank == rows:
            break
        piv = -1
        for r in range(rank, rows):
            if m[r, c] != 0:
                piv = r
                break
        if piv < 0:
            continue
        if piv != rank:
            for i in range(c, cols):
                m[piv, i], m[rank, i] = m[rank, i], m[piv, i]
        # inverse via Fermat
        inv = 1
        b = m[rank, c]
        e = p - 2
        while e > 0:
            if e & 1:
                inv = inv * b % p
            b = b * b % p
            e >>= 1
        for i in range(c, cols):
            m[rank, i] = m[rank, i] * inv % p
        for r in range(rank + 1, rows):
            f = m[r, c]
            if f == 0:
                continue
            f = p - f
            for i in range(c, cols):
                if m[rank, i] != 0:
                    m[r, i] = (m[r, i] + f * m[rank, i]) % p
        rank += 1
    return rank
