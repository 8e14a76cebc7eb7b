# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled word kernels; mirrors ``racg._pykernels`` name for name."""

from libc.stdint cimport uint8_t, uint16_t, uint64_t, int64_t
from libc.stdlib cimport malloc, free
from libc.string cimport memcpy

import numpy as np

BACKEND = "cython"

cdef enum:
    MAXGENS = 64


cdef inline int _append(uint8_t* w, int n, uint8_t s, const uint64_t* comm) nogil:
    cdef int i, j
    cdef uint64_t m = comm[s]
    cdef uint8_t x
    i = n - 1
    while i >= 0:
        x = w[i]
        if x == s:
            for j in range(i, n - 1):
                w[j] = w[j + 1]
            return n - 1
        if not ((m >> x) & 1):
            break
        i -= 1
    w[n] = s
    return n + 1


cdef inline bint _left_descent(uint8_t s, const uint8_t* w, int n, const uint64_t* comm) nogil:
    cdef int i
    cdef uint64_t m = comm[s]
    for i in range(n):
        if w[i] == s:
            return True
        if not ((m >> w[i]) & 1):
            return False
    return False


cdef void _lex(uint8_t* w, int n, const uint64_t* comm, uint8_t* out) nogil:
    # w is destroyed; out receives the lex-least rearrangement
    cdef int k, i, at, best
    cdef uint64_t blocked
    cdef int m = n
    for k in range(n):
        blocked = 0
        best = 255
        at = -1
        for i in range(m):
            if not ((blocked >> w[i]) & 1) and w[i] < best:
                best = w[i]
                at = i
            blocked |= ~comm[w[i]]
        out[k] = <uint8_t>best
        for i in range(at, m - 1):
            w[i] = w[i + 1]
        m -= 1


cdef int _dist(const uint8_t* a, int na, const uint8_t* b, int nb,
               const uint64_t* comm, uint8_t* buf) nogil:
    cdef int i, n = 0
    for i in range(na):
        buf[n] = a[na - 1 - i]
        n += 1
    for i in range(nb):
        n = _append(buf, n, b[i], comm)
    return n


cdef class WordKernel:
    cdef uint64_t c_comm[MAXGENS]
    cdef readonly int ngens
    cdef readonly tuple comm

    def __init__(self, comm):
        masks = tuple(int(m) for m in comm)
        if len(masks) > MAXGENS:
            raise ValueError("compiled kernel supports at most 64 generators")
        self.comm = masks
        self.ngens = len(masks)
        for i, m in enumerate(masks):
            self.c_comm[i] = <uint64_t>m

    def append(self, bytes word, int s):
        cdef int n = len(word)
        cdef uint8_t* buf = <uint8_t*>malloc(n + 1)
        try:
            memcpy(buf, <const char*>word, n)
            n = _append(buf, n, <uint8_t>s, self.c_comm)
            return buf[:n]
        finally:
            free(buf)

    def reduce(self, bytes word):
        cdef int n = 0, i, L = len(word)
        cdef const uint8_t* src = word
        cdef uint8_t* buf = <uint8_t*>malloc(L + 1)
        try:
            for i in range(L):
                n = _append(buf, n, src[i], self.c_comm)
            return buf[:n]
        finally:
            free(buf)

    def lex_normalize(self, bytes word):
        cdef int n = len(word)
        cdef uint8_t* buf = <uint8_t*>malloc(2 * n + 1)
        try:
            memcpy(buf, <const char*>word, n)
            _lex(buf, n, self.c_comm, buf + n)
            return buf[n:2 * n]
        finally:
            free(buf)

    def normal_form(self, bytes word):
        cdef int n = 0, i, L = len(word)
        cdef const uint8_t* src = word
        cdef uint8_t* buf = <uint8_t*>malloc(2 * L + 1)
        try:
            for i in range(L):
                n = _append(buf, n, src[i], self.c_comm)
            _lex(buf, n, self.c_comm, buf + L)
            return buf[L:L + n]
        finally:
            free(buf)

    def length(self, bytes word):
        return len(self.reduce(word))

    def distance(self, bytes a, bytes b):
        cdef int na = len(a), nb = len(b), n
        cdef uint8_t* buf = <uint8_t*>malloc(na + nb + 1)
        try:
            n = _dist(a, na, b, nb, self.c_comm, buf)
        finally:
            free(buf)
        return n

    def left_descent(self, int s, bytes word):
        return _left_descent(<uint8_t>s, word, len(word), self.c_comm)

    def distance_rows(self, const uint8_t[::1] flat, const int64_t[::1] offsets,
                      int lo, int hi):
        cdef Py_ssize_t n = offsets.shape[0] - 1
        cdef Py_ssize_t i, j
        cdef int maxlen = 0
        for i in range(n):
            if offsets[i + 1] - offsets[i] > maxlen:
                maxlen = <int>(offsets[i + 1] - offsets[i])
        out = np.zeros((hi - lo, n), dtype=np.uint16)
        cdef uint16_t[:, ::1] o = out
        cdef uint8_t* buf = <uint8_t*>malloc(2 * maxlen + 1)
        cdef const uint8_t* base = &flat[0] if flat.shape[0] else NULL
        try:
            with nogil:
                for i in range(lo, hi):
                    for j in range(n):
                        o[i - lo, j] = <uint16_t>_dist(
                            base + offsets[i], <int>(offsets[i + 1] - offsets[i]),
                            base + offsets[j], <int>(offsets[j + 1] - offsets[j]),
                            self.c_comm, buf)
        finally:
            free(buf)
        return out

    cdef int _median(self, const uint8_t* a, int na, const uint8_t* b, int nb,
                     const uint8_t* c, int nc, uint8_t* out) nogil:
        # scratch layout, all sized by total = na + nb + nc
        cdef int total = na + nb + nc + 1
        cdef uint8_t* x = <uint8_t*>malloc(14 * total)
        cdef uint8_t* y = x + total
        cdef uint8_t* lab = y + total
        cdef uint8_t* tmp = lab + 4 * total
        cdef uint8_t* w = tmp + 4 * total
        cdef int* norms = <int*>malloc((4 * total) * sizeof(int))
        cdef int nx = 0, ny = 0, k, i, j, nw, i0, changed, guard
        cdef uint8_t t
        for i in range(nc):
            nx = _append(x, nx, c[nc - 1 - i], self.c_comm)
        for i in range(na):
            nx = _append(x, nx, a[i], self.c_comm)
        for i in range(nc):
            ny = _append(y, ny, c[nc - 1 - i], self.c_comm)
        for i in range(nb):
            ny = _append(y, ny, b[i], self.c_comm)
        k = _dist(x, nx, y, ny, self.c_comm, tmp)
        _lex(tmp, k, self.c_comm, lab)
        memcpy(w, x, nx)
        nw = nx
        norms[0] = nx
        for i in range(k):
            nw = _append(w, nw, lab[i], self.c_comm)
            norms[i + 1] = nw
        changed = 1
        guard = 0
        while changed and guard < 100000:
            changed = 0
            guard += 1
            for i in range(1, k):
                if norms[i - 1] < norms[i] and norms[i] > norms[i + 1]:
                    t = lab[i - 1]
                    lab[i - 1] = lab[i]
                    lab[i] = t
                    memcpy(w, x, nx)
                    nw = nx
                    for j in range(i):
                        nw = _append(w, nw, lab[j], self.c_comm)
                    norms[i] = nw
                    changed = 1
        i0 = 0
        for i in range(1, k + 1):
            if norms[i] < norms[i0]:
                i0 = i
        memcpy(w, c, nc)
        nw = nc
        for i in range(nx):
            nw = _append(w, nw, x[i], self.c_comm)
        for i in range(i0):
            nw = _append(w, nw, lab[i], self.c_comm)
        _lex(w, nw, self.c_comm, out)
        free(norms)
        free(x)
        return nw

    def median(self, bytes a, bytes b, bytes c):
        cdef int n
        cdef uint8_t* out = <uint8_t*>malloc(4 * (len(a) + len(b) + len(c) + 1))
        try:
            n = self._median(a, len(a), b, len(b), c, len(c), out)
            return out[:n]
        finally:
            free(out)

    def median_scan(self, const uint8_t[::1] flat, const int64_t[::1] offsets,
                    int lo, int hi):
        cdef Py_ssize_t n = offsets.shape[0] - 1
        cdef Py_ssize_t i, j, k
        cdef int maxlen = 0, nm, dab, dac, dbc, dam, dbm, dcm, li, lj, lk
        cdef long long checked = 0
        for i in range(n):
            if offsets[i + 1] - offsets[i] > maxlen:
                maxlen = <int>(offsets[i + 1] - offsets[i])
        cdef const uint8_t* base = &flat[0] if flat.shape[0] else NULL
        cdef uint8_t* m = <uint8_t*>malloc(16 * maxlen + 16)
        cdef uint8_t* buf = <uint8_t*>malloc(32 * maxlen + 32)
        cdef const uint8_t* pa
        cdef const uint8_t* pb
        cdef const uint8_t* pc
        bad = []
        try:
            for i in range(lo, hi):
                pa = base + offsets[i]
                li = <int>(offsets[i + 1] - offsets[i])
                for j in range(i, n):
                    pb = base + offsets[j]
                    lj = <int>(offsets[j + 1] - offsets[j])
                    dab = _dist(pa, li, pb, lj, self.c_comm, buf)
                    for k in range(j, n):
                        pc = base + offsets[k]
                        lk = <int>(offsets[k + 1] - offsets[k])
                        nm = self._median(pa, li, pb, lj, pc, lk, m)
                        dam = _dist(pa, li, m, nm, self.c_comm, buf)
                        dbm = _dist(pb, lj, m, nm, self.c_comm, buf)
                        dcm = _dist(pc, lk, m, nm, self.c_comm, buf)
                        dac = _dist(pa, li, pc, lk, self.c_comm, buf)
                        dbc = _dist(pb, lj, pc, lk, self.c_comm, buf)
                        checked += 1
                        if dam + dbm != dab or dam + dcm != dac or dbm + dcm != dbc:
                            bad.append((i, j, k))
        finally:
            free(m)
            free(buf)
        return checked, bad

    def rooted_median_scan(self, const uint8_t[::1] flat, const int64_t[::1] offsets,
                           int lo, int hi):
        # pairs i <= j with the third point at the identity
        cdef Py_ssize_t n = offsets.shape[0] - 1
        cdef Py_ssize_t i, j
        cdef int maxlen = 0, nm, dab, dam, dbm, li, lj
        cdef long long checked = 0
        for i in range(n):
            if offsets[i + 1] - offsets[i] > maxlen:
                maxlen = <int>(offsets[i + 1] - offsets[i])
        cdef const uint8_t* base = &flat[0] if flat.shape[0] else NULL
        cdef uint8_t* m = <uint8_t*>malloc(16 * maxlen + 16)
        cdef uint8_t* buf = <uint8_t*>malloc(32 * maxlen + 32)
        cdef const uint8_t* pa
        cdef const uint8_t* pb
        bad = []
        try:
            for i in range(lo, hi):
                pa = base + offsets[i]
                li = <int>(offsets[i + 1] - offsets[i])
                for j in range(i, n):
                    pb = base + offsets[j]
                    lj = <int>(offsets[j + 1] - offsets[j])
                    dab = _dist(pa, li, pb, lj, self.c_comm, buf)
                    nm = self._median(pa, li, pb, lj, pa, 0, m)
                    dam = _dist(pa, li, m, nm, self.c_comm, buf)
                    dbm = _dist(pb, lj, m, nm, self.c_comm, buf)
                    checked += 1
                    if dam + dbm != dab or dam + nm != li or dbm + nm != lj:
                        bad.append((i, j))
        finally:
            free(m)
            free(buf)
        return checked, bad

    def convexity_scan(self, const uint8_t[::1] flat, const int64_t[::1] offsets,
                       const int64_t[::1] members, int s, int mode, mask):
        cdef Py_ssize_t n = offsets.shape[0] - 1
        cdef Py_ssize_t P = members.shape[0]
        cdef Py_ssize_t pi, qi, p, q, t
        cdef int maxlen = 0, nw, ncur, la, lb, ok, y
        cdef uint64_t cmask = <uint64_t>mask
        cdef long long checked = 0
        for t in range(n):
            if offsets[t + 1] - offsets[t] > maxlen:
                maxlen = <int>(offsets[t + 1] - offsets[t])
        cdef const uint8_t* base = &flat[0] if flat.shape[0] else NULL
        cdef uint8_t* w = <uint8_t*>malloc(2 * maxlen + 1)
        cdef uint8_t* path = <uint8_t*>malloc(2 * maxlen + 1)
        cdef uint8_t* cur = <uint8_t*>malloc(4 * maxlen + 1)
        bad = []
        try:
            for pi in range(P):
                p = members[pi]
                la = <int>(offsets[p + 1] - offsets[p])
                for qi in range(P):
                    q = members[qi]
                    if p == q:
                        continue
                    lb = <int>(offsets[q + 1] - offsets[q])
                    checked += 1
                    nw = _dist(base + offsets[p], la, base + offsets[q], lb,
                               self.c_comm, w)
                    _lex(w, nw, self.c_comm, path)
                    memcpy(cur, base + offsets[p], la)
                    ncur = la
                    for t in range(nw):
                        ncur = _append(cur, ncur, path[t], self.c_comm)
                        if mode == 0:
                            ok = not _left_descent(<uint8_t>s, cur, ncur, self.c_comm)
                        else:
                            ok = 1
                            for y in range(ncur):
                                if not ((cmask >> cur[y]) & 1):
                                    ok = 0
                                    break
                        if not ok:
                            bad.append((p, q))
                            break
        finally:
            free(w)
            free(path)
            free(cur)
        return checked, bad


def product_distance_rows(const int64_t[::1] labels, const int64_t[::1] offsets,
                          int ncol, int lo, int hi):
    cdef Py_ssize_t n = (offsets.shape[0] - 1) // ncol
    cdef Py_ssize_t i, j, c, u0, u1, v0, v1, p, m
    cdef int total
    out = np.zeros((hi - lo, n), dtype=np.uint16)
    cdef uint16_t[:, ::1] o = out
    with nogil:
        for i in range(lo, hi):
            for j in range(n):
                total = 0
                for c in range(ncol):
                    u0 = offsets[i * ncol + c]
                    u1 = offsets[i * ncol + c + 1]
                    v0 = offsets[j * ncol + c]
                    v1 = offsets[j * ncol + c + 1]
                    m = u1 - u0
                    if v1 - v0 < m:
                        m = v1 - v0
                    p = 0
                    while p < m and labels[u0 + p] == labels[v0 + p]:
                        p += 1
                    total += <int>((u1 - u0) + (v1 - v0) - 2 * p)
                o[i - lo, j] = <uint16_t>total
    return out
