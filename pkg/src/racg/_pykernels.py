"""Pure-Python word kernels.

Words are ``bytes`` of generator indices.  ``comm[s]`` is a bitmask of the
generators commuting with ``s`` (never including ``s`` itself).  The compiled
module ``racg._kernels`` exposes the same names with the same semantics.
"""

from __future__ import annotations

import numpy as np

BACKEND = "python"


class WordKernel:
    def __init__(self, comm):
        self.comm = tuple(int(m) for m in comm)
        self.ngens = len(self.comm)

    def append(self, word: bytes, s: int) -> bytes:
        """Right-multiply a reduced word by ``s``, cancelling a right descent."""
        comm = self.comm[s]
        for i in range(len(word) - 1, -1, -1):
            x = word[i]
            if x == s:
                return word[:i] + word[i + 1:]
            if not (comm >> x) & 1:
                break
        return word + bytes((s,))

    def reduce(self, word: bytes) -> bytes:
        out = b""
        for s in word:
            out = self.append(out, s)
        return out

    def lex_normalize(self, word: bytes) -> bytes:
        # greedy lex-least linear extension of the heap of a reduced word
        comm = self.comm
        rest = list(word)
        out = bytearray()
        while rest:
            blocked = 0
            best = -1
            at = -1
            for i, x in enumerate(rest):
                if not (blocked >> x) & 1 and (best < 0 or x < best):
                    best, at = x, i
                blocked |= ~comm[x]
            out.append(best)
            del rest[at]
        return bytes(out)

    def normal_form(self, word: bytes) -> bytes:
        return self.lex_normalize(self.reduce(word))

    def length(self, word: bytes) -> int:
        return len(self.reduce(word))

    def distance(self, a: bytes, b: bytes) -> int:
        w = a[::-1]
        for s in b:
            w = self.append(w, s)
        return len(w)

    def left_descent(self, s: int, word: bytes) -> bool:
        comm = self.comm[s]
        for x in word:
            if x == s:
                return True
            if not (comm >> x) & 1:
                return False
        return False

    def distance_rows(self, flat, offsets, lo: int, hi: int):
        words = _unpack(flat, offsets)
        n = len(words)
        out = np.zeros((hi - lo, n), dtype=np.uint16)
        for i in range(lo, hi):
            row = out[i - lo]
            inv = words[i][::-1]
            for j in range(n):
                w = inv
                for s in words[j]:
                    w = self.append(w, s)
                row[j] = len(w)
        return out

    def median(self, a: bytes, b: bytes, c: bytes) -> bytes:
        cinv = c[::-1]
        x = self.reduce(cinv + a)
        y = self.reduce(cinv + b)
        labels = bytearray(self.normal_form(x[::-1] + y))
        k = len(labels)
        norms = [len(x)]
        w = x
        for s in labels:
            w = self.append(w, s)
            norms.append(len(w))
        # push local maxima of the norm profile down until it is unimodal
        changed = True
        while changed:
            changed = False
            for i in range(1, k):
                if norms[i - 1] < norms[i] > norms[i + 1]:
                    labels[i - 1], labels[i] = labels[i], labels[i - 1]
                    w = x
                    for s in labels[:i]:
                        w = self.append(w, s)
                    norms[i] = len(w)
                    changed = True
        i0 = norms.index(min(norms))
        delta = x
        for s in labels[:i0]:
            delta = self.append(delta, s)
        return self.normal_form(c + delta)

    def median_scan(self, flat, offsets, lo: int, hi: int):
        words = _unpack(flat, offsets)
        n = len(words)
        checked = 0
        bad = []
        for i in range(lo, hi):
            a = words[i]
            for j in range(i, n):
                b = words[j]
                dab = self.distance(a, b)
                for k in range(j, n):
                    c = words[k]
                    m = self.median(a, b, c)
                    dam = self.distance(a, m)
                    dbm = self.distance(b, m)
                    dcm = self.distance(c, m)
                    checked += 1
                    if (dam + dbm != dab
                            or dam + dcm != self.distance(a, c)
                            or dbm + dcm != self.distance(b, c)):
                        bad.append((i, j, k))
        return checked, bad

    def rooted_median_scan(self, flat, offsets, lo: int, hi: int):
        """Betweenness of ``median(a, b, 1)`` for pairs ``i <= j``."""
        words = _unpack(flat, offsets)
        n = len(words)
        checked = 0
        bad = []
        for i in range(lo, hi):
            a = words[i]
            for j in range(i, n):
                b = words[j]
                m = self.median(a, b, b"")
                checked += 1
                if (self.distance(a, m) + self.distance(b, m) != self.distance(a, b)
                        or self.distance(a, m) + len(m) != len(a)
                        or self.distance(b, m) + len(m) != len(b)):
                    bad.append((i, j))
        return checked, bad

    def convexity_scan(self, flat, offsets, members, s: int, mode: int, mask: int):
        """Check canonical geodesics between all ordered member pairs.

        mode 0: every vertex must lie in the halfspace of ``s``;
        mode 1: every vertex must only use letters in ``mask``.
        """
        words = _unpack(flat, offsets)
        checked = 0
        bad = []
        for p in members:
            a = words[p]
            inv = a[::-1]
            for q in members:
                if p == q:
                    continue
                b = words[q]
                checked += 1
                w = inv
                for x in b:
                    w = self.append(w, x)
                path = self.lex_normalize(w)
                cur = a
                for x in path:
                    cur = self.append(cur, x)
                    if mode == 0:
                        ok = not self.left_descent(s, cur)
                    else:
                        ok = all((mask >> y) & 1 for y in cur)
                    if not ok:
                        bad.append((int(p), int(q)))
                        break
        return checked, bad


def product_distance_rows(labels, offsets, ncol: int, lo: int, hi: int):
    n = (len(offsets) - 1) // ncol
    seqs = [labels[offsets[t]:offsets[t + 1]].tolist() for t in range(n * ncol)]
    out = np.zeros((hi - lo, n), dtype=np.uint16)
    for i in range(lo, hi):
        row = out[i - lo]
        for j in range(n):
            total = 0
            for c in range(ncol):
                u = seqs[i * ncol + c]
                v = seqs[j * ncol + c]
                m = min(len(u), len(v))
                p = 0
                while p < m and u[p] == v[p]:
                    p += 1
                total += len(u) + len(v) - 2 * p
            row[j] = total
    return out


def _unpack(flat, offsets):
    raw = bytes(flat)
    return [raw[offsets[t]:offsets[t + 1]] for t in range(len(offsets) - 1)]
