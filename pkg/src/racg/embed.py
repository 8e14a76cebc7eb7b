"""Embeddings of the Cayley graph into products of rooted trees.

``mu`` sends an element to one reflection sequence per colour (an isometric
embedding into the l1 product of the colour trees).  ``psi`` replaces each
reflection by a finite label built from the reflection representation reduced
modulo ``3**(2*nu + 2) + 1``; the result is 1-Lipschitz, bilipschitz with
constant ``16 n`` and isometric on small balls.

Trees are never materialized: a vertex is the tuple of its labels and the
distance between two vertices is computed from their longest common prefix.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import LevelMismatchError
from .geometry import Reflection, wall_of_edge
from .group import CommutationGraph, GroupElement

TreeVertex = tuple


@dataclass(frozen=True)
class ProductPoint:
    coordinates: tuple[TreeVertex, ...]

    def __len__(self):
        return len(self.coordinates)


def phi_c(a: GroupElement, col, c: int, word: bytes | None = None) -> TreeVertex:
    """Walls of colour ``c`` crossed along a reduced word for ``a``, in order.

    Uses the normal form unless another reduced ``word`` for ``a`` is given.
    """
    g = a.group
    kern = g.kernel
    if word is None:
        word = a.nf
    out = []
    prefix = b""
    for x in word:
        s = g.generators[x]
        if col.assignment[s] == c:
            out.append(wall_of_edge(GroupElement(g, kern.lex_normalize(prefix)), s, col))
        prefix = kern.append(prefix, x)
    return tuple(out)


def tree_distance(u: TreeVertex, v: TreeVertex) -> int:
    common = 0
    for x, y in zip(u, v):
        if x != y:
            break
        common += 1
    return len(u) + len(v) - 2 * common


def product_distance(p: ProductPoint, q: ProductPoint) -> int:
    if len(p.coordinates) != len(q.coordinates):
        raise ValueError("points live in products with different numbers of factors")
    return sum(tree_distance(u, v) for u, v in zip(p.coordinates, q.coordinates))


def mu(a: GroupElement, col) -> ProductPoint:
    return ProductPoint(tuple(phi_c(a, col, c) for c in range(1, col.n + 1)))


# reflection representation


def reflection_matrix(s: str, g: CommutationGraph) -> np.ndarray:
    """Matrix of the reflection for ``s``; column ``t`` is the image of basis vector ``t``.

    v_s -> -v_s; v_t -> v_t + 2 v_s when s, t do not commute; v_t -> v_t when
    they do.
    """
    return _reflection_matrix(g, g.index(s))


@lru_cache(maxsize=None)
def _reflection_matrix(g: CommutationGraph, si: int) -> np.ndarray:
    k = g.rank
    m = np.empty((k, k), dtype=object)
    m[:, :] = 0
    for t in range(k):
        m[t, t] = 1
        if t == si:
            m[si, si] = -1
        elif not (g.masks[si] >> t) & 1:
            m[si, t] = 2
    m.flags.writeable = False
    return m


def identity_matrix(k: int) -> np.ndarray:
    m = np.empty((k, k), dtype=object)
    m[:, :] = 0
    for i in range(k):
        m[i, i] = 1
    return m


def word_matrix(g: CommutationGraph, word: bytes) -> np.ndarray:
    m = identity_matrix(g.rank)
    for x in word:
        m = m @ _reflection_matrix(g, x)
    return m


@lru_cache(maxsize=1 << 16)
def _element_matrix(g: CommutationGraph, nf: bytes) -> np.ndarray:
    if not nf:
        m = identity_matrix(g.rank)
    else:
        m = _element_matrix(g, nf[:-1]) @ _reflection_matrix(g, nf[-1])
    m.flags.writeable = False
    return m


def element_matrix(a: GroupElement) -> np.ndarray:
    """Exact integer matrix of ``a`` in the reflection representation."""
    return _element_matrix(a.group, a.nf)


def modulus(nu: int) -> int:
    return 3 ** (2 * nu + 2) + 1


def sigma(a: GroupElement, nu: int) -> np.ndarray:
    """``element_matrix(a)`` with entries reduced to ``0 <= x < 3**(2nu+2)+1``."""
    return element_matrix(a) % modulus(nu)


@dataclass(frozen=True)
class SeparationParams:
    """Level-to-``nu`` schedule: ``nu(i) = max(scale * i, floor)``.

    ``scale`` is ``4 n`` for ``n`` colours and ``floor`` is ``2 r_local + 2``.
    """

    r_local: int
    scale: int
    floor: int

    @classmethod
    def for_colours(cls, n: int, r_local: int = 3) -> SeparationParams:
        return cls(r_local, 4 * n, 2 * r_local + 2)

    def nu(self, i: int) -> int:
        return max(self.scale * i, self.floor)

    def check(self, n: int) -> None:
        if self.scale < 4 * n:
            raise ValueError(f"scale {self.scale} is below 4n = {4 * n}")

    def to_dict(self) -> dict:
        return {"r_local": self.r_local, "scale": self.scale, "floor": self.floor}


@dataclass(frozen=True)
class FinLabel:
    generator: str
    residue: tuple[tuple[int, ...], ...]

    def digest(self) -> str:
        text = ";".join(",".join(map(str, row)) for row in self.residue)
        return hashlib.sha256(text.encode()).hexdigest()[:16]


@lru_cache(maxsize=1 << 16)
def _fin_label(r: Reflection, nu: int) -> FinLabel:
    res = sigma(r.element, nu)
    return FinLabel(r.generator, tuple(tuple(int(x) for x in row) for row in res))


def fin(r: Reflection, i: int, col, params: SeparationParams) -> FinLabel:
    """Finite label of a level-``i`` reflection: its generator and residue matrix."""
    if r.level != i:
        raise LevelMismatchError(f"reflection {r} has level {r.level}, not {i}")
    return _fin_label(r, params.nu(i))


def psi(a: GroupElement, col, params: SeparationParams) -> ProductPoint:
    params.check(col.n)
    coords = []
    for c in range(1, col.n + 1):
        seq = phi_c(a, col, c)
        coords.append(tuple(fin(r, k, col, params) for k, r in enumerate(seq, 1)))
    return ProductPoint(tuple(coords))
