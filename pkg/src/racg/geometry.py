"""Cayley-graph geometry: balls, geodesics, medians, halfspaces and walls."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .errors import CapExceededError, ColourMismatchError, NotAReflectionError
from .group import CommutationGraph, GroupElement, _check_same
from .kernels import pack_words

BALL_CAP = 10**6


@dataclass(frozen=True, eq=False)
class Ball:
    """The ball of a given radius around the identity, in BFS order.

    ``edges`` holds ``(gamma, s)`` with ``gamma * s`` one step further from the
    identity than ``gamma``, both inside the ball.
    """

    group: CommutationGraph
    radius: int
    elements: tuple[GroupElement, ...]
    edges: tuple[tuple[GroupElement, str], ...]
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def center(self) -> GroupElement:
        return self.group.identity

    @property
    def index(self) -> dict[bytes, int]:
        if "index" not in self._cache:
            self._cache["index"] = {a.nf: i for i, a in enumerate(self.elements)}
        return self._cache["index"]

    @property
    def words(self) -> list[bytes]:
        return [a.nf for a in self.elements]

    @property
    def packed(self):
        if "packed" not in self._cache:
            self._cache["packed"] = pack_words(self.words)
        return self._cache["packed"]

    def __contains__(self, a: GroupElement) -> bool:
        return a.nf in self.index

    def __len__(self) -> int:
        return len(self.elements)

    def layer(self, r: int) -> list[GroupElement]:
        return [a for a in self.elements if len(a.nf) == r]

    def within(self, r: int) -> list[GroupElement]:
        return [a for a in self.elements if len(a.nf) <= r]

    def crossing_edges(self) -> dict[bytes, list[tuple[bytes, int]]]:
        """Map each wall (reflection normal form) to its crossing edges in the ball."""
        if "walls" not in self._cache:
            kern = self.group.kernel
            walls: dict[bytes, list[tuple[bytes, int]]] = {}
            for gamma, s in self.edges:
                si = self.group.index(s)
                r = kern.normal_form(gamma.nf + bytes((si,)) + gamma.nf[::-1])
                walls.setdefault(r, []).append((gamma.nf, si))
            self._cache["walls"] = walls
        return self._cache["walls"]


def ball(g: CommutationGraph, radius: int, cap: int = BALL_CAP) -> Ball:
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    kern = g.kernel
    k = g.rank
    layer = [b""]
    words = [b""]
    edges = []
    for _ in range(radius):
        nxt = set()
        for w in layer:
            for s in range(k):
                v = kern.append(w, s)
                if len(v) > len(w):
                    nxt.add(kern.lex_normalize(v))
                    edges.append((w, s))
        layer = sorted(nxt)
        words.extend(layer)
        if len(words) > cap:
            raise CapExceededError(f"ball of radius {radius} exceeds {cap} elements")
    elements = tuple(GroupElement(g, w) for w in words)
    lookup = {a.nf: a for a in elements}
    order = {w: i for i, w in enumerate(words)}
    edges.sort(key=lambda e: (order[e[0]], e[1]))
    gens = g.generators
    return Ball(g, radius, elements, tuple((lookup[w], gens[s]) for w, s in edges))


@lru_cache(maxsize=8)
def cached_ball(g: CommutationGraph, radius: int) -> Ball:
    return ball(g, radius)


def geodesic(a: GroupElement, b: GroupElement) -> list[GroupElement]:
    """The path from ``a`` spelled by the normal form of ``a^-1 b``."""
    _check_same(a, b)
    kern = a.group.kernel
    path = [a]
    cur = a.nf
    for x in kern.normal_form(a.nf[::-1] + b.nf):
        cur = kern.append(cur, x)
        path.append(GroupElement(a.group, kern.lex_normalize(cur)))
    return path


def median(a: GroupElement, b: GroupElement, c: GroupElement) -> GroupElement:
    """The point between each pair of ``a``, ``b``, ``c``.

    Translates ``c`` to the identity, then pushes local maxima of the norm
    profile along a geodesic from ``a`` to ``b`` down by swapping the two
    commuting labels around each maximum; the minimum of the final profile is
    the median.
    """
    _check_same(a, b)
    _check_same(a, c)
    return GroupElement(a.group, a.group.kernel.median(a.nf, b.nf, c.nf))


def in_halfspace(a: GroupElement, s: str) -> bool:
    return not a.group.kernel.left_descent(a.group.index(s), a.nf)


def in_boundary(a: GroupElement, s: str) -> bool:
    """Whether ``a`` lies in the boundary of the halfspace of ``s``."""
    mask = a.group.z0_mask(a.group.index(s))
    return all((mask >> x) & 1 for x in a.nf)


@dataclass(frozen=True)
class Reflection:
    """A conjugate of a generator; equality and hashing use the element only."""

    element: GroupElement
    generator: str = field(compare=False)
    colour: int = field(compare=False)
    level: int = field(compare=False)

    def __str__(self):
        return str(self.element)


def _descend(g: CommutationGraph, r: bytes) -> tuple[bytes, int]:
    """Conjugate ``r`` down to a single generator; return (conjugator, generator)."""
    kern = g.kernel
    if len(r) % 2 == 0:
        raise NotAReflectionError("reflections have odd length")
    conj = bytearray()
    while len(r) > 1:
        u = r[0]
        shorter = kern.normal_form(bytes((u,)) + r + bytes((u,)))
        if len(shorter) != len(r) - 2:
            raise NotAReflectionError(f"{' '.join(g.decode(r))} is not a reflection")
        conj.append(u)
        r = shorter
    return bytes(conj), r[0]


def reflection_generator(r: GroupElement) -> str:
    _, s = _descend(r.group, r.nf)
    return r.group.generators[s]


def _prefix_witness(r: GroupElement) -> tuple[bytes, int]:
    k = len(r.nf) // 2
    return r.nf[:k], r.nf[k]


def level(r: Reflection | GroupElement, col) -> int:
    """One plus the colour-length of the shortest element whose outgoing edge crosses ``r``."""
    elem = r.element if isinstance(r, Reflection) else r
    g = elem.group
    if len(elem.nf) % 2 == 0:
        raise NotAReflectionError("reflections have odd length")
    gamma, s = _prefix_witness(elem)
    c = col.assignment[g.generators[s]]
    gens = g.generators
    return sum(1 for x in gamma if col.assignment[gens[x]] == c) + 1


def make_reflection(r: GroupElement, col) -> Reflection:
    """Canonical reflection record for an element known to be a reflection."""
    s = reflection_generator(r)
    return Reflection(r, s, col.assignment[s], level(r, col))


def wall_of_edge(gamma: GroupElement, s: str, col) -> Reflection:
    """The wall crossed by the edge between ``gamma`` and ``gamma * s``."""
    g = gamma.group
    kern = g.kernel
    si = g.index(s)
    w = gamma.nf
    if kern.left_descent(si, w[::-1]):
        w = kern.lex_normalize(kern.append(w, si))
    elem = GroupElement(g, kern.normal_form(w + bytes((si,)) + w[::-1]))
    c = col.assignment[s]
    gens = g.generators
    lev = sum(1 for x in w if col.assignment[gens[x]] == c) + 1
    return Reflection(elem, s, c, lev)


def crossing_walls(a: GroupElement, b: GroupElement, col, word: bytes | None = None) -> list[Reflection]:
    """Walls crossed along the geodesic from ``a`` to ``b``, in path order.

    ``word`` may supply another reduced word for ``a^-1 b`` to follow instead of
    the normal form.
    """
    _check_same(a, b)
    g = a.group
    kern = g.kernel
    if word is None:
        word = kern.normal_form(a.nf[::-1] + b.nf)
    walls = []
    cur = a.nf
    for x in word:
        walls.append(wall_of_edge(GroupElement(g, kern.lex_normalize(cur)), g.generators[x], col))
        cur = kern.append(cur, x)
    return walls


def crossing_edge_endpoints(r: Reflection, search: Ball) -> set[bytes]:
    edges = search.crossing_edges().get(r.element.nf, ())
    kern = search.group.kernel
    out = set()
    for w, s in edges:
        out.add(w)
        out.add(kern.lex_normalize(kern.append(w, s)))
    return out


def mirror_distance(r1: Reflection, r2: Reflection, search: Ball) -> int | None:
    """Least ``d(g1, g2) + 1`` over crossing edges of both walls found in ``search``.

    Returns None when either wall has no crossing edge inside the ball.
    """
    if r1.colour != r2.colour:
        raise ColourMismatchError("mirror distance is defined for walls of one colour")
    e1 = crossing_edge_endpoints(r1, search)
    e2 = crossing_edge_endpoints(r2, search)
    if not e1 or not e2:
        return None
    dist = search.group.kernel.distance
    return min(dist(x, y) for x in e1 for y in e2) + 1


def mirror_distance_stabilized(r1: Reflection, r2: Reflection, max_radius: int = 12) -> tuple[int | None, int]:
    """Grow the search ball until the mirror distance repeats for two consecutive radii.

    Returns ``(value, radius)`` where ``radius`` is the first radius of the
    stable pair, or the last radius tried if ``max_radius`` was reached.
    """
    g = r1.element.group
    start = max(len(r1.element.nf), len(r2.element.nf)) // 2 + 1
    prev = None
    radius = start
    for radius in range(start, max_radius + 1):
        value = mirror_distance(r1, r2, cached_ball(g, radius))
        if value is not None and value == prev:
            return value, radius - 1
        prev = value
    return prev, radius
