"""Proper colourings of the commutation graph and the chromatic number."""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass

from .errors import CapExceededError, ColoringError
from .group import CommutationGraph

EXACT_SEARCH_CAP = 24


@dataclass(frozen=True)
class Coloring:
    """Colours ``1..n`` assigned to generator names."""

    assignment: Mapping[str, int]
    n: int

    def __call__(self, s: str) -> int:
        return self.assignment[s]

    def by_index(self, g: CommutationGraph) -> tuple[int, ...]:
        return tuple(self.assignment[s] for s in g.generators)

    def colour_classes(self, g: CommutationGraph) -> dict[int, list[str]]:
        out = {c: [] for c in range(1, self.n + 1)}
        for s in g.generators:
            out[self.assignment[s]].append(s)
        return out


def validate_coloring(g: CommutationGraph, col: Coloring) -> bool:
    if set(col.assignment) != set(g.generators):
        return False
    values = set(col.assignment.values())
    if values != set(range(1, col.n + 1)):
        return False
    return all(col.assignment[s] != col.assignment[t] for s, t in g.edges())


def provide_coloring(g: CommutationGraph, colours: Mapping[str, int]) -> Coloring:
    """Wrap a user-supplied colouring, rejecting it unless it is proper and onto."""
    n = max(colours.values(), default=0)
    col = Coloring(dict(colours), n)
    if not validate_coloring(g, col):
        raise ColoringError("supplied colouring is not a proper colouring onto 1..n")
    return col


def _greedy(adj: list[int], k: int) -> int:
    colours = []
    for v in range(k):
        used = {colours[u] for u in range(v) if (adj[v] >> u) & 1}
        c = 0
        while c in used:
            c += 1
        colours.append(c)
    return max(colours, default=-1) + 1


def _first_colouring(adj: list[int], k: int, ncol: int) -> list[int] | None:
    """Lexicographically least proper colouring with colours 0..ncol-1, or None."""
    colours = [-1] * k

    def place(v: int, used: int) -> bool:
        if v == k:
            return True
        forbidden = {colours[u] for u in range(v) if (adj[v] >> u) & 1}
        # a fresh colour beyond used+1 would only permute a colouring found earlier
        for c in range(min(ncol, used + 1)):
            if c in forbidden:
                continue
            colours[v] = c
            if place(v + 1, max(used, c + 1)):
                return True
        colours[v] = -1
        return False

    return colours if place(0, 0) else None


def chromatic_coloring(g: CommutationGraph, cap: int = EXACT_SEARCH_CAP) -> Coloring:
    """A minimum proper colouring; the lexicographically least one in generator order."""
    k = g.rank
    if k > cap:
        raise CapExceededError(f"{k} generators exceeds the exact-search cap of {cap}")
    if k == 0:
        return Coloring({}, 0)
    adj = [g.masks[v] for v in range(k)]
    upper = _greedy(adj, k)
    lower = 2 if any(adj) else 1
    for ncol in range(lower, upper + 1):
        found = _first_colouring(adj, k, ncol)
        if found is not None:
            return Coloring({s: found[i] + 1 for i, s in enumerate(g.generators)}, ncol)
    raise AssertionError("greedy bound is always attainable")


def coloring_for(g: CommutationGraph, colours: Mapping[str, int] | None = None) -> Coloring:
    """Use declared colours when present, otherwise solve exactly."""
    if colours:
        return provide_coloring(g, colours)
    return chromatic_coloring(g)
