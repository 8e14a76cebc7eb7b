"""Right-angled Coxeter groups: presentations, reduction and normal forms.

An element is stored as its normal form: the lexicographically least reduced
word under the generator order of its presentation.  Words are kept
internally as ``bytes`` of generator indices.
"""

from __future__ import annotations

import random
from collections import deque
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field

from .errors import (
    CapExceededError,
    ColoringError,
    GroupDefinitionError,
    MixedGroupsError,
    UnknownGeneratorError,
)
from .kernels import make_kernel

ALL_REDUCED_WORDS_CAP = 10**5


@dataclass(frozen=True)
class CommutationGraph:
    """Generators in a fixed order plus the pairs that commute."""

    generators: tuple[str, ...]
    commuting: frozenset[frozenset[str]] = field(default_factory=frozenset)

    def __post_init__(self):
        gens = tuple(self.generators)
        object.__setattr__(self, "generators", gens)
        if len(set(gens)) != len(gens):
            raise GroupDefinitionError("duplicate generator name")
        if len(gens) > 255:
            raise GroupDefinitionError("at most 255 generators are supported")
        index = {g: i for i, g in enumerate(gens)}
        pairs = frozenset(frozenset(p) for p in self.commuting)
        masks = [0] * len(gens)
        for p in pairs:
            if len(p) != 2:
                raise GroupDefinitionError(f"self-loop on {next(iter(p))!r}")
            s, t = p
            if s not in index or t not in index:
                bad = s if s not in index else t
                raise GroupDefinitionError(f"edge references unknown generator {bad!r}")
            masks[index[s]] |= 1 << index[t]
            masks[index[t]] |= 1 << index[s]
        object.__setattr__(self, "commuting", pairs)
        object.__setattr__(self, "_index", index)
        object.__setattr__(self, "masks", tuple(masks))
        object.__setattr__(self, "_kernel", None)

    @classmethod
    def from_edges(cls, generators: Iterable[str], edges: Iterable[tuple[str, str]] = ()):
        gens = tuple(generators)
        pairs = set()
        for s, t in edges:
            if s == t:
                raise GroupDefinitionError(f"self-loop on {s!r}")
            pairs.add(frozenset((s, t)))
        return cls(gens, frozenset(pairs))

    @property
    def kernel(self):
        if self._kernel is None:
            object.__setattr__(self, "_kernel", make_kernel(self.masks))
        return self._kernel

    @property
    def rank(self) -> int:
        return len(self.generators)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownGeneratorError(name) from None

    def commutes(self, s: str, t: str) -> bool:
        return bool((self.masks[self.index(s)] >> self.index(t)) & 1)

    def edges(self) -> list[tuple[str, str]]:
        """Commuting pairs, each ordered by generator order, sorted."""
        out = []
        for p in self.commuting:
            s, t = sorted(p, key=self.index)
            out.append((s, t))
        return sorted(out, key=lambda e: (self.index(e[0]), self.index(e[1])))

    def z0_mask(self, s: int) -> int:
        return self.masks[s]

    def z_mask(self, s: int) -> int:
        return self.masks[s] | (1 << s)

    def encode(self, names: Sequence[str] | str) -> bytes:
        if isinstance(names, str):
            names = names.split()
        return bytes(self.index(n) for n in names)

    def decode(self, word: bytes) -> tuple[str, ...]:
        return tuple(self.generators[i] for i in word)

    @property
    def identity(self) -> GroupElement:
        return GroupElement(self, b"")

    def gen(self, name: str) -> GroupElement:
        return GroupElement(self, bytes((self.index(name),)))

    def element(self, word: Sequence[str] | str) -> GroupElement:
        return reduce(word, self)


class GroupElement:
    """An element of a right-angled Coxeter group in normal form."""

    __slots__ = ("group", "nf")

    def __init__(self, group: CommutationGraph, nf: bytes):
        # callers guarantee nf is already the normal form
        self.group = group
        self.nf = nf

    @property
    def word(self) -> tuple[str, ...]:
        return self.group.decode(self.nf)

    def __str__(self):
        return " ".join(self.word)

    def __repr__(self):
        return f"GroupElement({str(self)!r})"

    def __eq__(self, other):
        if not isinstance(other, GroupElement):
            return NotImplemented
        return self.nf == other.nf and (self.group is other.group or self.group == other.group)

    def __hash__(self):
        return hash(self.nf)

    def __lt__(self, other):
        return (len(self.nf), self.nf) < (len(other.nf), other.nf)

    def __mul__(self, other):
        return multiply(self, other)

    def is_identity(self) -> bool:
        return not self.nf


@dataclass
class GroupDocument:
    graph: CommutationGraph
    colours: dict[str, int] | None = None


def parse_document(text: str) -> GroupDocument:
    """Parse a group-definition document (``generators:``/``edge:``/``colour:`` lines)."""
    generators = None
    edges = []
    colours = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, rest = line.partition(":")
        key = key.strip().lower()
        args = rest.split()
        if not sep:
            raise GroupDefinitionError(f"line {lineno}: expected 'key: value'")
        if key == "generators":
            if generators is not None:
                raise GroupDefinitionError(f"line {lineno}: second generators line")
            if len(set(args)) != len(args):
                dup = next(a for a in args if args.count(a) > 1)
                raise GroupDefinitionError(f"line {lineno}: duplicate generator {dup!r}")
            generators = args
        elif key == "edge":
            if len(args) != 2:
                raise GroupDefinitionError(f"line {lineno}: edge needs two generators")
            edges.append((lineno, args[0], args[1]))
        elif key in ("colour", "color"):
            if len(args) != 2:
                raise GroupDefinitionError(f"line {lineno}: colour needs a generator and a number")
            try:
                colours[args[0]] = int(args[1])
            except ValueError:
                raise GroupDefinitionError(f"line {lineno}: colour must be an integer") from None
        else:
            raise GroupDefinitionError(f"line {lineno}: unknown key {key!r}")
    if generators is None:
        raise GroupDefinitionError("missing generators line")
    known = set(generators)
    for lineno, s, t in edges:
        for g in (s, t):
            if g not in known:
                raise GroupDefinitionError(f"line {lineno}: edge references unknown generator {g!r}")
        if s == t:
            raise GroupDefinitionError(f"line {lineno}: self-loop on {s!r}")
    for g in colours:
        if g not in known:
            raise ColoringError(f"colour given for unknown generator {g!r}")
    graph = CommutationGraph.from_edges(generators, [(s, t) for _, s, t in edges])
    return GroupDocument(graph, colours or None)


def parse_group(text: str) -> CommutationGraph:
    return parse_document(text).graph


def format_group(g: CommutationGraph, colours: dict[str, int] | None = None) -> str:
    lines = ["generators: " + " ".join(g.generators)]
    lines += [f"edge: {s} {t}" for s, t in g.edges()]
    if colours:
        lines += [f"colour: {s} {colours[s]}" for s in g.generators]
    return "\n".join(lines) + "\n"


def reduce(w: Sequence[str] | str, g: CommutationGraph) -> GroupElement:
    """The element represented by the word ``w``."""
    return GroupElement(g, g.kernel.normal_form(g.encode(w)))


def _check_same(a: GroupElement, b: GroupElement):
    if a.group is not b.group and a.group != b.group:
        raise MixedGroupsError("elements belong to different groups")


def multiply(a: GroupElement, b: GroupElement) -> GroupElement:
    _check_same(a, b)
    return GroupElement(a.group, a.group.kernel.normal_form(a.nf + b.nf))


def inverse(a: GroupElement) -> GroupElement:
    return GroupElement(a.group, a.group.kernel.lex_normalize(a.nf[::-1]))


def length(a: GroupElement) -> int:
    return len(a.nf)


def distance(a: GroupElement, b: GroupElement) -> int:
    _check_same(a, b)
    return a.group.kernel.distance(a.nf, b.nf)


def colored_length(a: GroupElement, col, c: int) -> int:
    """Number of letters of colour ``c`` in any reduced word for ``a``."""
    if not 1 <= c <= col.n:
        raise ColoringError(f"unknown colour {c}")
    gens = a.group.generators
    return sum(1 for x in a.nf if col.assignment[gens[x]] == c)


def left_descent(s: str, a: GroupElement) -> bool:
    return a.group.kernel.left_descent(a.group.index(s), a.nf)


def in_centralizer(a: GroupElement, s: str) -> bool:
    mask = a.group.z_mask(a.group.index(s))
    return all((mask >> x) & 1 for x in a.nf)


def commutation_neighbours(word: bytes, masks) -> Iterable[bytes]:
    for i in range(len(word) - 1):
        x, y = word[i], word[i + 1]
        if (masks[x] >> y) & 1:
            yield word[:i] + bytes((y, x)) + word[i + 2:]


def all_reduced_words(a: GroupElement, cap: int = ALL_REDUCED_WORDS_CAP) -> set[tuple[str, ...]]:
    """Every reduced word for ``a``: the closure of its normal form under commutations."""
    masks = a.group.masks
    seen = {a.nf}
    queue = deque([a.nf])
    while queue:
        w = queue.popleft()
        for v in commutation_neighbours(w, masks):
            if v not in seen:
                seen.add(v)
                if len(seen) > cap:
                    raise CapExceededError(f"more than {cap} reduced words")
                queue.append(v)
    return {a.group.decode(w) for w in seen}


def random_reduced_word(a: GroupElement, rng: random.Random) -> bytes:
    """A random reduced word for ``a``: repeatedly emit a random removable first letter."""
    masks = a.group.masks
    rest = list(a.nf)
    out = bytearray()
    while rest:
        choices = []
        blocked = 0
        for i, x in enumerate(rest):
            if not (blocked >> x) & 1:
                choices.append(i)
            blocked |= ~masks[x]
        i = rng.choice(choices)
        out.append(rest.pop(i))
    return bytes(out)
