"""Verification suites over balls of the Cayley graph.

Every suite is deterministic given (group, radius, params, seed) and returns a
:class:`VerificationReport` whose counterexamples name elements by their
normal-form words.
"""

from __future__ import annotations

import itertools
import json
import logging
import random
import time
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from . import embed, geometry
from .coloring import Coloring, coloring_for
from .errors import RACGError
from .group import (
    CommutationGraph,
    GroupElement,
    all_reduced_words,
    commutation_neighbours,
    in_centralizer,
    inverse,
    left_descent,
    multiply,
    random_reduced_word,
)
from .kernels import pack_coordinates, pack_words, product_distance_rows

log = logging.getLogger(__name__)

SUITES = (
    "normal-form",
    "halfspace",
    "median",
    "walls",
    "isometry-mu",
    "bilipschitz-psi",
    "local-isometry",
    "separation",
    "representation",
)

DEFAULT_RADIUS = {
    "normal-form": 6,
    "halfspace": 6,
    "median": 5,
    "walls": 6,
    "isometry-mu": 6,
    "bilipschitz-psi": 6,
    "local-isometry": 6,
    "separation": 6,
    "representation": 8,
}

MAX_RECORDED_FAILURES = 1000
ROW_BLOCK = 256
ROOTED_MEDIAN_EXTRA = 2
MEDIAN_TRIPLE_CAP = 1000


class UnknownSuiteError(RACGError, ValueError):
    pass


def builtin_group(name: str) -> CommutationGraph:
    """hexagon, pentagon, free-k (no relations) or cube-k (all generators commute)."""
    if name in ("hexagon", "pentagon"):
        k = 6 if name == "hexagon" else 5
        gens = [f"s{i}" for i in range(1, k + 1)]
        return CommutationGraph.from_edges(gens, [(gens[i], gens[(i + 1) % k]) for i in range(k)])
    kind, _, num = name.partition("-")
    if kind in ("free", "cube") and num.isdigit() and int(num) >= 1:
        gens = [f"s{i}" for i in range(1, int(num) + 1)]
        edges = itertools.combinations(gens, 2) if kind == "cube" else ()
        return CommutationGraph.from_edges(gens, edges)
    raise RACGError(f"unknown builtin group {name!r}")


def default_radius(suite: str, group_name: str = "", group: CommutationGraph | None = None) -> int:
    if group_name == "free-2" and suite in ("isometry-mu", "bilipschitz-psi"):
        return 10
    radius = DEFAULT_RADIUS[suite]
    if suite == "median" and group is not None:
        # triples grow cubically; the rooted pass still reaches radius + 2
        while radius > 1 and len(geometry.ball(group, radius)) > MEDIAN_TRIPLE_CAP:
            radius -= 1
    return radius


@dataclass
class Counterexample:
    check: str
    inputs: tuple[str, ...]
    expected: str
    actual: str

    def to_record(self) -> list[str]:
        return [self.check, f"expected={self.expected}", f"actual={self.actual}", *self.inputs]


@dataclass
class VerificationReport:
    suite: str
    group: str
    radius: int
    seed: int = 0
    checks_run: int = 0
    failures: list[Counterexample] = field(default_factory=list)
    wall_clock: float = 0.0
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "group": self.group,
            "radius": self.radius,
            "seed": self.seed,
            "checks_run": self.checks_run,
            "failures": [f.to_record() for f in self.failures],
            "wall_clock": self.wall_clock,
            "details": self.details,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def _render(x) -> str:
    # the identity prints as "1" so every record can be fed back to the CLI
    if isinstance(x, GroupElement) and x.is_identity():
        return "1"
    return str(x)


class _Recorder:
    """Counts checks and keeps the first few counterexamples."""

    def __init__(self, report: VerificationReport):
        self.report = report
        self.failed = 0
        self.per_check: dict[str, int] = {}

    def check(self, ok: bool, name: str, inputs=(), expected="", actual="") -> bool:
        self.report.checks_run += 1
        if not ok:
            self.fail(name, inputs, expected, actual)
        return ok

    def fail(self, name, inputs=(), expected="", actual=""):
        self.failed += 1
        # capped per check so one noisy check cannot hide the others
        seen = self.per_check.get(name, 0)
        self.per_check[name] = seen + 1
        if seen < MAX_RECORDED_FAILURES:
            self.report.failures.append(
                Counterexample(name, tuple(_render(x) for x in inputs), _render(expected), _render(actual))
            )

    def bulk(self, n: int):
        self.report.checks_run += int(n)


# brute-force oracles


def commutation_class(word: bytes, masks) -> set[bytes]:
    seen = {word}
    queue = deque([word])
    while queue:
        w = queue.popleft()
        for v in commutation_neighbours(w, masks):
            if v not in seen:
                seen.add(v)
                queue.append(v)
    return seen


def brute_normal_form(word: bytes, masks, rng: random.Random) -> bytes:
    """Delete ``ss`` pairs in random order, anywhere in the commutation class, until none remain.

    The lex-least member of the final class is returned.
    """
    while True:
        cls = sorted(commutation_class(word, masks))
        sites = [(v, i) for v in cls for i in range(len(v) - 1) if v[i] == v[i + 1]]
        if not sites:
            return cls[0]
        v, i = rng.choice(sites)
        word = v[:i] + v[i + 2:]


def subgroup_elements(g: CommutationGraph, mask: int, max_len: int) -> list[bytes]:
    """Normal forms of the special subgroup on the generators in ``mask``, up to ``max_len``."""
    kern = g.kernel
    letters = [s for s in range(g.rank) if (mask >> s) & 1]
    layer = [b""]
    out = [b""]
    for _ in range(max_len):
        nxt = set()
        for w in layer:
            for s in letters:
                v = kern.append(w, s)
                if len(v) > len(w):
                    nxt.add(kern.lex_normalize(v))
        layer = sorted(nxt)
        if not layer:
            break
        out.extend(layer)
    return out


# suites


def _suite_normal_form(g, radius, col, params, rng, rec):
    kern = g.kernel
    masks = g.masks
    k = g.rank
    one = g.identity
    for s in g.generators:
        ss = multiply(g.gen(s), g.gen(s))
        rec.check(ss == one, "involution", (s,), "", ss)

    words = []
    budget = 5000
    for n in range(0, 9):
        if k**n > budget:
            break
        budget -= k**n
        words.extend(bytes(w) for w in itertools.product(range(k), repeat=n))
    words.extend(bytes(rng.randrange(k) for _ in range(rng.randint(0, 8))) for _ in range(1000))
    for w in words:
        fast = kern.normal_form(w)
        brute = brute_normal_form(w, masks, rng)
        text = " ".join(g.decode(w))
        rec.check(fast == brute, "confluence", (text,),
                  " ".join(g.decode(brute)), " ".join(g.decode(fast)))
        rec.check(len(fast) % 2 == len(w) % 2, "parity", (text,), len(w) % 2, len(fast) % 2)

    B = geometry.ball(g, radius)
    for a in B.elements:
        words_a = all_reduced_words(a)
        letters = sorted(a.word)
        ok = all(len(w) == len(a.nf) and sorted(w) == letters for w in words_a)
        rec.check(ok, "letter-multiset", (a,), letters, "differs")
        rec.check(multiply(a, inverse(a)) == one, "inverse", (a,))
        for s in g.generators:
            sa = multiply(g.gen(s), a)
            ld = left_descent(s, a)
            rec.check(ld == (len(sa.nf) < len(a.nf)), "left-descent", (s, a),
                      len(sa.nf) < len(a.nf), ld)
            cz = in_centralizer(a, s)
            brute = multiply(a, g.gen(s)) == sa
            rec.check(cz == brute, "centralizer", (a, s), brute, cz)


def _suite_halfspace(g, radius, col, params, rng, rec):
    kern = g.kernel
    B = geometry.ball(g, radius)
    inner = [a for a in B.elements if len(a.nf) <= radius - 1]
    inner_idx = np.array([i for i, a in enumerate(B.elements) if len(a.nf) <= radius - 1],
                         dtype=np.int64)
    flat, offsets = B.packed
    gens = g.generators
    for s in gens:
        si = g.index(s)
        gs = g.gen(s)
        for a in B.elements:
            here = geometry.in_halfspace(a, s)
            there = geometry.in_halfspace(multiply(gs, a), s)
            rec.check(here != there, "halfspace-partition", (a, s), "exactly one", (here, there))

        z0 = g.z0_mask(si)
        for a in inner:
            if geometry.in_halfspace(a, s):
                near = any(not geometry.in_halfspace(multiply(a, g.gen(t)), s) for t in gens)
            else:
                near = False
            letters = geometry.in_boundary(a, s)
            rec.check(near == letters, "halfspace-boundary", (a, s), near, letters)

        members = np.array([i for i in inner_idx if geometry.in_halfspace(B.elements[i], s)],
                           dtype=np.int64)
        checked, bad = kern.convexity_scan(flat, offsets, members, si, 0, z0)
        rec.bulk(checked)
        for p, q in bad:
            rec.fail("halfspace-convexity", (B.elements[p], B.elements[q], s))
        members = np.array([i for i in inner_idx if geometry.in_boundary(B.elements[i], s)],
                           dtype=np.int64)
        checked, bad = kern.convexity_scan(flat, offsets, members, si, 1, z0)
        rec.bulk(checked)
        for p, q in bad:
            rec.fail("boundary-convexity", (B.elements[p], B.elements[q], s))

    # translated boundaries of one colour never straddle a wall
    centers = [a for a in B.elements if len(a.nf) <= radius - 2]
    for s in gens:
        si = g.index(s)
        zs = subgroup_elements(g, g.z0_mask(si), 2 * radius)
        for t in gens:
            if col.assignment[s] != col.assignment[t]:
                continue
            for gamma in centers:
                sides = set()
                for z in zs:
                    x = kern.normal_form(gamma.nf + z)
                    if len(x) <= radius:
                        sides.add(geometry.in_halfspace(GroupElement(g, x), t))
                rec.check(len(sides) <= 1, "colour-lemma", (gamma, s, t), "one side", "both sides")


def _suite_median(g, radius, col, params, rng, rec):
    B = geometry.ball(g, radius)
    flat, offsets = B.packed
    n = len(B)
    for lo in range(0, n, 16):
        checked, bad = g.kernel.median_scan(flat, offsets, lo, min(n, lo + 16))
        rec.bulk(checked)
        for i, j, k in bad:
            a, b, c = B.elements[i], B.elements[j], B.elements[k]
            rec.fail("median-betweenness", (a, b, c), "", geometry.median(a, b, c))
    # the median commutes with left translation, so triples with one point at
    # the identity stand for every triple whose third point is that close
    rooted = geometry.ball(g, radius + ROOTED_MEDIAN_EXTRA)
    flat, offsets = rooted.packed
    n = len(rooted)
    for lo in range(0, n, ROW_BLOCK):
        checked, bad = g.kernel.rooted_median_scan(flat, offsets, lo, min(n, lo + ROW_BLOCK))
        rec.bulk(checked)
        for i, j in bad:
            a, b = rooted.elements[i], rooted.elements[j]
            rec.fail("median-rooted", (a, b, g.identity), "", geometry.median(a, b, g.identity))
    rec.report.details["rooted_radius"] = rooted.radius


def _suite_walls(g, radius, col, params, rng, rec):
    kern = g.kernel
    B = geometry.ball(g, radius)
    elems = B.elements
    for _ in range(100):
        a, b = rng.choice(elems), rng.choice(elems)
        d = kern.distance(a.nf, b.nf)
        along_nf = geometry.crossing_walls(a, b, col)
        other = random_reduced_word(multiply(inverse(a), b), rng)
        along_other = geometry.crossing_walls(a, b, col, word=other)
        rec.check(set(along_nf) == set(along_other), "walls-geodesic-independent", (a, b))
        rec.check(len(set(along_nf)) == d == len(along_nf), "walls-count", (a, b),
                  d, len(set(along_nf)))

    walls = B.crossing_edges()
    gens = g.generators
    for r_nf, edges in walls.items():
        r = GroupElement(g, r_nf)
        refl = geometry.make_reflection(r, col)
        for w, s in edges:
            via_edge = geometry.wall_of_edge(GroupElement(g, w), gens[s], col)
            rec.check(via_edge.generator == refl.generator, "wall-generator", (r, GroupElement(g, w)),
                      refl.generator, via_edge.generator)
            if len(edges) >= 2:
                rec.check(via_edge.level == refl.level, "level-well-defined",
                          (r, GroupElement(g, w), gens[s]), refl.level, via_edge.level)

    # crossing edges of gamma s gamma^-1 are exactly the edges (gamma w, s), w in Z_s
    sample = sorted(walls)
    if len(sample) > 200:
        sample = rng.sample(sample, 200)
    for r_nf in sample:
        gamma, si = geometry._prefix_witness(GroupElement(g, r_nf))
        expected = set()
        for w in subgroup_elements(g, g.z_mask(si), len(gamma) + radius + 1):
            x = kern.normal_form(gamma + w)
            y = kern.append(x, si)
            if len(y) < len(x):
                x, y = kern.lex_normalize(y), x
            if len(y) <= radius:
                expected.add((x, si))
        rec.check(expected == set(walls[r_nf]), "wall-edges-are-centralizer-coset",
                  (GroupElement(g, r_nf),), len(expected), len(walls[r_nf]))

    # distinct walls of one colour never cross the same square
    for gamma in elems:
        for s, t in itertools.combinations(range(g.rank), 2):
            if not (g.masks[s] >> t) & 1:
                continue
            w = gamma.nf
            ws, wt = kern.append(w, s), kern.append(w, t)
            if len(ws) < len(w) or len(wt) < len(w):
                continue
            wst = kern.lex_normalize(kern.append(ws, t))
            if len(wst) > radius:
                continue
            walls_s = {geometry.wall_of_edge(gamma, gens[s], col),
                       geometry.wall_of_edge(GroupElement(g, kern.lex_normalize(wt)), gens[s], col)}
            walls_t = {geometry.wall_of_edge(gamma, gens[t], col),
                       geometry.wall_of_edge(GroupElement(g, kern.lex_normalize(ws)), gens[t], col)}
            rec.check(len(walls_s) == 1 and len(walls_t) == 1, "square-parallel-edges",
                      (gamma, gens[s], gens[t]))
            rs, rt = next(iter(walls_s)), next(iter(walls_t))
            rec.check(rs.colour != rt.colour, "same-colour-walls-disjoint",
                      (gamma, gens[s], gens[t]), "different colours", rs.colour)


def _interned(points, ncol):
    table: dict = {}
    out = []
    for p in points:
        out.append([[table.setdefault(x, len(table)) for x in seq] for seq in p.coordinates])
    return pack_coordinates(out, ncol)


def _pairwise(g, B, points, ncol, compare, rec, name):
    """Run ``compare(word_dist, tree_dist)`` on all pairs ``i < j`` in row blocks."""
    flat, offsets = B.packed
    labels, loff = _interned(points, ncol)
    n = len(B)
    for lo in range(0, n, ROW_BLOCK):
        hi = min(n, lo + ROW_BLOCK)
        dw = g.kernel.distance_rows(flat, offsets, lo, hi).astype(np.int64)
        dt = product_distance_rows(labels, loff, ncol, lo, hi).astype(np.int64)
        upper = np.arange(n)[None, :] > np.arange(lo, hi)[:, None]
        ok = compare(dw, dt) | ~upper
        rec.bulk(int(upper.sum()))
        for bi, j in np.argwhere(~ok):
            i = lo + int(bi)
            rec.fail(name, (B.elements[i], B.elements[int(j)]), int(dw[bi, j]), int(dt[bi, j]))


def check_phi_well_defined(g, col, radius, rng, rec, samples=200, words=3):
    B = geometry.cached_ball(g, radius)
    for _ in range(samples):
        a = rng.choice(B.elements)
        base = [embed.phi_c(a, col, c) for c in range(1, col.n + 1)]
        for _ in range(words):
            w = random_reduced_word(a, rng)
            again = [embed.phi_c(a, col, c, word=w) for c in range(1, col.n + 1)]
            rec.check(again == base, "phi-well-defined", (a, " ".join(g.decode(w))))


def _suite_isometry_mu(g, radius, col, params, rng, rec):
    B = geometry.ball(g, radius)
    points = [embed.mu(a, col) for a in B.elements]
    _pairwise(g, B, points, col.n, lambda dw, dt: dw == dt, rec, "mu-isometry")

    for a, p in zip(B.elements, points):
        for coord in p.coordinates:
            for kappa, r in enumerate(coord, 1):
                rec.check(r.level == kappa == geometry.level(r, col), "level-stratification",
                          (a, r), kappa, r.level)

    for t in g.generators:
        gt = g.gen(t)
        for _ in range(200):
            i, j = rng.randrange(len(B)), rng.randrange(len(B))
            a, b = B.elements[i], B.elements[j]
            before = embed.product_distance(points[i], points[j])
            after = embed.product_distance(embed.mu(gt * a, col), embed.mu(gt * b, col))
            rec.check(before == after, "mu-equivariance", (t, a, b), before, after)

    check_phi_well_defined(g, col, radius + 1, rng, rec)


def _psi_points(B, col, params):
    return [embed.psi(a, col, params) for a in B.elements]


def _suite_bilipschitz_psi(g, radius, col, params, rng, rec):
    B = geometry.ball(g, radius)
    points = _psi_points(B, col, params)
    L = 16 * col.n
    _pairwise(g, B, points, col.n, lambda dw, dt: dt <= dw, rec, "psi-1-lipschitz")
    _pairwise(g, B, points, col.n, lambda dw, dt: dw <= L * dt, rec, "psi-lower-bound")


def _suite_local_isometry(g, radius, col, params, rng, rec):
    kern = g.kernel
    B = geometry.ball(g, radius)
    small = geometry.ball(g, params.r_local)
    index = B.index
    centers = []
    for gamma in B.elements:
        members = []
        for b in small.elements:
            x = kern.normal_form(gamma.nf + b.nf)
            if x not in index:
                break
            members.append(index[x])
        else:
            centers.append((gamma, members))
    points = _psi_points(B, col, params)
    seen = set()
    for gamma, members in centers:
        sub = [B.elements[i] for i in members]
        sub_pts = [points[i] for i in members]
        labels, loff = _interned(sub_pts, col.n)
        flat, offsets = pack_words([a.nf for a in sub])
        dw = kern.distance_rows(flat, offsets, 0, len(sub)).astype(np.int64)
        dt = product_distance_rows(labels, loff, col.n, 0, len(sub)).astype(np.int64)
        for bi, j in np.argwhere(dw != dt):
            rec.fail("psi-local-isometry", (gamma, sub[bi], sub[j]), int(dw[bi, j]), int(dt[bi, j]))
        m = np.array(members, dtype=np.int64)
        seen.update((m[:, None] * len(B) + m[None, :]).ravel().tolist())
    rec.bulk(len(seen))
    rec.report.details["translates"] = len(centers)


def separation_scan(g, radius, col, params, labeler=None):
    """Group the walls met in a ball by (colour, level, label).

    Returns ``(pairs_examined, collisions)`` where each collision is a pair of
    distinct reflections sharing a label.  ``labeler(r)`` defaults to ``fin``.
    """
    if labeler is None:
        def labeler(r):
            return embed.fin(r, r.level, col, params)
    B = geometry.cached_ball(g, radius)
    buckets: dict = {}
    per_stratum: dict = {}
    for r_nf in B.crossing_edges():
        r = geometry.make_reflection(GroupElement(g, r_nf), col)
        buckets.setdefault((r.colour, r.level, labeler(r)), []).append(r)
        per_stratum[(r.colour, r.level)] = per_stratum.get((r.colour, r.level), 0) + 1
    pairs = sum(n * (n - 1) // 2 for n in per_stratum.values())
    collisions = []
    for key in sorted(buckets, key=lambda k: (k[0], k[1])):
        rs = sorted(buckets[key], key=lambda r: (len(r.element.nf), r.element.nf))
        collisions.extend(itertools.combinations(rs, 2))
    return pairs, collisions


def _suite_separation(g, radius, col, params, rng, rec):
    pairs, collisions = separation_scan(g, radius, col, params)
    rec.bulk(pairs)
    listed = []
    for r1, r2 in collisions:
        bound = 4 * col.n * r1.level
        value, stable = geometry.mirror_distance_stabilized(r1, r2, max_radius=radius + 4)
        listed.append({"walls": [str(r1), str(r2)], "level": r1.level,
                       "mirror_distance": value, "stabilized_at": stable})
        if value is not None and value < bound:
            rec.fail("fin-separation", (r1.element, r2.element), f">={bound}", value)
    rec.report.details["colliding_pairs"] = len(collisions)
    rec.report.details["collisions"] = listed


def _suite_representation(g, radius, col, params, rng, rec):
    k = g.rank
    ident = embed.identity_matrix(k)
    for s in g.generators:
        h = embed.reflection_matrix(s, g)
        rec.check(np.array_equal(h @ h, ident), "reflection-involution", (s,))

    B = geometry.ball(g, radius)
    for _ in range(500):
        a, b = rng.choice(B.elements), rng.choice(B.elements)
        lhs = embed.element_matrix(multiply(a, b))
        rhs = embed.element_matrix(a) @ embed.element_matrix(b)
        rec.check(np.array_equal(lhs, rhs), "matrix-homomorphism", (a, b))

    # layer by layer so only two layers of exact matrices are alive at once
    prev = {b"": ident}
    for r in range(1, radius + 1):
        cur = {}
        for a in B.layer(r):
            m = prev[a.nf[:-1]] @ embed._reflection_matrix(g, a.nf[-1])
            cur[a.nf] = m
            rec.check(not np.array_equal(m, ident), "faithful", (a,))
            top = max(abs(int(x)) for x in m.flat)
            rec.check(top <= 3**r, "entry-bound", (a,), f"<={3**r}", top)
        prev = cur

    nu = 2
    mod = embed.modulus(nu)
    for a in B.within(min(radius, 2 * nu + 2)):
        if a.is_identity():
            continue
        res = embed.sigma(a, nu)
        rec.check(not np.array_equal(res, ident % mod), "sigma-separates", (a,), "!= I", "== I")


_RUNNERS = {
    "normal-form": _suite_normal_form,
    "halfspace": _suite_halfspace,
    "median": _suite_median,
    "walls": _suite_walls,
    "isometry-mu": _suite_isometry_mu,
    "bilipschitz-psi": _suite_bilipschitz_psi,
    "local-isometry": _suite_local_isometry,
    "separation": _suite_separation,
    "representation": _suite_representation,
}


def run_suite(
    suite: str,
    group: CommutationGraph,
    radius: int | None = None,
    params: embed.SeparationParams | None = None,
    seed: int = 0,
    *,
    coloring: Coloring | None = None,
    group_name: str = "",
) -> VerificationReport:
    if suite not in _RUNNERS:
        raise UnknownSuiteError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    if radius is None:
        radius = default_radius(suite, group_name, group)
    col = coloring if coloring is not None else coloring_for(group)
    if params is None:
        params = embed.SeparationParams.for_colours(col.n)
    params.check(col.n)
    report = VerificationReport(suite, group_name or "custom", radius, seed)
    rec = _Recorder(report)
    rng = random.Random(seed)
    start = time.perf_counter()
    _RUNNERS[suite](group, radius, col, params, rng, rec)
    report.wall_clock = round(time.perf_counter() - start, 3)
    log.info("%s on %s radius %d: %d checks, %d failures", suite, report.group, radius,
             report.checks_run, rec.failed)
    return report


__all__ = [
    "SUITES",
    "VerificationReport",
    "Counterexample",
    "builtin_group",
    "run_suite",
    "separation_scan",
    "brute_normal_form",
]
