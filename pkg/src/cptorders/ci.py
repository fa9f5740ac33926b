"""Interval-containment (dimension two) posets.

Recognition orients the incomparability graph; a transitive orientation F
turns ``P + F`` and ``P + F^-1`` into the two linear orders of a realizer.
Models place element ``x`` on ``[-2 pos1(x), 2 pos2(x)]`` so that every
endpoint is even and the edge ``(-1, 1)`` lies inside every interval.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, Mapping

from .errors import MalformedCiModel, NoCommonCore
from .poset import Poset, incomparability_graph, make_poset, orient


@dataclass(frozen=True)
class Realizer:
    l1: tuple[str, ...]
    l2: tuple[str, ...]

    def poset(self) -> Poset:
        p1 = {x: i for i, x in enumerate(self.l1)}
        p2 = {x: i for i, x in enumerate(self.l2)}
        return make_poset(self.l1, [(x, y) for x in self.l1 for y in self.l1
                                    if p1[x] < p1[y] and p2[x] < p2[y]])


@dataclass(frozen=True)
class NotCI:
    """Marker returned when the incomparability graph has no transitive orientation."""
    reason: str = "incomparability graph is not a comparability graph"

    def __bool__(self):
        return False


def _linear(p: Poset, arcs) -> tuple[str, ...] | None:
    """The linear order ``p + arcs`` if it is one, else None."""
    rel = set(p.lt) | set(arcs)
    n = len(p)
    for x, y in combinations(p.elements, 2):
        if ((x, y) in rel) == ((y, x) in rel):
            return None
    rank = {x: sum((y, x) in rel for y in p.elements) for x in p.elements}
    order = sorted(p.elements, key=rank.get)
    if sorted(rank.values()) != list(range(n)):
        return None
    pos = {x: i for i, x in enumerate(order)}
    if any(pos[x] >= pos[y] for x, y in rel):
        return None
    return tuple(order)


def ci_recognize(p: Poset, max_expansions: int | None = None) -> Realizer | NotCI:
    """A realizer of ``p`` (lexicographically least ``l1``), or :class:`NotCI`.

    ``l1`` is built greedily: at each position the least element is chosen
    whose placement still extends to a transitive orientation of the
    incomparability graph.
    """
    g = incomparability_graph(p)
    if next(orient(g, max_expansions=max_expansions), None) is None:
        return NotCI()
    placed: list[str] = []
    fixed: list[tuple[str, str]] = []
    remaining = list(p.elements)
    while remaining:
        for x in remaining:
            if any(p.less(y, x) for y in remaining if y != x):
                continue
            trial = fixed + [(x, y) for y in remaining
                             if y != x and not p.comparable(x, y)]
            if next(orient(g, trial, max_expansions=max_expansions), None) is not None:
                fixed = trial
                placed.append(x)
                remaining.remove(x)
                break
        else:  # pragma: no cover - guarded by the feasibility check above
            raise AssertionError("greedy realizer construction got stuck")
    arcs = next(orient(g, fixed, max_expansions=max_expansions))
    l1 = _linear(p, arcs)
    l2 = _linear(p, [(y, x) for x, y in arcs])
    if l1 is None or l2 is None:
        raise AssertionError("orientation of the incomparability graph gave no realizer")
    return Realizer(l1, l2)


def linear_extensions(p: Poset) -> Iterator[tuple[str, ...]]:
    """All linear extensions in lexicographic order."""
    def rec(prefix, remaining):
        if not remaining:
            yield tuple(prefix)
            return
        for x in sorted(remaining):
            if not any(p.less(y, x) for y in remaining):
                prefix.append(x)
                yield from rec(prefix, remaining - {x})
                prefix.pop()
    yield from rec([], frozenset(p.elements))


def brute_force_realizer(p: Poset) -> Realizer | None:
    """Independent check: scan pairs of linear extensions for a realizer."""
    exts = list(linear_extensions(p))
    for l1 in exts:
        for l2 in exts:
            r = Realizer(l1, l2)
            if r.poset() == p:
                return r
    return None


@dataclass(frozen=True)
class CiModel:
    intervals: Mapping[str, tuple[int, int]]

    def __post_init__(self):
        object.__setattr__(self, "intervals", dict(sorted(self.intervals.items())))

    def validate(self) -> None:
        ends = []
        for x, (l, r) in self.intervals.items():
            if not l < r:
                raise MalformedCiModel(f"interval of {x} is trivial or reversed")
            ends += [l, r]
        if len(set(ends)) != len(ends):
            raise MalformedCiModel("interval endpoints must be pairwise distinct")

    def poset(self) -> Poset:
        iv = self.intervals
        pairs = [(x, y) for x in iv for y in iv
                 if x != y and iv[y][0] <= iv[x][0] and iv[x][1] <= iv[y][1] and iv[x] != iv[y]]
        return make_poset(iv, pairs)


def ci_model_from_realizer(r: Realizer) -> CiModel:
    pos1 = {x: i + 1 for i, x in enumerate(r.l1)}
    pos2 = {x: i + 1 for i, x in enumerate(r.l2)}
    return CiModel({x: (-2 * pos1[x], 2 * pos2[x]) for x in r.l1})


@dataclass(frozen=True)
class CompressedCiModel:
    model: CiModel
    a: int
    c: int
    d: int
    b: int

    def validate(self) -> None:
        self.model.validate()
        if not self.a < self.c < self.d < self.b:
            raise MalformedCiModel("need a < c < d < b")
        ends = set()
        for l, r in self.model.intervals.values():
            if not (l <= self.c and self.d <= r):
                raise MalformedCiModel("core edge not inside every interval")
            ends |= {l, r}
        if self.c in ends or self.d in ends:
            raise MalformedCiModel("core vertices may not be interval endpoints")
        if min(ends) != self.a or max(ends) != self.b:
            raise MalformedCiModel("a, b must bound the union of the intervals")


def compress_ci_model(m: CiModel) -> CompressedCiModel:
    m.validate()
    ivs = m.intervals
    if not ivs:
        raise MalformedCiModel("empty model")
    lo = min(l for l, _ in ivs.values())
    hi = max(r for _, r in ivs.values())
    inner_l = max(l for l, _ in ivs.values())
    inner_r = min(r for _, r in ivs.values())
    if inner_l < 0 < inner_r and all(v % 2 == 0 for iv in ivs.values() for v in iv):
        return CompressedCiModel(m, lo, -1, 1, hi)
    if inner_l < inner_r:
        # scale by 4 so two unused coordinates sit strictly inside the common part
        scaled = CiModel({x: (4 * l, 4 * r) for x, (l, r) in ivs.items()})
        return CompressedCiModel(scaled, 4 * lo, 4 * inner_l + 1, 4 * inner_r - 1, 4 * hi)
    r = ci_recognize(m.poset())
    if not r:
        raise NoCommonCore("model has no common core and its poset is not CI")
    return compress_ci_model(ci_model_from_realizer(r))


def ci_to_cpt(m: CiModel):
    """The same intervals as paths on a path-shaped host tree.

    Host vertices are every even coordinate between the extreme endpoints
    (odd endpoints are rounded onto their own vertex as well).
    """
    from .cpt import CptModel, HostTree
    coords = sorted({v for iv in m.intervals.values() for v in iv}
                    | set(range(min(v for iv in m.intervals.values() for v in iv) // 2 * 2,
                                max(v for iv in m.intervals.values() for v in iv) + 1, 2)))
    ids = {c: i for i, c in enumerate(coords)}
    tree = HostTree.from_edges([(i, i + 1) for i in range(len(coords) - 1)], vertices=range(len(coords)))
    return CptModel(tree, {x: (ids[l], ids[r]) for x, (l, r) in m.intervals.items()})


def is_ci_brute(p: Poset) -> bool:
    return brute_force_realizer(p) is not None
